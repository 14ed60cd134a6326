use std::f64::consts::PI;

use lbcft::specialfn::{double_gamma, double_sine, gamma, hyp2f1, lattice_query, HypParams, LatticeKind};
use lbcft::structure_constants::{g_chi, mu_of_sigma, r_fzz, sigma_of_mu, ReflectionArgs};
use lbcft::LiouvilleParams;
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn params(g: f64) -> LiouvilleParams {
    LiouvilleParams::new(g).unwrap()
}

fn clear(x: C, p: &LiouvilleParams) -> bool {
    lattice_query(LatticeKind::GammaPole, x, p, 0.05).is_none()
        && lattice_query(LatticeKind::SineZero, x, p, 0.05).is_none()
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sine_inversion(g in 0.4f64..1.9, re in -2.0f64..4.0, im in -2.0f64..2.0) {
        let p = params(g);
        let x = C::new(re, im);
        prop_assume!(clear(x, &p) && clear(p.q - x, &p));
        let v = double_sine(x, &p).unwrap() * double_sine(p.q - x, &p).unwrap();
        prop_assert!((v - 1.0).norm() < 1e-11, "{}", v);
    }

    #[test]
    fn double_gamma_shift(g in 0.4f64..1.9, re in -1.5f64..3.0, im in -1.5f64..1.5, big in any::<bool>()) {
        let p = params(g);
        let chi = if big { p.inv_b() } else { p.b() };
        let y = C::new(re, im);
        let z = chi * y;
        // off the Γ_b poles and off the poles of Γ(χy)
        prop_assume!(clear(y, &p));
        prop_assume!(z.re > 0.05 || z.im.abs() > 0.05 || (z.re - z.re.round()).abs() > 0.05);
        let lhs = double_gamma(y + chi, &p).unwrap() / double_gamma(y, &p).unwrap();
        let rhs = (2.0 * PI).sqrt() * ((z - 0.5) * chi.ln()).exp() / gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{} {}", lhs, rhs);
    }

    #[test]
    fn double_sine_shift(g in 0.4f64..1.9, re in -1.0f64..3.0, im in -1.0f64..1.0, big in any::<bool>()) {
        let p = params(g);
        let chi = if big { p.inv_b() } else { p.b() };
        let y = C::new(re, im);
        prop_assume!(clear(y, &p) && clear(y + chi, &p));
        let lhs = double_sine(y + chi, &p).unwrap();
        let rhs = 2.0 * (PI * chi * y).sin() * double_sine(y, &p).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(rhs.norm()).max(1e-3));
    }

    #[test]
    fn reflection_coefficient_inverts(g in 0.5f64..1.9, beta in 0.1f64..3.0, s1 in -0.3f64..0.3, s2 in -0.3f64..0.3, t in -0.2f64..0.2) {
        let p = params(g);
        prop_assume!((g - 2f64.sqrt()).abs() > 1e-3);
        let sig1 = C::new(p.q / 2.0 + s1, t);
        let sig2 = C::new(p.q / 2.0 + s2, 0.0);
        let b = C::new(beta, 0.0);
        let (Ok(a), Ok(r)) = (
            r_fzz(&ReflectionArgs::new(b, sig1, sig2), &p),
            r_fzz(&ReflectionArgs::new(2.0 * p.q - b, sig1, sig2), &p),
        ) else {
            return Ok(());
        };
        prop_assume!(a.norm() < 1e8 && r.norm() < 1e8);
        prop_assert!((a * r - 1.0).norm() < 1e-10, "{}", a * r);
        let swapped = r_fzz(&ReflectionArgs::new(b, sig2, sig1), &p).unwrap();
        prop_assert!(rel(a, swapped) < 1e-12);
    }

    #[test]
    fn cosmological_constant_round_trip(g in 0.3f64..1.9, u in 0.001f64..0.999, im in -0.5f64..0.5) {
        let p = params(g);
        let sigma = C::new(p.q / 2.0 + u / (2.0 * p.gamma), im);
        let mu = mu_of_sigma(sigma, &p);
        let back = sigma_of_mu(mu, &p).unwrap();
        prop_assert!((mu_of_sigma(back, &p) - mu).norm() < 1e-11 * mu.norm().max(1.0));
        prop_assert!((back - sigma).norm() < 1e-8, "{} {}", back, sigma);
    }

    #[test]
    fn g_chi_is_periodic(g in 0.3f64..1.9, re in -2.0f64..2.0, im in -0.5f64..0.5, big in any::<bool>()) {
        let p = params(g);
        let chi = if big { p.inv_b() } else { p.b() };
        let s = C::new(re, im);
        prop_assert!(rel(g_chi(s + 1.0 / chi, chi, &p), g_chi(s, chi, &p)) < 1e-12);
    }

    #[test]
    fn lattice_query_finds_lattice_points(g in 0.3f64..1.9, n in 0u32..6, m in 0u32..4, d in -1e-4f64..1e-4) {
        let p = params(g);
        let x = C::new(-(n as f64) * p.b() - m as f64 * p.inv_b() + d, 0.0);
        let (n2, m2, dist) = lattice_query(LatticeKind::GammaPole, x, &p, 1e-3).unwrap();
        let y = -(n2 as f64) * p.b() - m2 as f64 * p.inv_b();
        prop_assert!(dist <= d.abs() + 1e-12 && (y - x.re).abs() <= d.abs() + 1e-12);
    }

    #[test]
    fn hypergeometric_branches_agree(a in -0.9f64..0.9, b in -0.9f64..0.9, c in 0.2f64..2.7, side in any::<bool>()) {
        prop_assume!((c - c.round()).abs() > 0.05 && (c - a - b - (c - a - b).round()).abs() > 0.05);
        prop_assume!((a - b - (a - b).round()).abs() > 0.05);
        let h = HypParams::new(C::new(a, 0.0), C::new(b, 0.0), C::new(c, 0.0));
        // just inside and outside the switch points between evaluation methods
        let t0 = if side { 0.5 } else { -1.0 };
        let x = hyp2f1(&h, t0 - 1e-9).unwrap();
        let y = hyp2f1(&h, t0 + 1e-9).unwrap();
        prop_assert!((x - y).norm() < 1e-8 * x.norm().max(1.0), "{} {}", x, y);
    }
}
