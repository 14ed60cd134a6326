use lbcft::structure_constants::*;
use lbcft::verify::{
    check_g_residues, check_h_reflection, check_h_residues, check_r_reflection, r_gamma_closed_form, IdentityReport,
};
use lbcft::{LiouvilleParams, QuadSettings};
use num_complex::Complex64 as C;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn assert_all_pass(reps: &[IdentityReport]) {
    for r in reps {
        assert!(r.pass, "{} rel_err {:e} {:?}", r.identity_name, r.rel_err, r.error);
    }
}

#[test]
fn h_pt_residues_at_the_documented_sample() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let q = p.q;
    let a = ThreePointArgs::new(
        [c(0.0), c(1.6), c(1.6)],
        [c(q / 2.0), C::new(q / 2.0, 0.1), c(q / 2.0 - 0.07)],
    );
    let reps = check_h_residues(&a, &p, &QuadSettings::default(), 1e-5);
    assert_eq!(reps.len(), 5);
    assert_all_pass(&reps);
}

#[test]
fn g_hos_residue_at_the_documented_sample() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let a = BulkBoundaryArgs::new(c(p.q), c(0.9), c(p.q / 2.0));
    assert_all_pass(&check_g_residues(&a, &p, &QuadSettings::default(), 1e-5));
}

#[test]
fn r_fzz_documented_values() {
    let p = LiouvilleParams::new(1.3).unwrap();
    let q = p.q;
    let a = ReflectionArgs::new(c(1.4), c(q / 2.0 + 0.05), c(q / 2.0 - 0.03));
    assert_all_pass(&check_r_reflection(&a, &p, 1e-10));
    let (s1, s2) = (c(q / 2.0 + 0.05), c(q / 2.0 - 0.03));
    let direct = r_fzz(&ReflectionArgs::new(c(p.gamma), s1, s2), &p).unwrap();
    let closed = r_gamma_closed_form(s1, s2, &p).unwrap();
    assert!((direct - closed).norm() < 1e-9 * closed.norm());
}

#[test]
fn j_pt_reflection_symmetry() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let q = p.q;
    let a = ThreePointArgs::new(
        [c(1.3), c(1.1), c(1.5)],
        [c(q / 2.0 + 0.2), C::new(q / 2.0 - 0.1, 0.15), c(q / 2.0)],
    );
    assert_all_pass(&check_h_reflection(&a, &p, &QuadSettings::default(), 1e-7));
}

#[test]
fn kernels_are_finite_on_real_momenta() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let q = p.q;
    let s = QuadSettings::default();
    for k in 0..5 {
        let t = k as f64 / 5.0;
        let f = KernelArgs {
            alpha_primes: vec![c(0.3 + 0.4 * t), c(0.5 + 0.3 * t), c(0.4 + 0.5 * t), c(0.6 + 0.2 * t)],
            p: c(0.3 + 0.5 * t),
            p_prime: c(0.7 - 0.4 * t),
        };
        let v = fusion_kernel(&f, &p, &s).unwrap().value;
        assert!(v.re.is_finite() && v.im.is_finite());
        let m = KernelArgs {
            alpha_primes: vec![c(0.2 + (q - 0.4) * t)],
            p: c(0.4 - 0.3 * t),
            p_prime: c(0.5 + t),
        };
        let v = modular_kernel(&m, &p, &s).unwrap().value;
        assert!(v.re.is_finite() && v.im.is_finite());
    }
}

#[test]
fn correlators_reduce_to_structure_constants() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let q = p.q;
    let s = QuadSettings::default();
    let a = ThreePointArgs::new(
        [c(1.3), c(1.1), c(1.5)],
        [c(q / 2.0 + 0.2), C::new(q / 2.0 - 0.1, 0.15), c(q / 2.0)],
    );
    let h = h_pt(&a, &p, &s).unwrap().value;
    assert_eq!(boundary_3pt(0.0, 1.0, None, &a, &p, &s).unwrap().value, h);
    let bb = BulkBoundaryArgs::new(c(1.4), c(0.8), c(q / 2.0));
    let g = g_hos(&bb, &p, &s).unwrap().value;
    let v = bulk_boundary(C::i(), 0.0, &bb, &p, &s).unwrap().value;
    let factor = (-(2.0 * conformal_dim(bb.alpha, &p) - conformal_dim(bb.beta, &p)) * 2f64.ln()).exp();
    assert!((v - factor * g).norm() < 1e-13 * v.norm());
}

#[test]
fn evaluation_is_deterministic() {
    let p = LiouvilleParams::new(1.1).unwrap();
    let q = p.q;
    let s = QuadSettings::default();
    let a = ThreePointArgs::new(
        [c(1.2), c(0.9), c(1.4)],
        [c(q / 2.0 + 0.1), c(q / 2.0 - 0.2), C::new(q / 2.0, 0.1)],
    );
    assert_eq!(h_pt(&a, &p, &s).unwrap(), h_pt(&a, &p, &s).unwrap());
}

#[test]
fn smooth_along_short_segments() {
    // relative second difference stays small away from poles
    let p = LiouvilleParams::new(1.2).unwrap();
    let q = p.q;
    let s = QuadSettings::default();
    let h = 1e-2;
    let second = |f: &dyn Fn(f64) -> C, x: f64| {
        let (a, b, c) = (f(x - h), f(x), f(x + h));
        (a - 2.0 * b + c).norm() / (h * h * b.norm())
    };
    let hp = |x: f64| {
        let a = ThreePointArgs::new(
            [c(x), c(1.1), c(1.5)],
            [c(q / 2.0 + 0.2), C::new(q / 2.0 - 0.1, 0.15), c(q / 2.0)],
        );
        h_pt(&a, &p, &s).unwrap().value
    };
    let gh = |x: f64| {
        g_hos(&BulkBoundaryArgs::new(c(x), c(0.8), c(q / 2.0)), &p, &s)
            .unwrap()
            .value
    };
    let rf = |x: f64| r_fzz(&ReflectionArgs::new(c(x), c(q / 2.0 + 0.1), c(q / 2.0 - 0.05)), &p).unwrap();
    // sample points sit away from the poles of each function on these lines
    for x in [1.2, 1.35, 1.5] {
        assert!(second(&hp, x) < 100.0, "h_pt at {}", x);
    }
    for x in [1.5, 1.55, 1.6] {
        assert!(second(&gh, x) < 100.0, "g_hos at {}", x);
    }
    for x in [1.3, 1.4, 1.5] {
        assert!(second(&rf, x) < 100.0, "r_fzz at {}", x);
    }
}

#[test]
fn domain_errors_are_structured() {
    let p = LiouvilleParams::new(1.2).unwrap();
    let s = QuadSettings::default();
    // outside the convergence strip of the bulk-boundary integral
    let e = g_hos(&BulkBoundaryArgs::new(c(1.0), c(0.8), c(0.05)), &p, &s).unwrap_err();
    assert_eq!(e.kind(), "ConvergenceDomain");
    // a collision of the bounding pole lattices
    let a = ThreePointArgs::new([c(1.0), c(0.7), c(0.6)], [c(1.3), c(0.2), c(0.15)]);
    assert_eq!(h_pt(&a, &p, &s).unwrap_err().kind(), "PoleCollision");
    assert!(LiouvilleParams::new(2.0).is_err());
}
