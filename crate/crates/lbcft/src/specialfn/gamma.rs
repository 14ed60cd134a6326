use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)) for k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Principal `ln Γ(z)`.
///
/// Upward recurrence to `Re z ≥ 10` followed by the Stirling series. Summing
/// principal logarithms in the recurrence keeps the branch continuous on
/// `ℂ ∖ (−∞, 0]`.
pub fn lngamma(z: C) -> Result<C> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("lngamma of non-finite {}", z)));
    }
    if z.re <= 0.5 {
        let k = z.re.round();
        if k <= 0.0 && (z - C::new(k, 0.0)).norm() < 1e-9 * (1.0 + k.abs()) {
            return Err(Error::PoleEncountered {
                what: "Gamma",
                at: z,
                n: (-k) as u32,
                m: 0,
            });
        }
    }
    let mut shift = C::new(0.0, 0.0);
    let mut w = z;
    while w.re < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = C::new(0.0, 0.0);
    let mut p = inv;
    for coef in STIRLING {
        series += p * coef;
        p *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift)
}

/// `Γ(z)` itself.
pub fn gamma(z: C) -> Result<C> {
    lngamma(z).map(|l| l.exp())
}

/// `ln Γ(1+z) − ln Γ(1−z)`, i.e. `ln(−Γ(z)/Γ(−z))`, regular at `z = 0`.
pub fn ln_gamma_ratio_sym(z: C) -> Result<C> {
    Ok(lngamma(1.0 + z)? - lngamma(1.0 - z)?)
}

/// `ln(2 sin z)` evaluated without overflow for large `|Im z|`.
/// Only the exponential is meaningful; the branch is arbitrary.
pub fn ln_2sin(z: C) -> C {
    let i = C::i();
    if z.im > 1.0 {
        // 2 sin z = i e^{-iz} (1 - e^{2iz})
        i * (PI / 2.0) - i * z + (1.0 - (2.0 * i * z).exp()).ln()
    } else if z.im < -1.0 {
        // 2 sin z = -i e^{iz} (1 - e^{-2iz})
        -i * (PI / 2.0) + i * z + (1.0 - (-2.0 * i * z).exp()).ln()
    } else {
        (2.0 * z.sin()).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_values() {
        assert!(lngamma(C::new(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(lngamma(C::new(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = lngamma(C::new(0.5, 0.0)).unwrap();
        assert!((half - C::new(0.5 * PI.ln(), 0.0)).norm() < 1e-14);
        let g = gamma(C::new(5.0, 0.0)).unwrap();
        assert!((g.re - 24.0).abs() < 1e-12);
    }

    #[test]
    fn poles_rejected() {
        for k in 0..5 {
            let e = lngamma(C::new(-(k as f64), 0.0)).unwrap_err();
            assert_eq!(e.kind(), "PoleEncountered");
        }
    }

    #[test]
    fn branch_continuity_along_a_path() {
        // half circle of radius 3.5 through the upper half plane, between the
        // poles at −3 and −4: no 2π jumps in the imaginary part
        let mut prev = lngamma(C::new(3.5, 0.0)).unwrap();
        for k in 1..=400 {
            let th = PI * 0.999 * k as f64 / 400.0;
            let z = C::from_polar(3.5, th);
            let v = lngamma(z).unwrap();
            assert!((v - prev).norm() < 0.2, "jump at {}", z);
            prev = v;
        }
    }

    #[test]
    fn ln_2sin_matches_direct() {
        for z in [C::new(0.3, 2.5), C::new(-1.2, -3.0), C::new(0.7, 0.2)] {
            let d = 2.0 * z.sin();
            assert!((ln_2sin(z).exp() - d).norm() < 1e-13 * d.norm());
        }
    }
}
