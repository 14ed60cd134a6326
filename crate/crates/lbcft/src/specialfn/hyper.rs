//! Gauss hypergeometric function `F(A,B,C;t)` for real `t < 1` and the two
//! connection matrices of the hypergeometric equation
//! `t(1−t)f'' + (C − (A+B+1)t)f' − ABf = 0`.
//!
//! Bases (powers of negative `t` are taken as powers of `|t|`):
//!
//! ```text
//! near 0 : F(A,B,C;t),                 |t|^{1−C} F(1+A−C, 1+B−C, 2−C; t)
//! near 1 : F(A,B,1+A+B−C;1−t),         (1−t)^{C−A−B} F(C−A, C−B, 1+C−A−B; 1−t)
//! near ∞ : |t|^{−A} F(A,1+A−C,1+A−B;1/t), |t|^{−B} F(B,1+B−C,1+B−A;1/t)
//! ```

use num_complex::Complex64 as C;

use super::gamma::lngamma;
use crate::error::{Error, Result};

/// Parameters `(A, B, C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: C,
    pub b: C,
    pub c: C,
}

impl HypParams {
    pub fn new(a: C, b: C, c: C) -> Self {
        HypParams { a, b, c }
    }
}

pub type Matrix2 = [[C; 2]; 2];

const INTEGER_GAP: f64 = 1e-8;

fn near_integer(z: C) -> bool {
    (z - C::new(z.re.round(), 0.0)).norm() < INTEGER_GAP
}

fn require_gap(z: C, name: &str) -> Result<()> {
    if near_integer(z) {
        Err(Error::DegenerateConnection(format!(
            "{} = {} is within {:e} of an integer",
            name, z, INTEGER_GAP
        )))
    } else {
        Ok(())
    }
}

fn series(h: &HypParams, t: f64) -> Result<C> {
    let cn = h.c;
    if cn.im == 0.0 && cn.re <= 0.0 && cn.re == cn.re.round() {
        return Err(Error::PoleEncountered {
            what: "hypergeometric series (C)",
            at: cn,
            n: (-cn.re) as u32,
            m: 0,
        });
    }
    let mut sum = C::new(1.0, 0.0);
    let mut term = C::new(1.0, 0.0);
    for n in 0..20_000 {
        let nf = n as f64;
        term *= (h.a + nf) * (h.b + nf) / ((h.c + nf) * (nf + 1.0)) * t;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && n > 2 {
            return Ok(sum);
        }
        if term == C::new(0.0, 0.0) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergent {
        last_change: term.norm(),
    })
}

fn lg(z: C) -> Result<C> {
    lngamma(z)
}

/// Matrix sending `(C₁, C₂⁺) ↦ (B₁, B₂⁻)` (0-basis coefficients to 1-basis).
pub fn connection_matrix_01(h: &HypParams) -> Result<Matrix2> {
    let (a, b, c) = (h.a, h.b, h.c);
    require_gap(c, "C")?;
    require_gap(c - a - b, "C−A−B")?;
    let one = C::new(1.0, 0.0);
    let two = C::new(2.0, 0.0);
    let m11 = lg(c)? + lg(c - a - b)? - lg(c - a)? - lg(c - b)?;
    let m12 = lg(two - c)? + lg(c - a - b)? - lg(one - a)? - lg(one - b)?;
    let m21 = lg(c)? + lg(a + b - c)? - lg(a)? - lg(b)?;
    let m22 = lg(two - c)? + lg(a + b - c)? - lg(a - c + one)? - lg(b - c + one)?;
    Ok([[m11.exp(), m12.exp()], [m21.exp(), m22.exp()]])
}

/// Matrix sending `(D₁, D₂⁺) ↦ (C₁, C₂⁻)` (∞-basis coefficients to 0-basis).
pub fn connection_matrix_0inf(h: &HypParams) -> Result<Matrix2> {
    let (a, b, c) = (h.a, h.b, h.c);
    require_gap(c, "C")?;
    require_gap(a - b, "A−B")?;
    let one = C::new(1.0, 0.0);
    let m11 = lg(one - c)? + lg(a - b + one)? - lg(a - c + one)? - lg(one - b)?;
    let m12 = lg(one - c)? + lg(b - a + one)? - lg(b - c + one)? - lg(one - a)?;
    let m21 = lg(c - one)? + lg(a - b + one)? - lg(a)? - lg(c - b)?;
    let m22 = lg(c - one)? + lg(b - a + one)? - lg(b)? - lg(c - a)?;
    Ok([[m11.exp(), m12.exp()], [m21.exp(), m22.exp()]])
}

/// `F(A,B,C;t)` for real `t < 1`.
pub fn hyp2f1(h: &HypParams, t: f64) -> Result<C> {
    if !t.is_finite() || t >= 1.0 {
        return Err(Error::Domain(format!("hyp2f1 requires t < 1, got {}", t)));
    }
    if t.abs() <= 0.5 {
        return series(h, t);
    }
    if t > 0.5 {
        let m = connection_matrix_01(h)?;
        let (a, b, c) = (h.a, h.b, h.c);
        let s = 1.0 - t;
        let f1 = series(&HypParams::new(a, b, 1.0 + a + b - c), s)?;
        let f2 = series(&HypParams::new(c - a, c - b, 1.0 + c - a - b), s)?;
        return Ok(m[0][0] * f1 + m[1][0] * C::new(s, 0.0).powc(c - a - b) * f2);
    }
    if t >= -1.0 {
        // Pfaff: F(A,B,C;t) = (1−t)^{−A} F(A, C−B, C; t/(t−1))
        let z = t / (t - 1.0);
        let inner = series(&HypParams::new(h.a, h.c - h.b, h.c), z)?;
        return Ok(C::new(1.0 - t, 0.0).powc(-h.a) * inner);
    }
    // t < −1: invert the ∞→0 matrix for (C₁, C₂⁻) = (1, 0)
    let m = connection_matrix_0inf(h)?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d1 = m[1][1] / det;
    let d2 = -m[1][0] / det;
    let (a, b, c) = (h.a, h.b, h.c);
    let w = 1.0 / t;
    let g1 = hyp2f1(&HypParams::new(a, 1.0 + a - c, 1.0 + a - b), w)?;
    let g2 = hyp2f1(&HypParams::new(b, 1.0 + b - c, 1.0 + b - a), w)?;
    let at = C::new(-t, 0.0);
    Ok(d1 * at.powc(-a) * g1 + d2 * at.powc(-b) * g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn elementary_cases() {
        // ₂F₁(1,1;2;t) = −ln(1−t)/t
        let h = HypParams::new(r(1.0), r(1.0), r(2.0));
        for t in [0.3, 0.5, -0.5, -0.9] {
            let v = hyp2f1(&h, t).unwrap();
            let e = -(1.0 - t).ln() / t;
            assert!(
                (v.re - e).abs() < 1e-12 * e.abs() && v.im.abs() < 1e-12,
                "t={} {}",
                t,
                v
            );
        }
        // C = 2 is an integer: the t → 1 − t connection is unavailable
        assert!(matches!(hyp2f1(&h, 0.8), Err(Error::DegenerateConnection(_))));
        // A = 0 gives the constant solution
        let h = HypParams::new(r(0.0), C::new(0.4, 0.2), r(1.3));
        assert!((hyp2f1(&h, 0.4).unwrap() - 1.0).norm() < 1e-14);
        assert!((hyp2f1(&h, -0.8).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn connection_rows_are_finite() {
        let h = HypParams::new(r(0.3), r(0.7), r(1.4));
        for m in [connection_matrix_01(&h).unwrap(), connection_matrix_0inf(&h).unwrap()] {
            assert!(m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()));
        }
    }

    #[test]
    fn integer_exponent_gap_is_degenerate() {
        let h = HypParams::new(r(0.3), r(0.7), r(1.0));
        assert!(matches!(connection_matrix_01(&h), Err(Error::DegenerateConnection(_))));
    }
}
