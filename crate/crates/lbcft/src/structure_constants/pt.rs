//! `J_PT` and the boundary three-point constant `H_PT`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::{ln_unit_volume_constant, Evaluation, LogAcc, ThreePointArgs};
use crate::contour::{integrate_contour_with_height, plan_contour, pt_pole_seeds, ContourResult, ContourSpec};
use crate::error::Result;
use crate::numerics::QuadSettings;
use crate::specialfn::LiouvilleParams;

/// Exponential decay rate of the `J_PT` integrand along `Im r → ±∞`.
///
/// The quadratic parts of the eight `S_b` asymptotics cancel and the linear
/// parts leave `|integrand| ~ e^{−2πQ|Im r|}`, for every parameter value.
pub fn pt_decay_rate(p: &LiouvilleParams) -> f64 {
    2.0 * PI * p.q
}

/// Shifts `(numerator, denominator)` of the four `S_b(· + r)` factors above
/// and below the fraction bar.
pub fn pt_integrand_args(a: &ThreePointArgs, p: &LiouvilleParams) -> ([C; 4], [C; 4]) {
    let q = p.q;
    let [b1, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let num = [
        (q - b2) / 2.0 + s3 + (q / 2.0 - s2),
        (q - b2) / 2.0 + s3 - (q / 2.0 - s2),
        q / 2.0 + (q - b3) / 2.0 + s3 - s1,
        q / 2.0 - (q - b3) / 2.0 + s3 - s1,
    ];
    let den = [
        1.5 * q + (q - b1) / 2.0 - b2 / 2.0 + s3 - s1,
        1.5 * q - (q - b1) / 2.0 - b2 / 2.0 + s3 - s1,
        2.0 * s3,
        C::new(q, 0.0),
    ];
    (num, den)
}

/// The `J_PT` integrand as a function of `r`.
pub fn pt_integrand<'a>(a: &ThreePointArgs, p: &'a LiouvilleParams) -> impl Fn(C) -> Result<C> + 'a {
    let (num, den) = pt_integrand_args(a, p);
    move |r: C| {
        let mut acc = LogAcc::new();
        for x in num {
            acc.sine_num(x + r, p, "J_PT integrand")?;
        }
        for x in den {
            acc.sine_den(x + r, p, "J_PT integrand")?;
        }
        acc.value()
    }
}

/// Plan the `J_PT` contour for quadrature settings `s`.
pub fn pt_contour(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<ContourSpec> {
    let (left, right) = pt_pole_seeds(a, p);
    plan_contour(&left, &right, pt_decay_rate(p), 1e-2 * s.rel_tol, p)
}

/// `J_PT` along a given plan, optionally forcing the truncation height.
pub fn j_pt_on(
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    spec: &ContourSpec,
    height: Option<f64>,
) -> Result<ContourResult> {
    integrate_contour_with_height(pt_integrand(a, p), spec, s, height)
}

/// `J_PT`: the contour integral of `H_PT` without its prefactor.
pub fn j_pt(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let spec = pt_contour(a, p, s)?;
    let r = j_pt_on(a, p, s, &spec, None)?;
    Ok(Evaluation {
        value: r.value,
        err_est: r.error,
    })
}

/// `log` of the prefactor multiplying `J_PT` in `H_PT`. The flag is true when
/// the prefactor vanishes.
pub fn ln_pt_prefactor(a: &ThreePointArgs, p: &LiouvilleParams) -> Result<(C, bool)> {
    let q = p.q;
    let [b1, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let mut acc = LogAcc::new();
    acc.add(C::new((2.0 * PI).ln(), 0.0));
    acc.add((2.0 * q - a.beta_sum()) / (2.0 * p.gamma) * ln_unit_volume_constant(p));
    let what_g = "H_PT prefactor Gamma_b(Q - b2/2 ± (Q-b1)/2 ± (Q-b3)/2)";
    for e1 in [-1.0, 1.0] {
        for e3 in [-1.0, 1.0] {
            acc.gamma_num(q - b2 / 2.0 + e1 * (q - b1) / 2.0 + e3 * (q - b3) / 2.0, p, what_g)?;
        }
    }
    let what_s = "H_PT prefactor S_b denominator";
    for e in [-1.0, 1.0] {
        acc.sine_den(b3 / 2.0 - s1 + q / 2.0 + e * (q / 2.0 - s3), p, what_s)?;
        acc.sine_den(b1 / 2.0 + s1 - q / 2.0 + e * (q / 2.0 - s2), p, what_s)?;
    }
    let what_d = "H_PT prefactor Gamma_b denominator";
    acc.gamma_den(C::new(q, 0.0), p, what_d)?;
    for b in a.beta {
        acc.gamma_den(q - b, p, what_d)?;
    }
    Ok((acc.sum, acc.zero))
}

/// The boundary three-point constant `H_PT`.
pub fn h_pt(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let (lp, zero) = ln_pt_prefactor(a, p)?;
    // a zero of the prefactor only gives 0 when the integral is finite there
    let j = j_pt(a, p, s)?;
    if zero {
        return Ok(Evaluation {
            value: C::new(0.0, 0.0),
            err_est: 0.0,
        });
    }
    let f = lp.exp();
    Ok(Evaluation {
        value: f * j.value,
        err_est: f.norm() * j.err_est,
    })
}
