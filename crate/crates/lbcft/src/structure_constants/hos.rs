//! `J_Hos` and the bulk-boundary constant `G_Hos`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::{conformal_dim, ln_unit_volume_constant, BulkBoundaryArgs, Evaluation, LogAcc};
use crate::contour::{hos_pole_seeds, integrate_contour_with_height, plan_contour, ContourResult, ContourSpec};
use crate::error::{Error, Result};
use crate::numerics::QuadSettings;
use crate::specialfn::LiouvilleParams;

/// Decay rate of the `J_Hos` integrand, the smaller of the two directions:
/// `4π(Re σ − Re β/4)` towards `−i∞` and `4π(Q − Re σ − Re β/4)` towards
/// `+i∞`. Outside the convergence strip this is a `ConvergenceDomain` error.
pub fn hos_decay_rate(a: &BulkBoundaryArgs, p: &LiouvilleParams) -> Result<f64> {
    let q = p.q;
    let (bs, ss) = (a.beta.re, a.sigma.re);
    let k = 4.0 * PI * (ss - bs / 4.0).min(q - ss - bs / 4.0);
    if !(bs / 2.0 < q) || !(k > 0.0) {
        return Err(Error::ConvergenceDomain(format!(
            "J_Hos needs Re beta/2 < Q and Re sigma in (Re beta/4, Q - Re beta/4); got beta = {}, sigma = {}",
            a.beta, a.sigma
        )));
    }
    Ok(k)
}

/// The `J_Hos` integrand as a function of `σ₂`.
pub fn hos_integrand<'a>(a: &BulkBoundaryArgs, p: &'a LiouvilleParams) -> impl Fn(C) -> Result<C> + 'a {
    let q = p.q;
    let (alpha, beta, sigma) = (a.alpha, a.beta, a.sigma);
    let na = 0.5 * (alpha + beta / 2.0 - q);
    let da = 0.5 * (alpha - beta / 2.0 + q);
    let freq = 2.0 * PI * C::i() * (q - 2.0 * sigma);
    move |s2: C| {
        let mut acc = LogAcc::new();
        acc.add(freq * s2);
        for e in [-1.0, 1.0] {
            acc.sine_num(na + e * s2, p, "J_Hos integrand")?;
            acc.sine_den(da + e * s2, p, "J_Hos integrand")?;
        }
        acc.value()
    }
}

pub fn hos_contour(a: &BulkBoundaryArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<ContourSpec> {
    let kappa = hos_decay_rate(a, p)?;
    let (left, right) = hos_pole_seeds(a.alpha, a.beta, p);
    plan_contour(&left, &right, kappa, 1e-2 * s.rel_tol, p)
}

pub fn j_hos_on(
    a: &BulkBoundaryArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    spec: &ContourSpec,
    height: Option<f64>,
) -> Result<ContourResult> {
    integrate_contour_with_height(hos_integrand(a, p), spec, s, height)
}

/// `J_Hos`: the contour integral of `G_Hos` without its prefactor.
pub fn j_hos(a: &BulkBoundaryArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let spec = hos_contour(a, p, s)?;
    let r = j_hos_on(a, p, s, &spec, None)?;
    Ok(Evaluation {
        value: r.value,
        err_est: r.error,
    })
}

/// `log` of the prefactor multiplying `J_Hos` in `G_Hos`; the flag is true
/// when it vanishes.
pub fn ln_hos_prefactor(a: &BulkBoundaryArgs, p: &LiouvilleParams) -> Result<(C, bool)> {
    let q = p.q;
    let (alpha, beta) = (a.alpha, a.beta);
    let mut acc = LogAcc::new();
    acc.add(C::new((2.0 * PI).ln(), 0.0));
    acc.add((conformal_dim(beta, p) - 2.0 * conformal_dim(alpha, p)) * 2f64.ln());
    acc.add((q - alpha - beta / 2.0) / p.gamma * ln_unit_volume_constant(p));
    let what_n = "G_Hos prefactor Gamma_b numerator";
    acc.gamma_num(2.0 * q - beta / 2.0 - alpha, p, what_n)?;
    acc.gamma_num(alpha - beta / 2.0, p, what_n)?;
    for _ in 0..3 {
        acc.gamma_num(q - beta / 2.0, p, what_n)?;
    }
    let what_d = "G_Hos prefactor Gamma_b denominator";
    for x in [q - alpha, q - beta, alpha, C::new(q, 0.0), beta / 2.0] {
        acc.gamma_den(x, p, what_d)?;
    }
    Ok((acc.sum, acc.zero))
}

/// The bulk-boundary constant `G_Hos`.
pub fn g_hos(a: &BulkBoundaryArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let (lp, zero) = ln_hos_prefactor(a, p)?;
    // a zero of the prefactor only gives 0 when the integral is finite there
    let j = j_hos(a, p, s)?;
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
