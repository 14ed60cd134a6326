//! Position-dependent correlators built from `H_PT` and `G_Hos` (`μ = 1`).

use num_complex::Complex64 as C;

use super::{conformal_dim, g_hos, h_pt, BulkBoundaryArgs, Evaluation, ThreePointArgs};
use crate::error::{Error, Result};
use crate::numerics::QuadSettings;
use crate::specialfn::LiouvilleParams;

fn pow_abs(x: f64, e: C) -> C {
    (e * x.abs().ln()).exp()
}

/// Position factor of the boundary three-point function; `s3 = None` puts the
/// third insertion at infinity (the `|s₃|^{2Δ₃}`-normalized limit).
pub fn position_factor_3pt(s1: f64, s2: f64, s3: Option<f64>, beta: [C; 3], p: &LiouvilleParams) -> Result<C> {
    let [d1, d2, d3] = beta.map(|b| conformal_dim(b, p));
    if s1 == s2 || s3.is_some_and(|s| s == s1 || s == s2) {
        return Err(Error::CoincidentPoints);
    }
    let mut f = pow_abs(s1 - s2, -(d1 + d2 - d3));
    if let Some(s3) = s3 {
        f *= pow_abs(s1 - s3, -(d1 + d3 - d2)) * pow_abs(s2 - s3, -(d2 + d3 - d1));
    }
    Ok(f)
}

/// `⟨Π e^{β_j φ(s_j)/2}⟩ = H / Π|s_i − s_j|^{…}`.
pub fn boundary_3pt(
    s1: f64,
    s2: f64,
    s3: Option<f64>,
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
) -> Result<Evaluation> {
    let f = position_factor_3pt(s1, s2, s3, a.beta, p)?;
    let h = h_pt(a, p, s)?;
    Ok(Evaluation {
        value: f * h.value,
        err_est: f.norm() * h.err_est,
    })
}

/// `|z − z̄|^{−(2Δ_α − Δ_β)} |z − s|^{−2Δ_β}`.
pub fn position_factor_bb(z: C, s0: f64, alpha: C, beta: C, p: &LiouvilleParams) -> Result<C> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!(
            "bulk point must lie in the upper half-plane, got {}",
            z
        )));
    }
    let da = conformal_dim(alpha, p);
    let db = conformal_dim(beta, p);
    Ok(pow_abs(2.0 * z.im, -(2.0 * da - db)) * pow_abs((z - s0).norm(), -2.0 * db))
}

/// `⟨e^{αφ(z)} e^{βφ(s)/2}⟩ = G / (|z − z̄|^{2Δ_α − Δ_β} |z − s|^{2Δ_β})`.
pub fn bulk_boundary(z: C, s0: f64, a: &BulkBoundaryArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let f = position_factor_bb(z, s0, a.alpha, a.beta, p)?;
    let g = g_hos(a, p, s)?;
    Ok(Evaluation {
        value: f * g.value,
        err_est: f.norm() * g.err_est,
    })
}
