//! Fusion and modular kernels through `H_PT` and `G_Hos`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::{
    conformal_dim, g_hos, h_pt, ln_unit_volume_constant, BulkBoundaryArgs, Evaluation, LogAcc, ThreePointArgs,
};
use crate::error::{Error, Result};
use crate::numerics::QuadSettings;
use crate::specialfn::LiouvilleParams;

/// Kernel parameters: `α′₁..α′₄` for the fusion kernel or a single `α′`
/// for the modular kernel, and the momenta `P`, `P′`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelArgs {
    pub alpha_primes: Vec<C>,
    pub p: C,
    pub p_prime: C,
}

impl KernelArgs {
    /// `β₁ = α′₂, β₂ = Q − iP′, β₃ = α′₃, 2σ₁ = Q + iP, 2σ₂ = α′₁, 2σ₃ = α′₄`.
    pub fn to_three_point(&self, lp: &LiouvilleParams) -> Result<ThreePointArgs> {
        if self.alpha_primes.len() != 4 {
            return Err(Error::InvalidParameter(format!(
                "fusion kernel needs 4 alpha' values, got {}",
                self.alpha_primes.len()
            )));
        }
        let a = &self.alpha_primes;
        let q = lp.q;
        let i = C::i();
        Ok(ThreePointArgs {
            beta: [a[1], q - i * self.p_prime, a[2]],
            sigma: [(q + i * self.p) / 2.0, a[0] / 2.0, a[3] / 2.0],
        })
    }

    /// Inverse of [`KernelArgs::to_three_point`].
    pub fn from_three_point(t: &ThreePointArgs, lp: &LiouvilleParams) -> Self {
        let q = lp.q;
        let i = C::i();
        KernelArgs {
            alpha_primes: vec![2.0 * t.sigma[1], t.beta[0], t.beta[2], 2.0 * t.sigma[2]],
            p: (2.0 * t.sigma[0] - q) / i,
            p_prime: (q - t.beta[1]) / i,
        }
    }

    /// `α = Q + iP′, β = α′, 2σ = Q + iP`.
    pub fn to_bulk_boundary(&self, lp: &LiouvilleParams) -> Result<BulkBoundaryArgs> {
        if self.alpha_primes.len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "modular kernel needs 1 alpha' value, got {}",
                self.alpha_primes.len()
            )));
        }
        let q = lp.q;
        let i = C::i();
        Ok(BulkBoundaryArgs {
            alpha: q + i * self.p_prime,
            beta: self.alpha_primes[0],
            sigma: (q + i * self.p) / 2.0,
        })
    }

    pub fn from_bulk_boundary(a: &BulkBoundaryArgs, lp: &LiouvilleParams) -> Self {
        let q = lp.q;
        let i = C::i();
        KernelArgs {
            alpha_primes: vec![a.beta],
            p: (2.0 * a.sigma - q) / i,
            p_prime: (a.alpha - q) / i,
        }
    }
}

fn ln_fusion_prefactor(t: &ThreePointArgs, lp: &LiouvilleParams) -> Result<(C, bool)> {
    let q = lp.q;
    let [b1, b2, b3] = t.beta;
    let [s1, s2, s3] = t.sigma;
    let mut acc = LogAcc::new();
    acc.add(C::new(-(2.0 * PI).ln(), 0.0));
    acc.add((t.beta_sum() - 2.0 * q) / (2.0 * lp.gamma) * ln_unit_volume_constant(lp));
    let wn = "fusion prefactor numerator";
    let wd = "fusion prefactor denominator";
    acc.gamma_num(C::new(q, 0.0), lp, wn)?;
    acc.gamma_num(q - b1, lp, wn)?;
    acc.gamma_num(q - b3, lp, wn)?;
    acc.gamma_den(b2 - q, lp, wd)?;
    for e in [-1.0, 1.0] {
        acc.gamma_num(q + e * (2.0 * s1 - q), lp, wn)?;
        acc.sine_num((q + b2 - b3) / 2.0 + e * (q - b1) / 2.0, lp, wn)?;
        for f in [-1.0, 1.0] {
            acc.gamma_num(b2 / 2.0 + e * (q - 2.0 * s2) / 2.0 + f * (q - 2.0 * s3) / 2.0, lp, wn)?;
            acc.gamma_den(
                q - b1 / 2.0 + e * (q - 2.0 * s1) / 2.0 + f * (q - 2.0 * s2) / 2.0,
                lp,
                wd,
            )?;
            acc.gamma_den(
                q - b3 / 2.0 + e * (q - 2.0 * s1) / 2.0 + f * (q - 2.0 * s3) / 2.0,
                lp,
                wd,
            )?;
        }
    }
    Ok((acc.sum, acc.zero))
}

fn ln_modular_prefactor(a: &BulkBoundaryArgs, lp: &LiouvilleParams) -> Result<(C, bool)> {
    let q = lp.q;
    let g = lp.gamma;
    let (alpha, beta, sigma) = (a.alpha, a.beta, a.sigma);
    let mut acc = LogAcc::new();
    // −π/2
    acc.add(C::new((PI / 2.0).ln(), PI));
    acc.add((2.0 * conformal_dim(alpha, lp) - conformal_dim(beta, lp)) * 2f64.ln());
    acc.add(((2.0 / g - g / 2.0) * (q - alpha) + 1.0) * lp.b().ln());
    acc.add((alpha + beta / 2.0 - q) / g * ln_unit_volume_constant(lp));
    let wn = "modular prefactor numerator";
    let wd = "modular prefactor denominator";
    for e in [-1.0, 1.0] {
        acc.gamma_num(q + e * (2.0 * sigma - q), lp, wn)?;
        acc.gamma_den(q - beta / 2.0 + e * (2.0 * sigma - q), lp, wd)?;
    }
    acc.gamma_num(q - beta, lp, wn)?;
    acc.gamma_num(C::new(q, 0.0), lp, wn)?;
    acc.euler_den(2.0 / g * (alpha - q), wd)?;
    acc.euler_den(g * alpha / 4.0 - g * g / 4.0, wd)?;
    acc.gamma_den(q - beta / 2.0, lp, wd)?;
    acc.gamma_den(q - beta / 2.0, lp, wd)?;
    Ok((acc.sum, acc.zero))
}

/// Virasoro fusion kernel through `H_PT`.
pub fn fusion_kernel(k: &KernelArgs, lp: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let t = k.to_three_point(lp)?;
    let (lf, zero) = ln_fusion_prefactor(&t, lp)?;
    if zero {
        return Ok(Evaluation {
            value: C::new(0.0, 0.0),
            err_est: 0.0,
        });
    }
    let h = h_pt(&t, lp, s)?;
    let f = lf.exp();
    Ok(Evaluation {
        value: f * h.value,
        err_est: f.norm() * h.err_est,
    })
}

/// Modular kernel through `G_Hos`.
pub fn modular_kernel(k: &KernelArgs, lp: &LiouvilleParams, s: &QuadSettings) -> Result<Evaluation> {
    let a = k.to_bulk_boundary(lp)?;
    let (lf, zero) = ln_modular_prefactor(&a, lp)?;
    if zero {
        return Ok(Evaluation {
            value: C::new(0.0, 0.0),
            err_est: 0.0,
        });
    }
    let g = g_hos(&a, lp, s)?;
    let f = lf.exp();
    Ok(Evaluation {
        value: f * g.value,
        err_est: f.norm() * g.err_est,
    })
}
