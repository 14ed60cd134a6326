//! Closed forms and contour integrals for the boundary structure constants.
//!
//! Everything is assembled in log space: each special-function factor
//! contributes a `log Γ_b` or `log S_b`, and a single `exp` produces the
//! value. A denominator pole or a numerator zero makes the whole product
//! vanish; a numerator pole or a denominator zero is reported as
//! [`Error::PoleEncountered`].

mod corr;
mod hos;
mod kernels;
mod pt;
mod rfzz;

pub use corr::{boundary_3pt, bulk_boundary, position_factor_3pt, position_factor_bb};
pub use hos::{g_hos, hos_contour, hos_decay_rate, hos_integrand, j_hos, j_hos_on, ln_hos_prefactor};
pub use kernels::{fusion_kernel, modular_kernel, KernelArgs};
pub use pt::{h_pt, j_pt, j_pt_on, ln_pt_prefactor, pt_contour, pt_decay_rate, pt_integrand, pt_integrand_args};
pub use rfzz::{ln_gamma_b_reflection_ratio, r_fzz};

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{lngamma, log_double_gamma, log_double_sine, LiouvilleParams};

/// `(β₁, β₂, β₃)` and `(σ₁, σ₂, σ₃)` of the boundary three-point constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreePointArgs {
    pub beta: [C; 3],
    pub sigma: [C; 3],
}

impl ThreePointArgs {
    pub fn new(beta: [C; 3], sigma: [C; 3]) -> Self {
        ThreePointArgs { beta, sigma }
    }

    pub fn beta_sum(&self) -> C {
        self.beta[0] + self.beta[1] + self.beta[2]
    }

    pub fn with_beta1(&self, b1: C) -> Self {
        let mut a = *self;
        a.beta[0] = b1;
        a
    }
}

/// `(α, β, σ)` of the bulk-boundary constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkBoundaryArgs {
    pub alpha: C,
    pub beta: C,
    pub sigma: C,
}

impl BulkBoundaryArgs {
    pub fn new(alpha: C, beta: C, sigma: C) -> Self {
        BulkBoundaryArgs { alpha, beta, sigma }
    }
}

/// `(β, σ₁, σ₂)` of the reflection coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectionArgs {
    pub beta: C,
    pub sigma1: C,
    pub sigma2: C,
}

impl ReflectionArgs {
    pub fn new(beta: C, sigma1: C, sigma2: C) -> Self {
        ReflectionArgs { beta, sigma1, sigma2 }
    }
}

/// The two admissible shift steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chi {
    /// `χ = γ/2`
    HalfGamma,
    /// `χ = 2/γ`
    TwoOverGamma,
}

impl Chi {
    pub fn value(self, p: &LiouvilleParams) -> f64 {
        match self {
            Chi::HalfGamma => p.b(),
            Chi::TwoOverGamma => p.inv_b(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chi::HalfGamma => "gamma/2",
            Chi::TwoOverGamma => "2/gamma",
        }
    }

    pub fn both() -> [Chi; 2] {
        [Chi::HalfGamma, Chi::TwoOverGamma]
    }
}

/// `χ` together with `q = (2Q − β₁ − β₂ − β₃ + χ)/γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftContext {
    pub chi: f64,
    pub q: C,
}

impl ShiftContext {
    pub fn new(chi: Chi, beta: [C; 3], p: &LiouvilleParams) -> Self {
        let c = chi.value(p);
        ShiftContext {
            chi: c,
            q: (2.0 * p.q - beta[0] - beta[1] - beta[2] + c) / p.gamma,
        }
    }

    /// Build from a raw `χ`, which must be `γ/2` or `2/γ`.
    pub fn from_value(chi: f64, beta: [C; 3], p: &LiouvilleParams) -> Result<Self> {
        let tol = 1e-14 * chi.abs().max(1.0);
        let which = if (chi - p.b()).abs() <= tol {
            Chi::HalfGamma
        } else if (chi - p.inv_b()).abs() <= tol {
            Chi::TwoOverGamma
        } else {
            return Err(Error::InvalidParameter(format!(
                "chi must be gamma/2 = {} or 2/gamma = {}, got {}",
                p.b(),
                p.inv_b(),
                chi
            )));
        };
        Ok(ShiftContext::new(which, beta, p))
    }
}

/// A value together with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: C,
    pub err_est: f64,
}

fn sqrt_inv_sin(p: &LiouvilleParams) -> f64 {
    (1.0 / (PI * p.gamma * p.gamma / 4.0).sin()).sqrt()
}

/// `μ_B(σ) = √(1/sin(πγ²/4)) · cos(πγ(σ − Q/2))`.
pub fn mu_of_sigma(sigma: C, p: &LiouvilleParams) -> C {
    sqrt_inv_sin(p) * (PI * p.gamma * (sigma - p.q / 2.0)).cos()
}

/// Inverse of [`mu_of_sigma`] on the band `|Re σ − Q/2| < 1/(2γ)`, taking
/// the principal `arccos` (so `Re σ ≥ Q/2`).
pub fn sigma_of_mu(mu: C, p: &LiouvilleParams) -> Result<C> {
    if !(mu.re.is_finite() && mu.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite mu {}", mu)));
    }
    let theta = (mu / sqrt_inv_sin(p)).acos();
    let sigma = p.q / 2.0 + theta / (PI * p.gamma);
    let edge = p.q / 2.0 + 1.0 / (2.0 * p.gamma);
    if (sigma.re - edge).abs() < 1e-10 {
        return Err(Error::BranchAmbiguity(sigma));
    }
    if sigma.re > edge {
        return Err(Error::Domain(format!(
            "mu = {} has Re mu < 0: no representative in the principal band",
            mu
        )));
    }
    Ok(sigma)
}

/// `g_χ(σ) = sin(πγ²/4)^{−χ/γ} · cos(2πχ(σ − Q/2))`.
pub fn g_chi(sigma: C, chi: f64, p: &LiouvilleParams) -> C {
    let s = (PI * p.gamma * p.gamma / 4.0).sin();
    s.powf(-chi / p.gamma) * (2.0 * PI * chi * (sigma - p.q / 2.0)).cos()
}

/// `Δ_β = (β/2)(Q − β/2)`.
pub fn conformal_dim(beta: C, p: &LiouvilleParams) -> C {
    beta / 2.0 * (p.q - beta / 2.0)
}

/// `log` of `π (γ/2)^{2−γ²/2} Γ(γ²/4) / Γ(1 − γ²/4)`.
pub fn ln_unit_volume_constant(p: &LiouvilleParams) -> f64 {
    let g2 = p.gamma * p.gamma / 4.0;
    let lg = |x: f64| lngamma(C::new(x, 0.0)).map(|v| v.re).unwrap_or(f64::NAN);
    PI.ln() + (2.0 - 2.0 * g2) * p.b().ln() + lg(g2) - lg(1.0 - g2)
}

/// `π (γ/2)^{2−γ²/2} Γ(γ²/4) / Γ(1 − γ²/4)`.
pub fn unit_volume_constant(p: &LiouvilleParams) -> f64 {
    ln_unit_volume_constant(p).exp()
}

/// Running `log` of a product of special-function factors.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogAcc {
    pub sum: C,
    pub zero: bool,
}

fn relabel(e: Error, what: &'static str) -> Error {
    match e {
        Error::PoleEncountered { at, n, m, .. } => Error::PoleEncountered { what, at, n, m },
        Error::ZeroEncountered { at, n, m, .. } => Error::PoleEncountered { what, at, n, m },
        other => other,
    }
}

impl LogAcc {
    pub fn new() -> Self {
        LogAcc {
            sum: C::new(0.0, 0.0),
            zero: false,
        }
    }

    pub fn add(&mut self, v: C) {
        self.sum += v;
    }

    pub fn sine_num(&mut self, x: C, p: &LiouvilleParams, what: &'static str) -> Result<()> {
        match log_double_sine(x, p) {
            Ok(v) => self.sum += v,
            Err(Error::ZeroEncountered { .. }) => self.zero = true,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    pub fn sine_den(&mut self, x: C, p: &LiouvilleParams, what: &'static str) -> Result<()> {
        match log_double_sine(x, p) {
            Ok(v) => self.sum -= v,
            Err(Error::PoleEncountered { .. }) => self.zero = true,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    pub fn gamma_num(&mut self, x: C, p: &LiouvilleParams, what: &'static str) -> Result<()> {
        match log_double_gamma(x, p) {
            Ok(v) => self.sum += v,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    pub fn gamma_den(&mut self, x: C, p: &LiouvilleParams, what: &'static str) -> Result<()> {
        match log_double_gamma(x, p) {
            Ok(v) => self.sum -= v,
            Err(Error::PoleEncountered { .. }) => self.zero = true,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    /// `Γ(x)` in the numerator.
    pub fn euler_num(&mut self, x: C, what: &'static str) -> Result<()> {
        match lngamma(x) {
            Ok(v) => self.sum += v,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    /// `Γ(x)` in the denominator.
    pub fn euler_den(&mut self, x: C, what: &'static str) -> Result<()> {
        match lngamma(x) {
            Ok(v) => self.sum -= v,
            Err(Error::PoleEncountered { .. }) => self.zero = true,
            Err(e) => return Err(relabel(e, what)),
        }
        Ok(())
    }

    pub fn value(&self) -> Result<C> {
        if self.zero {
            return Ok(C::new(0.0, 0.0));
        }
        let v = self.sum.exp();
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("product overflows (log = {})", self.sum)))
        }
    }
}
