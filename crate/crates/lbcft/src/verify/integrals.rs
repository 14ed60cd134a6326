//! Two double-sine integral identities, each side evaluated independently.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::{IdentityReport, Params};
use crate::contour::{integrate_contour, plan_contour, PoleLattice};
use crate::error::{Error, Result};
use crate::numerics::QuadSettings;
use crate::specialfn::{log_double_sine, LiouvilleParams};
use crate::structure_constants::{j_hos, BulkBoundaryArgs, LogAcc};

const I: C = C { re: 0.0, im: 1.0 };

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Both sides of
/// `∫ e^{2πiτβ'} e^{iπτ(α'−Q)} S(τ+α')/S(τ+Q) dτ
///   = i e^{iπα'(Q−α')/2} e^{−iπα'β'} S(α')S(β')/S(α'+β')`.
pub fn fourier_sine_sides(alpha_p: C, beta_p: C, p: &LiouvilleParams, s: &QuadSettings) -> Result<(C, C)> {
    let q = p.q;
    let up = 2.0 * PI * beta_p.re;
    let down = 2.0 * PI * (q - (alpha_p + beta_p).re);
    if !(up > 0.0 && down > 0.0) {
        return Err(Error::ConvergenceDomain(format!(
            "need Re beta' > 0 and Re(alpha' + beta') < Q, got {} and {}",
            beta_p,
            alpha_p + beta_p
        )));
    }
    let f = |t: C| -> Result<C> {
        let mut acc = LogAcc::new();
        acc.add(2.0 * PI * I * t * beta_p + I * PI * t * (alpha_p - q));
        acc.sine_num(t + alpha_p, p, "Fourier integrand")?;
        acc.sine_den(t + q, p, "Fourier integrand")?;
        acc.value()
    };
    let spec = plan_contour(
        &[PoleLattice::left(-alpha_p)],
        &[PoleLattice::right(c(0.0))],
        up.min(down),
        1e-2 * s.rel_tol,
        p,
    )?;
    let lhs = I * integrate_contour(f, &spec, s)?.value;
    let mut acc = LogAcc::new();
    acc.add(I * PI * alpha_p * (q - alpha_p) / 2.0 - I * PI * alpha_p * beta_p);
    acc.sine_num(alpha_p, p, "Fourier right side")?;
    acc.sine_num(beta_p, p, "Fourier right side")?;
    acc.sine_den(alpha_p + beta_p, p, "Fourier right side")?;
    Ok((lhs, I * acc.value()?))
}

/// Both sides of the kernel identity
/// `∫ e^{2iπ(Q−α)σ₂} S(−β/4+σ±σ₂)/S(β/4+σ±σ₂)
///   = S(Q−β/2)/S(β/2) · ∫ e^{2iπ(Q−2σ)σ₂} S(½(α+β/2−Q)±σ₂)/S(½(α−β/2+Q)±σ₂)`,
/// both with measure `dσ₂/i`.
pub fn kernel_sides(alpha: C, beta: C, sigma: C, p: &LiouvilleParams, s: &QuadSettings) -> Result<(C, C)> {
    let q = p.q;
    let up = PI * beta.re + 2.0 * PI * (q - alpha.re);
    let down = PI * beta.re - 2.0 * PI * (q - alpha.re);
    if !(up > 0.0 && down > 0.0) {
        return Err(Error::ConvergenceDomain(format!(
            "need |Q - alpha| < beta/2, got alpha = {}, beta = {}",
            alpha, beta
        )));
    }
    let f = |t: C| -> Result<C> {
        let mut acc = LogAcc::new();
        acc.add(2.0 * PI * I * (q - alpha) * t);
        for e in [-1.0, 1.0] {
            acc.sine_num(-beta / 4.0 + sigma + e * t, p, "kernel integrand")?;
            acc.sine_den(beta / 4.0 + sigma + e * t, p, "kernel integrand")?;
        }
        acc.value()
    };
    let left = [
        PoleLattice::left(beta / 4.0 - sigma),
        PoleLattice::left(beta / 4.0 + sigma - q),
    ];
    let right = [
        PoleLattice::right(sigma - beta / 4.0),
        PoleLattice::right(q - beta / 4.0 - sigma),
    ];
    let spec = plan_contour(&left, &right, up.min(down), 1e-2 * s.rel_tol, p)?;
    let lhs = integrate_contour(f, &spec, s)?.value;
    let ratio = (log_double_sine(q - beta / 2.0, p)? - log_double_sine(beta / 2.0, p)?).exp();
    let j = j_hos(&BulkBoundaryArgs::new(alpha, beta, sigma), p, s)?.value;
    Ok((lhs, ratio * j))
}

/// The two identities on two samples each.
///
/// The Fourier identity is taken at `(α', β') = (Q − β/2, Q − α)` with
/// `β = 0.9`, `α = Q − β/4`, and at `(0.45Q, 0.3Q)`. The kernel identity uses
/// `β = 0.4Q`, `α = Q − β/4` at `σ = Q/2` and `σ = Q/2 + 0.1 + 0.05i`.
pub fn check_sine_integral_identities(p: &LiouvilleParams, s: &QuadSettings, tol: f64) -> Vec<IdentityReport> {
    let q = p.q;
    let mut out = Vec::new();
    let beta = 0.9;
    let alpha = q - beta / 4.0;
    for (ap, bp) in [(c(q - beta / 2.0), c(q - alpha)), (c(0.45 * q), c(0.3 * q))] {
        let params = Params::new()
            .real("gamma", p.gamma)
            .with("alpha_prime", ap)
            .with("beta_prime", bp);
        out.push(IdentityReport::run("sine_integral_fourier", params, tol, || {
            fourier_sine_sides(ap, bp, p, s)
        }));
    }
    let beta = c(0.4 * q);
    let alpha = q - beta / 4.0;
    for sigma in [c(q / 2.0), C::new(q / 2.0 + 0.1, 0.05)] {
        let params = Params::new()
            .real("gamma", p.gamma)
            .with("alpha", alpha)
            .with("beta", beta)
            .with("sigma", sigma);
        out.push(IdentityReport::run("sine_integral_kernel", params, tol, || {
            kernel_sides(alpha, beta, sigma, p, s)
        }));
    }
    out
}
