//! Shift, reflection and special-value checks.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::{IdentityReport, Params};
use crate::error::{Error, Result};
use crate::numerics::QuadSettings;
use crate::specialfn::{gamma, lngamma, log_double_sine, LiouvilleParams};
use crate::structure_constants::{g_chi, h_pt, j_pt, r_fzz, Chi, ReflectionArgs, ShiftContext, ThreePointArgs};

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn sin(z: C) -> C {
    z.sin()
}

fn three_point_params(a: &ThreePointArgs, p: &LiouvilleParams) -> Params {
    Params::new()
        .real("gamma", p.gamma)
        .with("beta1", a.beta[0])
        .with("beta2", a.beta[1])
        .with("beta3", a.beta[2])
        .with("sigma1", a.sigma[0])
        .with("sigma2", a.sigma[1])
        .with("sigma3", a.sigma[2])
}

fn reflection_params(a: &ReflectionArgs, p: &LiouvilleParams) -> Params {
    Params::new()
        .real("gamma", p.gamma)
        .with("beta", a.beta)
        .with("sigma1", a.sigma1)
        .with("sigma2", a.sigma2)
}

/// Report whose relative error is measured against `scale` rather than the
/// larger side.
fn scaled(mut r: IdentityReport, scale: f64, tol: f64) -> IdentityReport {
    if r.error.is_none() && scale > 0.0 && scale.is_finite() {
        r.rel_err = r.abs_err / scale;
        r.pass = r.rel_err <= tol;
    }
    r
}

/// `χ² π^{2χ/γ} / Γ(1 − γ²/4)^{2χ/γ}`.
fn shift_constant(chi: f64, p: &LiouvilleParams) -> f64 {
    let lg = lngamma(c(1.0 - p.gamma * p.gamma / 4.0))
        .map(|v| v.re)
        .unwrap_or(f64::NAN);
    (2.0 * chi.ln() + 2.0 * chi / p.gamma * (PI.ln() - lg)).exp()
}

/// Coefficients of the two `H` shift equations:
/// `[A₁, A₂]` of the first display and `[K, B₁, B₂]` of the second, where
/// `K` multiplies the left-hand `H` (including its `Γ` and `g_χ` factors).
pub fn h_shift_coefficients(chi: Chi, a: &ThreePointArgs, p: &LiouvilleParams) -> Result<([C; 2], [C; 3])> {
    let ctx = ShiftContext::new(chi, a.beta, p);
    let (x, q, g) = (ctx.chi, ctx.q, p.gamma);
    let [b1, b2, _] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let k0 = shift_constant(x, p);
    let gc = |s: C| g_chi(s, x, p);
    let a1 = gamma(x * (b1 - x))? * gamma(1.0 - x * b2 + x * x)?
        / (gamma(x * (b1 - x + q * g / 2.0))? * gamma(1.0 - x * b2 + x * x - q * g * x / 2.0)?);
    let a2 = k0 * gamma(1.0 - x * b1)? * gamma(1.0 - x * b2 + x * x)? * (gc(s1) - gc(s2 + b1 / 2.0))
        / (sin(PI * x * (x - b1))
            * gamma(1.0 + q * g * x / 2.0)?
            * gamma(2.0 - x * (b1 + b2 - 2.0 * x + q * g / 2.0))?);
    let k = k0 / PI * gamma(1.0 - x * b2)? * (gc(s3) - gc(s2 + b2 / 2.0));
    let bb1 = gamma(x * (b1 - x))? / (gamma(-q * g * x / 2.0)? * gamma(-1.0 + x * (b1 + b2 - 2.0 * x + q * g / 2.0))?);
    let bb2 = k0 * (gc(s1) - gc(s2 - b1 / 2.0 + x / 2.0)) * gamma(1.0 - x * b1)?
        / (sin(PI * x * (x - b1))
            * gamma(1.0 - x * (b1 - x + q * g / 2.0))?
            * gamma(x * b2 - x * x + q * g * x / 2.0)?);
    Ok(([a1, a2], [k, bb1, bb2]))
}

fn shifted(a: &ThreePointArgs, db1: f64, db2: f64, ds2: f64) -> ThreePointArgs {
    let mut b = *a;
    b.beta[0] += db1;
    b.beta[1] += db2;
    b.sigma[1] += ds2;
    b
}

/// Both `χ`-shift equations of `H`, evaluated on `H_PT`.
pub fn check_h_shift(
    chi: Chi,
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    tol: f64,
) -> Vec<IdentityReport> {
    let x = chi.value(p);
    let params = three_point_params(a, p).real("chi", x);
    let h = |t: ThreePointArgs| h_pt(&t, p, s).map(|e| e.value);
    let mut out = Vec::new();

    let start = Instant::now();
    let r1 = (|| -> Result<(C, C, f64)> {
        let ([a1, a2], _) = h_shift_coefficients(chi, a, p)?;
        let lhs = h(shifted(a, 0.0, -x, 0.0))?;
        let t1 = a1 * h(shifted(a, -x, 0.0, x / 2.0))?;
        let t2 = a2 * h(shifted(a, x, 0.0, x / 2.0))?;
        Ok((lhs, t1 + t2, lhs.norm().max(t1.norm()).max(t2.norm())))
    })();
    out.push(match r1 {
        Ok((l, r, sc)) => scaled(
            IdentityReport::compare("h_shift_1", params.clone(), l, r, tol, start),
            sc,
            tol,
        ),
        Err(e) => IdentityReport::failed("h_shift_1", params.clone(), &e, start),
    });

    let start = Instant::now();
    let r2 = (|| -> Result<(C, C, f64)> {
        let (_, [k, b1c, b2c]) = h_shift_coefficients(chi, a, p)?;
        let lhs = k * h(shifted(a, 0.0, x, x / 2.0))?;
        let t1 = b1c * h(shifted(a, -x, 0.0, 0.0))?;
        let t2 = b2c * h(shifted(a, x, 0.0, 0.0))?;
        Ok((lhs, t1 + t2, lhs.norm().max(t1.norm()).max(t2.norm())))
    })();
    out.push(match r2 {
        Ok((l, r, sc)) => scaled(
            IdentityReport::compare("h_shift_2", params.clone(), l, r, tol, start),
            sc,
            tol,
        ),
        Err(e) => IdentityReport::failed("h_shift_2", params, &e, start),
    });
    out
}

fn c_chi(chi: Chi, p: &LiouvilleParams) -> Result<C> {
    let g2 = p.gamma * p.gamma / 4.0;
    Ok(match chi {
        Chi::HalfGamma => -1.0 / gamma(c(-g2))?,
        Chi::TwoOverGamma => {
            let lg = lngamma(c(1.0 - g2))?.re;
            c((1.0 / g2) * ((1.0 / g2 - 1.0) * PI.ln() - lg / g2).exp())
        }
    })
}

/// Right-hand side of the `R` shift equation `which ∈ {1, 2}`:
/// `c_χ Γ(−1 + χβ − χ²) Γ(1 − χβ) (g_χ(σ₂) − g_χ(σ₁ ∓ β/2))`.
pub fn r_shift_coefficient(chi: Chi, which: u8, a: &ReflectionArgs, p: &LiouvilleParams) -> Result<C> {
    let x = chi.value(p);
    let b = a.beta;
    let sign = if which == 1 { -1.0 } else { 1.0 };
    Ok(c_chi(chi, p)?
        * gamma(-1.0 + x * b - x * x)?
        * gamma(1.0 - x * b)?
        * (g_chi(a.sigma2, x, p) - g_chi(a.sigma1 + sign * b / 2.0, x, p)))
}

/// Both `χ`-shift equations of `R` plus the zero they force at
/// `σ₂ = σ₁ − β/2`.
pub fn check_r_shift(chi: Chi, a: &ReflectionArgs, p: &LiouvilleParams, tol: f64) -> Vec<IdentityReport> {
    let x = chi.value(p);
    let params = reflection_params(a, p).real("chi", x);
    let mut out = Vec::new();
    for (which, name) in [(1u8, "r_shift_1"), (2u8, "r_shift_2")] {
        let sign = if which == 1 { -1.0 } else { 1.0 };
        out.push(IdentityReport::run(name, params.clone(), tol, || {
            let num = r_fzz(a, p)?;
            let den = r_fzz(&ReflectionArgs::new(a.beta + x, a.sigma1 + sign * x / 2.0, a.sigma2), p)?;
            Ok((num / den, r_shift_coefficient(chi, which, a, p)?))
        }));
    }
    let z = ReflectionArgs::new(a.beta, a.sigma1, a.sigma1 - a.beta / 2.0);
    out.push(IdentityReport::run(
        "r_zero_at_shift_node",
        reflection_params(&z, p),
        tol,
        || Ok((r_fzz(&z, p)?, c(0.0))),
    ));
    out
}

/// Coefficient of `R(β)/R(β + γ)` from the combined `γ/2`-steps.
pub fn r_gamma_step_coefficient(a: &ReflectionArgs, p: &LiouvilleParams) -> Result<C> {
    let (g, q) = (p.gamma, p.q);
    let (b, s1, s2) = (a.beta, a.sigma1, a.sigma2);
    let g2 = g * g / 4.0;
    let gb = g * b / 2.0;
    let pre = p.b().powi(4) * gamma(-1.0 + gb - g2)? * gamma(1.0 - gb - g2)? * gamma(1.0 - gb)? * gamma(-1.0 + gb)?
        / ((PI * g2).sin() * gamma(c(1.0 - g2))?.powi(2));
    let w = g * PI / 2.0;
    let sines = 4.0
        * sin(w * (b / 2.0 - s1 - s2 + q))
        * sin(w * (b / 2.0 + s1 + s2 - q))
        * sin(w * (b / 2.0 + s2 - s1))
        * sin(w * (b / 2.0 + s1 - s2));
    Ok(pre * sines)
}

/// The `γ`-step equation of `R`, and its agreement with two composed
/// `γ/2`-steps.
pub fn check_r_combined(a: &ReflectionArgs, p: &LiouvilleParams, tol: f64) -> Vec<IdentityReport> {
    let params = reflection_params(a, p);
    let x = p.b();
    vec![
        IdentityReport::run("r_shift_gamma", params.clone(), tol, || {
            let ratio = r_fzz(a, p)? / r_fzz(&ReflectionArgs::new(a.beta + p.gamma, a.sigma1, a.sigma2), p)?;
            Ok((ratio, r_gamma_step_coefficient(a, p)?))
        }),
        IdentityReport::run("r_shift_gamma_composition", params, tol, || {
            let first = r_shift_coefficient(Chi::HalfGamma, 1, a, p)?;
            let mid = ReflectionArgs::new(a.beta + x, a.sigma1 - x / 2.0, a.sigma2);
            let second = r_shift_coefficient(Chi::HalfGamma, 2, &mid, p)?;
            Ok((first * second, r_gamma_step_coefficient(a, p)?))
        }),
    ]
}

/// `R(β)R(2Q − β) = 1` and `R(β, σ₁, σ₂) = R(β, σ₂, σ₁)`.
pub fn check_r_reflection(a: &ReflectionArgs, p: &LiouvilleParams, tol: f64) -> Vec<IdentityReport> {
    let params = reflection_params(a, p);
    vec![
        IdentityReport::run("r_reflection", params.clone(), tol, || {
            let r2 = r_fzz(&ReflectionArgs::new(2.0 * p.q - a.beta, a.sigma1, a.sigma2), p)?;
            Ok((r_fzz(a, p)? * r2, c(1.0)))
        }),
        IdentityReport::run("r_sigma_swap", params, tol, || {
            Ok((
                r_fzz(a, p)?,
                r_fzz(&ReflectionArgs::new(a.beta, a.sigma2, a.sigma1), p)?,
            ))
        }),
    ]
}

/// `H(β₁) = R(β₁, σ₁, σ₂) H(2Q − β₁)` and `J_PT(β₁) = J_PT(2Q − β₁)`.
pub fn check_h_reflection(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings, tol: f64) -> Vec<IdentityReport> {
    let params = three_point_params(a, p);
    let refl = a.with_beta1(2.0 * p.q - a.beta[0]);
    vec![
        IdentityReport::run("h_reflection", params.clone(), tol, || {
            let r = r_fzz(&ReflectionArgs::new(a.beta[0], a.sigma[0], a.sigma[1]), p)?;
            Ok((h_pt(a, p, s)?.value, r * h_pt(&refl, p, s)?.value))
        }),
        IdentityReport::run("j_reflection", params, tol, || {
            Ok((j_pt(a, p, s)?.value, j_pt(&refl, p, s)?.value))
        }),
    ]
}

/// Closed form of `R(γ, σ, σ′)`.
pub fn r_gamma_closed_form(sigma: C, sigma_p: C, p: &LiouvilleParams) -> Result<C> {
    let (g, q) = (p.gamma, p.q);
    let g2 = g * g / 4.0;
    let base = PI * gamma(c(g2))?.re / gamma(c(1.0 - g2))?.re;
    let pre = c(base.powf(1.0 / g2 / 2.0 - 0.5)) * gamma(c(1.0 - 1.0 / g2))? / gamma(c(1.0 - g2))?;
    let num = (4.0 * PI / g * (sigma - q / 2.0)).cos() - (4.0 * PI / g * (sigma_p - q / 2.0)).cos();
    let den = (g * PI * (sigma - q / 2.0)).cos() - (g * PI * (sigma_p - q / 2.0)).cos();
    if den.norm() == 0.0 {
        return Err(Error::Domain("R(gamma) closed form at sigma = sigma'".into()));
    }
    Ok(pre * num / den)
}

/// `R(Q, σ₁, σ₂) = −1` and `R(γ, σ, σ′)` against its closed form, for each
/// pair in `sigmas`.
pub fn check_special_values(p: &LiouvilleParams, sigmas: &[(C, C)], tol: f64) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for &(s1, s2) in sigmas {
        let at_q = ReflectionArgs::new(c(p.q), s1, s2);
        out.push(IdentityReport::run("r_at_q", reflection_params(&at_q, p), tol, || {
            Ok((r_fzz(&at_q, p)?, c(-1.0)))
        }));
        let at_g = ReflectionArgs::new(c(p.gamma), s1, s2);
        out.push(IdentityReport::run(
            "r_at_gamma",
            reflection_params(&at_g, p),
            tol,
            || Ok((r_fzz(&at_g, p)?, r_gamma_closed_form(s1, s2, p)?)),
        ));
    }
    out
}

/// `f₁..f₄` at `(β₁, β₂)` together with `a_χ(β₁)`, `b_χ(β₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeTermCoeffs {
    pub f1: C,
    pub f2: C,
    pub f3: C,
    pub f4: C,
    pub a_chi: C,
    pub b_chi: C,
}

/// `f₁..f₄` of the shift relations of [`j_reduced`] at `(β₁, β₂)`; `β₃` and
/// the `σ`'s come from `a`.
///
/// `f₄` carries an overall minus sign relative to the product of sines one
/// might write down by analogy with `f₂`; this sign is what the `H` shift
/// equations force.
pub fn shift_f(x: f64, b1: C, b2: C, a: &ThreePointArgs, p: &LiouvilleParams) -> [C; 4] {
    shift_f_with_clearance(x, b1, b2, a, p).0
}

/// [`shift_f`] together with the smallest `|sin|` among its factors.
fn shift_f_with_clearance(x: f64, b1: C, b2: C, a: &ThreePointArgs, p: &LiouvilleParams) -> ([C; 4], f64) {
    let q = p.q;
    let b3 = a.beta[2];
    let [s1, s2, s3] = a.sigma;
    let bbar = b1 + b2 + b3;
    let px = PI * x;
    let mut least = f64::INFINITY;
    let mut sn = |z: C| {
        let v = sin(z);
        least = least.min(v.norm());
        v
    };
    let f1 = 1.0 / (2.0 * sn(px * (b1 - x)));
    let f2 = 2.0 * sn(px * (b1 / 2.0 + s1 + s2 - q)) * sn(px * (b1 / 2.0 - s1 + s2)) / sn(px * (x - b1));
    let d = sn(px * (b1 - x)) * sn(px * (b2 / 2.0 + s2 + s3 - q)) * sn(px * (b2 / 2.0 + s2 - s3));
    let f3 = sn(px * (1.5 * x - bbar / 2.0)) * sn(px / 2.0 * (b1 - x + b2 - b3)) / (2.0 * d);
    let f4 = -2.0
        * sn(px / 2.0 * (b3 - x + (b1 - b2)))
        * sn(px / 2.0 * (b3 - x - (b1 - b2)))
        * sn(px * ((b1 - x) / 2.0 - s1 - s2 + q))
        * sn(px * ((b1 - x) / 2.0 + s1 - s2))
        / d;
    ([f1, f2, f3, f4], least)
}

/// Smallest `|sin|` factor entering `a_χ(β₁)` and `b_χ(β₁)`; small values
/// mean the coefficients are ill-conditioned.
pub fn three_term_clearance(chi: Chi, beta1: C, a: &ThreePointArgs, p: &LiouvilleParams) -> f64 {
    let x = chi.value(p);
    let b2 = a.beta[1];
    [(beta1 + 2.0 * x, b2 + x), (beta1 + x, b2), (beta1 + 3.0 * x, b2)]
        .iter()
        .map(|&(u, v)| shift_f_with_clearance(x, u, v, a, p).1)
        .fold(f64::INFINITY, f64::min)
}

/// `J_PT / S(β₁/2 + σ₁ − σ₂) S(β₁/2 + σ₁ + σ₂ − Q)`, the normalization in
/// which the shift coefficients reduce to ratios of sines.
pub fn j_reduced(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings) -> Result<C> {
    let [b1, _, _] = a.beta;
    let [s1, s2, _] = a.sigma;
    let ls = log_double_sine(b1 / 2.0 + s1 - s2, p)? + log_double_sine(b1 / 2.0 + s1 + s2 - p.q, p)?;
    Ok(j_pt(a, p, s)?.value * (-ls).exp())
}

/// Both shift relations of [`j_reduced`] with coefficients [`shift_f`].
pub fn check_j_shift(
    chi: Chi,
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    tol: f64,
) -> Vec<IdentityReport> {
    let x = chi.value(p);
    let params = three_point_params(a, p).real("chi", x);
    let [f1, f2, f3, f4] = shift_f(x, a.beta[0], a.beta[1], a, p);
    let j = |t: ThreePointArgs| j_reduced(&t, p, s);
    vec![
        IdentityReport::run("j_shift_1", params.clone(), tol, || {
            let rhs = f1 * j(shifted(a, -x, 0.0, x / 2.0))? + f2 * j(shifted(a, x, 0.0, x / 2.0))?;
            Ok((j(shifted(a, 0.0, -x, 0.0))?, rhs))
        }),
        IdentityReport::run("j_shift_2", params, tol, || {
            let rhs = f3 * j(shifted(a, -x, 0.0, 0.0))? + f4 * j(shifted(a, x, 0.0, 0.0))?;
            Ok((j(shifted(a, 0.0, x, x / 2.0))?, rhs))
        }),
    ]
}

/// Coefficients of `J(β₁+4χ) + a_χ J(β₁+2χ) + b_χ J(β₁) = 0`.
pub fn three_term_coeffs(chi: Chi, beta1: C, a: &ThreePointArgs, p: &LiouvilleParams) -> ThreeTermCoeffs {
    let x = chi.value(p);
    let b2 = a.beta[1];
    let f = |b1: C, bb2: C| shift_f(x, b1, bb2, a, p);
    let [f1, f2, f3, f4] = f(beta1, b2);
    let u = f(beta1 + 2.0 * x, b2 + x);
    let v1 = f(beta1 + x, b2);
    let v3 = f(beta1 + 3.0 * x, b2);
    let den = u[1] * v3[3];
    ThreeTermCoeffs {
        f1,
        f2,
        f3,
        f4,
        a_chi: (-1.0 + u[0] * v1[3] + u[1] * v3[2]) / den,
        b_chi: u[0] * v1[2] / den,
    }
}

/// The three-term relation for [`j_reduced`] in `β₁`, and the `2/χ`-periodicity of
/// its coefficients.
pub fn check_three_term(
    chi: Chi,
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    tol: f64,
    periodicity_tol: f64,
) -> Vec<IdentityReport> {
    let x = chi.value(p);
    let params = three_point_params(a, p).real("chi", x);
    let b1 = a.beta[0];
    let k = three_term_coeffs(chi, b1, a, p);
    let start = Instant::now();
    let r = (|| -> Result<(C, C, f64)> {
        let j0 = j_reduced(a, p, s)?;
        let j2 = k.a_chi * j_reduced(&a.with_beta1(b1 + 2.0 * x), p, s)?;
        let j4 = j_reduced(&a.with_beta1(b1 + 4.0 * x), p, s)?;
        let t0 = k.b_chi * j0;
        Ok((j4 + j2, -t0, j4.norm().max(j2.norm()).max(t0.norm())))
    })();
    let main = match r {
        Ok((l, rr, sc)) => scaled(
            IdentityReport::compare("three_term", params.clone(), l, rr, tol, start),
            sc,
            tol,
        ),
        Err(e) => IdentityReport::failed("three_term", params.clone(), &e, start),
    };
    let kp = three_term_coeffs(chi, b1 + 2.0 / x, a, p);
    vec![
        main,
        IdentityReport::run("three_term_a_periodic", params.clone(), periodicity_tol, || {
            Ok((k.a_chi, kp.a_chi))
        }),
        IdentityReport::run("three_term_b_periodic", params, periodicity_tol, || {
            Ok((k.b_chi, kp.b_chi))
        }),
    ]
}
