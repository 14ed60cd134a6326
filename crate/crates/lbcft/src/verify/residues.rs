//! Residue limits of `H_PT`, `J_PT`, `G_Hos` and `J_Hos`.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C;

use super::{IdentityReport, Params};
use crate::contour::pt_pole_seeds;
use crate::error::Result;
use crate::numerics::{extrapolate_limit, QuadSettings};
use crate::specialfn::{double_sine, gamma, lattice_query, LatticeKind, LiouvilleParams};
use crate::structure_constants::{j_hos, j_pt, ln_hos_prefactor, ln_pt_prefactor, BulkBoundaryArgs, ThreePointArgs};

/// Step sizes used for every residue extrapolation.
pub const RESIDUE_EPS: [f64; 4] = [0.04, 0.02, 0.01, 0.005];

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Extrapolate `ε·u(ε)` and `ε·v(ε)` to `ε = 0`, where one call of `f`
/// yields both `u` and `v`. Samples are taken at `±ε` and averaged, which
/// leaves a series in `ε²`; the extrapolation runs in that variable.
/// Returns the two limits and the larger estimate.
fn paired_limit<F>(mut f: F, eps: &[f64]) -> Result<(C, C, f64)>
where
    F: FnMut(f64) -> Result<(C, C)>,
{
    let mut samples = Vec::with_capacity(eps.len());
    for &e in eps {
        let (u1, v1) = f(e)?;
        let (u2, v2) = f(-e)?;
        samples.push((0.5 * e * (u1 - u2), 0.5 * e * (v1 - v2)));
    }
    let sq: Vec<f64> = eps.iter().map(|e| e * e).collect();
    let pick = |k: usize| {
        let (samples, sq) = (&samples, &sq);
        move |t: f64| -> Result<C> {
            let i = sq.iter().position(|&x| x == t).unwrap();
            Ok(if k == 0 { samples[i].0 } else { samples[i].1 })
        }
    };
    let u = extrapolate_limit(pick(0), &sq)?;
    let v = extrapolate_limit(pick(1), &sq)?;
    Ok((u.value, v.value, u.estimate.max(v.estimate)))
}

/// Distance from `x` to the pole lattice of `Γ_b`, capped at `cap`.
fn lattice_distance(kind: LatticeKind, x: C, p: &LiouvilleParams, cap: f64) -> f64 {
    lattice_query(kind, x, p, cap).map_or(cap, |(_, _, d)| d)
}

/// Distance, in `β₁`, from `a` to the nearest singularity of the `H_PT`
/// prefactor or of `J_PT`, ignoring the pinch at `a` itself.
pub fn residue_clearance(a: &ThreePointArgs, p: &LiouvilleParams) -> f64 {
    let cap = 1.0_f64;
    let q = p.q;
    let [b1, b2, b3] = a.beta;
    let [s1, s2, _] = a.sigma;
    let mut d = cap;
    for e1 in [-1.0, 1.0] {
        for e3 in [-1.0, 1.0] {
            let x = q - b2 / 2.0 + e1 * (q - b1) / 2.0 + e3 * (q - b3) / 2.0;
            d = d.min(2.0 * lattice_distance(LatticeKind::GammaPole, x, p, cap));
        }
    }
    for e in [-1.0, 1.0] {
        let x = b1 / 2.0 + s1 - q / 2.0 + e * (q / 2.0 - s2);
        d = d.min(2.0 * lattice_distance(LatticeKind::SinePole, x, p, cap));
        d = d.min(2.0 * lattice_distance(LatticeKind::SineZero, x, p, cap));
    }
    d = d.min(lattice_distance(LatticeKind::GammaPole, q - b1, p, cap));
    let (left, right) = pt_pole_seeds(a, p);
    for l in &left {
        for r in &right {
            let dist = lattice_distance(LatticeKind::GammaPole, r.seed - l.seed, p, cap);
            if dist > 1e-9 {
                d = d.min(2.0 * dist);
            }
        }
    }
    d
}

/// Step sizes for a residue limit at `a`: [`RESIDUE_EPS`], scaled down so
/// the largest step stays within a quarter of [`residue_clearance`].
pub fn residue_eps(a: &ThreePointArgs, p: &LiouvilleParams) -> [f64; 4] {
    let scale = (0.25 * residue_clearance(a, p) / RESIDUE_EPS[0]).min(1.0);
    RESIDUE_EPS.map(|e| e * scale)
}

/// `(ε/2)·J_PT` and `(ε/2)·H_PT` at `β₁ = base + ε`, extrapolated.
fn pt_limits(a: &ThreePointArgs, base: C, p: &LiouvilleParams, s: &QuadSettings, eps: &[f64]) -> Result<(C, C, f64)> {
    paired_limit(
        |e| {
            let t = a.with_beta1(base + e);
            let j = j_pt(&t, p, s)?.value / 2.0;
            let (lp, zero) = ln_pt_prefactor(&t, p)?;
            let h = if zero { c(0.0) } else { lp.exp() * j };
            Ok((j, h))
        },
        eps,
    )
}

fn s_b(x: C, p: &LiouvilleParams) -> Result<C> {
    double_sine(x, p)
}

/// `J_PT` residue at `β₁ = 2Q − β₂ − β₃`.
pub fn pt_residue_first(a: &ThreePointArgs, p: &LiouvilleParams) -> Result<C> {
    let q = p.q;
    let [_, b2, b3] = a.beta;
    let b1 = 2.0 * q - b2 - b3;
    let [s1, s2, s3] = a.sigma;
    let num = s_b(b1 / 2.0 + s1 + s2 - q, p)? * s_b(b1 / 2.0 + s1 - s2, p)? * s_b(q - b3, p)?;
    let den = s_b(b1, p)? * s_b(-b3 / 2.0 + s1 + s3, p)? * s_b(q - b3 / 2.0 + s1 - s3, p)?;
    Ok(num / den / (2.0 * PI))
}

fn trig_bracket(a: &ThreePointArgs, p: &LiouvilleParams) -> C {
    let g = p.gamma;
    let [_, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let w = g * PI / 2.0;
    (w * b2).sin() * (w * (-g / 2.0 + 2.0 * s1)).cos() + (w * b3).sin() * (w * (-g / 2.0 + 2.0 * s2)).cos()
        - (w * (b2 + b3)).sin() * (w * (-g / 2.0 + 2.0 * s3)).cos()
}

/// `J_PT` residue at `β₁ = 2Q − β₂ − β₃ − γ`.
pub fn pt_residue_second(a: &ThreePointArgs, p: &LiouvilleParams) -> Result<C> {
    let (g, q) = (p.gamma, p.q);
    let ig = 2.0 / g;
    let [_, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let num = s_b(ig - b3, p)? * s_b(ig - (b2 + b3) / 2.0 + s1 - s2, p)? * s_b((-b2 - b3 - g) / 2.0 + s1 + s2, p)?;
    let den = s_b(q + ig - b2 - b3, p)? * s_b(-b3 / 2.0 + s3 + s1, p)? * s_b(q - b3 / 2.0 - s3 + s1, p)?;
    let pre = 1.0 / (PI * (g * g * PI / 4.0).sin());
    Ok(pre * num / den * trig_bracket(a, p))
}

/// Closed form of the ratio of the second `J_PT` residue to the first.
pub fn pt_residue_ratio(a: &ThreePointArgs, p: &LiouvilleParams) -> C {
    let (g, q) = (p.gamma, p.q);
    let ig = 2.0 / g;
    let [_, b2, b3] = a.beta;
    let [s1, s2, _] = a.sigma;
    let w = PI * g / 2.0;
    let num = (w * (q + ig - b2 - b3)).sin();
    let den = (w * (ig - b3)).sin()
        * (w * (ig - (b2 + b3) / 2.0 + s1 - s2)).sin()
        * (w * (-(b2 + b3 + g) / 2.0 + s1 + s2)).sin();
    1.0 / (2.0 * (g * g * PI / 4.0).sin()) * num / den * trig_bracket(a, p)
}

/// Closed form of the second `H_PT` residue.
pub fn h_residue_second(a: &ThreePointArgs, p: &LiouvilleParams) -> Result<C> {
    let (g, q) = (p.gamma, p.q);
    let [_, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let pre = -1.0 / PI * (1.0 / (PI * g * g / 4.0).sin()).sqrt();
    let gam = gamma(1.0 - g * b2 / 2.0)? * gamma(1.0 - g * b3 / 2.0)? * gamma(g * b2 / 2.0 + g * b3 / 2.0 - 1.0)?;
    let pg = PI * g;
    let trig = (pg * (s1 - q / 2.0)).cos() * (pg * b2 / 2.0).sin()
        + (pg * (s2 - q / 2.0)).cos() * (pg * b3 / 2.0).sin()
        - (pg * (s3 - q / 2.0)).cos() * (pg * (b2 + b3) / 2.0).sin();
    Ok(pre * gam * trig)
}

fn three_point_params(a: &ThreePointArgs, p: &LiouvilleParams) -> Params {
    Params::new()
        .real("gamma", p.gamma)
        .with("beta2", a.beta[1])
        .with("beta3", a.beta[2])
        .with("sigma1", a.sigma[0])
        .with("sigma2", a.sigma[1])
        .with("sigma3", a.sigma[2])
}

/// Residue limits of `H_PT` and `J_PT` in `β₁`; `a.beta[0]` is ignored.
///
/// Reports, in order: the first `H` limit against 1, the second against its
/// closed form, the `J` residue ratio, and the two `J` residues.
pub fn check_h_residues(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings, tol: f64) -> Vec<IdentityReport> {
    let params = three_point_params(a, p);
    let first = 2.0 * p.q - a.beta[1] - a.beta[2];
    let second = first - p.gamma;
    let start = Instant::now();
    let l1 = pt_limits(a, first, p, s, &residue_eps(&a.with_beta1(first), p));
    let l2 = pt_limits(a, second, p, s, &residue_eps(&a.with_beta1(second), p));
    let names = [
        "h_residue_1",
        "h_residue_2",
        "j_residue_ratio",
        "j_residue_1",
        "j_residue_2",
    ];
    let (j1, h1, j2, h2) = match (l1, l2) {
        (Ok((j1, h1, _)), Ok((j2, h2, _))) => (j1, h1, j2, h2),
        (Err(e), _) | (_, Err(e)) => {
            return names
                .iter()
                .map(|n| IdentityReport::failed(n, params.clone(), &e, start))
                .collect()
        }
    };
    let cmp = |name: &str, lhs: C, rhs: Result<C>| match rhs {
        Ok(r) => IdentityReport::compare(name, params.clone(), lhs, r, tol, start),
        Err(e) => IdentityReport::failed(name, params.clone(), &e, start),
    };
    vec![
        cmp(names[0], h1, Ok(c(1.0))),
        cmp(names[1], h2, h_residue_second(a, p)),
        cmp(names[2], j2 / j1, Ok(pt_residue_ratio(a, p))),
        cmp(names[3], j1, pt_residue_first(a, p)),
        cmp(names[4], j2, pt_residue_second(a, p)),
    ]
}

/// `(α + β/2 − Q)·G_Hos` and the bare `J_Hos` limit as `α → Q − β/2`;
/// `a.alpha` is ignored.
pub fn check_g_residues(a: &BulkBoundaryArgs, p: &LiouvilleParams, s: &QuadSettings, tol: f64) -> Vec<IdentityReport> {
    let q = p.q;
    let params = Params::new()
        .real("gamma", p.gamma)
        .with("beta", a.beta)
        .with("sigma", a.sigma);
    let base = q - a.beta / 2.0;
    let start = Instant::now();
    let lim = paired_limit(
        |e| {
            let t = BulkBoundaryArgs::new(base + e, a.beta, a.sigma);
            let j = j_hos(&t, p, s)?.value;
            let (lp, zero) = ln_hos_prefactor(&t, p)?;
            Ok((j, if zero { c(0.0) } else { lp.exp() * j }))
        },
        &RESIDUE_EPS,
    );
    let (j, g) = match lim {
        Ok((j, g, _)) => (j, g),
        Err(e) => {
            return vec![
                IdentityReport::failed("g_residue", params.clone(), &e, start),
                IdentityReport::failed("j_hos_residue", params, &e, start),
            ]
        }
    };
    let g_rhs = (-(base * base) / 2.0 * 2f64.ln()).exp();
    let j_rhs = double_sine(base, p).map(|v| 1.0 / (2.0 * PI * v * v));
    vec![
        IdentityReport::compare("g_residue", params.clone(), g, g_rhs, tol, start),
        match j_rhs {
            Ok(r) => IdentityReport::compare("j_hos_residue", params, j, r, tol, start),
            Err(e) => IdentityReport::failed("j_hos_residue", params, &e, start),
        },
    ]
}
