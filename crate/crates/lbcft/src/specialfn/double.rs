//! Barnes double Gamma `Γ_b` and double Sine `S_b` with `b = γ/2`.
//!
//! ```text
//! log Γ_b(x) = ∫₀^∞ dt/t [ (e^{−xt} − e^{−Qt/2}) / ((1−e^{−bt})(1−e^{−t/b}))
//!                          − (Q/2−x)²/2 · e^{−t} + (x−Q/2)/t ]          Re x > 0
//! S_b(x)     = Γ_b(x) / Γ_b(Q−x)
//! ```
//!
//! Subtracting the two brackets and substituting t → 2s gives, with
//! `x = Q/2 + u` and `|Re u| < Q/2`,
//!
//! ```text
//! log S_b(Q/2+u) = ∫₀^∞ ds/s [ u/s − sinh(2us) / (2 sinh(bs) sinh(s/b)) ]
//! ```
//!
//! which is odd in `u` and is what `log_double_sine` integrates. Both
//! integrals are evaluated only near `Re x = Q/2`; other arguments are moved
//! there with the exact shift equations. Near the origin the brackets are
//! replaced by their Taylor series (computed numerically in power-series
//! arithmetic, so the leading cancellation is exact) and integrated term by
//! term.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::gamma::{ln_2sin, lngamma};
use super::{LatticeKind, LiouvilleParams};
use crate::error::{Error, Result};
use crate::numerics::{integrate_pieces, QuadSettings};

const LN_2PI: f64 = 1.837_877_066_409_345_5;
/// Proximity guard for the pole/zero lattices.
pub const LATTICE_GUARD: f64 = 1e-9;
const SERIES_ORDER: usize = 36;

fn inner_settings() -> QuadSettings {
    QuadSettings {
        rel_tol: 2e-14,
        abs_tol: 5e-15,
        max_subdivisions: 5000,
    }
}

// --- truncated power series --------------------------------------------

fn series_mul(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().min(b.len());
    let mut out = vec![C::new(0.0, 0.0); n];
    for i in 0..n {
        if a[i] == C::new(0.0, 0.0) {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn series_div(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().min(b.len());
    let mut out = vec![C::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = a[k];
        for j in 1..=k {
            acc -= b[j] * out[k - j];
        }
        out[k] = acc / b[0];
    }
    out
}

/// Coefficients of `(1 − e^{−ct}) / t`.
fn one_minus_exp_over_t(c: f64, n: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n);
    let mut term = c; // c^{k+1}/(k+1)!
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        out.push(C::new(sign * term, 0.0));
        term *= c / (k as f64 + 2.0);
    }
    out
}

fn eval_poly_integral(coeffs: &[C], t: f64) -> C {
    // ∫₀^t Σ c_k s^k ds
    let mut acc = C::new(0.0, 0.0);
    let mut p = t;
    for (k, ck) in coeffs.iter().enumerate() {
        acc += *ck * (p / (k as f64 + 1.0));
        p *= t;
    }
    acc
}

// --- lattices ------------------------------------------------------------

/// Nearest point of the requested lattice within `delta` of `x`.
///
/// Poles: `−nb − m/b`; zeros: `Q + nb + m/b`, with `n, m ≥ 0`.
pub fn lattice_query(kind: LatticeKind, x: C, p: &LiouvilleParams, delta: f64) -> Option<(u32, u32, f64)> {
    let b = p.b();
    let ib = 1.0 / b;
    // map to the pole-lattice problem y = −nb − m/b
    let y = match kind {
        LatticeKind::GammaPole | LatticeKind::SinePole => x,
        LatticeKind::SineZero => C::new(p.q, 0.0) - x,
    };
    if y.im.abs() > delta || !y.re.is_finite() {
        return None;
    }
    let reach = y.norm() + p.q + delta;
    let n_max = (reach / b).floor() as i64;
    let m_max = (reach / ib).floor() as i64;
    let mut best: Option<(u32, u32, f64)> = None;
    for m in 0..=m_max {
        let rest = -y.re - m as f64 * ib; // want n b ≈ rest
        let n0 = (rest / b).round() as i64;
        for n in [n0 - 1, n0, n0 + 1] {
            if n < 0 || n > n_max {
                continue;
            }
            let pt = -(n as f64) * b - m as f64 * ib;
            let d = (y - C::new(pt, 0.0)).norm();
            if d <= delta && best.is_none_or(|(_, _, bd)| d < bd) {
                best = Some((n as u32, m as u32, d));
            }
        }
    }
    best
}

// --- log Γ_b --------------------------------------------------------------

/// Integral representation of `log Γ_b(x)`, valid for `Re x > 0`; accurate
/// near the window around `Q/2`.
fn log_double_gamma_integral(x: C, p: &LiouvilleParams) -> Result<C> {
    let b = p.b();
    let ib = 1.0 / b;
    let q = p.q;
    let u = x - q / 2.0;
    let n = SERIES_ORDER + 2;

    // S1 = N1 / Pd where e^{−xt} − e^{−Qt/2} = t N1(t), D(t) = t² Pd(t)
    let mut n1 = Vec::with_capacity(n);
    let mut px = -x; // (−x)^{k+1}
    let mut pq = C::new(-q / 2.0, 0.0);
    let mut fact = 1.0; // (k+1)!
    for k in 0..n {
        fact *= k as f64 + 1.0;
        n1.push((px - pq) / fact);
        px *= -x;
        pq *= -q / 2.0;
    }
    let pd = series_mul(&one_minus_exp_over_t(b, n), &one_minus_exp_over_t(ib, n));
    let s1 = series_div(&n1, &pd);
    // g(t) = (S1 + u)/t − u²/2 e^{−t};  g_k = S1_{k+1} − u²/2 (−1)^k/k!
    let mut g = Vec::with_capacity(n - 1);
    let mut kf = 1.0;
    for k in 0..n - 1 {
        if k > 0 {
            kf *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        g.push(s1[k + 1] - u * u * 0.5 * sign / kf);
    }
    // integrand g(t)/t = Σ_{k≥0} g_{k+1} t^k  (g_0 vanishes analytically)
    let integrand_series = &g[1..];

    let t_c = (0.4 * PI * b.min(ib)).min(2.0 / x.norm().max(1.0));
    let head = eval_poly_integral(integrand_series, t_c);

    let decay = x.re.min(q / 2.0).min(1.0);
    if decay <= 0.0 {
        return Err(Error::Domain(format!(
            "double Gamma integral needs Re x > 0, got {}",
            x
        )));
    }
    let t_max = (40.0 / decay).max(40.0);
    let f = |t: f64| -> C {
        let den = (-(-b * t).exp_m1()) * (-(-ib * t).exp_m1());
        let num = (-x * t).exp() - (-q * t / 2.0).exp();
        (num / den - u * u * 0.5 * (-t).exp() + u / t) / t
    };
    let mut pts = vec![t_c];
    for cut in [0.5, 2.0, 6.0, 15.0] {
        if cut > t_c && cut < t_max {
            pts.push(cut);
        }
    }
    pts.push(t_max);
    let body = integrate_pieces(f, &pts, &inner_settings())?;
    // ∫_{T}^∞ u/t² dt = u/T ; the exponential pieces are below 1e−17 there
    Ok(head + body.value + u / t_max)
}

/// `log Γ_b(x)` by the window integral plus the shift equations.
/// Only `exp` of the result is contractual.
pub fn log_double_gamma(x: C, p: &LiouvilleParams) -> Result<C> {
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {}", x)));
    }
    if let Some((n, m, _)) = lattice_query(LatticeKind::GammaPole, x, p, LATTICE_GUARD) {
        return Err(Error::PoleEncountered {
            what: "double Gamma",
            at: x,
            n,
            m,
        });
    }
    let b = p.b();
    let ib = 1.0 / b;
    let lnb = b.ln();
    let lo = p.q / 2.0 - b / 2.0;
    let hi = p.q / 2.0 + (b / 2.0).max(ib / 2.0);
    let mut y = x;
    let mut corr = C::new(0.0, 0.0);
    // log Γ_b(y) − log Γ_b(y+b)   = lnΓ(by) + (1/2 − by) ln b − ln(2π)/2
    // log Γ_b(y) − log Γ_b(y+1/b) = lnΓ(y/b) + (y/b − 1/2) ln b − ln(2π)/2
    let step_b = |y: C| -> Result<C> { Ok(lngamma(b * y)? + (0.5 - b * y) * lnb - 0.5 * LN_2PI) };
    let step_ib = |y: C| -> Result<C> { Ok(lngamma(y * ib)? + (y * ib - 0.5) * lnb - 0.5 * LN_2PI) };
    while y.re < lo - ib {
        corr += step_ib(y)?;
        y += ib;
    }
    while y.re < lo {
        corr += step_b(y)?;
        y += b;
    }
    while y.re > hi + ib {
        y -= ib;
        corr -= step_ib(y)?;
    }
    while y.re > hi {
        y -= b;
        corr -= step_b(y)?;
    }
    Ok(log_double_gamma_integral(y, p)? + corr)
}

/// `Γ_b(x)`.
pub fn double_gamma(x: C, p: &LiouvilleParams) -> Result<C> {
    finite(log_double_gamma(x, p)?.exp(), "double Gamma", x)
}

// --- log S_b ----------------------------------------------------------------

/// Integral representation of `log S_b(Q/2 + u)` for `|Re u|` well inside
/// `Q/2`.
fn log_double_sine_integral(u: C, p: &LiouvilleParams) -> Result<C> {
    if u == C::new(0.0, 0.0) {
        return Ok(u);
    }
    let b = p.b();
    let ib = 1.0 / b;
    let q = p.q;
    let n = SERIES_ORDER;
    // P(s) = sinh(bs) sinh(s/b) / s², N(s) = sinh(2us)/s, A = N/(2P)
    let sinh_over = |c: f64| -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); n];
        let mut term = c; // c^{2k+1}/(2k+1)!
        let mut k = 0;
        while 2 * k < n {
            out[2 * k] = C::new(term, 0.0);
            term *= c * c / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
            k += 1;
        }
        out
    };
    let pp = series_mul(&sinh_over(b), &sinh_over(ib));
    let mut nn = vec![C::new(0.0, 0.0); n];
    let two_u = 2.0 * u;
    let mut term = two_u;
    let mut k = 0;
    while 2 * k < n {
        nn[2 * k] = term;
        term *= two_u * two_u / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
        k += 1;
    }
    let pp2: Vec<C> = pp.iter().map(|c| *c * 2.0).collect();
    let a = series_div(&nn, &pp2);
    // integrand = −(A − u)/s² = −Σ_{k≥1} A_{2k} s^{2k−2}
    let integrand_series: Vec<C> = a[2..].iter().map(|c| -*c).collect();

    let s_c = (0.2 * PI * b.min(ib)).min(2.0 / u.norm().max(1e-300));
    let head = eval_poly_integral(&integrand_series, s_c);

    let kappa = q - 2.0 * u.re.abs();
    if kappa <= 0.0 {
        return Err(Error::Domain(format!(
            "double Sine integral needs |Re(x − Q/2)| < Q/2, got u = {}",
            u
        )));
    }
    let s_max = 40.0 / kappa.min(1.0);
    let f = |s: f64| -> C {
        // sinh(2us)/(2 sinh(bs) sinh(s/b)) without overflow
        let num = (-(q - two_u) * s).exp() - (-(q + two_u) * s).exp();
        let den = (-(-2.0 * b * s).exp_m1()) * (-(-2.0 * ib * s).exp_m1());
        (u / s - num / den) / s
    };
    let mut pts = vec![s_c];
    for cut in [0.5, 2.0, 6.0, 15.0] {
        if cut > s_c && cut < s_max {
            pts.push(cut);
        }
    }
    pts.push(s_max);
    let body = integrate_pieces(f, &pts, &inner_settings())?;
    Ok(head + body.value + u / s_max)
}

/// `log S_b(x)`; only `exp` of the result is contractual.
pub fn log_double_sine(x: C, p: &LiouvilleParams) -> Result<C> {
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {}", x)));
    }
    if let Some((n, m, _)) = lattice_query(LatticeKind::SinePole, x, p, LATTICE_GUARD) {
        return Err(Error::PoleEncountered {
            what: "double Sine",
            at: x,
            n,
            m,
        });
    }
    if let Some((n, m, _)) = lattice_query(LatticeKind::SineZero, x, p, LATTICE_GUARD) {
        return Err(Error::ZeroEncountered {
            what: "double Sine",
            at: x,
            n,
            m,
        });
    }
    let b = p.b();
    let ib = 1.0 / b;
    let half_q = p.q / 2.0;
    let mut y = x;
    let mut corr = C::new(0.0, 0.0);
    // S(y+c) = 2 sin(π c y) S(y) for c ∈ {b, 1/b}
    while y.re < half_q - b / 2.0 - ib {
        corr -= ln_2sin(PI * ib * y);
        y += ib;
    }
    while y.re < half_q - b / 2.0 {
        corr -= ln_2sin(PI * b * y);
        y += b;
    }
    while y.re > half_q + b / 2.0 + ib {
        y -= ib;
        corr += ln_2sin(PI * ib * y);
    }
    while y.re > half_q + b / 2.0 {
        y -= b;
        corr += ln_2sin(PI * b * y);
    }
    Ok(log_double_sine_integral(y - half_q, p)? + corr)
}

/// `S_b(x)`; exact zero on the zero lattice.
pub fn double_sine(x: C, p: &LiouvilleParams) -> Result<C> {
    match log_double_sine(x, p) {
        Ok(l) => finite(l.exp(), "double Sine", x),
        Err(Error::ZeroEncountered { .. }) => Ok(C::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

fn finite(v: C, what: &str, x: C) -> Result<C> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{} overflows at {}", what, x)))
    }
}
