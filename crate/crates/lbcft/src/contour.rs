//! Mellin–Barnes contours through pole half-lattices.
//!
//! An integral `∫_C f(r) dr/i` is taken along an upward contour that keeps
//! every `Left` lattice on its left and every `Right` lattice on its right.
//! We always integrate along a vertical line `r = x₀ + iy`, for which
//! `dr/i = dy`, and fix the difference with residues:
//!
//! * a `Left` pole `p` with `Re p > x₀` must sit left of `C`, so `C − line`
//!   is a positive loop around `p`: `∫_C = ∫_line + 2πi Res_p`, i.e. `+2π Res`
//!   after dividing by `i`;
//! * a `Right` pole with `Re p < x₀` contributes `−2π Res`.
//!
//! The line is truncated at `|y| = T` using the decay model
//! `|f| ≤ M e^{−κ|y|}`, which bounds each discarded tail by `M e^{−κT}/κ`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::numerics::{integrate_pieces, QuadSettings};
use crate::specialfn::{lattice_query, LatticeKind, LiouvilleParams};
use crate::structure_constants::ThreePointArgs;

/// Collision threshold between a `Left` and a `Right` pole.
pub const COLLISION_TOL: f64 = 1e-8;
/// Minimum allowed distance between a pole and the integration line.
pub const PATH_CLEARANCE: f64 = 1e-6;
/// Preferred distance between the line and the nearest pole.
const PREFERRED_CLEARANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `seed − nγ/2 − 2m/γ`
    Left,
    /// `seed + nγ/2 + 2m/γ`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleLattice {
    pub seed: C,
    pub direction: Direction,
}

impl PoleLattice {
    pub fn left(seed: C) -> Self {
        PoleLattice {
            seed,
            direction: Direction::Left,
        }
    }

    pub fn right(seed: C) -> Self {
        PoleLattice {
            seed,
            direction: Direction::Right,
        }
    }

    /// Lattice points whose real part lies in `[lo, hi]`.
    pub fn points_between(&self, p: &LiouvilleParams, lo: f64, hi: f64) -> Vec<C> {
        let b = p.b();
        let ib = p.inv_b();
        let sgn = match self.direction {
            Direction::Left => -1.0,
            Direction::Right => 1.0,
        };
        let mut out = Vec::new();
        let mut m = 0u32;
        loop {
            let base = self.seed.re + sgn * m as f64 * ib;
            let beyond = match self.direction {
                Direction::Left => base < lo,
                Direction::Right => base > hi,
            };
            if beyond {
                break;
            }
            let mut n = 0u32;
            loop {
                let x = base + sgn * n as f64 * b;
                let past = match self.direction {
                    Direction::Left => x < lo,
                    Direction::Right => x > hi,
                };
                if past {
                    break;
                }
                if x >= lo && x <= hi {
                    out.push(self.seed + C::new(sgn * (n as f64 * b + m as f64 * ib), 0.0));
                }
                n += 1;
            }
            m += 1;
        }
        out
    }
}

/// A planned contour: vertical line, residue corrections, truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub base_re: f64,
    /// `(pole, sign)`; the integral receives `sign · 2π · Res`.
    pub corrections: Vec<(C, f64)>,
    pub trunc_height: f64,
    pub decay_rate: f64,
    /// Truncation tolerance, relative to the peak of `|f|` on the line.
    pub tol: f64,
    /// Imaginary parts of poles near the line (quadrature breakpoints).
    pub breakpoints: Vec<f64>,
    /// All poles in the neighbourhood of the corrections, used to size
    /// residue circles.
    pub nearby_poles: Vec<C>,
}

/// Seeds of the lattices bounding the `J_PT` contour.
pub fn pt_pole_seeds(a: &ThreePointArgs, p: &LiouvilleParams) -> (Vec<PoleLattice>, Vec<PoleLattice>) {
    let q = p.q;
    let [b1, b2, b3] = a.beta;
    let [s1, s2, s3] = a.sigma;
    let left = vec![
        PoleLattice::left(b2 / 2.0 - s2 - s3),
        PoleLattice::left(b2 / 2.0 - q + s2 - s3),
        PoleLattice::left(-b3 / 2.0 - s3 + s1),
        PoleLattice::left(b3 / 2.0 - q - s3 + s1),
    ];
    let right = vec![
        PoleLattice::right(-b1 / 2.0 + b2 / 2.0 - s3 + s1),
        PoleLattice::right(-q + b1 / 2.0 + b2 / 2.0 - s3 + s1),
        PoleLattice::right(-2.0 * s3 + q),
        PoleLattice::right(C::new(0.0, 0.0)),
    ];
    (left, right)
}

/// Seeds of the lattices bounding the `J_Hos` contour.
pub fn hos_pole_seeds(alpha: C, beta: C, p: &LiouvilleParams) -> (Vec<PoleLattice>, Vec<PoleLattice>) {
    let q = p.q;
    let left = vec![
        PoleLattice::left(0.5 * (q - alpha - beta / 2.0)),
        PoleLattice::left(0.5 * (alpha - beta / 2.0 - q)),
    ];
    let right = vec![
        PoleLattice::right(0.5 * (alpha + beta / 2.0 - q)),
        PoleLattice::right(0.5 * (q - alpha + beta / 2.0)),
    ];
    (left, right)
}

fn check_collisions(left: &[PoleLattice], right: &[PoleLattice], p: &LiouvilleParams) -> Result<()> {
    for l in left {
        for r in right {
            // l − N b − M/b = r + N' b + M'/b  ⇔  r − l ∈ {−n b − m/b}
            if let Some((n, m, _)) = lattice_query(LatticeKind::GammaPole, r.seed - l.seed, p, COLLISION_TOL) {
                let pole = l.seed - C::new(n as f64 * p.b() + m as f64 * p.inv_b(), 0.0);
                return Err(Error::PoleCollision {
                    left: pole,
                    right: r.seed,
                    left_seed: l.seed,
                    right_seed: r.seed,
                    n: n as i64,
                    m: m as i64,
                });
            }
        }
    }
    Ok(())
}

fn dedup(mut v: Vec<C>) -> Vec<C> {
    let mut out: Vec<C> = Vec::with_capacity(v.len());
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    for z in v {
        if !out.iter().any(|w| (*w - z).norm() < 1e-9) {
            out.push(z);
        }
    }
    out
}

fn corrections_for(left: &[PoleLattice], right: &[PoleLattice], base: f64, p: &LiouvilleParams) -> Vec<(C, f64)> {
    let mut lp = Vec::new();
    for l in left {
        lp.extend(l.points_between(p, base, f64::INFINITY));
    }
    let mut rp = Vec::new();
    for r in right {
        rp.extend(r.points_between(p, f64::NEG_INFINITY, base));
    }
    let mut out: Vec<(C, f64)> = dedup(lp).into_iter().map(|z| (z, 1.0)).collect();
    out.extend(dedup(rp).into_iter().map(|z| (z, -1.0)));
    out
}

fn nominal_height(left: &[PoleLattice], right: &[PoleLattice], decay_rate: f64, tol: f64) -> f64 {
    let y0 = left
        .iter()
        .chain(right.iter())
        .map(|l| l.seed.im.abs())
        .fold(0.0, f64::max)
        + 1.0;
    y0 + ((1.0 / (decay_rate * tol)).ln() / decay_rate).max(0.0)
}

/// Choose the line, the residue corrections and the truncation height.
///
/// With a clear gap between the rightmost `Left` seed and the leftmost
/// `Right` seed the line goes through its middle. Otherwise the candidate
/// lines are the midpoints between consecutive pole real parts; among those
/// with clearance at least 0.05 the one needing the fewest corrections wins
/// (ties go to the wider gap).
pub fn plan_contour(
    left: &[PoleLattice],
    right: &[PoleLattice],
    decay_rate: f64,
    tol: f64,
    p: &LiouvilleParams,
) -> Result<ContourSpec> {
    check_collisions(left, right, p)?;
    if !(decay_rate > 0.0) {
        return Err(Error::ConvergenceDomain(format!(
            "non-positive decay rate {}",
            decay_rate
        )));
    }
    let max_l = left.iter().map(|l| l.seed.re).fold(f64::NEG_INFINITY, f64::max);
    let min_r = right.iter().map(|r| r.seed.re).fold(f64::INFINITY, f64::min);
    let base = if max_l + 2.0 * PREFERRED_CLEARANCE <= min_r {
        0.5 * (max_l + min_r)
    } else {
        let w = p.b() + p.inv_b();
        let lo = max_l.min(min_r) - w;
        let hi = max_l.max(min_r) + w;
        let mut xs: Vec<f64> = Vec::new();
        for l in left {
            xs.extend(l.points_between(p, lo, hi).iter().map(|z| z.re));
        }
        for r in right {
            xs.extend(r.points_between(p, lo, hi).iter().map(|z| z.re));
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut best: Option<(bool, usize, f64, f64)> = None; // (clear, count, width, mid)
        for w2 in xs.windows(2) {
            let width = w2[1] - w2[0];
            if width <= 2.0 * PATH_CLEARANCE {
                continue;
            }
            let mid = 0.5 * (w2[0] + w2[1]);
            let clear = width >= 2.0 * PREFERRED_CLEARANCE;
            let count = corrections_for(left, right, mid, p).len();
            let better = match best {
                None => true,
                Some((bc, bn, bw, _)) => {
                    if clear != bc {
                        clear
                    } else if clear {
                        count < bn || (count == bn && width > bw)
                    } else {
                        width > bw
                    }
                }
            };
            if better {
                best = Some((clear, count, width, mid));
            }
        }
        match best {
            Some((_, _, _, mid)) => mid,
            None => 0.5 * (max_l + min_r),
        }
    };
    plan_contour_at(left, right, base, decay_rate, tol, p)
}

/// Plan with a prescribed line `Re r = base_re`.
pub fn plan_contour_at(
    left: &[PoleLattice],
    right: &[PoleLattice],
    base_re: f64,
    decay_rate: f64,
    tol: f64,
    p: &LiouvilleParams,
) -> Result<ContourSpec> {
    check_collisions(left, right, p)?;
    if !(decay_rate > 0.0) {
        return Err(Error::ConvergenceDomain(format!(
            "non-positive decay rate {}",
            decay_rate
        )));
    }
    let corrections = corrections_for(left, right, base_re, p);
    let reach = 1.0;
    let mut near = Vec::new();
    let mut lo = base_re - reach;
    let mut hi = base_re + reach;
    for (z, _) in &corrections {
        lo = lo.min(z.re - reach);
        hi = hi.max(z.re + reach);
    }
    for l in left.iter().chain(right.iter()) {
        near.extend(l.points_between(p, lo, hi));
    }
    let near = dedup(near);
    let mut breakpoints = Vec::new();
    for z in &near {
        let d = (z.re - base_re).abs();
        if d < PATH_CLEARANCE {
            return Err(Error::PoleTooClose { pole: *z, distance: d });
        }
        if d < 0.5 {
            breakpoints.push(z.im);
        }
    }
    Ok(ContourSpec {
        base_re,
        corrections,
        trunc_height: nominal_height(left, right, decay_rate, tol),
        decay_rate,
        tol,
        breakpoints,
        nearby_poles: near,
    })
}

/// Contour integral with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourResult {
    pub value: C,
    /// Quadrature error estimate plus both tail bounds.
    pub error: f64,
    pub tail_bound: f64,
    pub trunc_height: f64,
}

/// `∫ f dr/i` along the planned contour.
pub fn integrate_contour<F>(f: F, spec: &ContourSpec, s: &QuadSettings) -> Result<ContourResult>
where
    F: Fn(C) -> Result<C>,
{
    integrate_contour_with_height(f, spec, s, None)
}

/// As [`integrate_contour`], optionally forcing the truncation height.
pub fn integrate_contour_with_height<F>(
    f: F,
    spec: &ContourSpec,
    s: &QuadSettings,
    height: Option<f64>,
) -> Result<ContourResult>
where
    F: Fn(C) -> Result<C>,
{
    let kappa = spec.decay_rate;
    let x0 = spec.base_re;
    let y0 = spec
        .breakpoints
        .iter()
        .fold(spec.trunc_height.min(2.0), |a, y| a.max(y.abs() + 0.5));
    // measured envelope constant on each side
    let envelope = |sign: f64| -> Result<f64> {
        let mut m: f64 = 0.0;
        for k in 0..4 {
            let y = y0 + 0.25 * k as f64;
            let v = f(C::new(x0, sign * y))?;
            m = m.max(v.norm() * (kappa * y).exp());
        }
        Ok(m)
    };
    let m_up = envelope(1.0)?;
    let m_dn = envelope(-1.0)?;
    // tolerances are relative to the largest sampled |f| on the line
    let mut peak: f64 = 0.0;
    let nk = (4.0 * y0).ceil() as usize;
    for k in 0..=2 * nk {
        let y = -y0 + k as f64 * y0 / nk as f64;
        if let Ok(v) = f(C::new(x0, y)) {
            if v.norm().is_finite() {
                peak = peak.max(v.norm());
            }
        }
    }
    let peak = peak.max(m_up * (-kappa * y0).exp()).max(m_dn * (-kappa * y0).exp());
    let tol_abs = spec.tol * peak;
    let height_for = |m: f64| -> f64 {
        if m <= 0.0 || tol_abs <= 0.0 {
            return spec.trunc_height;
        }
        let t = (m / (kappa * tol_abs)).ln() / kappa;
        spec.trunc_height.max(t).max(y0)
    };
    let (t_up, t_dn) = match height {
        Some(h) => (h, h),
        None => (height_for(m_up), height_for(m_dn)),
    };
    let tail = (m_up * (-kappa * t_up).exp() + m_dn * (-kappa * t_dn).exp()) / kappa;

    let mut pts: Vec<f64> = vec![-t_dn, 0.0, t_up];
    for &y in &spec.breakpoints {
        if y > -t_dn && y < t_up {
            pts.push(y);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let mut failure: Option<Error> = None;
    let g = |y: f64| -> C {
        match f(C::new(x0, y)) {
            Ok(v) => v,
            Err(_) => C::new(f64::NAN, f64::NAN),
        }
    };
    let s_eff = QuadSettings {
        rel_tol: s.rel_tol,
        abs_tol: if peak > 0.0 {
            s.abs_tol.min(1e-2 * s.rel_tol * peak).max(1e-300)
        } else {
            s.abs_tol
        },
        max_subdivisions: s.max_subdivisions,
    };
    let quad = integrate_pieces(g, &pts, &s_eff);
    let quad = match quad {
        Ok(q) => q,
        Err(Error::NonFiniteIntegrand { at }) => {
            // surface the integrand's own error when there is one
            if let Err(e) = f(C::new(x0, at)) {
                failure = Some(e);
            }
            return Err(failure.unwrap_or(Error::NonFiniteIntegrand { at }));
        }
        Err(e) => return Err(e),
    };
    let mut value = quad.value;
    let mut error = quad.error + tail;
    for (pole, sign) in &spec.corrections {
        let radius = residue_radius(*pole, &spec.nearby_poles, x0);
        let res = residue_at(&f, *pole, radius)?;
        value += 2.0 * PI * sign * res;
        error += 2.0 * PI * 1e-11 * res.norm();
    }
    Ok(ContourResult {
        value,
        error,
        tail_bound: tail,
        trunc_height: t_up.max(t_dn),
    })
}

fn residue_radius(pole: C, others: &[C], _base_re: f64) -> f64 {
    let mut d = f64::INFINITY;
    for z in others {
        let dz = (*z - pole).norm();
        if dz > 1e-9 {
            d = d.min(dz);
        }
    }
    (0.25 * d).min(0.1)
}

/// `(1/2πi) ∮ f` on the circle `|z − pole| = radius` by the trapezoidal rule,
/// doubling the node count from 64 until successive values agree to 1e−11.
pub fn residue_at<F>(f: F, pole: C, radius: f64) -> Result<C>
where
    F: Fn(C) -> Result<C>,
{
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("residue radius {}", radius)));
    }
    // (1/2πi) ∮ f dz with z = p + r e^{iθ}: mean of f(z)·(z − p) over θ
    let sample = |k: usize, n: usize| -> Result<(C, f64)> {
        let th = 2.0 * PI * k as f64 / n as f64;
        let w = C::from_polar(radius, th);
        let v = f(pole + w)? * w;
        Ok((v, v.norm()))
    };
    let mut n = 64;
    let mut sum = C::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for k in 0..n {
        let (v, a) = sample(k, n)?;
        sum += v;
        scale = scale.max(a);
    }
    let mut prev = sum / n as f64;
    let mut last_change = f64::INFINITY;
    while n <= 8192 {
        let mut add = C::new(0.0, 0.0);
        for k in 0..n {
            let (v, a) = sample(2 * k + 1, 2 * n)?;
            add += v;
            scale = scale.max(a);
        }
        sum += add;
        n *= 2;
        let cur = sum / n as f64;
        last_change = (cur - prev).norm();
        if last_change <= 1e-11 * cur.norm().max(scale * 1e-3) || last_change <= 1e-15 * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergent { last_change })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> LiouvilleParams {
        LiouvilleParams::new(1.2).unwrap()
    }

    #[test]
    fn gap_gives_midpoint_without_corrections() {
        let left = [PoleLattice::left(C::new(-0.4, 0.1))];
        let right = [PoleLattice::right(C::new(0.6, -0.2))];
        let spec = plan_contour(&left, &right, 2.0, 1e-12, &p()).unwrap();
        assert!((spec.base_re - 0.1).abs() < 1e-15);
        assert!(spec.corrections.is_empty());
        assert!(spec.trunc_height > 1.0);
    }

    #[test]
    fn collision_is_reported_with_witness() {
        let p = p();
        let left = [PoleLattice::left(C::new(0.3, 0.0))];
        let right = [PoleLattice::right(C::new(0.3 - p.b() - p.inv_b(), 0.0))];
        match plan_contour(&left, &right, 1.0, 1e-10, &p) {
            Err(Error::PoleCollision { n, m, .. }) => assert_eq!((n, m), (1, 1)),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn overlapping_seeds_need_corrections() {
        let left = [PoleLattice::left(C::new(0.5, 0.0))];
        let right = [PoleLattice::right(C::new(-0.2, 0.0))];
        let spec = plan_contour(&left, &right, 1.0, 1e-10, &p()).unwrap();
        assert!(!spec.corrections.is_empty());
        let x = spec.base_re;
        for (z, sgn) in &spec.corrections {
            assert!((*sgn > 0.0 && z.re > x) || (*sgn < 0.0 && z.re < x));
        }
    }

    #[test]
    fn line_position_does_not_change_the_integral() {
        // e^{r²}/(r − 1/2) with the pole kept to the left of the contour
        let f = |r: C| Ok((r * r).exp() / (r - 0.5));
        let left = [PoleLattice::left(C::new(0.5, 0.0))];
        let right = [PoleLattice::right(C::new(2.0, 0.0))];
        let s = QuadSettings::default();
        let p = p();
        let a = plan_contour_at(&left, &right, 1.2, 1.0, 1e-13, &p).unwrap();
        let b = plan_contour_at(&left, &right, -0.35, 1.0, 1e-13, &p).unwrap();
        assert!(a.corrections.is_empty() && !b.corrections.is_empty());
        let va = integrate_contour(f, &a, &s).unwrap().value;
        let vb = integrate_contour(f, &b, &s).unwrap().value;
        assert!((va - vb).norm() < 1e-9 * va.norm(), "{} {}", va, vb);
    }

    #[test]
    fn gaussian_line_integral() {
        let f = |r: C| Ok((r * r).exp());
        let left = [PoleLattice::left(C::new(-1.0, 0.0))];
        let right = [PoleLattice::right(C::new(1.0, 0.0))];
        let spec = plan_contour(&left, &right, 1.0, 1e-14, &p()).unwrap();
        let v = integrate_contour(f, &spec, &QuadSettings::default()).unwrap();
        assert!((v.value - std::f64::consts::PI.sqrt()).norm() < 1e-10);
        assert!(v.error < 1e-8);
    }

    #[test]
    fn residue_of_simple_pole() {
        let r = residue_at(|z: C| Ok(z.exp() / (z - 1.0)), C::new(1.0, 0.0), 0.1).unwrap();
        assert!((r - std::f64::consts::E).norm() < 1e-11);
        assert!(residue_at(|z: C| Ok(z), C::new(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn lattice_points_in_window() {
        let p = p();
        let l = PoleLattice::left(C::new(0.0, 0.0));
        let pts = l.points_between(&p, -1.3, 0.0);
        // 0, −0.6, −1.2 from the small step; −5/3 is outside
        assert_eq!(pts.len(), 3);
    }
}
