//! Contour-plan independence of `J_PT`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64 as C;

use super::{IdentityReport, Params};
use crate::contour::{plan_contour_at, pt_pole_seeds, ContourSpec};
use crate::numerics::QuadSettings;
use crate::specialfn::LiouvilleParams;
use crate::structure_constants::{j_pt_on, pt_contour, ThreePointArgs};

/// Distance from the line `Re r = x` to the nearest bounding pole.
fn line_clearance(a: &ThreePointArgs, p: &LiouvilleParams, x: f64) -> f64 {
    let (left, right) = pt_pole_seeds(a, p);
    left.iter()
        .chain(right.iter())
        .flat_map(|l| l.points_between(p, x - 2.0, x + 2.0))
        .map(|z| (z.re - x).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Alternative lines within `±1.2` of `spec.base_re`, 0.05 clear of every
/// pole: the nearest one for each number of residue corrections other
/// than the planned one, plus the nearest with the planned count (up to four).
pub fn alternative_lines(a: &ThreePointArgs, p: &LiouvilleParams, spec: &ContourSpec) -> Vec<f64> {
    let (left, right) = pt_pole_seeds(a, p);
    let mut by_count: BTreeMap<usize, f64> = BTreeMap::new();
    for k in 1..=120 {
        for sgn in [1.0, -1.0] {
            let x = spec.base_re + sgn * 1.2 * k as f64 / 120.0;
            if line_clearance(a, p, x) < 0.05 {
                continue;
            }
            if let Ok(alt) = plan_contour_at(&left, &right, x, spec.decay_rate, spec.tol, p) {
                by_count.entry(alt.corrections.len()).or_insert(x);
            }
        }
    }
    by_count.into_values().take(4).collect()
}

/// `contour_line_shift`: `J_PT` on alternative lines (with the residue
/// corrections they require) against the planned contour. `contour_truncation`:
/// doubling the truncation height moves the value by less than the reported
/// tail bound plus quadrature error.
pub fn check_contour_robustness(
    a: &ThreePointArgs,
    p: &LiouvilleParams,
    s: &QuadSettings,
    tol: f64,
) -> Vec<IdentityReport> {
    let params = Params::new()
        .real("gamma", p.gamma)
        .with("beta1", a.beta[0])
        .with("beta2", a.beta[1])
        .with("beta3", a.beta[2])
        .with("sigma1", a.sigma[0])
        .with("sigma2", a.sigma[1])
        .with("sigma3", a.sigma[2]);
    let start = Instant::now();
    let spec = match pt_contour(a, p, s) {
        Ok(v) => v,
        Err(e) => {
            return vec![
                IdentityReport::failed("contour_line_shift", params.clone(), &e, start),
                IdentityReport::failed("contour_truncation", params, &e, start),
            ]
        }
    };
    let (left, right) = pt_pole_seeds(a, p);
    let mut out = Vec::new();
    let reference = j_pt_on(a, p, s, &spec, None);
    for x in alternative_lines(a, p, &spec) {
        let start = Instant::now();
        let pr = params.clone().real("base_re", x);
        out.push(IdentityReport::run("contour_line_shift", pr, tol, || {
            let alt = plan_contour_at(&left, &right, x, spec.decay_rate, spec.tol, p)?;
            let v = j_pt_on(a, p, s, &alt, None)?.value;
            Ok((v, reference.clone()?.value))
        }));
        out.last_mut().unwrap().elapsed_s = start.elapsed().as_secs_f64();
    }
    let start = Instant::now();
    let r = (|| {
        let base = reference.clone()?;
        let doubled = j_pt_on(a, p, s, &spec, Some(2.0 * base.trunc_height))?;
        Ok::<_, crate::Error>((base, doubled))
    })();
    out.push(match r {
        Ok((base, doubled)) => {
            let budget = base.tail_bound + base.error + doubled.error;
            let moved = (doubled.value - base.value).norm();
            let mut rep = IdentityReport::compare(
                "contour_truncation",
                params,
                C::new(moved, 0.0),
                C::new(0.0, 0.0),
                0.0,
                start,
            );
            rep.rhs = C::new(budget, 0.0).into();
            rep.abs_err = moved;
            rep.rel_err = moved / base.value.norm().max(f64::MIN_POSITIVE);
            rep.pass = moved <= budget;
            rep
        }
        Err(e) => IdentityReport::failed("contour_truncation", params, &e, start),
    });
    out
}
