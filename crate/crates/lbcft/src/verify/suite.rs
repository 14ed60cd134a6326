//! The seeded verification suite.

use std::collections::BTreeMap;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::integrals::check_sine_integral_identities;
use super::residues::{check_g_residues, check_h_residues, residue_clearance, RESIDUE_EPS};
use super::robustness::check_contour_robustness;
use super::shifts::{
    check_h_reflection, check_h_shift, check_r_combined, check_r_reflection, check_r_shift, check_special_values,
    check_three_term, three_term_clearance,
};
use super::specialfn_checks::{check_hyp_connection, check_specialfn_suite};
use super::IdentityReport;
use crate::contour::pt_pole_seeds;
use crate::numerics::QuadSettings;
use crate::specialfn::{lattice_query, HypParams, LatticeKind, LiouvilleParams};
use crate::structure_constants::{ln_pt_prefactor, pt_contour, BulkBoundaryArgs, Chi, ReflectionArgs, ThreePointArgs};

/// Per-identity tolerances, falling back to `default`.
#[derive(Debug, Clone, PartialEq)]
pub struct TolMap {
    pub default: f64,
    pub by_name: BTreeMap<String, f64>,
}

impl Default for TolMap {
    fn default() -> Self {
        let mut m = BTreeMap::new();
        let mut set = |names: &[&str], t: f64| {
            for n in names {
                m.insert(n.to_string(), t);
            }
        };
        set(&["h_shift_1", "h_shift_2"], 1e-6);
        set(&["h_reflection", "j_reflection"], 1e-7);
        set(&["r_reflection"], 1e-10);
        set(&["r_sigma_swap"], 1e-12);
        set(
            &["r_shift_1", "r_shift_2", "r_zero_at_shift_node", "r_at_q", "r_at_gamma"],
            1e-9,
        );
        set(&["r_shift_gamma"], 1e-8);
        set(&["r_shift_gamma_composition"], 1e-10);
        set(&["three_term"], 1e-5);
        set(&["three_term_a_periodic", "three_term_b_periodic"], 1e-12);
        set(
            &[
                "h_residue_1",
                "h_residue_2",
                "j_residue_ratio",
                "j_residue_1",
                "j_residue_2",
            ],
            1e-5,
        );
        set(&["g_residue", "j_hos_residue"], 1e-5);
        set(&["sine_integral_fourier", "sine_integral_kernel"], 1e-6);
        set(&["hyp_connection_01", "hyp_connection_0inf"], 1e-8);
        set(&["contour_line_shift"], 1e-8);
        TolMap {
            default: 1e-6,
            by_name: m,
        }
    }
}

impl TolMap {
    /// The same tolerance for every identity.
    pub fn uniform(tol: f64) -> Self {
        TolMap {
            default: tol,
            by_name: BTreeMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> f64 {
        self.by_name.get(name).copied().unwrap_or(self.default)
    }
}

const MARGIN: f64 = 0.05;

fn clear_of_collisions(a: &ThreePointArgs, p: &LiouvilleParams) -> bool {
    let (left, right) = pt_pole_seeds(a, p);
    left.iter().all(|l| {
        right
            .iter()
            .all(|r| lattice_query(LatticeKind::GammaPole, r.seed - l.seed, p, MARGIN).is_none())
    })
}

fn evaluable(a: &ThreePointArgs, p: &LiouvilleParams, s: &QuadSettings) -> bool {
    pt_contour(a, p, s).is_ok() && ln_pt_prefactor(a, p).is_ok()
}

/// Every `H_PT` argument tuple the per-case checks evaluate.
fn touched(a: &ThreePointArgs, p: &LiouvilleParams) -> Vec<ThreePointArgs> {
    let mut out = vec![*a, a.with_beta1(2.0 * p.q - a.beta[0])];
    for chi in Chi::both() {
        let x = chi.value(p);
        let sh = |db1: f64, db2: f64, ds2: f64| {
            let mut t = *a;
            t.beta[0] += db1;
            t.beta[1] += db2;
            t.sigma[1] += ds2;
            t
        };
        out.extend([
            sh(0.0, -x, 0.0),
            sh(-x, 0.0, x / 2.0),
            sh(x, 0.0, x / 2.0),
            sh(0.0, x, x / 2.0),
            sh(-x, 0.0, 0.0),
            sh(x, 0.0, 0.0),
            sh(2.0 * x, 0.0, 0.0),
            sh(4.0 * x, 0.0, 0.0),
        ]);
    }
    out
}

/// Draw one admissible three-point tuple.
pub fn sample_three_point(rng: &mut ChaCha8Rng, p: &LiouvilleParams, s: &QuadSettings) -> ThreePointArgs {
    let (g, q) = (p.gamma, p.q);
    let half = 0.8 / (2.0 * g);
    let u3_max = ((1.0 / (2.0 * g) - g / 4.0) / half).min(1.0);
    loop {
        let beta: [C; 3] = std::array::from_fn(|_| C::new(rng.gen_range(g / 2.0 + 0.1..q - 0.1), 0.0));
        let sig = |rng: &mut ChaCha8Rng, umax: f64| {
            C::new(q / 2.0 + rng.gen_range(-1.0..umax) * half, rng.gen_range(-0.3..0.3))
        };
        let sigma = [sig(rng, 1.0), sig(rng, 1.0), sig(rng, u3_max)];
        let a = ThreePointArgs::new(beta, sigma);
        if a.beta_sum().re <= 2.0 * q + 0.1 {
            continue;
        }
        if Chi::both()
            .iter()
            .any(|&chi| three_term_clearance(chi, beta[0], &a, p) < MARGIN)
        {
            continue;
        }
        if !clear_of_collisions(&a, p) || !clear_of_collisions(&a.with_beta1(2.0 * q - beta[0]), p) {
            continue;
        }
        if touched(&a, p).iter().all(|t| evaluable(t, p, s)) {
            return a;
        }
    }
}

/// Draw hypergeometric parameters away from the integer cases of the
/// connection formulas.
pub fn sample_hyp(rng: &mut ChaCha8Rng) -> HypParams {
    let frac_ok = |z: C| (z.re - z.re.round()).abs() > 0.05 || z.im.abs() > 0.05;
    loop {
        let mut draw = || C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-0.5..0.5));
        let h = HypParams::new(draw(), draw(), draw());
        if [h.c, h.c - h.a - h.b, h.a - h.b, h.a, h.b, h.c - h.a, h.c - h.b]
            .iter()
            .all(|&z| frac_ok(z))
        {
            return h;
        }
    }
}

/// Draw a three-point tuple whose `β₁` residue limits are far enough from
/// other poles for the finite-difference probes.
pub fn sample_residue_case(rng: &mut ChaCha8Rng, p: &LiouvilleParams, s: &QuadSettings) -> ThreePointArgs {
    loop {
        let a = sample_three_point(rng, p, s);
        let first = 2.0 * p.q - a.beta[1] - a.beta[2];
        let clear = [first, first - p.gamma]
            .iter()
            .all(|&b| residue_clearance(&a.with_beta1(b), p) >= 4.0 * RESIDUE_EPS[0]);
        if clear {
            return a;
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<IdentityReport> + Send + Sync + 'a>;

/// Run every check for each `γ`, with `n_cases` random three-point samples
/// per `γ` (and `⌈n_cases/2⌉` residue samples). Reports come back sorted by
/// name, then parameters.
///
/// Samples are drawn with ChaCha8 seeded from `seed` and the position of `γ`
/// in the list. Values of `γ` within `1e-3` of `√2` are skipped.
pub fn run_suite(gammas: &[f64], n_cases: usize, seed: u64, tols: &TolMap) -> Vec<IdentityReport> {
    let s = QuadSettings::default();
    let mut params = Vec::new();
    for (gi, &g) in gammas.iter().enumerate() {
        if (g - 2f64.sqrt()).abs() < 1e-3 {
            continue;
        }
        let Ok(p) = LiouvilleParams::new(g) else { continue };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(gi as u64));
        let cases: Vec<ThreePointArgs> = (0..n_cases).map(|_| sample_three_point(&mut rng, &p, &s)).collect();
        let hyps: Vec<HypParams> = (0..2).map(|_| sample_hyp(&mut rng)).collect();
        let residue_cases: Vec<ThreePointArgs> = (0..n_cases.div_ceil(2))
            .map(|_| sample_residue_case(&mut rng, &p, &s))
            .collect();
        params.push((p, cases, hyps, residue_cases));
    }
    let t = |n: &str| tols.get(n);
    let s = &s;
    let mut jobs: Vec<Job> = Vec::new();
    for (p, cases, hyps, residue_cases) in &params {
        let q = p.q;
        for a in cases {
            let r = ReflectionArgs::new(a.beta[0], a.sigma[0], a.sigma[1]);
            for chi in Chi::both() {
                jobs.push(Box::new(move || check_h_shift(chi, a, p, s, t("h_shift_1"))));
                jobs.push(Box::new(move || {
                    check_three_term(chi, a, p, s, t("three_term"), t("three_term_a_periodic"))
                }));
                jobs.push(Box::new(move || check_r_shift(chi, &r, p, t("r_shift_1"))));
            }
            jobs.push(Box::new(move || check_h_reflection(a, p, s, t("h_reflection"))));
            jobs.push(Box::new(move || {
                check_contour_robustness(a, p, s, t("contour_line_shift"))
            }));
            jobs.push(Box::new(move || {
                let mut v = check_r_reflection(&r, p, t("r_reflection"));
                v[1].pass = v[1].rel_err <= t("r_sigma_swap");
                v
            }));
            jobs.push(Box::new(move || {
                let mut v = check_r_combined(&r, p, t("r_shift_gamma"));
                v[1].pass = v[1].rel_err <= t("r_shift_gamma_composition");
                v
            }));
        }
        for res in residue_cases {
            jobs.push(Box::new(move || check_h_residues(res, p, s, t("h_residue_1"))));
            let bb = BulkBoundaryArgs::new(C::new(q, 0.0), res.beta[1], C::new(q / 2.0, 0.0));
            jobs.push(Box::new(move || check_g_residues(&bb, p, s, t("g_residue"))));
        }
        jobs.push(Box::new(move || {
            let pairs: Vec<(C, C)> = cases.iter().map(|a| (a.sigma[0], a.sigma[1])).collect();
            check_special_values(p, &pairs, t("r_at_q"))
        }));
        jobs.push(Box::new(move || {
            check_sine_integral_identities(p, s, t("sine_integral_fourier"))
        }));
        for h in hyps {
            jobs.push(Box::new(move || check_hyp_connection(h, t("hyp_connection_01"))));
        }
        jobs.push(Box::new(move || check_specialfn_suite(p)));
    }
    let mut out: Vec<IdentityReport> = jobs.par_iter().flat_map(|j| j()).collect();
    out.sort_by_key(|r| r.sort_key());
    out
}
