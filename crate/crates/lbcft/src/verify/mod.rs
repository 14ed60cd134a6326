//! Executable checks of the functional identities satisfied by `H_PT`,
//! `G_Hos`, `R_FZZ` and the special functions.
//!
//! Each check evaluates both sides and returns an [`IdentityReport`]. The
//! identities are theorems about the probabilistic structure constants; they
//! are checked here on the closed forms, so a failing report points at the
//! numerics.
//!
//! | check | identity |
//! |---|---|
//! | `h_shift_1`, `h_shift_2` | the two `χ`-shift equations of `H` |
//! | `r_shift_1`, `r_shift_2`, `r_zero_at_shift_node` | the two `χ`-shift equations of `R` and the node where `R` vanishes |
//! | `r_shift_gamma`, `r_shift_gamma_composition` | the `γ`-step equation of `R` and its agreement with two `γ/2` steps |
//! | `r_reflection`, `r_sigma_swap` | `R(β)R(2Q−β) = 1`, symmetry in `σ₁ ↔ σ₂` |
//! | `h_reflection`, `j_reflection` | `H(β₁) = R·H(2Q−β₁)`, `J(β₁) = J(2Q−β₁)` |
//! | `h_residue_1`, `h_residue_2` | residues of `H_PT` at `β₁ → 2Q−β₂−β₃` and `2Q−β₂−β₃−γ` |
//! | `j_residue_1`, `j_residue_2`, `j_residue_ratio` | the same residues for `J_PT` and their ratio |
//! | `three_term`, `three_term_a_periodic`, `three_term_b_periodic` | `J̃(β₁+4χ) + a_χ J̃(β₁+2χ) + b_χ J̃(β₁) = 0`; `a_χ`, `b_χ` are `2/χ`-periodic |
//! | `r_at_q`, `r_at_gamma` | `R(Q) = −1` and the closed form of `R(γ, σ, σ′)` |
//! | `g_residue`, `j_hos_residue` | residue of `G_Hos` and of its contour integral at `α → Q − β/2` |
//! | `sine_integral_fourier`, `sine_integral_kernel` | two double-sine Fourier integrals |
//! | `hyp_connection_01`, `hyp_connection_0inf` | `₂F₁` connection matrices against ODE propagation |
//! | `gamma_b_*`, `sine_*`, `gamma_reflection`, `gamma_duplication` | special-function identities on a grid (worst case reported) |
//! | `contour_line_shift`, `contour_truncation` | `J_PT` independent of the contour plan and of the truncation height |

mod integrals;
mod residues;
mod robustness;
mod shifts;
mod specialfn_checks;
mod suite;

pub use integrals::check_sine_integral_identities;
pub use residues::{
    check_g_residues, check_h_residues, h_residue_second, pt_residue_first, pt_residue_ratio, pt_residue_second,
    residue_clearance, residue_eps, RESIDUE_EPS,
};
pub use robustness::{alternative_lines, check_contour_robustness};
pub use shifts::{
    check_h_reflection, check_h_shift, check_j_shift, check_r_combined, check_r_reflection, check_r_shift,
    check_special_values, check_three_term, h_shift_coefficients, j_reduced, r_gamma_closed_form, r_shift_coefficient,
    shift_f, three_term_clearance, three_term_coeffs, ThreeTermCoeffs,
};
pub use specialfn_checks::{check_hyp_connection, check_specialfn_suite, specialfn_grid};
pub use suite::{run_suite, sample_hyp, sample_residue_case, sample_three_point, TolMap};

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Complex number in the report schema, `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C> for Cx {
    fn from(z: C) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl From<Cx> for C {
    fn from(z: Cx) -> Self {
        C::new(z.re, z.im)
    }
}

/// Magnitude below which both sides count as zero.
pub const ABS_FLOOR: f64 = 1e-12;

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub params: BTreeMap<String, Cx>,
    pub lhs: Cx,
    pub rhs: Cx,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
    pub elapsed_s: f64,
    /// Error kind when a side could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Ordered parameter list for a report.
#[derive(Debug, Clone, Default)]
pub struct Params(BTreeMap<String, Cx>);

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn with(mut self, name: &str, v: C) -> Self {
        self.0.insert(name.to_string(), v.into());
        self
    }

    pub fn real(self, name: &str, v: f64) -> Self {
        self.with(name, C::new(v, 0.0))
    }
}

fn finite_or_max(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

fn cx_finite(z: C) -> Cx {
    let f = |x: f64| if x.is_finite() { x } else { 0.0 };
    Cx {
        re: f(z.re),
        im: f(z.im),
    }
}

impl IdentityReport {
    /// Compare `lhs` and `rhs`; `rel_err = |lhs − rhs| / max(|lhs|, |rhs|)`.
    pub fn compare(name: &str, params: Params, lhs: C, rhs: C, tol: f64, start: Instant) -> Self {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel_err = if scale > 0.0 { abs_err / scale } else { 0.0 };
        let pass = abs_err.is_finite()
            && (rel_err <= tol || (lhs.norm() <= ABS_FLOOR && rhs.norm() <= ABS_FLOOR && abs_err <= tol));
        IdentityReport {
            identity_name: name.to_string(),
            params: params.0,
            lhs: cx_finite(lhs),
            rhs: cx_finite(rhs),
            abs_err: finite_or_max(abs_err),
            rel_err: finite_or_max(rel_err),
            pass,
            elapsed_s: start.elapsed().as_secs_f64(),
            error: None,
        }
    }

    /// A check whose sides could not be evaluated.
    pub fn failed(name: &str, params: Params, err: &Error, start: Instant) -> Self {
        IdentityReport {
            identity_name: name.to_string(),
            params: params.0,
            lhs: Cx { re: 0.0, im: 0.0 },
            rhs: Cx { re: 0.0, im: 0.0 },
            abs_err: f64::MAX,
            rel_err: f64::MAX,
            pass: false,
            elapsed_s: start.elapsed().as_secs_f64(),
            error: Some(format!("{}: {}", err.kind(), err)),
        }
    }

    /// Run `f` and compare its two sides, turning errors into failed reports.
    pub fn run<F>(name: &str, params: Params, tol: f64, f: F) -> Self
    where
        F: FnOnce() -> crate::Result<(C, C)>,
    {
        let start = Instant::now();
        match f() {
            Ok((l, r)) => IdentityReport::compare(name, params, l, r, tol, start),
            Err(e) => IdentityReport::failed(name, params, &e, start),
        }
    }

    /// Key for the canonical report order.
    pub fn sort_key(&self) -> (String, String) {
        let p: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={:e},{:e}", k, v.re, v.im))
            .collect();
        (self.identity_name.clone(), p.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_uses_relative_error() {
        let r = IdentityReport::compare(
            "x",
            Params::new(),
            C::new(1e8, 0.0),
            C::new(1e8 + 1.0, 0.0),
            1e-7,
            Instant::now(),
        );
        assert!(r.pass && (r.rel_err - 1e-8).abs() < 1e-15);
        let r = IdentityReport::compare(
            "x",
            Params::new(),
            C::new(1.0, 0.0),
            C::new(1.1, 0.0),
            1e-3,
            Instant::now(),
        );
        assert!(!r.pass);
        let r = IdentityReport::compare(
            "x",
            Params::new(),
            C::new(0.0, 0.0),
            C::new(1e-14, 0.0),
            1e-10,
            Instant::now(),
        );
        assert!(r.pass);
    }

    #[test]
    fn non_finite_sides_never_serialize_as_nan() {
        let r = IdentityReport::compare(
            "x",
            Params::new(),
            C::new(f64::NAN, 0.0),
            C::new(1.0, 0.0),
            1.0,
            Instant::now(),
        );
        assert!(!r.pass);
        assert!(r.lhs.re.is_finite() && r.abs_err.is_finite() && r.rel_err.is_finite());
    }

    #[test]
    fn failed_reports_carry_the_kind() {
        let r = IdentityReport::run("y", Params::new().real("gamma", 1.2), 1e-6, || {
            Err(Error::DivergentSequence)
        });
        assert!(!r.pass);
        assert_eq!(r.abs_err, f64::MAX);
        assert!(r.error.as_deref().unwrap().starts_with("DivergentSequence"));
    }

    #[test]
    fn tolerance_map_lookup() {
        let t = TolMap::default();
        assert_eq!(t.get("h_shift_1"), 1e-6);
        assert_eq!(t.get("r_reflection"), 1e-10);
        assert_eq!(t.get("unknown"), t.default);
        assert_eq!(TolMap::uniform(1e-3).get("r_reflection"), 1e-3);
    }
}
