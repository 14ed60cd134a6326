//! Complex log-Gamma, the double Gamma and double Sine functions, and the
//! Gauss hypergeometric function with its connection matrices.

mod double;
mod gamma;
mod hyper;

pub use double::{double_gamma, double_sine, lattice_query, log_double_gamma, log_double_sine, LATTICE_GUARD};
pub use gamma::{gamma, ln_2sin, ln_gamma_ratio_sym, lngamma};
pub use hyper::{connection_matrix_01, connection_matrix_0inf, hyp2f1, HypParams, Matrix2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling `γ ∈ (0, 2)` with background charge `Q = γ/2 + 2/γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleParams {
    pub gamma: f64,
    pub q: f64,
}

impl LiouvilleParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, 2), got {}",
                gamma
            )));
        }
        Ok(LiouvilleParams {
            gamma,
            q: gamma / 2.0 + 2.0 / gamma,
        })
    }

    /// `b = γ/2`, the small lattice step.
    pub fn b(&self) -> f64 {
        self.gamma / 2.0
    }

    /// `1/b = 2/γ`, the large lattice step.
    pub fn inv_b(&self) -> f64 {
        2.0 / self.gamma
    }
}

/// Which lattice [`lattice_query`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    /// `−nγ/2 − 2m/γ`
    GammaPole,
    /// `−nγ/2 − 2m/γ`
    SinePole,
    /// `Q + nγ/2 + 2m/γ`
    SineZero,
}
