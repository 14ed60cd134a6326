//! Boundary Liouville structure constants.
//!
//! The crate evaluates the boundary three-point constant `H_PT`, the
//! bulk-boundary constant `G_Hos` and the boundary reflection coefficient
//! `R_FZZ`, the Barnes double Gamma / double Sine functions they are built
//! from, and checks the functional identities these objects satisfy.
//!
//! Modules, bottom-up:
//!
//! * [`numerics`] – adaptive Gauss–Kronrod quadrature, Richardson limits
//! * [`specialfn`] – `ln Γ`, `Γ_{γ/2}`, `S_{γ/2}`, `₂F₁` and connection matrices
//! * [`contour`] – pole half-lattices, contour planning, residues
//! * [`structure_constants`] – `H_PT`, `G_Hos`, `R_FZZ`, kernels, correlators
//! * [`verify`] – identity checks returning [`verify::IdentityReport`]s

// `!(x < y)` is used on purpose so that NaN takes the failing branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contour;
pub mod error;
pub mod numerics;
pub mod specialfn;
pub mod structure_constants;
pub mod verify;

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

pub use error::{Error, Result};
pub use specialfn::LiouvilleParams;

/// Real scalar the numerical primitives are generic over (`f32`, `f64`).
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {}
impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar used throughout the crate.
pub type ComplexValue = num_complex::Complex64;
/// Double-precision quadrature settings.
pub type QuadSettings = numerics::QuadSettings<f64>;
/// Double-precision quadrature result.
pub type QuadResult = numerics::QuadResult<f64>;
