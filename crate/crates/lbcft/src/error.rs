use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report. Variants carry enough context to
/// locate the offending input; [`Error::kind`] gives a stable machine name.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature tolerance not reached after {subdivisions} subdivisions (estimate {error_estimate:e})")]
    SubdivisionLimit {
        subdivisions: usize,
        value: Complex64,
        error_estimate: f64,
    },
    #[error("integrand returned a non-finite value at t = {at}")]
    NonFiniteIntegrand { at: f64 },
    #[error("extrapolation sequence does not contract")]
    DivergentSequence,
    #[error("pole of {what} at {at} (lattice index n={n}, m={m})")]
    PoleEncountered {
        what: &'static str,
        at: Complex64,
        n: u32,
        m: u32,
    },
    #[error("zero of {what} at {at} (lattice index n={n}, m={m})")]
    ZeroEncountered {
        what: &'static str,
        at: Complex64,
        n: u32,
        m: u32,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate connection: {0}")]
    DegenerateConnection(String),
    #[error(
        "left pole {left} and right pole {right} collide (seeds {left_seed} / {right_seed}, offsets n={n}, m={m})"
    )]
    PoleCollision {
        left: Complex64,
        right: Complex64,
        left_seed: Complex64,
        right_seed: Complex64,
        n: i64,
        m: i64,
    },
    #[error("pole {pole} lies {distance:e} from the integration path")]
    PoleTooClose { pole: Complex64, distance: f64 },
    #[error("residue circle quadrature did not converge (last change {last_change:e})")]
    NonConvergent { last_change: f64 },
    #[error("sigma is within 1e-10 of the principal band edge: {0}")]
    BranchAmbiguity(Complex64),
    #[error("contour integral does not converge: {0}")]
    ConvergenceDomain(String),
    #[error("coincident insertion points")]
    CoincidentPoints,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SubdivisionLimit { .. } => "SubdivisionLimit",
            Error::NonFiniteIntegrand { .. } => "NonFiniteIntegrand",
            Error::DivergentSequence => "DivergentSequence",
            Error::PoleEncountered { .. } => "PoleEncountered",
            Error::ZeroEncountered { .. } => "ZeroEncountered",
            Error::Domain(_) => "DomainError",
            Error::DegenerateConnection(_) => "DegenerateConnection",
            Error::PoleCollision { .. } => "PoleCollision",
            Error::PoleTooClose { .. } => "PoleTooClose",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::BranchAmbiguity(_) => "BranchAmbiguity",
            Error::ConvergenceDomain(_) => "ConvergenceDomain",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }

    /// True for errors that mean "the target function is singular here"
    /// rather than "the numerics failed".
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::PoleEncountered { .. } | Error::PoleCollision { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
