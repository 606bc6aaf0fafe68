use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid structure functions: {0}")]
    InvalidStructure(String),

    /// The non-Sasakian constructions require mu strictly positive; the
    /// Sasakian locus (mu = 0) has its own model family.
    #[error("mu must be strictly positive, got {0}")]
    NonPositiveMu(f64),

    #[error("D-homothetic deformation requires eps > 0, got {0}")]
    NonPositiveEps(f64),

    #[error("metric is singular at the evaluation point")]
    SingularMetric,

    /// A potential field was paired with system parameters it was not
    /// solved from.
    #[error("potential field does not match the supplied system: {0}")]
    SystemMismatch(String),

    /// Richardson levels of a finite-difference derivative disagree beyond
    /// the configured tolerance; the step is too large for the field.
    #[error("finite-difference instability: Richardson levels disagree by {disagreement:.3e}")]
    FdInstability { disagreement: f64 },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
