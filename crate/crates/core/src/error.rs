use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("random variable is not finite at outcome (m={m}, n={n})")]
    Evaluation { m: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "certification failed: column-sum deviation {column_sum_deviation:.3e}, \
         min entry {min_entry:.3e}, fixed-point residual {fixed_point_residual:.3e} (tol {tolerance:.1e})"
    )]
    Certification {
        column_sum_deviation: f64,
        min_entry: f64,
        fixed_point_residual: f64,
        tolerance: f64,
    },

    #[error("numerical degeneracy in block {block}: eigenvalue gap {gap:.3e}")]
    Degeneracy { block: String, gap: f64 },

    #[error("fixed point is not unique ({null_dimension} null directions of T - I)")]
    Multiplicity { null_dimension: usize },

    #[error("instance generation failed after {0} attempts")]
    GenerationFailure(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
