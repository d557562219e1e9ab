//! Numerical tolerances shared across the crate.
//!
//! | Constant | Used for |
//! |----------|----------|
//! | [`IDENTITY`] | algebraic identities, normalization, column sums |
//! | [`FIXED_POINT`] | fixed-point residuals of externally supplied matrices |
//! | [`SLACK`] | one-sided slack for exact inequalities |

/// Algebraic identities evaluated in double precision (N ≤ 64).
pub const IDENTITY: f64 = 1e-12;

/// Fixed-point residual `‖T p⁽⁰⁾ - p⁽⁰⁾‖_∞` for supplied matrices.
pub const FIXED_POINT: f64 = 1e-10;

/// An inequality `lhs ≤ rhs` holds when `rhs - lhs ≥ -SLACK`.
pub const SLACK: f64 = 1e-12;

/// J-equations must evaluate to 1 within this absolute tolerance.
pub const J_EQUATION: f64 = 1e-10;

/// Stationary-distribution entries must be this far apart and at least this large.
pub const DISTINCTNESS: f64 = 1e-6;
