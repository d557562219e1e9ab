use nalgebra::DMatrix;
use serde::Serialize;

use super::{check_dim, make_gibbs_state, LevelSystem, ProbabilityVector};
use crate::error::{Error, Result};
use crate::tolerance;

/// Left-stochastic matrix with entry `(m, n) = P(m ← n)`.
///
/// Entries are non-negative and every column sums to one within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    entries: DMatrix<f64>,
}

impl TransitionMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "transition matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        for n in 0..entries.ncols() {
            for m in 0..entries.nrows() {
                let v = entries[(m, n)];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "transition entry ({m}, {n}) = {v} is negative or not finite"
                    )));
                }
            }
        }
        for (n, col) in entries.column_iter().enumerate() {
            let s = col.sum();
            if (s - 1.0).abs() > tolerance::IDENTITY {
                return Err(Error::InvalidInput(format!(
                    "column {n} sums to {s}, not 1"
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Builds from row-major data, `rows[m][n] = P(m ← n)`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(matrix_from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: DMatrix::identity(n, n),
        }
    }

    /// Every column equal to `v`: maps any distribution onto `v`.
    pub fn rank_one(v: &ProbabilityVector) -> Self {
        let n = v.len();
        Self {
            entries: DMatrix::from_fn(n, n, |m, _| v[m]),
        }
    }

    pub(crate) fn from_raw(entries: DMatrix<f64>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries[(m, n)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.row_iter().map(|r| r.sum()).collect()
    }

    /// Whether rows also sum to one within `tol`.
    pub fn is_bistochastic(&self, tol: f64) -> bool {
        self.row_sums().iter().all(|s| (s - 1.0).abs() <= tol)
    }

    /// `q_m = Σ_n T_mn p_n`.
    pub fn propagate(&self, p: &ProbabilityVector) -> Result<ProbabilityVector> {
        check_dim(self.dim(), p.len())?;
        let q = (0..self.dim())
            .map(|m| (0..self.dim()).map(|n| self.entries[(m, n)] * p[n]).sum())
            .collect();
        Ok(ProbabilityVector::from_raw(q))
    }
}

impl AsRef<DMatrix<f64>> for TransitionMatrix {
    fn as_ref(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

pub(crate) fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if let Some(m) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!(
            "row {m} has {} entries, expected {n}",
            rows[m].len()
        )));
    }
    Ok(DMatrix::from_fn(n, n, |m, k| rows[m][k]))
}

/// Outcome of checking a matrix against the Gibbs-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certification {
    /// `max_n |Σ_m T_mn - 1|`
    pub column_sum_deviation: f64,
    pub min_entry: f64,
    /// `‖T p⁽⁰⁾ - p⁽⁰⁾‖_∞`
    pub fixed_point_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks stochasticity and invariance of the Gibbs state of `system` at
/// `beta0`. Violations are reported, not returned as errors; only malformed
/// input (shape mismatch, non-finite `beta0`) is an error.
pub fn certify_gibbs_matrix(
    matrix: &DMatrix<f64>,
    system: &LevelSystem,
    beta0: f64,
    tol: f64,
) -> Result<Certification> {
    let t = matrix;
    if !t.is_square() {
        return Err(Error::InvalidInput(
            "transition matrix is not square".into(),
        ));
    }
    check_dim(system.len(), t.nrows())?;
    let p0 = make_gibbs_state(system, beta0)?.into_probabilities();
    let column_sum_deviation = t
        .column_iter()
        .map(|c| (c.sum() - 1.0).abs())
        .fold(0.0, f64::max);
    let min_entry = t.iter().copied().fold(f64::INFINITY, f64::min);
    let fixed_point_residual = (0..t.nrows())
        .map(|m| {
            let image: f64 = (0..t.ncols()).map(|n| t[(m, n)] * p0[n]).sum();
            (image - p0[m]).abs()
        })
        .fold(0.0, f64::max);
    let passed = min_entry >= 0.0
        && column_sum_deviation <= tol
        && fixed_point_residual <= tol
        && t.iter().all(|v| v.is_finite());
    Ok(Certification {
        column_sum_deviation,
        min_entry,
        fixed_point_residual,
        tolerance: tol,
        passed,
    })
}

/// A transition matrix that leaves the Gibbs state of its level system at
/// inverse bath temperature `beta0` invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsMatrix {
    matrix: TransitionMatrix,
    system: LevelSystem,
    beta0: f64,
    fixed_point: ProbabilityVector,
    certification: Certification,
}

impl GibbsMatrix {
    /// Certifies at the default fixed-point tolerance `1e-10`.
    pub fn new(matrix: TransitionMatrix, system: LevelSystem, beta0: f64) -> Result<Self> {
        Self::with_tolerance(matrix, system, beta0, tolerance::FIXED_POINT)
    }

    pub fn with_tolerance(
        matrix: TransitionMatrix,
        system: LevelSystem,
        beta0: f64,
        tol: f64,
    ) -> Result<Self> {
        let certification = certify_gibbs_matrix(matrix.as_matrix(), &system, beta0, tol)?;
        if !certification.passed {
            return Err(Error::Certification {
                column_sum_deviation: certification.column_sum_deviation,
                min_entry: certification.min_entry,
                fixed_point_residual: certification.fixed_point_residual,
                tolerance: tol,
            });
        }
        let fixed_point = make_gibbs_state(&system, beta0)?.into_probabilities();
        Ok(Self {
            matrix,
            system,
            beta0,
            fixed_point,
            certification,
        })
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn system(&self) -> &LevelSystem {
        &self.system
    }

    pub fn beta0(&self) -> f64 {
        self.beta0
    }

    /// The invariant Gibbs state `p⁽⁰⁾`.
    pub fn fixed_point(&self) -> &ProbabilityVector {
        &self.fixed_point
    }

    pub fn certification(&self) -> &Certification {
        &self.certification
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}
