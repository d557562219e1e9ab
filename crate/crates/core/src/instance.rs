//! JSON instance files.
//!
//! ```json
//! {
//!   "energies": [1.0, 0.0, -1.0],
//!   "degeneracies": [1, 1, 1],
//!   "transition": [[0.47, 0.07, 0.05], [0.18, 0.5, 0.16], [0.34, 0.43, 0.79]],
//!   "beta0": 1.0
//! }
//! ```
//!
//! `transition` is row-major: `transition[m][n] = P(m ← n)`.
//! `degeneracies` may be omitted and then defaults to all ones.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nls::{certify_gibbs_matrix, Certification, GibbsMatrix, LevelSystem, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub energies: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<u32>>,
    pub transition: Vec<Vec<f64>>,
    pub beta0: f64,
}

impl InstanceFile {
    pub fn from_gibbs(g: &GibbsMatrix) -> Self {
        Self {
            energies: g.system().energies().to_vec(),
            degeneracies: Some(g.system().degeneracies().to_vec()),
            transition: g.matrix().to_rows(),
            beta0: g.beta0(),
        }
    }

    /// Parses JSON; syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("instance JSON: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn level_system(&self) -> Result<LevelSystem> {
        let n = self.energies.len();
        let d = self.degeneracies.clone().unwrap_or_else(|| vec![1; n]);
        LevelSystem::new(self.energies.clone(), d)
            .map_err(|e| Error::InvalidInput(format!("field `energies`/`degeneracies`: {e}")))
    }

    /// The transition matrix as given, without stochasticity checks.
    pub fn raw_matrix(&self) -> Result<DMatrix<f64>> {
        let n = self.energies.len();
        if self.transition.len() != n {
            return Err(Error::InvalidInput(format!(
                "field `transition`: {} rows, expected {n} (one per energy)",
                self.transition.len()
            )));
        }
        for (m, row) in self.transition.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "field `transition[{m}]`: {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        if !self.beta0.is_finite() {
            return Err(Error::InvalidInput("field `beta0`: not finite".into()));
        }
        Ok(DMatrix::from_fn(n, n, |m, k| self.transition[m][k]))
    }

    pub fn certify(&self, tol: f64) -> Result<Certification> {
        certify_gibbs_matrix(&self.raw_matrix()?, &self.level_system()?, self.beta0, tol)
    }

    /// Validates and certifies into a [`GibbsMatrix`].
    pub fn to_gibbs(&self, tol: f64) -> Result<GibbsMatrix> {
        let system = self.level_system()?;
        let raw = self.raw_matrix()?;
        let cert = certify_gibbs_matrix(&raw, &system, self.beta0, tol)?;
        if !cert.passed {
            return Err(Error::Certification {
                column_sum_deviation: cert.column_sum_deviation,
                min_entry: cert.min_entry,
                fixed_point_residual: cert.fixed_point_residual,
                tolerance: tol,
            });
        }
        let matrix = TransitionMatrix::new(raw)
            .map_err(|e| Error::InvalidInput(format!("field `transition`: {e}")))?;
        GibbsMatrix::with_tolerance(matrix, system, self.beta0, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_boson::spin1_gibbs_matrix;

    #[test]
    fn round_trip_is_exact() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        let file = InstanceFile::from_gibbs(&g);
        let back = InstanceFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_gibbs(1e-10).unwrap(), g);
    }

    #[test]
    fn degeneracies_default_to_one() {
        let f = InstanceFile::from_json(
            r#"{"energies": [0, 1], "transition": [[1, 0], [0, 1]], "beta0": 2}"#,
        )
        .unwrap();
        assert_eq!(f.level_system().unwrap().degeneracies(), &[1, 1]);
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let err = InstanceFile::from_json("{\n  \"energies\": [0, 1],\n  \"transition\": 3\n}")
            .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let f = InstanceFile::from_json(
            r#"{"energies": [0, 1], "transition": [[1, 0], [0]], "beta0": 2}"#,
        )
        .unwrap();
        let err = f.to_gibbs(1e-10).unwrap_err();
        assert!(err.to_string().contains("transition[1]"), "{err}");
        let f = InstanceFile::from_json(
            r#"{"energies": [0, 1], "transition": [[1.001, 0], [0, 1]], "beta0": 2}"#,
        )
        .unwrap();
        assert!(matches!(
            f.to_gibbs(1e-10),
            Err(Error::Certification { .. })
        ));
        assert!(!f.certify(1e-10).unwrap().passed);
    }
}
