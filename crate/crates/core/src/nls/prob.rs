use std::ops::Index;

use serde::Serialize;

use super::{check_dim, LevelSystem};
use crate::error::{Error, Result};
use crate::tolerance;

/// A probability distribution over the levels (or measurement outcomes).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector {
    weights: Vec<f64>,
}

impl ProbabilityVector {
    /// Validates that every weight lies in `[0, 1]` and that the weights sum
    /// to one within `1e-12`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("empty probability vector".into()));
        }
        if let Some(i) = weights
            .iter()
            .position(|w| !w.is_finite() || *w < 0.0 || *w > 1.0)
        {
            return Err(Error::InvalidInput(format!(
                "weight {i} = {} is outside [0, 1]",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > tolerance::IDENTITY {
            return Err(Error::InvalidInput(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    /// Normalizes non-negative finite weights with a positive sum.
    pub fn from_unnormalized(weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidInput(format!(
                "weight {i} = {} is negative or not finite",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidInput("weights sum to zero".into()));
        }
        Ok(Self {
            weights: weights.into_iter().map(|w| w / total).collect(),
        })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, k: usize) -> Self {
        let mut weights = vec![0.0; n];
        weights[k] = 1.0;
        Self { weights }
    }

    /// Trusted constructor for vectors produced by stochastic maps.
    pub(crate) fn from_raw(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.weights.iter()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }

    /// `max_n |self_n - other_n|`.
    pub fn max_abs_diff(&self, other: &ProbabilityVector) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.weights
    }
}

impl Index<usize> for ProbabilityVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.weights[i]
    }
}

/// `E(p) = Σ_n p_n E_n`.
pub fn mean_energy(system: &LevelSystem, p: &ProbabilityVector) -> Result<f64> {
    check_dim(system.len(), p.len())?;
    Ok(p.iter().zip(system.energies()).map(|(w, e)| w * e).sum())
}

/// `E₂(p) = Σ_n p_n E_n²`.
pub fn second_moment_energy(system: &LevelSystem, p: &ProbabilityVector) -> Result<f64> {
    check_dim(system.len(), p.len())?;
    Ok(p.iter()
        .zip(system.energies())
        .map(|(w, e)| w * e * e)
        .sum())
}

/// `S(p) = -Σ_n p_n log(p_n / d_n)` in nats, with `0 log 0 = 0`.
pub fn entropy(system: &LevelSystem, p: &ProbabilityVector) -> Result<f64> {
    check_dim(system.len(), p.len())?;
    Ok(-p
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(n, &w)| w * (w / system.degeneracy(n)).ln())
        .sum::<f64>())
}

/// Kullback-Leibler divergence `S(q‖p) = Σ_n q_n log(q_n / p_n)`.
///
/// Returns `f64::INFINITY` when some `q_n > 0` meets `p_n = 0`.
pub fn kl_divergence(q: &ProbabilityVector, p: &ProbabilityVector) -> Result<f64> {
    check_dim(p.len(), q.len())?;
    let mut total = 0.0;
    for (&qn, &pn) in q.iter().zip(p.iter()) {
        if qn == 0.0 {
            continue;
        }
        if pn == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += qn * (qn / pn).ln();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1, 1.1]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(ProbabilityVector::from_unnormalized(vec![0.0, 0.0]).is_err());
        let p = ProbabilityVector::from_unnormalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(p.as_slice(), &[0.25, 0.75]);
    }

    #[test]
    fn energy_moments() {
        let s = LevelSystem::nondegenerate(vec![1.0, 0.0, -1.0]).unwrap();
        let p = ProbabilityVector::uniform(3);
        assert!(mean_energy(&s, &p).unwrap().abs() < 1e-15);
        assert!((second_moment_energy(&s, &p).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        let point = ProbabilityVector::point_mass(3, 2);
        assert_eq!(mean_energy(&s, &point).unwrap(), -1.0);
        assert!(mean_energy(&s, &ProbabilityVector::uniform(2)).is_err());
    }

    #[test]
    fn entropy_values() {
        let s = LevelSystem::nondegenerate(vec![0.0, 1.0]).unwrap();
        let h = entropy(&s, &ProbabilityVector::uniform(2)).unwrap();
        assert!((h - LN_2).abs() < 1e-15);
        assert_eq!(
            entropy(&s, &ProbabilityVector::point_mass(2, 1)).unwrap(),
            0.0
        );
        // A point mass on a doubly degenerate level carries log 2.
        let d = LevelSystem::new(vec![0.0, 1.0], vec![2, 1]).unwrap();
        let h = entropy(&d, &ProbabilityVector::point_mass(2, 0)).unwrap();
        assert!((h - LN_2).abs() < 1e-15);
    }

    #[test]
    fn kl_values() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let q = ProbabilityVector::new(vec![1.0, 0.0]).unwrap();
        let u = ProbabilityVector::uniform(2);
        assert!((kl_divergence(&q, &u).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(kl_divergence(&u, &q).unwrap(), f64::INFINITY);
        assert!(kl_divergence(&u, &p).is_err());
    }
}
