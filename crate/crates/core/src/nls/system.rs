use serde::{Deserialize, Serialize};

use super::ProbabilityVector;
use crate::error::{Error, Result};

/// Energies `E_n` and degeneracies `d_n` of an N-level system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSystem {
    energies: Vec<f64>,
    degeneracies: Vec<u32>,
}

impl LevelSystem {
    pub fn new(energies: Vec<f64>, degeneracies: Vec<u32>) -> Result<Self> {
        if energies.len() != degeneracies.len() {
            return Err(Error::InvalidInput(format!(
                "{} energies but {} degeneracies",
                energies.len(),
                degeneracies.len()
            )));
        }
        if energies.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a level system needs at least 2 levels, got {}",
                energies.len()
            )));
        }
        if let Some(n) = energies.iter().position(|e| !e.is_finite()) {
            return Err(Error::InvalidInput(format!("energy {n} is not finite")));
        }
        if let Some(n) = degeneracies.iter().position(|&d| d == 0) {
            return Err(Error::InvalidInput(format!("degeneracy {n} is zero")));
        }
        Ok(Self {
            energies,
            degeneracies,
        })
    }

    /// Level system with all degeneracies equal to one.
    pub fn nondegenerate(energies: Vec<f64>) -> Result<Self> {
        let d = vec![1; energies.len()];
        Self::new(energies, d)
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn degeneracies(&self) -> &[u32] {
        &self.degeneracies
    }

    pub fn energy(&self, n: usize) -> f64 {
        self.energies[n]
    }

    pub fn degeneracy(&self, n: usize) -> f64 {
        f64::from(self.degeneracies[n])
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracies.iter().all(|&d| d == 1)
    }

    pub fn gibbs_state(&self, beta: f64) -> Result<GibbsState> {
        make_gibbs_state(self, beta)
    }
}

/// Boltzmann distribution `p_n = d_n exp(-β E_n) / Z` of a [`LevelSystem`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GibbsState {
    beta: f64,
    probabilities: ProbabilityVector,
    log_probabilities: Vec<f64>,
    partition_function: f64,
    log_partition_function: f64,
}

impl GibbsState {
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Temperature `τ = 1/β`.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn probabilities(&self) -> &ProbabilityVector {
        &self.probabilities
    }

    /// `log p_n`, exact even where `p_n` underflows to zero.
    pub fn log_probabilities(&self) -> &[f64] {
        &self.log_probabilities
    }

    /// `Z`; may overflow to infinity for extreme `β`, use
    /// [`log_partition_function`](Self::log_partition_function) there.
    pub fn partition_function(&self) -> f64 {
        self.partition_function
    }

    pub fn log_partition_function(&self) -> f64 {
        self.log_partition_function
    }

    pub fn into_probabilities(self) -> ProbabilityVector {
        self.probabilities
    }
}

/// Gibbs state of `system` at inverse temperature `beta`.
///
/// Any finite `beta` is accepted, including negative values. The exponents
/// `log d_n - β E_n` are shifted by their maximum before exponentiation so
/// that large `|β E_n|` neither overflows nor loses the normalization.
pub fn make_gibbs_state(system: &LevelSystem, beta: f64) -> Result<GibbsState> {
    if !beta.is_finite() {
        return Err(Error::InvalidInput(format!("beta = {beta} is not finite")));
    }
    let exponents: Vec<f64> = (0..system.len())
        .map(|n| system.degeneracy(n).ln() - beta * system.energy(n))
        .collect();
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = exponents.iter().map(|a| (a - shift).exp()).collect();
    let shifted_z: f64 = weights.iter().sum();
    let log_z = shift + shifted_z.ln();
    let probabilities = weights.iter().map(|w| w / shifted_z).collect();
    let log_probabilities = exponents.iter().map(|a| a - log_z).collect();
    Ok(GibbsState {
        beta,
        probabilities: ProbabilityVector::from_raw(probabilities),
        log_probabilities,
        partition_function: log_z.exp(),
        log_partition_function: log_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_systems() {
        assert!(LevelSystem::new(vec![0.0], vec![1]).is_err());
        assert!(LevelSystem::new(vec![0.0, 1.0], vec![1]).is_err());
        assert!(LevelSystem::new(vec![0.0, f64::NAN], vec![1, 1]).is_err());
        assert!(LevelSystem::new(vec![0.0, 1.0], vec![1, 0]).is_err());
    }

    #[test]
    fn symmetric_degenerate_levels() {
        let s = LevelSystem::nondegenerate(vec![0.0, 0.0]).unwrap();
        for beta in [-3.0, 0.0, 0.7, 40.0] {
            let g = make_gibbs_state(&s, beta).unwrap();
            assert_eq!(g.probabilities().as_slice(), &[0.5, 0.5]);
        }
    }

    #[test]
    fn spin1_levels_at_beta0() {
        let s = LevelSystem::nondegenerate(vec![1.0, 0.0, -1.0]).unwrap();
        let b0: f64 = 0.8;
        let g = make_gibbs_state(&s, b0).unwrap();
        let z = (-b0).exp() + 1.0 + b0.exp();
        let expected = [(-b0).exp() / z, 1.0 / z, b0.exp() / z];
        for (p, e) in g.probabilities().iter().zip(expected) {
            assert!((p - e).abs() <= 1e-12 * e);
        }
        assert!((g.partition_function() - z).abs() <= 1e-12 * z);
    }

    #[test]
    fn infinite_temperature_weights_by_degeneracy() {
        let s = LevelSystem::new(vec![0.0, 1.0, 2.0], vec![1, 2, 1]).unwrap();
        let g = make_gibbs_state(&s, 0.0).unwrap();
        assert_eq!(g.probabilities().as_slice(), &[0.25, 0.5, 0.25]);
        assert_eq!(g.partition_function(), 4.0);
    }

    #[test]
    fn large_beta_does_not_overflow() {
        let s = LevelSystem::nondegenerate(vec![-500.0, 0.0, 500.0]).unwrap();
        let g = make_gibbs_state(&s, 10.0).unwrap();
        assert_eq!(g.probabilities().as_slice(), &[1.0, 0.0, 0.0]);
        assert!((g.log_partition_function() - 5000.0).abs() < 1e-9);
        assert!((g.log_probabilities()[2] + 10_000.0).abs() < 1e-9);
        assert!(make_gibbs_state(&s, f64::INFINITY).is_err());
    }
}
