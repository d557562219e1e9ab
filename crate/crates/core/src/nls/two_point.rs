use nalgebra::DMatrix;

use super::{check_dim, LevelSystem, ProbabilityVector, TransitionMatrix};
use crate::error::{Error, Result};

/// `q = T p`.
pub fn propagate(t: &TransitionMatrix, p: &ProbabilityVector) -> Result<ProbabilityVector> {
    t.propagate(p)
}

/// Joint distribution `P(m, n) = T_mn p_n` of a two-point energy measurement:
/// the first measurement finds level `n`, the second finds level `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPointDistribution {
    joint: DMatrix<f64>,
    initial: ProbabilityVector,
    final_: ProbabilityVector,
}

impl TwoPointDistribution {
    pub fn new(t: &TransitionMatrix, p: &ProbabilityVector) -> Result<Self> {
        check_dim(t.dim(), p.len())?;
        let joint = DMatrix::from_fn(t.dim(), t.dim(), |m, n| t.get(m, n) * p[n]);
        let final_ = t.propagate(p)?;
        Ok(Self {
            joint,
            initial: p.clone(),
            final_,
        })
    }

    pub fn dim(&self) -> usize {
        self.joint.nrows()
    }

    pub fn joint(&self) -> &DMatrix<f64> {
        &self.joint
    }

    pub fn probability(&self, m: usize, n: usize) -> f64 {
        self.joint[(m, n)]
    }

    /// `p`, the distribution of the first outcome.
    pub fn initial(&self) -> &ProbabilityVector {
        &self.initial
    }

    /// `q = T p`, the distribution of the second outcome.
    pub fn final_distribution(&self) -> &ProbabilityVector {
        &self.final_
    }

    /// `⟨Y⟩ = Σ_mn P(m, n) Y(m, n)`.
    ///
    /// Outcomes with `P(m, n) = 0` are skipped and `rv` is never called on
    /// them; a non-finite value on any other outcome is an error.
    pub fn expectation<F>(&self, rv: F) -> Result<f64>
    where
        F: Fn(usize, usize) -> f64,
    {
        let mut total = 0.0;
        for n in 0..self.dim() {
            for m in 0..self.dim() {
                let w = self.joint[(m, n)];
                if w == 0.0 {
                    continue;
                }
                let y = rv(m, n);
                if !y.is_finite() {
                    return Err(Error::Evaluation { m, n });
                }
                total += w * y;
            }
        }
        Ok(total)
    }

    /// `⟨ΔQ⟩` for the heat variable of `system`.
    pub fn mean_heat(&self, system: &LevelSystem) -> Result<f64> {
        check_dim(system.len(), self.dim())?;
        self.expectation(delta_q_rv(system))
    }

    /// `⟨ΔS⟩`, the mean entropy increase.
    pub fn mean_entropy_change(&self, system: &LevelSystem) -> Result<f64> {
        check_dim(system.len(), self.dim())?;
        self.expectation(delta_s_rv(system, &self.initial, &self.final_))
    }
}

/// Heat absorbed by the system, `ΔQ(m, n) = E_m - E_n`.
pub fn delta_q_rv(system: &LevelSystem) -> impl Fn(usize, usize) -> f64 + '_ {
    move |m, n| system.energy(m) - system.energy(n)
}

/// Entropy increase `ΔS(m, n) = log(p_n/d_n) - log(q_m/d_m)`.
///
/// Non-finite where `p_n = 0` or `q_m = 0`. When `q = T p` neither can
/// happen on an outcome of positive probability: `T_mn p_n > 0` forces
/// `p_n > 0` and `q_m ≥ T_mn p_n > 0`.
pub fn delta_s_rv<'a>(
    system: &'a LevelSystem,
    p: &'a ProbabilityVector,
    q: &'a ProbabilityVector,
) -> impl Fn(usize, usize) -> f64 + 'a {
    move |m, n| (p[n] / system.degeneracy(n)).ln() - (q[m] / system.degeneracy(m)).ln()
}
