//! Core domain types of the N-level system: energies and degeneracies, Gibbs
//! states, left-stochastic transition matrices, Gibbs matrices and the joint
//! distribution of a two-point energy measurement.

mod matrix;
mod prob;
mod system;
mod two_point;

pub use matrix::{certify_gibbs_matrix, Certification, GibbsMatrix, TransitionMatrix};
pub use prob::{entropy, kl_divergence, mean_energy, second_moment_energy, ProbabilityVector};
pub use system::{make_gibbs_state, GibbsState, LevelSystem};
pub use two_point::{delta_q_rv, delta_s_rv, propagate, TwoPointDistribution};

use crate::error::{Error, Result};

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
