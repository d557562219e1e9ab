//! Seeded random Gibbs-matrix instances.
//!
//! A random left-stochastic matrix always has a stationary distribution
//! `p⁽⁰⁾`; when its entries are positive and distinct, the energies
//! `E_n = -log p⁽⁰⁾_n` make `p⁽⁰⁾` the Gibbs state at `β₀ = 1` (with
//! `d_n = 1`), so the matrix is a Gibbs matrix for that level system.
//!
//! All randomness comes from [`ChaCha8Rng`] seeded with
//! `seed_from_u64(seed)`. One instance consumes one stream: matrix entries
//! are drawn column by column, and rejected draws continue the same stream.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nls::{GibbsMatrix, LevelSystem, ProbabilityVector, TransitionMatrix};
use crate::tolerance;

pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maximum number of draws before [`random_gibbs_instance`] gives up.
pub const MAX_ATTEMPTS: usize = 100;

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// I.i.d. uniform(0,1) entries, each column normalized.
pub fn random_stochastic(n: usize, seed: u64) -> Result<TransitionMatrix> {
    check_size(n)?;
    Ok(random_stochastic_with(&mut rng_from_seed(seed), n))
}

pub fn random_stochastic_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TransitionMatrix {
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for mut col in entries.column_iter_mut() {
        loop {
            for v in col.iter_mut() {
                *v = rng.random::<f64>();
            }
            let s = col.sum();
            if s > 0.0 {
                col /= s;
                break;
            }
        }
    }
    TransitionMatrix::from_raw(entries)
}

/// Strictly positive random distribution.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbabilityVector {
    let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
    ProbabilityVector::from_unnormalized(w).expect("positive weights")
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TransitionMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let entries = DMatrix::from_fn(n, n, |m, k| if perm[k] == m { 1.0 } else { 0.0 });
    TransitionMatrix::from_raw(entries)
}

/// Convex combination of `count` random permutation matrices with random
/// weights: a bi-stochastic matrix.
pub fn random_bistochastic<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
) -> TransitionMatrix {
    let weights = random_distribution(rng, count);
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for &w in weights.iter() {
        entries += random_permutation(rng, n).as_matrix() * w;
    }
    TransitionMatrix::from_raw(entries)
}

/// Singular values of `T - I` below this count as null directions.
const NULL_TOLERANCE: f64 = 1e-9;

/// Unique fixed point of `T`, from the bordered system
/// `[[T - I, 1], [1ᵀ, 0]] [p; μ] = [0; 1]`.
pub fn stationary_distribution(t: &TransitionMatrix) -> Result<ProbabilityVector> {
    let n = t.dim();
    let a = t.as_matrix() - DMatrix::<f64>::identity(n, n);
    let null_dimension = a
        .clone()
        .singular_values()
        .iter()
        .filter(|&&s| s < NULL_TOLERANCE)
        .count();
    if null_dimension > 1 {
        return Err(Error::Multiplicity { null_dimension });
    }

    let mut bordered = DMatrix::<f64>::zeros(n + 1, n + 1);
    bordered.view_mut((0, 0), (n, n)).copy_from(&a);
    for i in 0..n {
        bordered[(i, n)] = 1.0;
        bordered[(n, i)] = 1.0;
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(n + 1);
    rhs[n] = 1.0;
    let lu = bordered.clone().lu();
    let mut x = lu
        .solve(&rhs)
        .ok_or(Error::Multiplicity { null_dimension: 2 })?;
    // one step of iterative refinement
    let r = &rhs - &bordered * &x;
    if let Some(dx) = lu.solve(&r) {
        x += dx;
    }

    let mut p: Vec<f64> = x.iter().take(n).copied().collect();
    if let Some(i) = p.iter().position(|&v| v < -tolerance::IDENTITY) {
        return Err(Error::InvalidInput(format!(
            "stationary vector has negative entry {i} = {}",
            p[i]
        )));
    }
    for v in &mut p {
        *v = v.max(0.0);
    }
    ProbabilityVector::from_unnormalized(p)
}

/// A seeded random Gibbs matrix with `β₀ = 1`, `d_n = 1` and
/// `E_n = -log p⁽⁰⁾_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub seed: u64,
    /// Number of matrix draws consumed, including the accepted one.
    pub attempts: usize,
    pub gibbs: GibbsMatrix,
}

impl RandomInstance {
    pub fn matrix(&self) -> &TransitionMatrix {
        self.gibbs.matrix()
    }

    pub fn system(&self) -> &LevelSystem {
        self.gibbs.system()
    }

    pub fn beta0(&self) -> f64 {
        self.gibbs.beta0()
    }
}

fn acceptable(p0: &ProbabilityVector) -> bool {
    let mut sorted: Vec<f64> = p0.iter().copied().collect();
    sorted.sort_by(f64::total_cmp);
    sorted[0] >= tolerance::DISTINCTNESS
        && sorted
            .windows(2)
            .all(|w| w[1] - w[0] >= tolerance::DISTINCTNESS)
}

pub fn random_gibbs_instance(n: usize, seed: u64) -> Result<RandomInstance> {
    check_size(n)?;
    let mut rng = rng_from_seed(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let t = random_stochastic_with(&mut rng, n);
        let p0 = match stationary_distribution(&t) {
            Ok(p0) => p0,
            Err(_) => continue,
        };
        if !acceptable(&p0) {
            continue;
        }
        let energies = p0.iter().map(|p| -p.ln()).collect();
        let system = LevelSystem::nondegenerate(energies)?;
        let gibbs = GibbsMatrix::new(t, system, 1.0)?;
        return Ok(RandomInstance {
            seed,
            attempts: attempt,
            gibbs,
        });
    }
    Err(Error::GenerationFailure(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_stochastic() {
        let a = random_stochastic(5, 7).unwrap();
        let b = random_stochastic(5, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_stochastic(5, 8).unwrap());
        for col in a.as_matrix().column_iter() {
            assert!((col.sum() - 1.0).abs() < 1e-14);
        }
        assert!(random_stochastic(1, 0).is_err());
    }

    #[test]
    fn identity_has_no_unique_fixed_point() {
        assert!(matches!(
            stationary_distribution(&TransitionMatrix::identity(3)),
            Err(Error::Multiplicity { null_dimension: 3 })
        ));
    }

    #[test]
    fn rank_one_fixed_point() {
        let v = ProbabilityVector::new(vec![0.1, 0.6, 0.3]).unwrap();
        let p = stationary_distribution(&TransitionMatrix::rank_one(&v)).unwrap();
        assert!(p.max_abs_diff(&v) < 1e-15);
    }

    #[test]
    fn gibbs_state_is_stationary_distribution() {
        let inst = random_gibbs_instance(6, 3).unwrap();
        let p = inst.system().gibbs_state(1.0).unwrap();
        let p0 = stationary_distribution(inst.matrix()).unwrap();
        assert!(p.probabilities().max_abs_diff(&p0) < 1e-12);
        assert_eq!(inst, random_gibbs_instance(6, 3).unwrap());
    }

    #[test]
    fn bistochastic_mixture() {
        let mut rng = rng_from_seed(11);
        let t = random_bistochastic(&mut rng, 6, 5);
        assert!(TransitionMatrix::new(t.as_matrix().clone()).is_ok());
        assert!(t.is_bistochastic(1e-12));
    }
}
