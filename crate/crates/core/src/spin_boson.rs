//! Spin 1 coupled to a harmonic oscillator bath.
//!
//! `H = s_z ⊗ 1 + 1 ⊗ (A*A + 1/2) + λ (s⁺ ⊗ A + s⁻ ⊗ A*)`. The coupling
//! commutes with the free part, so `H` is block diagonal in the eigenspaces
//! of constant total excitation `k = m + n` (spin `m`, oscillator `n`):
//!
//! * `k = -1`: the singlet `|-1,0⟩`,
//! * `k = 0`: the doublet `|0,0⟩, |-1,1⟩`,
//! * `k ≥ 1`: the triplets `|1,k-1⟩, |0,k⟩, |-1,k+1⟩`.
//!
//! With the oscillator initially in its Gibbs state at `β₀` and the dynamics
//! averaged over infinite time, the spin occupations evolve by a 3×3
//! transition matrix that does not depend on `λ`. This module evaluates that
//! matrix in closed form ([`analytic_transition_matrix`]) and, independently,
//! by diagonalizing the blocks ([`numerical_transition_matrix`]).
//!
//! Level index order is `(m = 1, m = 0, m = -1)`.

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fluctuation;
use crate::nls::{GibbsMatrix, LevelSystem, TransitionMatrix};
use crate::special::lerch_phi;

/// Spin-1 energies `(1, 0, -1)`, non-degenerate.
pub fn spin1_level_system() -> LevelSystem {
    LevelSystem::nondegenerate(vec![1.0, 0.0, -1.0]).expect("valid level system")
}

/// Closed-form time-averaged transition matrix at bath inverse temperature
/// `beta0 > 0`.
///
/// Cancellations grow like `e^{β₀}` in the diagonal entries; past
/// `β₀ ≈ 8` the columns no longer sum to one within `1e-12` and a domain
/// error is returned.
pub fn analytic_transition_matrix(beta0: f64) -> Result<TransitionMatrix> {
    if !(beta0 > 0.0) || !beta0.is_finite() {
        return Err(Error::Domain(format!(
            "spin-boson transition matrix needs beta0 > 0, got {beta0}"
        )));
    }
    let b = beta0;
    let e = f64::exp;
    let phi = lerch_phi(e(-b), 2.0, 1.5)?;
    let atanh_half = e(-b / 2.0).atanh();
    // coth⁻¹(x) = tanh⁻¹(1/x) for x > 1
    let acoth_half = (1.0 / e(b / 2.0)).atanh();
    let sh_half = (b / 2.0).sinh();
    let em1 = e(b) - 1.0;

    let t11 = em1 / 32.0 * (12.0 / em1 + 8.0 * e(b / 2.0) * acoth_half + 3.0 * e(-b) * phi - 8.0);
    let t12 = 0.25 * (1.0 - 2.0 * sh_half * atanh_half);
    let t13 = 3.0 / 32.0 * e(-3.0 * b) * (4.0 * e(b) - em1 * phi);
    let t21 = 0.25 * e(b) * (1.0 - 2.0 * sh_half * atanh_half);
    let t22 = 0.5;
    let t23 = 0.25 * e(-1.5 * b) * (e(b / 2.0) + em1 * atanh_half);
    let t31 = 3.0 / 32.0 * e(-b) * (4.0 * e(b) - em1 * phi);
    let t32 = 0.25 * (2.0 * sh_half * atanh_half + 1.0);
    let t33 = 1.0 / 32.0
        * e(-3.0 * b)
        * (4.0
            * e(2.0 * b)
            * (11.0 * b.sinh() + 5.0 * b.cosh() - 4.0 * sh_half * acoth_half - 2.0)
            + 3.0 * em1 * phi);

    let entries = DMatrix::from_row_slice(3, 3, &[t11, t12, t13, t21, t22, t23, t31, t32, t33]);
    TransitionMatrix::new(entries).map_err(|err| {
        Error::Domain(format!(
            "closed form at beta0 = {beta0} is not stochastic to working precision: {err}"
        ))
    })
}

/// The analytic matrix as a certified [`GibbsMatrix`] of the spin-1 system.
pub fn spin1_gibbs_matrix(beta0: f64) -> Result<GibbsMatrix> {
    GibbsMatrix::new(
        analytic_transition_matrix(beta0)?,
        spin1_level_system(),
        beta0,
    )
}

/// Parameters of the dynamical construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinBosonParams {
    pub beta0: f64,
    pub lambda: f64,
    /// Highest initially occupied oscillator level.
    pub n_max: usize,
}

/// Bound on the oscillator Gibbs weight beyond `n_max`.
pub const TAIL_BOUND: f64 = 1e-12;

impl SpinBosonParams {
    pub fn new(beta0: f64, lambda: f64, n_max: usize) -> Result<Self> {
        if !(beta0 > 0.0) || !beta0.is_finite() {
            return Err(Error::Domain(format!(
                "beta0 must be positive, got {beta0}"
            )));
        }
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "lambda must be nonzero, got {lambda}"
            )));
        }
        let tail = Self::tail(beta0, n_max);
        if tail > TAIL_BOUND {
            return Err(Error::Domain(format!(
                "n_max = {n_max} leaves oscillator tail weight {tail:.3e} > {TAIL_BOUND:e}"
            )));
        }
        Ok(Self {
            beta0,
            lambda,
            n_max,
        })
    }

    /// Smallest `n_max` meeting [`TAIL_BOUND`].
    pub fn from_tail_bound(beta0: f64, lambda: f64) -> Result<Self> {
        if !(beta0 > 0.0) || !beta0.is_finite() {
            return Err(Error::Domain(format!(
                "beta0 must be positive, got {beta0}"
            )));
        }
        let mut n_max = 1;
        while Self::tail(beta0, n_max) > TAIL_BOUND {
            n_max += 1;
        }
        Self::new(beta0, lambda, n_max)
    }

    fn tail(beta0: f64, n_max: usize) -> f64 {
        (-beta0 * n_max as f64).exp() / (1.0 - (-beta0).exp())
    }
}

/// `H` restricted to the triplet `|1,n-1⟩, |0,n⟩, |-1,n+1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripletBlock {
    pub n: usize,
    pub matrix: Matrix3<f64>,
    lambda: f64,
}

impl TripletBlock {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("triplet index starts at 1".into()));
        }
        let d = n as f64 + 0.5;
        let a = lambda * (2.0 * n as f64).sqrt();
        let b = lambda * (2.0 * n as f64 + 2.0).sqrt();
        Ok(Self {
            n,
            matrix: Matrix3::new(d, a, 0.0, a, d, b, 0.0, b, d),
            lambda,
        })
    }

    /// `n + 1/2` and `n + 1/2 ± λ √(4n + 2)`, ascending.
    pub fn closed_form_eigenvalues(&self) -> [f64; 3] {
        let d = self.n as f64 + 0.5;
        let r = (self.lambda * (4.0 * self.n as f64 + 2.0).sqrt()).abs();
        [d - r, d, d + r]
    }
}

/// Basis of the block with total excitation `k`: `(spin index, oscillator n)`
/// with spin index 0, 1, 2 for m = 1, 0, -1.
fn block_basis(k: i64) -> Vec<(usize, usize)> {
    [1i64, 0, -1]
        .iter()
        .enumerate()
        .filter_map(|(idx, &m)| {
            let n = k - m;
            (n >= 0).then_some((idx, n as usize))
        })
        .collect()
}

fn block_hamiltonian(basis: &[(usize, usize)], lambda: f64) -> DMatrix<f64> {
    let spin_energy = [1.0, 0.0, -1.0];
    let dim = basis.len();
    DMatrix::from_fn(dim, dim, |i, j| {
        let (si, ni) = basis[i];
        let (sj, nj) = basis[j];
        if i == j {
            spin_energy[si] + ni as f64 + 0.5
        } else if sj == si + 1 {
            // s⁻|m⟩ = √2 |m-1⟩ for both spin-1 steps, A*|n⟩ = √(n+1) |n+1⟩
            lambda * 2f64.sqrt() * (nj as f64).sqrt()
        } else if si == sj + 1 {
            lambda * 2f64.sqrt() * (ni as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// Minimum separation between eigenvalues inside any block.
pub const DEGENERACY_GAP: f64 = 1e-10;

/// Transition matrix from time-averaged unitary dynamics.
///
/// For an initial product state `|m⟩⟨m| ⊗ π`, the infinite-time average of
/// `e^{-iHt} ρ e^{iHt}` is `Σ_k P_k ρ P_k` over the eigenprojectors of `H`;
/// blocks are diagonalized numerically. Oscillator levels `0..=n_max` carry
/// the renormalized Gibbs weights `π_n ∝ e^{-β₀ n}`; the blocks reached from
/// them are kept in full.
pub fn numerical_transition_matrix(params: &SpinBosonParams) -> Result<TransitionMatrix> {
    let SpinBosonParams {
        beta0,
        lambda,
        n_max,
    } = *params;
    let raw: Vec<f64> = (0..=n_max).map(|n| (-beta0 * n as f64).exp()).collect();
    let z: f64 = raw.iter().sum();
    let pi: Vec<f64> = raw.iter().map(|w| w / z).collect();

    let mut t = DMatrix::<f64>::zeros(3, 3);
    for k in -1..=(n_max as i64 + 1) {
        let basis = block_basis(k);
        let h = block_hamiltonian(&basis, lambda);
        let eigen = SymmetricEigen::new(h);
        let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        if let Some(gap) = values.windows(2).map(|w| w[1] - w[0]).reduce(f64::min) {
            if gap < DEGENERACY_GAP {
                return Err(Error::Degeneracy {
                    block: format!("k = {k}"),
                    gap,
                });
            }
        }
        let v = &eigen.eigenvectors;
        for (i, &(spin_from, n_from)) in basis.iter().enumerate() {
            if n_from > n_max {
                continue;
            }
            for (b, &(spin_to, _)) in basis.iter().enumerate() {
                let overlap: f64 = (0..basis.len())
                    .map(|e| v[(b, e)].powi(2) * v[(i, e)].powi(2))
                    .sum();
                t[(spin_to, spin_from)] += pi[n_from] * overlap;
            }
        }
    }
    TransitionMatrix::new(t)
}

/// Location of the extremum of `|⟨ΔS⟩(β)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argmax {
    pub beta: f64,
    pub value: f64,
    /// False when the search converged onto an end of the interval.
    pub interior: bool,
}

/// Golden-section search for the maximum of `|⟨ΔS⟩(β)|` on `(lo, hi)`.
pub fn entropy_change_argmax(g: &GibbsMatrix, lo: f64, hi: f64, tol: f64) -> Result<Argmax> {
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty interval ({lo}, {hi})")));
    }
    let f = |beta: f64| fluctuation::mean_entropy_change(g, beta).map(f64::abs);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let beta = 0.5 * (a + b);
    let interior = beta - lo > 2.0 * tol && hi - beta > 2.0 * tol;
    Ok(Argmax {
        beta,
        value: f(beta)?,
        interior,
    })
}

/// Maximizer of `|⟨ΔS⟩|` over `β ∈ (0, β₀)` for the spin-1 example, to
/// `1e-6` in `β`.
pub fn delta_s_argmax(beta0: f64) -> Result<Argmax> {
    let g = spin1_gibbs_matrix(beta0)?;
    entropy_change_argmax(&g, 0.0, beta0, 1e-6)
}
