//! Stochastic thermodynamics of a finite N-level system (NLS) coupled to a
//! heat bath.
//!
//! The heat bath enters only through a left-stochastic transition matrix `T`
//! acting on the level occupation probabilities of the NLS. When `T` leaves a
//! Gibbs state at the bath inverse temperature `β₀` invariant it is called a
//! *Gibbs matrix*, and the following hold for every initial Gibbs state at
//! inverse temperature `β`:
//!
//! * the heat J-equation `⟨exp(-(β-β₀)ΔQ)⟩ = 1`,
//! * heat flows from hot to cold, `(β-β₀)⟨ΔQ⟩ ≥ 0`,
//! * the two Clausius inequalities `β₀⟨ΔQ⟩ ≤ ⟨ΔS⟩ ≤ β⟨ΔQ⟩`,
//! * entropy flows from hot to cold for `β ≥ 0`.
//!
//! Modules:
//!
//! * [`nls`] - level systems, Gibbs states, transition matrices, two-point
//!   distributions, entropies and divergences.
//! * [`fluctuation`] - J-equation evaluators and inequality checks.
//! * [`response`] - linear response around `β₀`: the tangent slope `a`
//!   computed four independent ways, cumulants, Newton cooling and the
//!   weak-coupling Clausius equality.
//! * [`spin_boson`] - the exactly solvable spin-1 / harmonic oscillator model
//!   with a closed-form transition matrix and a dynamical oracle.
//! * [`genrand`] - seeded random Gibbs-matrix instances.
//! * [`instance`], [`sweep`], [`report`] - file formats and the verification
//!   suite used by the `nls-thermo` binary ([`cli`]).
//!
//! The `examples/` directory has one runnable program per capability.
//!
//! ```
//! use nls_thermo::{fluctuation, spin_boson};
//!
//! let g = spin_boson::spin1_gibbs_matrix(1.0).unwrap();
//! let j = fluctuation::j_heat_expectation(&g, 2.0).unwrap();
//! assert!((j - 1.0).abs() < 1e-10);
//! let bounds = fluctuation::clausius_bounds(&g, 3.0).unwrap();
//! assert!(bounds.first.holds && bounds.second.holds);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fluctuation;
pub mod genrand;
pub mod instance;
pub mod nls;
pub mod report;
pub mod response;
pub mod special;
pub mod spin_boson;
pub mod sweep;
pub mod tolerance;

pub use error::{Error, Result};
pub use nls::{
    GibbsMatrix, GibbsState, LevelSystem, ProbabilityVector, TransitionMatrix, TwoPointDistribution,
};
