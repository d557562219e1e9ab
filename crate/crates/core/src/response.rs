//! Linear response around the bath temperature.
//!
//! `β⟨ΔQ⟩(β)` and `⟨ΔS⟩(β)` vanish at `β = β₀` with a common tangent of
//! slope
//!
//! ```text
//! a = β₀ Σ_nm T_nm p⁽⁰⁾_m E_m (E_m - E_n)                        (direct)
//!   = β₀/4 Σ_nm (T_nm p⁽⁰⁾_m + T_mn p⁽⁰⁾_n)(E_m - E_n)²          (symmetrized)
//!   = β₀/2 Var(ΔQ) at β = β₀                                     (fluctuation)
//! ```
//!
//! and a central finite difference gives a fourth, numerical value. For
//! `β₀ ≥ 0` all of them are non-negative.

use nalgebra::DMatrix;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fluctuation::{mean_entropy_change, mean_heat, two_point_at};
use crate::genrand::random_stochastic_with;
use crate::nls::{
    delta_q_rv, make_gibbs_state, mean_energy, GibbsMatrix, LevelSystem, TransitionMatrix,
    TwoPointDistribution,
};
use crate::tolerance;

/// Default finite-difference step, scaled by `max(1, |β₀|)`.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Pairwise tolerance between the three exact slope formulas (relative).
pub const EXACT_AGREEMENT: f64 = 1e-9;
/// Tolerance of the finite-difference slope (relative).
pub const NUMERIC_AGREEMENT: f64 = 1e-4;

/// The slope `a` computed four ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeBundle {
    pub direct: f64,
    pub symmetrized: f64,
    pub fluctuation: f64,
    pub numeric: f64,
}

impl SlopeBundle {
    /// Largest relative deviation among the exact formulas, measured
    /// against `max(1, |direct|)`.
    pub fn exact_deviation(&self) -> f64 {
        let scale = self.direct.abs().max(1.0);
        ((self.direct - self.symmetrized).abs())
            .max((self.direct - self.fluctuation).abs())
            .max((self.symmetrized - self.fluctuation).abs())
            / scale
    }

    pub fn numeric_deviation(&self) -> f64 {
        (self.direct - self.numeric).abs() / self.direct.abs().max(1.0)
    }

    pub fn min_value(&self) -> f64 {
        self.direct
            .min(self.symmetrized)
            .min(self.fluctuation)
            .min(self.numeric)
    }

    pub fn is_consistent(&self) -> bool {
        self.exact_deviation() <= EXACT_AGREEMENT
            && self.numeric_deviation() <= NUMERIC_AGREEMENT
            && self.min_value() >= -tolerance::FIXED_POINT
    }
}

pub fn slope_bundle(g: &GibbsMatrix) -> Result<SlopeBundle> {
    Ok(SlopeBundle {
        direct: slope_direct(g),
        symmetrized: slope_symmetrized(g),
        fluctuation: slope_fluctuation(g)?,
        numeric: slope_numeric(g, default_step(g))?,
    })
}

pub fn default_step(g: &GibbsMatrix) -> f64 {
    DEFAULT_STEP * g.beta0().abs().max(1.0)
}

/// `β₀ Σ_nm T_nm p⁽⁰⁾_m E_m (E_m - E_n)`.
pub fn slope_direct(g: &GibbsMatrix) -> f64 {
    let e = g.system().energies();
    let p0 = g.fixed_point();
    let t = g.matrix();
    let mut sum = 0.0;
    for n in 0..g.dim() {
        for m in 0..g.dim() {
            sum += t.get(n, m) * p0[m] * e[m] * (e[m] - e[n]);
        }
    }
    g.beta0() * sum
}

/// `β₀/4 Σ_nm (T_nm p⁽⁰⁾_m + T_mn p⁽⁰⁾_n)(E_m - E_n)²`, a sum of
/// non-negative terms times `β₀/4`.
pub fn slope_symmetrized(g: &GibbsMatrix) -> f64 {
    let e = g.system().energies();
    let p0 = g.fixed_point();
    let t = g.matrix();
    let mut sum = 0.0;
    for n in 0..g.dim() {
        for m in 0..g.dim() {
            let flux = t.get(n, m) * p0[m] + t.get(m, n) * p0[n];
            sum += flux * (e[m] - e[n]).powi(2);
        }
    }
    g.beta0() / 4.0 * sum
}

/// `β₀/2 (⟨ΔQ²⟩ - ⟨ΔQ⟩²)` over the two-point distribution at `β₀`.
pub fn slope_fluctuation(g: &GibbsMatrix) -> Result<f64> {
    let joint = two_point_at(g, g.beta0())?;
    let dq = delta_q_rv(g.system());
    let mean = joint.expectation(&dq)?;
    let second = joint.expectation(|m, n| dq(m, n).powi(2))?;
    Ok(g.beta0() / 2.0 * (second - mean * mean))
}

fn check_step(g: &GibbsMatrix, h: f64) -> Result<()> {
    let scale = g.beta0().abs().max(1.0);
    if !(h >= 1e-6 * scale && h <= 1e-2 * scale) {
        return Err(Error::InvalidInput(format!(
            "finite-difference step {h} outside [1e-6, 1e-2]·{scale}"
        )));
    }
    Ok(())
}

/// Central difference of `f(β) = β⟨ΔQ⟩(β)` at `β₀`.
pub fn slope_numeric(g: &GibbsMatrix, h: f64) -> Result<f64> {
    check_step(g, h)?;
    let f = |beta: f64| mean_heat(g, beta).map(|dq| beta * dq);
    let b0 = g.beta0();
    Ok((f(b0 + h)? - f(b0 - h)?) / (2.0 * h))
}

/// Central difference of `⟨ΔS⟩(β)` at `β₀`; equals `a` (common tangent).
pub fn entropy_slope_numeric(g: &GibbsMatrix, h: f64) -> Result<f64> {
    check_step(g, h)?;
    let b0 = g.beta0();
    Ok((mean_entropy_change(g, b0 + h)? - mean_entropy_change(g, b0 - h)?) / (2.0 * h))
}

/// Cumulant expansion of `log⟨e^{tΔQ}⟩` at `β = β₀`, truncated after the
/// second cumulant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantCheck {
    pub kappa1: f64,
    pub kappa2: f64,
    /// `(t, |log⟨e^{tΔQ}⟩ - κ₁t - κ₂t²/2|)`
    pub residuals: Vec<(f64, f64)>,
    pub max_deviation: f64,
    /// Log-log slope of the residual against `|t|`; `None` with fewer than
    /// two positive residuals.
    pub exponent: Option<f64>,
}

pub fn cumulant_check(g: &GibbsMatrix, t_values: &[f64]) -> Result<CumulantCheck> {
    if let Some(t) = t_values.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidInput(format!("t = {t} is not finite")));
    }
    let joint = two_point_at(g, g.beta0())?;
    let dq = delta_q_rv(g.system());
    let kappa1 = joint.expectation(&dq)?;
    let kappa2 = joint.expectation(|m, n| dq(m, n).powi(2))? - kappa1 * kappa1;
    let mut residuals = Vec::with_capacity(t_values.len());
    for &t in t_values {
        // log(1 + Σ P (e^{tX} - 1)) keeps precision for small t
        let excess = joint.expectation(|m, n| (t * dq(m, n)).exp_m1())?;
        let cgf = excess.ln_1p();
        residuals.push((t, (cgf - kappa1 * t - kappa2 * t * t / 2.0).abs()));
    }
    let max_deviation = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let points: Vec<(f64, f64)> = residuals.iter().map(|&(t, r)| (t.abs(), r)).collect();
    Ok(CumulantCheck {
        kappa1,
        kappa2,
        exponent: log_log_slope(&points),
        residuals,
        max_deviation,
    })
}

/// Least-squares slope of `log y` against `log x` over points with
/// `x, y > 0`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Heat conduction coefficient `a β₀` of `⟨ΔQ⟩ ≈ -a β₀ (τ - τ₀)`.
pub fn newton_cooling_coefficient(g: &GibbsMatrix) -> Result<f64> {
    if !(g.beta0() > 0.0) {
        return Err(Error::Precondition(format!(
            "Newton cooling needs beta0 > 0, got {}",
            g.beta0()
        )));
    }
    Ok(slope_direct(g) * g.beta0())
}

/// `max_± |⟨ΔQ⟩(τ) + a β₀ (τ - τ₀)|` at `τ = τ₀ (1 ± δ)`.
pub fn newton_cooling_residual(g: &GibbsMatrix, delta: f64) -> Result<f64> {
    let coefficient = newton_cooling_coefficient(g)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let tau0 = 1.0 / g.beta0();
    let mut worst: f64 = 0.0;
    for tau in [tau0 * (1.0 + delta), tau0 * (1.0 - delta)] {
        let dq = mean_heat(g, 1.0 / tau)?;
        worst = worst.max((dq + coefficient * (tau - tau0)).abs());
    }
    Ok(worst)
}

/// Generator `t` of a weak-coupling transition `T = 1 + ε t`; its columns
/// sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationGenerator {
    t_matrix: DMatrix<f64>,
}

impl PerturbationGenerator {
    pub fn new(t_matrix: DMatrix<f64>) -> Result<Self> {
        if !t_matrix.is_square() {
            return Err(Error::InvalidInput("generator must be square".into()));
        }
        if t_matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "generator has non-finite entries".into(),
            ));
        }
        for (n, col) in t_matrix.column_iter().enumerate() {
            if col.sum().abs() > tolerance::IDENTITY {
                return Err(Error::InvalidInput(format!(
                    "generator column {n} sums to {}, not 0",
                    col.sum()
                )));
            }
        }
        Ok(Self { t_matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            t_matrix: DMatrix::zeros(n, n),
        }
    }

    /// `(S - 1) / eps_max` for a random column-stochastic `S`, so that
    /// `1 + ε t` is stochastic for all `0 ≤ ε ≤ eps_max`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, eps_max: f64) -> Result<Self> {
        if !(eps_max > 0.0) {
            return Err(Error::InvalidInput(format!(
                "eps_max must be positive, got {eps_max}"
            )));
        }
        let s = random_stochastic_with(rng, n);
        let t = (s.as_matrix() - DMatrix::<f64>::identity(n, n)) / eps_max;
        Self::new(t)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.t_matrix
    }

    pub fn dim(&self) -> usize {
        self.t_matrix.nrows()
    }

    /// Largest `ε` with `1 + ε t ≥ 0` entrywise (0 if an off-diagonal entry
    /// is negative, infinite if no diagonal entry is).
    pub fn max_step(&self) -> f64 {
        let n = self.dim();
        let mut bound = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                let v = self.t_matrix[(i, j)];
                if i != j && v < 0.0 {
                    return 0.0;
                }
                if i == j && v < 0.0 {
                    bound = bound.min(-1.0 / v);
                }
            }
        }
        bound
    }

    /// `1 + ε t`.
    pub fn transition(&self, eps: f64) -> Result<TransitionMatrix> {
        let n = self.dim();
        let t = DMatrix::<f64>::identity(n, n) + &self.t_matrix * eps;
        if let Some(v) = t.iter().find(|v| **v < 0.0) {
            return Err(Error::Precondition(format!(
                "1 + eps t has negative entry {v} at eps = {eps}"
            )));
        }
        TransitionMatrix::new(t).map_err(|e| {
            Error::Precondition(format!("1 + eps t is not stochastic at eps = {eps}: {e}"))
        })
    }
}

/// Residuals `|⟨ΔS⟩ - βΔE|` of the weak-coupling Clausius equality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakCouplingFit {
    /// `(ε, r(ε))`
    pub table: Vec<(f64, f64)>,
    /// Log-log slope of `r` against `ε`; close to 2.
    pub exponent: Option<f64>,
}

pub fn weak_coupling_residual(
    generator: &PerturbationGenerator,
    system: &LevelSystem,
    beta: f64,
    eps_list: &[f64],
) -> Result<WeakCouplingFit> {
    if generator.dim() != system.len() {
        return Err(Error::DimensionMismatch {
            expected: system.len(),
            found: generator.dim(),
        });
    }
    let p = make_gibbs_state(system, beta)?.into_probabilities();
    let e_p = mean_energy(system, &p)?;
    let mut table = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let t = generator.transition(eps)?;
        let joint = TwoPointDistribution::new(&t, &p)?;
        let ds = joint.mean_entropy_change(system)?;
        let de = mean_energy(system, joint.final_distribution())? - e_p;
        table.push((eps, (ds - beta * de).abs()));
    }
    Ok(WeakCouplingFit {
        exponent: log_log_slope(&table),
        table,
    })
}
