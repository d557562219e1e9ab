//! J-equations and the second-law-like inequalities that follow from them by
//! Jensen's inequality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nls::{
    check_dim, entropy, kl_divergence, make_gibbs_state, mean_energy, GibbsMatrix, LevelSystem,
    ProbabilityVector, TransitionMatrix, TwoPointDistribution,
};
use crate::tolerance;

/// `lhs ≤ rhs`, evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub slack: f64,
    /// `slack ≥ -1e-12`
    pub holds: bool,
}

impl InequalityReport {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            label: label.into(),
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance::SLACK,
        }
    }

    /// `lhs ≤ rhs` without slack, for thresholds rather than exact bounds.
    pub fn strict(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            holds: lhs <= rhs,
            ..Self::new(label, lhs, rhs)
        }
    }
}

/// Two-point distribution for a Gibbs initial state at `beta`.
pub fn two_point_at(g: &GibbsMatrix, beta: f64) -> Result<TwoPointDistribution> {
    let p = make_gibbs_state(g.system(), beta)?.into_probabilities();
    TwoPointDistribution::new(g.matrix(), &p)
}

/// `⟨ΔQ⟩` for a Gibbs initial state at `beta`.
pub fn mean_heat(g: &GibbsMatrix, beta: f64) -> Result<f64> {
    two_point_at(g, beta)?.mean_heat(g.system())
}

/// `⟨ΔS⟩` for a Gibbs initial state at `beta`.
pub fn mean_entropy_change(g: &GibbsMatrix, beta: f64) -> Result<f64> {
    two_point_at(g, beta)?.mean_entropy_change(g.system())
}

/// `⟨p⁽⁰⁾_i p̃_j / (q⁽⁰⁾_j p_i)⟩` over `P(i, j) = T_ji p_i`, with
/// `q⁽⁰⁾ = T p⁽⁰⁾`. Equals one for any left-stochastic `T`.
pub fn general_j_expectation(
    t: &TransitionMatrix,
    p: &ProbabilityVector,
    p0: &ProbabilityVector,
    ptilde: &ProbabilityVector,
) -> Result<f64> {
    check_dim(t.dim(), p.len())?;
    check_dim(t.dim(), p0.len())?;
    check_dim(t.dim(), ptilde.len())?;
    if !p.is_strictly_positive() {
        return Err(Error::Precondition("p must be strictly positive".into()));
    }
    if !p0.is_strictly_positive() {
        return Err(Error::Precondition("p0 must be strictly positive".into()));
    }
    let q0 = t.propagate(p0)?;
    let joint = TwoPointDistribution::new(t, p)?;
    joint.expectation(|j, i| p0[i] * ptilde[j] / (q0[j] * p[i]))
}

/// `⟨exp(-(β-β₀) ΔQ)⟩` for a Gibbs initial state at `beta`.
///
/// Each term `T_mn p_n e^{-(β-β₀)(E_m-E_n)}` is exponentiated from log
/// space, so `p_n` may underflow without losing the term.
pub fn j_heat_expectation(g: &GibbsMatrix, beta: f64) -> Result<f64> {
    let state = make_gibbs_state(g.system(), beta)?;
    let log_p = state.log_probabilities();
    let e = g.system().energies();
    let dbeta = beta - g.beta0();
    let t = g.matrix();
    let mut total = 0.0;
    for n in 0..g.dim() {
        for m in 0..g.dim() {
            let tmn = t.get(m, n);
            if tmn == 0.0 {
                continue;
            }
            total += tmn * (log_p[n] - dbeta * (e[m] - e[n])).exp();
        }
    }
    Ok(total)
}

/// Heat flows from hot to cold: `0 ≤ (β-β₀)⟨ΔQ⟩`.
pub fn heat_flow_check(g: &GibbsMatrix, beta: f64) -> Result<InequalityReport> {
    let dq = mean_heat(g, beta)?;
    Ok(InequalityReport::new(
        format!("heat_flow[beta={beta}]"),
        0.0,
        (beta - g.beta0()) * dq,
    ))
}

/// `β₀⟨ΔQ⟩ ≤ ⟨ΔS⟩ ≤ β⟨ΔQ⟩` at one inverse temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClausiusBounds {
    pub beta: f64,
    pub beta0_dq: f64,
    pub ds: f64,
    pub beta_dq: f64,
    /// `⟨ΔS⟩ ≤ β⟨ΔQ⟩`
    pub first: InequalityReport,
    /// `β₀⟨ΔQ⟩ ≤ ⟨ΔS⟩`
    pub second: InequalityReport,
}

pub fn clausius_bounds(g: &GibbsMatrix, beta: f64) -> Result<ClausiusBounds> {
    let joint = two_point_at(g, beta)?;
    let dq = joint.mean_heat(g.system())?;
    let ds = joint.mean_entropy_change(g.system())?;
    let beta0_dq = g.beta0() * dq;
    let beta_dq = beta * dq;
    Ok(ClausiusBounds {
        beta,
        beta0_dq,
        ds,
        beta_dq,
        first: InequalityReport::new(format!("clausius_first[beta={beta}]"), ds, beta_dq),
        second: InequalityReport::new(format!("clausius_second[beta={beta}]"), beta0_dq, ds),
    })
}

/// Entropy flows from hot to cold: `0 ≤ (β-β₀)⟨ΔS⟩`, for `β ≥ 0` and `β₀ > 0`.
pub fn entropy_flow_check(g: &GibbsMatrix, beta: f64) -> Result<InequalityReport> {
    if !(beta >= 0.0) {
        return Err(Error::Precondition(format!(
            "entropy flow direction needs beta >= 0, got {beta}"
        )));
    }
    if !(g.beta0() > 0.0) {
        return Err(Error::Precondition(format!(
            "entropy flow direction needs beta0 > 0, got {}",
            g.beta0()
        )));
    }
    let ds = mean_entropy_change(g, beta)?;
    Ok(InequalityReport::new(
        format!("entropy_flow[beta={beta}]"),
        0.0,
        (beta - g.beta0()) * ds,
    ))
}

/// `S(T p ‖ T p⁽⁰⁾) ≤ S(p ‖ p⁽⁰⁾)` for any left-stochastic `T`.
pub fn kl_monotonicity_check(
    t: &TransitionMatrix,
    p: &ProbabilityVector,
    p0: &ProbabilityVector,
) -> Result<InequalityReport> {
    check_dim(t.dim(), p.len())?;
    check_dim(t.dim(), p0.len())?;
    if !p.is_strictly_positive() || !p0.is_strictly_positive() {
        return Err(Error::Precondition(
            "p and p0 must be strictly positive".into(),
        ));
    }
    let after = kl_divergence(&t.propagate(p)?, &t.propagate(p0)?)?;
    let before = kl_divergence(p, p0)?;
    Ok(InequalityReport::new("kl_monotonicity", after, before))
}

/// Work-process limit with a bi-stochastic `T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BistochasticReport {
    /// `0 ≤ ⟨ΔS⟩`
    pub entropy_nonnegative: InequalityReport,
    /// `⟨ΔS⟩ ≤ β⟨w⟩`, `w = E(q) - E(p)`
    pub work_bound: InequalityReport,
    /// `S(p) ≤ S(q)` from the entropies directly.
    pub shannon_non_decrease: InequalityReport,
}

pub fn bistochastic_work_check(
    t: &TransitionMatrix,
    system: &LevelSystem,
    beta: f64,
) -> Result<BistochasticReport> {
    check_dim(system.len(), t.dim())?;
    if !t.is_bistochastic(tolerance::IDENTITY) {
        return Err(Error::Precondition("T is not bi-stochastic".into()));
    }
    if !system.is_nondegenerate() {
        return Err(Error::Precondition(
            "bi-stochastic limit needs all degeneracies equal to 1".into(),
        ));
    }
    if !(beta >= 0.0) {
        return Err(Error::Precondition(format!(
            "beta must be >= 0, got {beta}"
        )));
    }
    let p = make_gibbs_state(system, beta)?.into_probabilities();
    let joint = TwoPointDistribution::new(t, &p)?;
    let q = joint.final_distribution();
    let ds = joint.mean_entropy_change(system)?;
    let work = mean_energy(system, q)? - mean_energy(system, &p)?;
    Ok(BistochasticReport {
        entropy_nonnegative: InequalityReport::new("bistochastic_entropy", 0.0, ds),
        work_bound: InequalityReport::new("bistochastic_work", ds, beta * work),
        shannon_non_decrease: InequalityReport::new(
            "shannon_non_decrease",
            entropy(system, &p)?,
            entropy(system, q)?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_boson::spin1_gibbs_matrix;

    fn two_level_gibbs() -> GibbsMatrix {
        // detailed balance at beta0 = 0.5 for E = (0, 1)
        let s = LevelSystem::nondegenerate(vec![0.0, 1.0]).unwrap();
        let up = 0.3;
        let down = up * (0.5f64).exp();
        let t = TransitionMatrix::from_rows(&[vec![1.0 - up, down], vec![up, 1.0 - down]]).unwrap();
        GibbsMatrix::new(t, s, 0.5).unwrap()
    }

    #[test]
    fn report_sign_convention() {
        let r = InequalityReport::new("x", 1.0, 2.0);
        assert_eq!(r.slack, 1.0);
        assert!(r.holds);
        assert!(InequalityReport::new("x", 1e-13, 0.0).holds);
        assert!(!InequalityReport::new("x", 1e-11, 0.0).holds);
    }

    #[test]
    fn general_j_with_identity() {
        let t = TransitionMatrix::identity(3);
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let p0 = ProbabilityVector::new(vec![0.6, 0.3, 0.1]).unwrap();
        let pt = ProbabilityVector::new(vec![0.1, 0.1, 0.8]).unwrap();
        let j = general_j_expectation(&t, &p, &p0, &pt).unwrap();
        assert!((j - 1.0).abs() < 1e-15);
    }

    #[test]
    fn general_j_preconditions() {
        let t = TransitionMatrix::identity(2);
        let u = ProbabilityVector::uniform(2);
        let point = ProbabilityVector::point_mass(2, 0);
        assert!(matches!(
            general_j_expectation(&t, &point, &u, &u),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            general_j_expectation(&t, &u, &point, &u),
            Err(Error::Precondition(_))
        ));
        assert!(general_j_expectation(&t, &u, &u, &ProbabilityVector::uniform(3)).is_err());
    }

    #[test]
    fn j_heat_at_bath_temperature_is_one() {
        let g = two_level_gibbs();
        assert!((j_heat_expectation(&g, g.beta0()).unwrap() - 1.0).abs() < 1e-15);
        for beta in [-4.0, 0.0, 2.0, 9.0] {
            assert!((j_heat_expectation(&g, beta).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn everything_vanishes_at_beta0() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        let c = clausius_bounds(&g, 1.0).unwrap();
        assert!(c.beta0_dq.abs() < 1e-15 && c.ds.abs() < 1e-15 && c.beta_dq.abs() < 1e-15);
        assert!(heat_flow_check(&g, 1.0).unwrap().slack.abs() < 1e-15);
        assert!(entropy_flow_check(&g, 1.0).unwrap().slack.abs() < 1e-15);
    }

    #[test]
    fn hotter_system_loses_heat() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        assert!(mean_heat(&g, 0.5).unwrap() < 0.0);
        assert!(heat_flow_check(&g, 0.5).unwrap().holds);
        assert!(mean_heat(&g, 2.0).unwrap() > 0.0);
    }

    #[test]
    fn clausius_strict_for_spin1() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        let c = clausius_bounds(&g, 3.0).unwrap();
        assert!(c.first.slack > 0.0 && c.second.slack > 0.0);
    }

    #[test]
    fn entropy_flow_preconditions() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        assert!(matches!(
            entropy_flow_check(&g, -0.1),
            Err(Error::Precondition(_))
        ));
        assert!(mean_entropy_change(&g, 0.1).unwrap() < 0.0);
        assert!(entropy_flow_check(&g, 0.1).unwrap().holds);
    }

    #[test]
    fn kl_monotonicity_limits() {
        let p = ProbabilityVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let p0 = ProbabilityVector::new(vec![0.6, 0.3, 0.1]).unwrap();
        let r = kl_monotonicity_check(&TransitionMatrix::identity(3), &p, &p0).unwrap();
        assert_eq!(r.slack, 0.0);
        let v = ProbabilityVector::new(vec![0.1, 0.1, 0.8]).unwrap();
        let r = kl_monotonicity_check(&TransitionMatrix::rank_one(&v), &p, &p0).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.holds);
    }

    #[test]
    fn bistochastic_limits() {
        let s = LevelSystem::nondegenerate(vec![0.0, 0.5, 2.0]).unwrap();
        let perm = TransitionMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap();
        let r = bistochastic_work_check(&perm, &s, 1.5).unwrap();
        assert!(r.entropy_nonnegative.rhs.abs() < 1e-15);
        assert!(r.work_bound.holds);

        let uniform = TransitionMatrix::rank_one(&ProbabilityVector::uniform(3));
        let r = bistochastic_work_check(&uniform, &s, 1.5).unwrap();
        let p = make_gibbs_state(&s, 1.5).unwrap().into_probabilities();
        let expected = 3f64.ln() - entropy(&s, &p).unwrap();
        assert!((r.entropy_nonnegative.rhs - expected).abs() < 1e-14);
        assert!(r.entropy_nonnegative.holds && r.work_bound.holds && r.shannon_non_decrease.holds);

        let not_bi = TransitionMatrix::from_rows(&[
            vec![0.5, 0.5, 0.5],
            vec![0.5, 0.5, 0.0],
            vec![0.0, 0.0, 0.5],
        ])
        .unwrap();
        assert!(matches!(
            bistochastic_work_check(&not_bi, &s, 1.0),
            Err(Error::Precondition(_))
        ));
        assert!(bistochastic_work_check(&perm, &s, -1.0).is_err());
        let degenerate = LevelSystem::new(vec![0.0, 0.5, 2.0], vec![1, 2, 1]).unwrap();
        assert!(bistochastic_work_check(&perm, &degenerate, 1.0).is_err());
    }
}
