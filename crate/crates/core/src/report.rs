//! The verification suite behind `nls-thermo verify`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fluctuation::{
    clausius_bounds, entropy_flow_check, general_j_expectation, heat_flow_check,
    j_heat_expectation, kl_monotonicity_check, InequalityReport,
};
use crate::instance::InstanceFile;
use crate::nls::{make_gibbs_state, Certification, GibbsMatrix};
use crate::response::{
    cumulant_check, default_step, entropy_slope_numeric, slope_bundle, EXACT_AGREEMENT,
    NUMERIC_AGREEMENT,
};
use crate::sweep::beta_grid;
use crate::tolerance;

/// Groups of checks that can be selected independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Heat J-equation, heat flow, Clausius inequalities, entropy flow.
    Fluctuation,
    /// General J-equation and KL monotonicity.
    Information,
    /// Slope bundle, common tangent, cumulant expansion.
    Response,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Fluctuation, Suite::Information, Suite::Response];
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Defaults to `-5 max(β₀, 1)`.
    pub beta_min: Option<f64>,
    /// Defaults to `5 max(β₀, 1)`.
    pub beta_max: Option<f64>,
    pub steps: usize,
    pub suites: Vec<Suite>,
    pub tolerance: f64,
    /// Record wall-clock time. Off by default so reports are reproducible
    /// byte for byte.
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            beta_min: None,
            beta_max: None,
            steps: 21,
            suites: Suite::ALL.to_vec(),
            tolerance: tolerance::FIXED_POINT,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: Vec<Suite>,
    pub instance: String,
    pub certification: Certification,
    pub checks: Vec<InequalityReport>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &InequalityReport> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn certification_checks(c: &Certification) -> Vec<InequalityReport> {
    vec![
        InequalityReport::strict(
            "certification.column_sums",
            c.column_sum_deviation,
            c.tolerance,
        ),
        InequalityReport::strict("certification.nonnegative", -c.min_entry, 0.0),
        InequalityReport::strict(
            "certification.fixed_point",
            c.fixed_point_residual,
            c.tolerance,
        ),
    ]
}

/// Certifies the instance, then runs the selected suites on the `β` grid.
/// Only malformed input is an error; failed checks are reported.
pub fn run_verification(
    file: &InstanceFile,
    descriptor: &str,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut suites = options.suites.clone();
    suites.sort();
    suites.dedup();

    let certification = file.certify(options.tolerance)?;
    let mut checks = certification_checks(&certification);
    if certification.passed {
        let g = file.to_gibbs(options.tolerance)?;
        let scale = g.beta0().max(1.0);
        let grid = beta_grid(
            options.beta_min.unwrap_or(-5.0 * scale),
            options.beta_max.unwrap_or(5.0 * scale),
            options.steps,
        )?;
        let per_beta: Vec<Vec<InequalityReport>> = grid
            .par_iter()
            .map(|&beta| beta_checks(&g, beta, &suites))
            .collect::<Result<_>>()?;
        checks.extend(per_beta.into_iter().flatten());
        if suites.contains(&Suite::Response) {
            checks.extend(response_checks(&g)?);
        }
    }
    let pass = checks.iter().all(|c| c.holds);
    Ok(VerificationReport {
        suite: suites,
        instance: descriptor.to_string(),
        certification,
        checks,
        pass,
        elapsed_seconds: options.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

fn beta_checks(g: &GibbsMatrix, beta: f64, suites: &[Suite]) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    if suites.contains(&Suite::Fluctuation) {
        let j = j_heat_expectation(g, beta)?;
        out.push(InequalityReport::strict(
            format!("j_heat[beta={beta}]"),
            (j - 1.0).abs(),
            tolerance::J_EQUATION,
        ));
        out.push(heat_flow_check(g, beta)?);
        let c = clausius_bounds(g, beta)?;
        out.push(c.first);
        out.push(c.second);
        if beta >= 0.0 && g.beta0() > 0.0 {
            out.push(entropy_flow_check(g, beta)?);
        }
    }
    if suites.contains(&Suite::Information) {
        let p = make_gibbs_state(g.system(), beta)?.into_probabilities();
        let p0 = g.fixed_point();
        // both need strictly positive p; skipped where a Gibbs weight underflows
        if p.is_strictly_positive() && p0.is_strictly_positive() {
            let q = g.matrix().propagate(&p)?;
            let j = general_j_expectation(g.matrix(), &p, p0, &q)?;
            out.push(InequalityReport::strict(
                format!("general_j[beta={beta}]"),
                (j - 1.0).abs(),
                tolerance::J_EQUATION,
            ));
            let mut kl = kl_monotonicity_check(g.matrix(), &p, p0)?;
            kl.label = format!("kl_monotonicity[beta={beta}]");
            out.push(kl);
        }
    }
    Ok(out)
}

const CUMULANT_T: [f64; 6] = [0.1, -0.1, 0.05, -0.05, 0.025, -0.025];
const CUMULANT_MIN_EXPONENT: f64 = 2.5;

fn response_checks(g: &GibbsMatrix) -> Result<Vec<InequalityReport>> {
    let mut out = Vec::new();
    if !(g.beta0() > 0.0) {
        return Ok(out);
    }
    let b = slope_bundle(g)?;
    out.push(InequalityReport::strict(
        "slope.exact_agreement",
        b.exact_deviation(),
        EXACT_AGREEMENT,
    ));
    out.push(InequalityReport::strict(
        "slope.numeric_agreement",
        b.numeric_deviation(),
        NUMERIC_AGREEMENT,
    ));
    out.push(InequalityReport::strict(
        "slope.nonnegative",
        -b.min_value(),
        tolerance::FIXED_POINT,
    ));
    let h = default_step(g);
    let tangent = (entropy_slope_numeric(g, h)? - b.numeric).abs();
    out.push(InequalityReport::strict(
        "slope.common_tangent",
        tangent,
        NUMERIC_AGREEMENT * b.direct.abs().max(1.0),
    ));
    let c = cumulant_check(g, &CUMULANT_T)?;
    if let Some(k) = c.exponent {
        out.push(InequalityReport::strict(
            "cumulant.residual_exponent",
            CUMULANT_MIN_EXPONENT,
            k,
        ));
    }
    Ok(out)
}
