//! `β` sweeps of the Clausius terms.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fluctuation::clausius_bounds;
use crate::nls::GibbsMatrix;
use crate::tolerance;

/// One row of a sweep: the two Clausius heat terms and the entropy
/// increase at inverse temperature `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub beta: f64,
    #[serde(rename = "beta_dQ")]
    pub beta_dq: f64,
    #[serde(rename = "beta0_dQ")]
    pub beta0_dq: f64,
    #[serde(rename = "dS")]
    pub ds: f64,
}

impl SweepRecord {
    /// `β₀⟨ΔQ⟩ ≤ ⟨ΔS⟩ ≤ β⟨ΔQ⟩` within the slack tolerance.
    pub fn is_ordered(&self) -> bool {
        self.ds - self.beta0_dq >= -tolerance::SLACK && self.beta_dq - self.ds >= -tolerance::SLACK
    }
}

pub const CSV_HEADER: &str = "beta,beta_dQ,beta0_dQ,dS";

/// `steps` equally spaced points including both ends.
pub fn beta_grid(beta_min: f64, beta_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidInput(format!(
            "steps must be >= 2, got {steps}"
        )));
    }
    if !(beta_min.is_finite() && beta_max.is_finite() && beta_min <= beta_max) {
        return Err(Error::InvalidInput(format!(
            "invalid beta range [{beta_min}, {beta_max}]"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| beta_min + (beta_max - beta_min) * i as f64 / last)
        .collect())
}

/// Evaluates the grid in parallel; rows come back in grid order.
pub fn sweep(
    g: &GibbsMatrix,
    beta_min: f64,
    beta_max: f64,
    steps: usize,
) -> Result<Vec<SweepRecord>> {
    beta_grid(beta_min, beta_max, steps)?
        .into_par_iter()
        .map(|beta| {
            let c = clausius_bounds(g, beta)?;
            Ok(SweepRecord {
                beta,
                beta_dq: c.beta_dq,
                beta0_dq: c.beta0_dq,
                ds: c.ds,
            })
        })
        .collect()
}

/// 17 significant digits, enough to reproduce every `f64` exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(mut out: W, records: &[SweepRecord]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{}",
            format_f64(r.beta),
            format_f64(r.beta_dq),
            format_f64(r.beta0_dq),
            format_f64(r.ds)
        )?;
    }
    Ok(())
}

/// Parses CSV produced by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "line 1: expected header `{CSV_HEADER}`, found {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidInput(format!("line {}: {e}", i + 2)))?;
            if fields.len() != 4 {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected 4 fields, found {}",
                    i + 2,
                    fields.len()
                )));
            }
            Ok(SweepRecord {
                beta: fields[0],
                beta_dq: fields[1],
                beta0_dq: fields[2],
                ds: fields[3],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_boson::spin1_gibbs_matrix;

    #[test]
    fn grid_hits_endpoints() {
        let g = beta_grid(-5.0, 5.0, 101).unwrap();
        assert_eq!(g[0], -5.0);
        assert_eq!(g[60], 1.0);
        assert_eq!(g[100], 5.0);
        assert!(beta_grid(0.0, 1.0, 1).is_err());
        assert!(beta_grid(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = spin1_gibbs_matrix(1.0).unwrap();
        let rows = sweep(&g, -5.0, 5.0, 11).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("beta,beta_dQ,beta0_dQ,dS\n"));
        assert_eq!(read_csv(&text).unwrap(), rows);
        assert!(rows.iter().all(SweepRecord::is_ordered));
    }
}
