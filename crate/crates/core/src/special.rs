//! Special functions.

use crate::error::{Error, Result};

const MIN_TERMS: usize = 10;
const MAX_TERMS: usize = 200_000_000;

/// Lerch transcendent `Φ(z, s, a) = Σ_{k≥0} z^k / (k + a)^s` for real
/// `|z| < 1` and `a > 0`.
///
/// The series is summed in order until the next term falls below
/// `1e-16 · |partial sum|`, with at least ten terms.
pub fn lerch_phi(z: f64, s: f64, a: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "lerch_phi needs |z| < 1, got z = {z}"
        )));
    }
    if !(a > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!(
            "lerch_phi needs a > 0 and finite s, got a = {a}, s = {s}"
        )));
    }
    let mut sum = 0.0f64;
    let mut zk = 1.0f64;
    for k in 0..MAX_TERMS {
        let term = zk / (k as f64 + a).powf(s);
        if k >= MIN_TERMS && term.abs() < 1e-16 * sum.abs() {
            return Ok(sum);
        }
        sum += term;
        zk *= z;
        if zk == 0.0 && k >= MIN_TERMS {
            return Ok(sum);
        }
    }
    Err(Error::Domain(format!(
        "lerch_phi did not converge within {MAX_TERMS} terms at z = {z}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_first_term_at_zero() {
        assert_eq!(lerch_phi(0.0, 2.0, 1.5).unwrap(), 4.0 / 9.0);
    }

    #[test]
    fn domain() {
        assert!(lerch_phi(1.0, 2.0, 1.0).is_err());
        assert!(lerch_phi(-1.2, 2.0, 1.0).is_err());
        assert!(lerch_phi(0.5, 2.0, 0.0).is_err());
        assert!(lerch_phi(f64::NAN, 2.0, 1.0).is_err());
    }

    #[test]
    fn geometric_series_at_s_zero() {
        let z = 0.3;
        assert!((lerch_phi(z, 0.0, 2.0).unwrap() - 1.0 / (1.0 - z)).abs() < 1e-15);
    }

    #[test]
    fn recurrence_in_a() {
        for &(z, s, a) in &[(0.3, 2.0, 1.5), (-0.8, 1.3, 0.2), (0.95, 3.0, 4.0)] {
            let lhs = lerch_phi(z, s, a).unwrap();
            let rhs = 1.0 / a.powf(s) + z * lerch_phi(z, s, a + 1.0).unwrap();
            assert!((lhs - rhs).abs() < 1e-13, "{z} {s} {a}");
        }
    }
}
