//! Closed-form quantities for `G(n, p)` and the layered model.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Nudge added before flooring the domination formula, so values that are
/// integral in exact arithmetic do not round down on some platforms.
pub const FLOOR_NUDGE: f64 = 1e-9;

fn check_open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        invalid(format!("p = {p} must lie strictly between 0 and 1"))
    }
}

/// Preferred colour-class size `floor(1/p)`.
pub fn class_size(p: f64) -> Result<usize> {
    check_open_unit(p)?;
    Ok((1.0 / p).floor() as usize)
}

/// Largest probability that a vertex has exactly one neighbour in a set:
/// `max_i i p (1-p)^(i-1)`, attained at `i = floor(1/p)`.
pub fn mu(p: f64) -> Result<f64> {
    let m = class_size(p)?;
    Ok(m as f64 * p * (1.0 - p).powi(m as i32 - 1))
}

/// `floor((ln n - 2 ln ln n + ln ln(1/(1-p))) / -ln(1-p)) + 1`, the lower
/// of the two values the domination number of `G(n, p)` concentrates on for
/// `p >= 1/2`.
pub fn domination_formula(n: usize, p: f64) -> Result<i64> {
    check_open_unit(p)?;
    let nf = n as f64;
    if nf <= std::f64::consts::E {
        return invalid(format!("ln ln n is undefined or non-positive for n = {n}"));
    }
    let q = -(1.0 - p).ln();
    let v = (nf.ln() - 2.0 * nf.ln().ln() + q.ln()) / q;
    Ok((v + FLOOR_NUDGE).floor() as i64 + 1)
}

/// `floor((ln n - 2 ln ln n + ln ln(1/(1-p)) - ln 3) / -ln(1-p))`: the
/// family size for which `G(n, p)`, `p >= 1/2`, is expected to be
/// `(k, 3)`-spoiling. Clamped below at 0.
pub fn dense_spoiling_k(n: usize, p: f64) -> Result<usize> {
    check_open_unit(p)?;
    let nf = n as f64;
    if nf <= std::f64::consts::E {
        return invalid(format!("ln ln n is undefined or non-positive for n = {n}"));
    }
    let q = -(1.0 - p).ln();
    let v = (nf.ln() - 2.0 * nf.ln().ln() + q.ln() - 3f64.ln()) / q;
    Ok((v + FLOOR_NUDGE).floor().max(0.0) as usize)
}

/// `ln(np) / -ln(1 - mu(p))`, the leading term of the conflict-free
/// chromatic number of `G(n, p)`.
pub fn cf_leading_term(n: usize, p: f64) -> Result<f64> {
    let mu = mu(p)?;
    let np = n as f64 * p;
    if np <= 1.0 {
        return invalid(format!("need np > 1, got {np}"));
    }
    Ok(np.ln() / -(1.0 - mu).ln())
}

/// `floor(c * ln^2 n)`, the number of light classes in the layered
/// lower-bound argument (`c = 1e-5` by default).
pub fn light_class_count(n: usize, c: f64) -> usize {
    if n < 2 {
        return 0;
    }
    let l = (n as f64).ln();
    (c * l * l).floor() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoryReport {
    pub n: usize,
    pub p: f64,
    pub eps: f64,
    pub mu: f64,
    /// `floor(1/p)`
    pub m: usize,
    pub cf_lower: f64,
    pub cf_upper: f64,
    pub domination_formula: i64,
}

pub fn theory_bounds(n: usize, p: f64, eps: f64) -> Result<TheoryReport> {
    check_open_unit(p)?;
    if !(eps >= 0.0) {
        return invalid(format!("eps = {eps} must be non-negative"));
    }
    let lead = cf_leading_term(n, p)?;
    Ok(TheoryReport {
        n,
        p,
        eps,
        mu: mu(p)?,
        m: class_size(p)?,
        cf_lower: (1.0 - eps) * lead,
        cf_upper: (1.0 + eps) * lead,
        domination_formula: domination_formula(n, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: maximise over class sizes directly.
    fn mu_by_enumeration(p: f64, up_to: i32) -> f64 {
        (1..=up_to)
            .map(|i| i as f64 * p * (1.0 - p).powi(i - 1))
            .fold(0.0, f64::max)
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(0.5).unwrap(), 0.5);
        assert_eq!(mu(0.9).unwrap(), 0.9);
        let third = mu(1.0 / 3.0).unwrap();
        assert!((third - 4.0 / 9.0).abs() < 1e-15);
        assert!((third - mu_by_enumeration(1.0 / 3.0, 10)).abs() < 1e-15);
    }

    #[test]
    fn mu_matches_enumeration_on_grid() {
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let direct = mu_by_enumeration(p, 400);
            assert!((mu(p).unwrap() - direct).abs() < 1e-14, "p = {p}");
        }
    }

    #[test]
    fn mu_rejects_degenerate_p() {
        for p in [0.0, 1.0, -0.5, 2.0, f64::NAN] {
            assert!(mu(p).is_err());
        }
    }

    #[test]
    fn domination_formula_examples() {
        // Frozen from a 50-digit evaluation of the same expression:
        // n = 1e6: 11.826..., n = 300: 2.676...
        assert_eq!(domination_formula(1_000_000, 0.5).unwrap(), 12);
        assert_eq!(domination_formula(300, 0.5).unwrap(), 3);
        assert!(domination_formula(2, 0.5).is_err());
    }

    #[test]
    fn theory_report() {
        let r = theory_bounds(1_000_000, 0.5, 0.0).unwrap();
        assert_eq!(r.domination_formula, 12);
        assert_eq!(r.cf_lower, r.cf_upper);
        assert_eq!(r.mu, 0.5);
        assert_eq!(r.m, 2);
        // p >= 1/2: denominator is -ln(1-p)
        let r = theory_bounds(1000, 0.7, 0.1).unwrap();
        let lead = (700f64).ln() / -(0.3f64).ln();
        assert!((r.cf_lower - 0.9 * lead).abs() < 1e-12);
        assert!((r.cf_upper - 1.1 * lead).abs() < 1e-12);
        assert!(theory_bounds(10, 0.05, 0.0).is_err());
        assert!(theory_bounds(1000, 0.5, -1.0).is_err());
    }

    #[test]
    fn light_class_count_examples() {
        // 1e-5 * ln^2(1e6) = 0.0019..., so no light classes until n ~ e^316.
        assert_eq!(light_class_count(1_000_000, 1e-5), 0);
        assert_eq!(light_class_count(1_000_000, 1e-2), 1);
        assert_eq!(light_class_count(3000, 1e-5), 0);
        assert_eq!(light_class_count(1, 1e-5), 0);
    }

    #[test]
    fn dense_spoiling_k_near_one() {
        // p = 1 - 1/n: the ln 3 term pushes the value to zero.
        let n = 1000;
        assert_eq!(dense_spoiling_k(n, 1.0 - 1.0 / n as f64).unwrap(), 0);
        assert!(dense_spoiling_k(1000, 0.5).unwrap() >= 1);
    }
}
