//! The potential `g(x) = x ln x`, its second- and third-order Taylor bounds,
//! and exact binomial expectations of `g`.

use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};

/// `x ln x`, with `g(0) = 0`.
pub fn g(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("g is defined on x ≥ 0, got {x}")));
    }
    Ok(g_unchecked(x))
}

#[inline]
pub(crate) fn g_unchecked(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn linear_part(a: f64, x: f64) -> f64 {
    a * a.ln() + (x - a) * (1.0 + a.ln())
}

/// `a ln a + (x−a)(1+ln a) + (x−a)²/a`, an upper bound on `g(x)`.
pub fn taylor_upper(a: f64, x: f64) -> f64 {
    let d = x - a;
    linear_part(a, x) + d * d / a
}

/// `a ln a + (x−a)(1+ln a) + (x−a)²/(2a) − (x−a)³/(6a²)`, a lower bound on `g(x)`.
pub fn taylor_lower(a: f64, x: f64) -> f64 {
    let d = x - a;
    linear_part(a, x) + d * d / (2.0 * a) - d * d * d / (6.0 * a * a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentTriple {
    pub mean: f64,
    pub variance: f64,
    pub third_central: f64,
}

pub fn binomial_central_moments(k: u64, p: f64) -> Result<MomentTriple> {
    binomial::check_probability(p, "p")?;
    let kp = k as f64 * p;
    Ok(MomentTriple {
        mean: kp,
        variance: kp * (1.0 - p),
        third_central: kp * (1.0 - p) * (1.0 - 2.0 * p),
    })
}

/// `E[g(Bin(k,p))]` by summing the full pmf.
pub fn exact_binomial_g_expectation(k: u64, p: f64) -> Result<f64> {
    let pmf = binomial::pmf_table(k, p)?;
    // Terms increase with i up to the mode; summing small terms first keeps
    // the rounding error at a few ulps of the result.
    let mut terms: Vec<f64> = pmf
        .iter()
        .enumerate()
        .map(|(i, q)| q * g_unchecked(i as f64))
        .collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(crate::numeric::compensated_sum(terms))
}

/// Signed slacks of `g(kp) + (1−p)/3 ≤ E[g(X)] ≤ g(kp) + (1−p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GDriftReport {
    pub k: u64,
    pub p: f64,
    pub expectation: f64,
    pub lb_holds: bool,
    pub ub_holds: bool,
    /// `E[g(X)] − g(kp) − (1−p)/3`.
    pub slack_lb: f64,
    /// `g(kp) + (1−p) − E[g(X)]`.
    pub slack_ub: f64,
    /// `p ≥ 1/k`, under which the lower bound is claimed.
    pub lb_applicable: bool,
}

/// Absolute tolerance for closed-form comparisons.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

pub fn check_g_drift_bounds(k: u64, p: f64) -> Result<GDriftReport> {
    let e = exact_binomial_g_expectation(k, p)?;
    let gm = g_unchecked(k as f64 * p);
    let slack_lb = e - gm - (1.0 - p) / 3.0;
    let slack_ub = gm + (1.0 - p) - e;
    let lb_applicable = p * k as f64 >= 1.0 - 1e-12;
    Ok(GDriftReport {
        k,
        p,
        expectation: e,
        lb_holds: slack_lb >= -CLOSED_FORM_TOL,
        ub_holds: slack_ub >= -CLOSED_FORM_TOL,
        slack_lb,
        slack_ub,
        lb_applicable,
    })
}

/// The two-sided envelope
/// `[g(kp) + (1−p)/2 − (1−p)(1−2p)/(6kp), g(kp) + (1−p)]` for `E[g(Bin(k,p))]`.
pub fn g_expectation_envelope(k: u64, p: f64) -> (f64, f64) {
    let kp = k as f64 * p;
    let gm = g_unchecked(kp);
    let q = 1.0 - p;
    (gm + q / 2.0 - q * (1.0 - 2.0 * p) / (6.0 * kp), gm + q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_values() {
        assert_eq!(g(0.0).unwrap(), 0.0);
        assert_eq!(g(1.0).unwrap(), 0.0);
        let e = std::f64::consts::E;
        assert!((g(e).unwrap() - e).abs() < 1e-15);
        assert!(g(-1.0).is_err());
        assert!(g(f64::NAN).is_err());
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(taylor_upper(1.0, 1.0), 0.0);
        assert_eq!(taylor_lower(1.0, 1.0), 0.0);
        assert!((taylor_upper(1.0, 2.0) - 2.0).abs() < 1e-15);
        assert!((taylor_lower(1.0, 2.0) - 4.0 / 3.0).abs() < 1e-15);
        let g2 = 2f64 * 2f64.ln();
        assert!((taylor_upper(2.0, 2.0) - g2).abs() < 1e-15);
        assert!((taylor_lower(2.0, 2.0) - g2).abs() < 1e-15);
    }

    #[test]
    fn moments() {
        let m = binomial_central_moments(10, 0.5).unwrap();
        assert_eq!((m.mean, m.variance, m.third_central), (5.0, 2.5, 0.0));
        let m = binomial_central_moments(1, 1.0).unwrap();
        assert_eq!((m.mean, m.variance, m.third_central), (1.0, 0.0, 0.0));
        let m = binomial_central_moments(4, 0.25).unwrap();
        assert_eq!((m.mean, m.variance, m.third_central), (1.0, 0.75, 0.375));
        assert!(binomial_central_moments(4, 1.5).is_err());
    }

    #[test]
    fn g_expectation_examples() {
        let e = exact_binomial_g_expectation(2, 0.5).unwrap();
        assert!((e - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!(e >= 1.0 / 6.0);
        assert_eq!(exact_binomial_g_expectation(1, 1.0).unwrap(), 0.0);
        assert!(exact_binomial_g_expectation(10_001, 0.5).is_err());
    }

    #[test]
    fn drift_checks() {
        for (k, p) in [(10, 0.1), (100, 0.5)] {
            let r = check_g_drift_bounds(k, p).unwrap();
            assert!(r.lb_holds && r.ub_holds, "{r:?}");
        }
        let r = check_g_drift_bounds(1, 1.0).unwrap();
        assert!(r.slack_ub.abs() < 1e-15);
    }
}
