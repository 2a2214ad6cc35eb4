//! Exact binomial machinery: log-space pmf tables and exact sampling.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};

/// Largest number of trials for which full pmf tables are enumerated.
pub const ENUMERATION_CUTOFF: u64 = 10_000;

pub(crate) fn check_probability(p: f64, what: &str) -> Result<()> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} = {p} is not a probability")))
    }
}

/// The full probability mass function of `Bin(k, p)` over `0..=k`.
///
/// Log-weights are built by the ratio recurrence anchored at the mode and
/// normalised with a log-sum-exp, so the table stays accurate deep into both
/// tails and sums to one up to rounding. Degenerate `p` yields exact point
/// masses.
pub fn pmf_table(k: u64, p: f64) -> Result<Vec<f64>> {
    check_probability(p, "success probability")?;
    if k > ENUMERATION_CUTOFF {
        return Err(Error::Size {
            what: "binomial trials k",
            got: k,
            limit: ENUMERATION_CUTOFF,
        });
    }
    let len = k as usize + 1;
    let mut table = vec![0.0; len];
    if p == 0.0 {
        table[0] = 1.0;
        return Ok(table);
    }
    if p == 1.0 {
        table[k as usize] = 1.0;
        return Ok(table);
    }
    let kf = k as f64;
    let mode = (((kf + 1.0) * p).floor() as usize).min(k as usize);
    let log_odds = p.ln() - (-p).ln_1p();
    let mut logw = vec![0.0; len];
    for i in mode..k as usize {
        let ratio = ((kf - i as f64) / (i as f64 + 1.0)).ln() + log_odds;
        logw[i + 1] = logw[i] + ratio;
    }
    for i in (1..=mode).rev() {
        let ratio = ((kf - (i - 1) as f64) / i as f64).ln() + log_odds;
        logw[i - 1] = logw[i] - ratio;
    }
    let max = logw.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = logw.iter().map(|w| (w - max).exp()).sum();
    let log_norm = max + total.ln();
    for (slot, w) in table.iter_mut().zip(&logw) {
        *slot = (w - log_norm).exp();
    }
    Ok(table)
}

/// `Pr[Bin(k, p) >= threshold]` by exact summation.
pub fn upper_tail(k: u64, p: f64, threshold: u64) -> Result<f64> {
    let table = pmf_table(k, p)?;
    if threshold > k {
        return Ok(0.0);
    }
    Ok(table[threshold as usize..].iter().sum())
}

/// One exact draw from `Bin(k, p)`.
pub fn sample<R: Rng + ?Sized>(k: u64, p: f64, rng: &mut R) -> Result<u64> {
    check_probability(p, "success probability")?;
    if k == 0 || p == 0.0 {
        return Ok(0);
    }
    if p == 1.0 {
        return Ok(k);
    }
    let dist = Binomial::new(k, p).map_err(|e| Error::domain(e.to_string()))?;
    Ok(dist.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_pmf(k: u64, p: f64, i: u64) -> f64 {
        // product form, fine for small k
        let mut c = 1.0;
        for j in 0..i {
            c *= (k - j) as f64 / (j + 1) as f64;
        }
        c * p.powi(i as i32) * (1.0 - p).powi((k - i) as i32)
    }

    #[test]
    fn matches_naive_pmf_for_small_k() {
        for &(k, p) in &[(1, 0.3), (5, 0.5), (12, 0.07), (30, 0.9)] {
            let t = pmf_table(k, p).unwrap();
            for i in 0..=k {
                assert!((t[i as usize] - naive_pmf(k, p, i)).abs() < 1e-14, "k={k} p={p} i={i}");
            }
        }
    }

    #[test]
    fn pmf_sums_to_one() {
        for &(k, p) in &[(10, 0.1), (1000, 0.001), (10_000, 0.5), (10_000, 0.9999), (7, 1.0), (7, 0.0)] {
            let s: f64 = pmf_table(k, p).unwrap().iter().sum();
            assert!((s - 1.0).abs() < 1e-9, "k={k} p={p} sum={s}");
        }
    }

    #[test]
    fn rejects_oversize_and_bad_probability() {
        assert!(matches!(pmf_table(10_001, 0.5), Err(Error::Size { .. })));
        assert!(pmf_table(3, 1.5).is_err());
        assert!(pmf_table(3, f64::NAN).is_err());
    }

    #[test]
    fn tail_of_known_case() {
        // Pr[Bin(4, 1/4) >= 1] = 1 - (3/4)^4
        let t = upper_tail(4, 0.25, 1).unwrap();
        assert!((t - (1.0 - 0.75f64.powi(4))).abs() < 1e-15);
        assert_eq!(upper_tail(4, 0.25, 5).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_sampling() {
        let mut rng = crate::rng::seeded(1);
        assert_eq!(sample(5, 1.0, &mut rng).unwrap(), 5);
        assert_eq!(sample(5, 0.0, &mut rng).unwrap(), 0);
        assert!(sample(5, 1.0 + 1e-12, &mut rng).is_err());
    }
}
