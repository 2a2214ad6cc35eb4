//! Exact expected hitting times by solving the absorption equations.

use nalgebra::{DMatrix, DVector};

use crate::binomial;
use crate::error::{Error, Result};
use crate::numeric::{ceil_snapped, log_base};
use crate::process::{ProcessKind, ProcessSpec};

/// Largest `k` for which the dense transition matrix is built.
pub const MARKOV_STATE_LIMIT: u64 = 5000;

/// `E[T]` from `x₀`.
///
/// For the deterministic and jackpot processes the closed forms
/// `⌈log_{1+δ}(n/x₀)⌉` and `(n−1)/δ` are returned. For the binomial kinds
/// the full one-step law over `[0..k]` is built and `(I − Q) h = 1` is
/// solved over the transient states below `n`.
pub fn exact_hitting_time_markov(spec: &ProcessSpec) -> Result<f64> {
    spec.validate()?;
    let n = spec.target_n;
    if spec.x0 >= n {
        return Ok(0.0);
    }
    match spec.kind {
        ProcessKind::Deterministic => {
            if spec.x0 == 0 {
                return Err(Error::domain("the deterministic process never leaves 0"));
            }
            return Ok(ceil_snapped(log_base(n as f64 / spec.x0 as f64, 1.0 + spec.delta)));
        }
        ProcessKind::Jackpot => return Ok((n - 1) as f64 / spec.delta),
        _ => {}
    }
    if spec.k > MARKOV_STATE_LIMIT {
        return Err(Error::Size {
            what: "k",
            got: spec.k,
            limit: MARKOV_STATE_LIMIT,
        });
    }
    let positive = matches!(spec.kind, ProcessKind::BinomialClamped | ProcessKind::UnbiasedBinomial);
    let first = u64::from(positive);
    let size = (n - first) as usize;
    let mut a = DMatrix::<f64>::identity(size, size);
    for x in first..n {
        let row = (x - first) as usize;
        for (y, q) in transition_row(spec, x)? {
            if y < n && y >= first {
                a[(row, (y - first) as usize)] -= q;
            }
        }
    }
    let ones = DVector::from_element(size, 1.0);
    let h = a
        .lu()
        .solve(&ones)
        .ok_or_else(|| Error::domain("absorption system is singular: the target is unreachable"))?;
    let value = h[(spec.x0 - first) as usize];
    if !value.is_finite() || value < 0.0 {
        return Err(Error::domain("absorption system is ill-conditioned: the target is effectively unreachable"));
    }
    Ok(value)
}

/// Sparse one-step law from `x` as `(state, mass)` pairs.
fn transition_row(spec: &ProcessSpec, x: u64) -> Result<Vec<(u64, f64)>> {
    let growth = |factor: f64| -> Result<Vec<f64>> {
        let p = factor * x as f64 / spec.k as f64;
        if p > 1.0 {
            return Err(Error::domain(format!(
                "success probability {p} exceeds 1 at state {x} (n-1 <= k/(1+delta))"
            )));
        }
        binomial::pmf_table(spec.k, p)
    };
    let indexed = |pmf: Vec<f64>| pmf.into_iter().enumerate().map(|(i, q)| (i as u64, q)).collect::<Vec<_>>();
    let row = match spec.kind {
        ProcessKind::BinomialClamped | ProcessKind::UnbiasedBinomial => {
            let factor = if spec.kind == ProcessKind::BinomialClamped { 1.0 + spec.delta } else { 1.0 };
            let mut pmf = growth(factor)?;
            let zero = pmf[0];
            pmf[0] = 0.0;
            if pmf.len() > 1 {
                pmf[1] += zero;
            }
            indexed(pmf)
        }
        ProcessKind::BinomialWithZero => {
            if x == 0 {
                spec.zero_law.as_ref().expect("validated").masses()?
            } else {
                indexed(growth(1.0 + spec.delta)?)
            }
        }
        ProcessKind::BinomialFreshStart => {
            let fs = spec.fresh_start.expect("validated");
            if x < fs.xmin {
                vec![(fs.xmin, fs.p), (0, 1.0 - fs.p)]
            } else {
                let pmf = growth(1.0 + spec.delta)?;
                let below: f64 = pmf.iter().take(fs.xmin as usize + 1).sum();
                pmf.into_iter()
                    .enumerate()
                    .map(|(y, q)| {
                        let y = y as u64;
                        let fresh = if y == fs.xmin {
                            below
                        } else if y > fs.xmin {
                            q
                        } else {
                            0.0
                        };
                        (y, (1.0 - fs.p) * q + fs.p * fresh)
                    })
                    .chain((fs.xmin > spec.k).then_some((fs.xmin, fs.p * below)))
                    .collect()
            }
        }
        ProcessKind::Deterministic | ProcessKind::Jackpot => unreachable!("closed forms handled by caller"),
    };
    Ok(row)
}
