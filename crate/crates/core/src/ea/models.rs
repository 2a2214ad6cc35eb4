//! Level-model parameters `(z_j, δ)` for the three EA applications, using
//! the fitness-level partition `A_j = {x : f(x) = j−1}`, `m = n+1`.
//! Exact factors `(1−pmut)^{n−1}` stand where asymptotic `1−o(1)` terms
//! would otherwise appear.

use super::FitnessKind;
use crate::bounds::LevelModel;
use crate::error::{Error, Result};

fn upgrade_probability(fitness: &FitnessKind, n: usize, f: u64, pmut: f64) -> f64 {
    let keep = (1.0 - pmut).powi(n as i32 - 1);
    match fitness {
        FitnessKind::LeadingOnes => pmut * keep,
        _ => (n as u64 - f) as f64 * pmut * keep,
    }
}

fn check(n: usize, lambda: u64, gamma0: f64, pmut: f64) -> Result<()> {
    if n == 0 || lambda == 0 {
        return Err(Error::domain("n and λ must be positive"));
    }
    if !(gamma0 > 0.0 && gamma0 < 1.0) {
        return Err(Error::domain("γ₀ must lie in (0,1)"));
    }
    if !(pmut > 0.0 && pmut <= 0.5) {
        return Err(Error::domain("the level models assume 0 < pmut ≤ 1/2"));
    }
    Ok(())
}

fn build(n: usize, lambda: u64, gamma0: f64, delta: f64, z: impl Fn(u64) -> f64) -> LevelModel {
    LevelModel {
        m: n as u64 + 1,
        z: (0..n as u64).map(z).collect(),
        delta,
        gamma0,
        lambda,
    }
}

/// (λ,λ) EA with 2-tournament selection on OneMax or LeadingOnes.
///
/// With `γλ` individuals above a level, a tournament picks one of them with
/// probability `1−(1−γ)² ≥ (2−γ₀)γ`, and a copy survives with `(1−pmut)^n`,
/// so `1+δ = (2−γ₀)(1−pmut)^n`. With `γ₀λ/4` on the current level,
/// `z_j = (1−(1−γ₀/4)²)·u_j` where `u_j` is the upgrade probability of a
/// parent on the level. Requires `n·pmut ≤ 1−pmut` so that a copy of a
/// better parent is at least as likely as an upgrade.
pub fn tournament_model(fitness: &FitnessKind, n: usize, lambda: u64, gamma0: f64, pmut: f64) -> Result<LevelModel> {
    check(n, lambda, gamma0, pmut)?;
    let delta = (2.0 - gamma0) * (1.0 - pmut).powi(n as i32) - 1.0;
    let pick = 1.0 - (1.0 - gamma0 / 4.0).powi(2);
    Ok(build(n, lambda, gamma0, delta, |f| pick * upgrade_probability(fitness, n, f, pmut)))
}

/// Fitness-proportionate selection: `1+δ = (1+1/(2n))(1−pmut)^n` and
/// `z_j = γ₀·u_j/4`.
pub fn fps_model(fitness: &FitnessKind, n: usize, lambda: u64, gamma0: f64, pmut: f64) -> Result<LevelModel> {
    check(n, lambda, gamma0, pmut)?;
    let delta = (1.0 + 1.0 / (2.0 * n as f64)) * (1.0 - pmut).powi(n as i32) - 1.0;
    Ok(build(n, lambda, gamma0, delta, |f| gamma0 * upgrade_probability(fitness, n, f, pmut) / 4.0))
}

/// (μ,λ) EA with uniform selection among the μ best.
///
/// With `γλ ≤ γ₀λ` individuals above a level, a parent comes from them
/// with probability `min{γλ, μ}/μ ≥ γ·min{λ/μ, 1/γ₀}`, so
/// `1+δ = (1−pmut)^n·min{λ/μ, 1/γ₀}`. For the upgrade probabilities the current level holds
/// `γ₀λ` individuals when `δ > 1` and `γ₀λ/4` otherwise; the pool is drawn
/// from it with probability `min{1, that/μ}`.
pub fn ranking_model(
    fitness: &FitnessKind,
    n: usize,
    lambda: u64,
    mu: u64,
    gamma0: f64,
    pmut: f64,
) -> Result<LevelModel> {
    check(n, lambda, gamma0, pmut)?;
    if mu == 0 || mu > lambda {
        return Err(Error::domain("ranking model needs 1 ≤ μ ≤ λ"));
    }
    let copy = (1.0 - pmut).powi(n as i32);
    let delta = copy * (lambda as f64 / mu as f64).min(1.0 / gamma0) - 1.0;
    let on_level = if delta > 1.0 { gamma0 * lambda as f64 } else { gamma0 * lambda as f64 / 4.0 };
    let pick = (on_level / mu as f64).min(1.0);
    Ok(build(n, lambda, gamma0, delta, |f| pick * upgrade_probability(fitness, n, f, pmut)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::level_large_delta_bound;

    #[test]
    fn ranking_leadingones_large_delta() {
        let n = 32;
        let pmut = 1.0 / 64.0;
        let model = ranking_model(&FitnessKind::LeadingOnes, n, 256, 16, 0.25, pmut).unwrap();
        assert_eq!(model.m, 33);
        let copy = (1.0 - pmut).powi(32);
        assert!((model.delta - (4.0 * copy - 1.0)).abs() < 1e-15);
        assert!(model.delta > 1.0);
        let z = pmut * (1.0 - pmut).powi(31);
        assert!(model.z.iter().all(|&v| (v - z).abs() < 1e-18));
        let r = level_large_delta_bound(&model).unwrap();
        assert!(r.valid, "{r:?}");
    }

    #[test]
    fn tournament_onemax_rates() {
        let model = tournament_model(&FitnessKind::OneMax, 50, 1000, 0.5, 0.002).unwrap();
        assert_eq!(model.z.len(), 50);
        assert!(model.z[0] > model.z[49]);
        let expect = (1.0 - 0.875f64 * 0.875) * 0.002 * 0.998f64.powi(49);
        assert!((model.z[49] - expect).abs() < 1e-15);
        assert!((model.delta - (1.5 * 0.998f64.powi(50) - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn fps_rates() {
        let model = fps_model(&FitnessKind::OneMax, 10, 100, 0.5, 0.001).unwrap();
        let expect = 10.0 * 0.5 * 0.001 * 0.999f64.powi(9) / 4.0;
        assert!((model.z[0] - expect).abs() < 1e-15);
        assert!(fps_model(&FitnessKind::OneMax, 10, 100, 1.5, 0.001).is_err());
    }
}
