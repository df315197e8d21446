//! Data-based initialization, warm-start mixing verification, and the
//! concentration bounds for empirical KL divergences.

use crate::dist::{decode_config, Config, CumulativeSampler, DenseDistribution};
use crate::entropy::{kl_divergence, kl_tables};
use crate::error::{EntmixError, Result};
use crate::glauber::evolve_continuous;
use crate::mixture::MixtureModel;
use crate::seed::trial_rng;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// The empirical distribution of m i.i.d. samples, with uniform weights.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    pub atoms: Vec<Config>,
    pub m: usize,
    pub seed: u64,
}

impl EmpiricalDistribution {
    /// Dense representation (1/m at each atom, atoms may repeat).
    pub fn to_dense(&self, alphabet: crate::dist::Alphabet, n: usize) -> Result<DenseDistribution> {
        let states = (alphabet.size as u64).pow(n as u32) as usize;
        let mut probs = vec![0.0; states];
        let w = 1.0 / self.m as f64;
        for atom in &self.atoms {
            probs[crate::dist::encode_config(atom, alphabet)?] += w;
        }
        DenseDistribution::new(alphabet, n, probs)
    }
}

/// Draws m i.i.d. samples from μ; deterministic given the seed.
pub fn draw_empirical(mu: &DenseDistribution, m: usize, seed: u64) -> Result<EmpiricalDistribution> {
    if m == 0 {
        return Err(EntmixError::InvalidParameter("m must be >= 1".into()));
    }
    let mut rng = trial_rng(seed, 0xe1, 0);
    let sampler = CumulativeSampler::new(&mu.probs);
    let atoms = (0..m)
        .map(|_| decode_config(sampler.sample(&mut rng), mu.alphabet, mu.n))
        .collect();
    Ok(EmpiricalDistribution { atoms, m, seed })
}

/// A Monte Carlo estimate compared against a closed-form bound, with a
/// 3σ one-sided pass criterion.
#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub k: usize,
    pub m: usize,
    pub parameter: f64,
    pub trials: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub bound: f64,
    pub pass: bool,
}

impl ConcentrationReport {
    fn from_samples(k: usize, m: usize, parameter: f64, values: &[f64], bound: f64) -> Self {
        let trials = values.len();
        let mean = values.iter().sum::<f64>() / trials as f64;
        let var = values
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / (trials.max(2) - 1) as f64;
        let se = (var / trials as f64).sqrt();
        let rse = if mean > 0.0 { se / mean } else { 0.0 };
        let pass = mean <= bound * (1.0 + 3.0 * rse) + 3.0 * se + 1e-12;
        ConcentrationReport {
            k,
            m,
            parameter,
            trials,
            estimate: mean,
            std_error: se,
            bound,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

fn empirical_label_kl<R: Rng>(rho: &[f64], m: usize, rng: &mut R) -> f64 {
    let mut counts = vec![0u64; rho.len()];
    for _ in 0..m {
        counts[crate::dist::sample_from_law(rho, rng)] += 1;
    }
    let emp: Vec<f64> = counts.iter().map(|&c| c as f64 / m as f64).collect();
    kl_tables(&emp, rho)
}

/// MGF bound for the KL of an m-sample empirical label distribution:
/// E[exp(λ·KL(ρ̂‖ρ))] ≤ (1/(1−λ/m))^(k−1) for 0 ≤ λ < m.
pub fn empirical_kl_mgf(
    rho: &[f64],
    m: usize,
    lambda: f64,
    trials: usize,
    seed: u64,
) -> Result<ConcentrationReport> {
    if !(0.0..m as f64).contains(&lambda) {
        return Err(EntmixError::InvalidParameter(format!(
            "need 0 <= lambda < m, got lambda {lambda}, m {m}"
        )));
    }
    let k = rho.len();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, 0xb1, t as u64);
            (lambda * empirical_label_kl(rho, m, &mut rng)).exp()
        })
        .collect();
    let bound = (1.0 / (1.0 - lambda / m as f64)).powi(k as i32 - 1);
    Ok(ConcentrationReport::from_samples(k, m, lambda, &values, bound))
}

/// Tail bound Pr[KL(ρ̂‖ρ) > ε] ≤ e^(−εm)·(eεm/(k−1))^(k−1) for ε > (k−1)/m.
pub fn empirical_kl_tail(
    rho: &[f64],
    m: usize,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<ConcentrationReport> {
    let k = rho.len();
    if eps <= (k as f64 - 1.0) / m as f64 {
        return Err(EntmixError::InvalidParameter(format!(
            "need eps > (k-1)/m, got eps {eps}, (k-1)/m {}",
            (k as f64 - 1.0) / m as f64
        )));
    }
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, 0xb2, t as u64);
            if empirical_label_kl(rho, m, &mut rng) > eps {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let bound = if k == 1 {
        (-eps * m as f64).exp()
    } else {
        (-eps * m as f64).exp()
            * (std::f64::consts::E * eps * m as f64 / (k as f64 - 1.0)).powi(k as i32 - 1)
    };
    Ok(ConcentrationReport::from_samples(k, m, eps, &values, bound))
}

/// Same MGF bound for the posterior-average label distribution of an
/// m-sample empirical drawn from the mixture itself; also checks the
/// convexity dominance against the disjoint-support (pure-label) case.
pub fn mixture_posterior_mgf(
    model: &MixtureModel,
    m: usize,
    lambda: f64,
    trials: usize,
    seed: u64,
) -> Result<(ConcentrationReport, ConcentrationReport, bool)> {
    if !(0.0..m as f64).contains(&lambda) {
        return Err(EntmixError::InvalidParameter(format!(
            "need 0 <= lambda < m, got lambda {lambda}, m {m}"
        )));
    }
    let k = model.k();
    let mu = model.mixture();
    let sampler = CumulativeSampler::new(&mu.probs);
    let posteriors: Vec<Vec<f64>> = (0..mu.num_states())
        .map(|idx| model.posterior_at(idx).unwrap_or_else(|_| vec![0.0; k]))
        .collect();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, 0xb3, t as u64);
            let mut rho_hat = vec![0.0; k];
            for _ in 0..m {
                let idx = sampler.sample(&mut rng);
                for (r, &p) in rho_hat.iter_mut().zip(&posteriors[idx]) {
                    *r += p;
                }
            }
            rho_hat.iter_mut().for_each(|r| *r /= m as f64);
            (lambda * kl_tables(&rho_hat, &model.weights)).exp()
        })
        .collect();
    let bound = (1.0 / (1.0 - lambda / m as f64)).powi(k as i32 - 1);
    let mixture_report = ConcentrationReport::from_samples(k, m, lambda, &values, bound);
    let disjoint_report = empirical_kl_mgf(&model.weights, m, lambda, trials, seed ^ 0x5a5a)?;
    let combined_se = (mixture_report.std_error.powi(2) + disjoint_report.std_error.powi(2)).sqrt();
    let dominated = mixture_report.estimate <= disjoint_report.estimate + 3.0 * combined_se;
    Ok((mixture_report, disjoint_report, dominated))
}

/// One warm-start trajectory with its per-time label-divergence record.
#[derive(Debug, Clone)]
pub struct WarmStartTrial {
    pub times: Vec<f64>,
    pub kl_nats: Vec<f64>,
    /// KL(ρ_{P_tπ̂} ‖ ρ) along the same grid.
    pub inter_kl_nats: Vec<f64>,
    pub initial_kl: f64,
    /// Whether KL(P_tπ̂‖μ) ≤ (1−1/ct)^t·KL(π̂‖μ) + sup_s inter(s) + 1e−8
    /// held at every grid time.
    pub inequality_held: bool,
}

#[derive(Debug, Clone)]
pub struct WarmStartSummary {
    pub trials: Vec<WarmStartTrial>,
    pub fraction_below_eps: f64,
    pub all_inequalities_held: bool,
    /// Contraction time ct used in the per-trial inequality.
    pub contraction_time: f64,
}

impl WarmStartSummary {
    /// CSV export: `trial,t,kl_nats,inter_kl_nats`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("trial,t,kl_nats,inter_kl_nats\n");
        for (j, trial) in self.trials.iter().enumerate() {
            for ((t, kl), inter) in trial
                .times
                .iter()
                .zip(&trial.kl_nats)
                .zip(&trial.inter_kl_nats)
            {
                s.push_str(&format!("{j},{t},{kl},{inter}\n"));
            }
        }
        s
    }
}

/// Runs `trials` warm starts: draw an m-sample empirical from μ, evolve it
/// exactly under the mixture's Glauber semigroup, record KL to μ and the
/// label divergence on the grid, and verify the contraction inequality with
/// the supplied contraction time (the c*·n of the decay factor (1−1/c*n)^t).
pub fn warm_start_mixing(
    model: &MixtureModel,
    m: usize,
    t_grid: &[f64],
    trials: usize,
    eps: f64,
    contraction_time: f64,
    seed: u64,
) -> Result<WarmStartSummary> {
    if t_grid.iter().any(|&t| t < 0.0) {
        return Err(EntmixError::InvalidTime(
            t_grid.iter().cloned().fold(0.0, f64::min),
        ));
    }
    let mu = model.mixture();
    let decay = 1.0 - 1.0 / contraction_time;
    let results: Vec<WarmStartTrial> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<WarmStartTrial> {
            let emp = draw_empirical(mu, m, crate::seed::splitmix64(seed, trial as u64))?;
            let pi0 = emp.to_dense(mu.alphabet, mu.n)?;
            let initial_kl = kl_divergence(&pi0, mu);
            let mut times = Vec::with_capacity(t_grid.len());
            let mut kl_nats = Vec::with_capacity(t_grid.len());
            let mut inter_kl_nats = Vec::with_capacity(t_grid.len());
            let mut current = pi0.clone();
            let mut t_prev = 0.0;
            for &t in t_grid {
                current = evolve_continuous(&current, mu, t - t_prev)?;
                t_prev = t;
                times.push(t);
                kl_nats.push(kl_divergence(&current, mu));
                inter_kl_nats.push(kl_tables(&model.rho_of(&current)?, &model.weights));
            }
            let mut inequality_held = true;
            let mut sup_inter: f64 = 0.0;
            for j in 0..times.len() {
                sup_inter = sup_inter.max(inter_kl_nats[j]);
                let rhs = decay.powf(times[j]) * initial_kl + sup_inter + 1e-8;
                if kl_nats[j] > rhs {
                    inequality_held = false;
                }
            }
            Ok(WarmStartTrial {
                times,
                kl_nats,
                inter_kl_nats,
                initial_kl,
                inequality_held,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let below = results
        .iter()
        .filter(|t| t.kl_nats.last().is_some_and(|&kl| kl <= eps))
        .count();
    let all_held = results.iter().all(|t| t.inequality_held);
    Ok(WarmStartSummary {
        fraction_below_eps: below as f64 / trials as f64,
        all_inequalities_held: all_held,
        contraction_time,
        trials: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Alphabet;

    #[test]
    fn empirical_single_sample_is_point_mass() {
        let mu = DenseDistribution::bernoulli_product(0.5, 2).unwrap();
        let emp = draw_empirical(&mu, 1, 1).unwrap();
        let dense = emp.to_dense(mu.alphabet, 2).unwrap();
        assert_eq!(dense.probs.iter().filter(|&&p| p > 0.0).count(), 1);
    }

    #[test]
    fn empirical_of_point_mass_is_exact() {
        let a = Alphabet::new(2).unwrap();
        let x = decode_config(1, a, 2);
        let mu = DenseDistribution::point_mass(a, 2, &x).unwrap();
        for m in [1, 10, 100] {
            let emp = draw_empirical(&mu, m, 2).unwrap();
            let dense = emp.to_dense(a, 2).unwrap();
            assert!(dense.tv_distance(&mu) < 1e-12);
        }
    }

    #[test]
    fn empirical_tv_shrinks_with_m() {
        let mu = DenseDistribution::bernoulli_product(0.3, 3).unwrap();
        let avg_tv = |m: usize, tag: u64| -> f64 {
            let reps = 300;
            (0..reps)
                .map(|j| {
                    let emp = draw_empirical(&mu, m, tag * 1000 + j).unwrap();
                    emp.to_dense(mu.alphabet, 3).unwrap().tv_distance(&mu)
                })
                .sum::<f64>()
                / reps as f64
        };
        let t10 = avg_tv(10, 1);
        let t100 = avg_tv(100, 2);
        let t1000 = avg_tv(1000, 3);
        assert!(t100 < t10 * 0.5);
        assert!(t1000 < t100 * 0.5);
    }

    #[test]
    fn empirical_deterministic() {
        let mu = DenseDistribution::bernoulli_product(0.3, 3).unwrap();
        let a = draw_empirical(&mu, 20, 9).unwrap();
        let b = draw_empirical(&mu, 20, 9).unwrap();
        assert_eq!(a.atoms, b.atoms);
    }

    #[test]
    fn mgf_lambda_zero_is_one() {
        let r = empirical_kl_mgf(&[0.5, 0.5], 50, 0.0, 200, 1).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.bound, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn mgf_single_label_trivial() {
        let r = empirical_kl_mgf(&[1.0], 50, 25.0, 200, 2).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn mgf_uniform_three_labels() {
        let r = empirical_kl_mgf(&[1.0 / 3.0; 3], 50, 25.0, 20_000, 3).unwrap();
        assert!((r.bound - 4.0).abs() < 1e-12);
        assert!(r.pass, "estimate {} bound {}", r.estimate, r.bound);
    }

    #[test]
    fn mgf_rejects_bad_lambda() {
        assert!(empirical_kl_mgf(&[0.5, 0.5], 50, 50.0, 10, 4).is_err());
    }

    #[test]
    fn tail_binary_case() {
        let r = empirical_kl_tail(&[0.5, 0.5], 100, 0.1, 20_000, 5).unwrap();
        let expect = (-10.0f64).exp() * (10.0 * std::f64::consts::E);
        assert!((r.bound - expect).abs() < 1e-12);
        assert!(r.pass, "estimate {} bound {}", r.estimate, r.bound);
    }

    #[test]
    fn tail_rejects_small_eps() {
        assert!(empirical_kl_tail(&[0.25; 4], 100, 0.02, 10, 6).is_err());
    }

    #[test]
    fn tail_boundary_regime() {
        // eps just above (k−1)/m: the bound is near or above 1.
        let r = empirical_kl_tail(&[0.5, 0.5], 100, 0.011, 2_000, 7).unwrap();
        assert!(r.bound > 0.9);
        assert!(r.pass);
    }

    #[test]
    fn posterior_mgf_identical_components() {
        let c = DenseDistribution::bernoulli_product(0.3, 2).unwrap();
        let model = MixtureModel::new(vec![0.4, 0.6], vec![c.clone(), c]).unwrap();
        let (rep, _, dominated) = mixture_posterior_mgf(&model, 50, 25.0, 500, 8).unwrap();
        assert!((rep.estimate - 1.0).abs() < 1e-9);
        assert!(rep.pass);
        assert!(dominated);
    }

    #[test]
    fn posterior_mgf_disjoint_reduces_to_empirical() {
        let a = Alphabet::new(2).unwrap();
        let c1 = DenseDistribution::new(a, 2, vec![0.4, 0.6, 0.0, 0.0]).unwrap();
        let c2 = DenseDistribution::new(a, 2, vec![0.0, 0.0, 0.3, 0.7]).unwrap();
        let model = MixtureModel::new(vec![0.5, 0.5], vec![c1, c2]).unwrap();
        let (rep, _, _) = mixture_posterior_mgf(&model, 40, 20.0, 20_000, 9).unwrap();
        // Pure labels: same law as the direct empirical experiment.
        let direct = empirical_kl_mgf(&[0.5, 0.5], 40, 20.0, 20_000, 10).unwrap();
        let se = (rep.std_error.powi(2) + direct.std_error.powi(2)).sqrt();
        assert!((rep.estimate - direct.estimate).abs() < 4.0 * se + 1e-9);
        assert!(rep.pass);
    }

    #[test]
    fn posterior_mgf_overlapping_respects_bound() {
        let model = MixtureModel::new(
            vec![0.5, 0.5],
            vec![
                DenseDistribution::bernoulli_product(0.2, 3).unwrap(),
                DenseDistribution::bernoulli_product(0.8, 3).unwrap(),
            ],
        )
        .unwrap();
        let (rep, _, dominated) = mixture_posterior_mgf(&model, 50, 25.0, 20_000, 11).unwrap();
        assert!(rep.pass, "estimate {} bound {}", rep.estimate, rep.bound);
        assert!(dominated);
    }

    #[test]
    fn warm_start_single_product_component_mixes() {
        let mu = DenseDistribution::bernoulli_product(0.7, 5).unwrap();
        let model = MixtureModel::new(vec![1.0], vec![mu]).unwrap();
        let grid: Vec<f64> = (1..=12).map(|j| j as f64 * 10.0).collect();
        let summary = warm_start_mixing(&model, 60, &grid, 40, 0.1, 12.0, 12).unwrap();
        assert!(summary.fraction_below_eps >= 0.9);
        assert!(summary.all_inequalities_held);
    }

    #[test]
    fn warm_start_kl_monotone() {
        let model = MixtureModel::new(
            vec![0.5, 0.5],
            vec![
                DenseDistribution::bernoulli_product(0.2, 3).unwrap(),
                DenseDistribution::bernoulli_product(0.8, 3).unwrap(),
            ],
        )
        .unwrap();
        let grid: Vec<f64> = (0..15).map(|j| j as f64 * 2.0).collect();
        let summary = warm_start_mixing(&model, 30, &grid, 20, 0.1, 15.0, 13).unwrap();
        for trial in &summary.trials {
            for w in trial.kl_nats.windows(2) {
                assert!(w[1] <= w[0] + 1e-9);
            }
        }
    }

    #[test]
    fn warm_start_csv_shape() {
        let mu = DenseDistribution::bernoulli_product(0.5, 2).unwrap();
        let model = MixtureModel::new(vec![1.0], vec![mu]).unwrap();
        let summary = warm_start_mixing(&model, 5, &[0.0, 1.0], 2, 0.5, 5.0, 14).unwrap();
        let csv = summary.to_csv();
        assert!(csv.starts_with("trial,t,kl_nats,inter_kl_nats\n"));
        assert_eq!(csv.lines().count(), 1 + 4);
    }
}
