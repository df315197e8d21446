//! Batch experiment runner behind the command-line interface.
//!
//! Each subcommand is driven by one JSON config document; a run is
//! reproducible from (config, seed, jobs). The effective configuration is
//! echoed into the output directory for provenance.

use crate::dist::{balance, DenseDistribution, DensityFunction};
use crate::entropy::{kl_divergence, kl_tables};
use crate::error::{EntmixError, Result};
use crate::functional::{estimate_ate_constant, estimate_mlsi_constant, EstimateOptions};
use crate::identity::{product_set_kl_test, AlgorithmParams};
use crate::mixture::{chain_rule_decompose, MixtureModel};
use crate::oracle::OracleHandle;
use crate::phi::PhiFunctional;
use crate::seed::trial_rng;
use crate::tester::Verdict;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_ACCEPT: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Environment variable overriding the config's seed (itself overridden by
/// an explicit --seed flag).
pub const SEED_ENV: &str = "EXPERIMENT_SEED";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub params: serde_json::Value,
}

pub fn resolve_seed(config_seed: u64, flag_seed: Option<u64>) -> u64 {
    if let Some(s) = flag_seed {
        return s;
    }
    if let Ok(v) = std::env::var(SEED_ENV) {
        if let Ok(s) = v.parse() {
            return s;
        }
    }
    config_seed
}

fn load_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn write_out(out: &Path, name: &str, content: &str) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let path = out.join(name);
    fs::write(&path, content)?;
    Ok(path)
}

fn field_str(v: &serde_json::Value, key: &str) -> Result<String> {
    v.get(key)
        .and_then(|x| x.as_str())
        .map(str::to_owned)
        .ok_or_else(|| EntmixError::InvalidParameter(format!("missing string field `{key}`")))
}

fn field_f64(v: &serde_json::Value, key: &str) -> Result<f64> {
    v.get(key)
        .and_then(|x| x.as_f64())
        .ok_or_else(|| EntmixError::InvalidParameter(format!("missing numeric field `{key}`")))
}

fn field_u64_or(v: &serde_json::Value, key: &str, default: u64) -> u64 {
    v.get(key).and_then(|x| x.as_u64()).unwrap_or(default)
}

fn field_f64_or(v: &serde_json::Value, key: &str, default: f64) -> f64 {
    v.get(key).and_then(|x| x.as_f64()).unwrap_or(default)
}

fn load_mixture(params: &serde_json::Value, key: &str) -> Result<MixtureModel> {
    let path = field_str(params, key)?;
    MixtureModel::from_json(&fs::read_to_string(path)?)
}

fn echo_config(out: &Path, name: &str, config: &RunConfig, seed: u64) -> Result<()> {
    let mut doc = serde_json::to_value(config)?;
    doc["seed"] = serde_json::json!(seed);
    write_out(out, name, &serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

/// Runs the identity test of a mixture file against a sealed hidden
/// distribution file. Exit 0 accept, 1 reject, 2 invalid setup.
pub fn cmd_test_identity(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> i32 {
    match run_test_identity(config_path, out, flag_seed) {
        Ok(verdict) => match verdict {
            Verdict::Accept => EXIT_ACCEPT,
            Verdict::Reject => EXIT_REJECT,
        },
        Err(e) => {
            eprintln!("invalid setup: {e}");
            EXIT_INVALID
        }
    }
}

fn run_test_identity(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> Result<Verdict> {
    let config = load_config(config_path)?;
    let seed = resolve_seed(config.seed, flag_seed);
    let params = &config.params;
    let model = load_mixture(params, "mixture_file")?;
    let pi = DenseDistribution::from_json(&fs::read_to_string(field_str(params, "pi_file")?)?)?;
    let eps = field_f64(params, "eps")?;
    let cstar = field_f64(params, "cstar")?;
    let eta = field_f64_or(params, "eta", balance(model.mixture()));
    let mu = model.mixture();
    let alg = AlgorithmParams::new(eps, cstar, eta, mu.n, mu.alphabet.size, seed)?;
    let mut oracle = OracleHandle::new(pi, crate::seed::splitmix64(seed, 0x0eac1e));
    let report = product_set_kl_test(&model, &mut oracle, &alg)?;
    echo_config(out, "test_identity_config.json", &config, seed)?;
    write_out(out, "test_identity_report.json", &report.to_json())?;
    write_out(out, "oracle_counters.json", &oracle.counters_json())?;
    Ok(report.verdict)
}

/// Mixing experiment: point-mass worst case and data-based warm starts,
/// with curve CSVs and an optional SVG chart.
pub fn cmd_mixing(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> i32 {
    match run_mixing(config_path, out, flag_seed) {
        Ok(()) => EXIT_ACCEPT,
        Err(e) => {
            eprintln!("mixing run failed: {e}");
            EXIT_INVALID
        }
    }
}

fn default_contraction_time(model: &MixtureModel, seed: u64) -> Result<f64> {
    let opts = EstimateOptions {
        restarts: 8,
        iters: 300,
        tol: 1e-9,
        seed,
    };
    let mut worst: f64 = 0.0;
    for comp in &model.components {
        worst = worst.max(estimate_mlsi_constant(comp, &opts)?.lower);
    }
    Ok((2.2 * worst).max(2.0))
}

fn run_mixing(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> Result<()> {
    let config = load_config(config_path)?;
    let seed = resolve_seed(config.seed, flag_seed);
    let params = &config.params;
    let model = load_mixture(params, "mixture_file")?;
    let mu = model.mixture();
    let m = field_u64_or(params, "m", 100) as usize;
    let trials = field_u64_or(params, "trials", 50) as usize;
    let eps = field_f64_or(params, "eps", 0.1);
    let t_max = field_f64(params, "t_max")?;
    let points = field_u64_or(params, "grid_points", 25) as usize;
    let grid: Vec<f64> = (1..=points)
        .map(|j| t_max * j as f64 / points as f64)
        .collect();
    let ct = match params.get("contraction_time").and_then(|v| v.as_f64()) {
        Some(v) => v,
        None => default_contraction_time(&model, seed)?,
    };

    // Worst-case start: point mass at the lowest-index minimum-probability
    // state, the classic slow initialization.
    let argmin = mu
        .probs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let x0 = crate::dist::decode_config(argmin, mu.alphabet, mu.n);
    let point = DenseDistribution::point_mass(mu.alphabet, mu.n, &x0)?;
    let worst_curve = crate::glauber::evolution_curve(&point, mu, &grid, false)?;
    write_out(out, "worst_case_curve.csv", &worst_curve.to_csv())?;

    let summary = crate::experiments::warm_start_mixing(&model, m, &grid, trials, eps, ct, seed)?;
    write_out(out, "warm_start_curves.csv", &summary.to_csv())?;
    let report = serde_json::json!({
        "m": m,
        "trials": trials,
        "eps": eps,
        "contraction_time": ct,
        "fraction_below_eps": summary.fraction_below_eps,
        "all_inequalities_held": summary.all_inequalities_held,
        "worst_case_terminal_kl": worst_curve.kl_nats.last(),
        "log_horizon_candidates": {
            "log_log_form": (1.0 / mu.min_prob()).ln().ln(),
            "log_form": (1.0 / mu.min_prob()).ln(),
        },
    });
    write_out(out, "mixing_summary.json", &serde_json::to_string_pretty(&report)?)?;
    if field_u64_or(params, "svg", 0) == 1 {
        let svg = curve_svg(&worst_curve.times, &[("worst-case", &worst_curve.kl_nats)]);
        write_out(out, "worst_case_curve.svg", &svg)?;
    }
    echo_config(out, "mixing_config.json", &config, seed)?;
    Ok(())
}

/// Concentration experiment: MGF bound, tail bound, or mixture-posterior MGF.
pub fn cmd_concentration(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> i32 {
    match run_concentration(config_path, out, flag_seed) {
        Ok(pass) => {
            if pass {
                EXIT_ACCEPT
            } else {
                EXIT_REJECT
            }
        }
        Err(e) => {
            eprintln!("concentration run failed: {e}");
            EXIT_INVALID
        }
    }
}

fn run_concentration(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> Result<bool> {
    let config = load_config(config_path)?;
    let seed = resolve_seed(config.seed, flag_seed);
    let params = &config.params;
    let mode = field_str(params, "mode")?;
    let m = field_u64_or(params, "m", 50) as usize;
    let trials = field_u64_or(params, "trials", 100_000) as usize;
    let report = match mode.as_str() {
        "mgf" => {
            let rho: Vec<f64> = serde_json::from_value(
                params
                    .get("rho")
                    .cloned()
                    .ok_or_else(|| EntmixError::InvalidParameter("missing `rho`".into()))?,
            )?;
            let lambda = field_f64(params, "lambda")?;
            crate::experiments::empirical_kl_mgf(&rho, m, lambda, trials, seed)?
        }
        "tail" => {
            let rho: Vec<f64> = serde_json::from_value(
                params
                    .get("rho")
                    .cloned()
                    .ok_or_else(|| EntmixError::InvalidParameter("missing `rho`".into()))?,
            )?;
            let eps = field_f64(params, "eps")?;
            crate::experiments::empirical_kl_tail(&rho, m, eps, trials, seed)?
        }
        "mixture_mgf" => {
            let model = load_mixture(params, "mixture_file")?;
            let lambda = field_f64(params, "lambda")?;
            let (rep, disjoint, dominated) =
                crate::experiments::mixture_posterior_mgf(&model, m, lambda, trials, seed)?;
            write_out(out, "concentration_disjoint.json", &disjoint.to_json())?;
            let mut rep = rep;
            rep.pass = rep.pass && dominated;
            rep
        }
        other => {
            return Err(EntmixError::InvalidParameter(format!(
                "unknown concentration mode `{other}`"
            )))
        }
    };
    echo_config(out, "concentration_config.json", &config, seed)?;
    write_out(out, "concentration_report.json", &report.to_json())?;
    Ok(report.pass)
}

/// Exact-identity battery over random instances; nonzero exit on violation.
pub fn cmd_verify_identities(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> i32 {
    match run_verify_identities(config_path, out, flag_seed) {
        Ok(true) => EXIT_ACCEPT,
        Ok(false) => EXIT_REJECT,
        Err(e) => {
            eprintln!("identity verification failed to run: {e}");
            EXIT_INVALID
        }
    }
}

fn run_verify_identities(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> Result<bool> {
    let config = load_config(config_path)?;
    let seed = resolve_seed(config.seed, flag_seed);
    let instances = field_u64_or(&config.params, "instances", 100);
    let report = identity_battery(instances, seed)?;
    echo_config(out, "verify_config.json", &config, seed)?;
    write_out(out, "verify_report.json", &serde_json::to_string_pretty(&report)?)?;
    Ok(report["violations"].as_u64() == Some(0))
}

/// The exact-arithmetic identity battery shared by the CLI and the test
/// suite: chain rule, flip identity, posterior-average fact, homogeneity,
/// balance facts, and the Hellinger–KL inequality.
pub fn identity_battery(instances: u64, seed: u64) -> Result<serde_json::Value> {
    use rand::Rng;
    let mut violations = 0u64;
    let mut checks = 0u64;
    let mut rng = trial_rng(seed, 0x1b, 0);
    for _ in 0..instances {
        let q = rng.gen_range(2..=3usize);
        let n = rng.gen_range(2..=5usize);
        let k = rng.gen_range(1..=4usize);
        let alphabet = crate::dist::Alphabet::new(q)?;
        let comps: Vec<DenseDistribution> = (0..k)
            .map(|_| DenseDistribution::random_full_support(alphabet, n, &mut rng))
            .collect::<Result<_>>()?;
        let mut w: Vec<f64> = (0..k).map(|_| 0.2 + rng.gen::<f64>()).collect();
        let ws: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= ws);
        let model = MixtureModel::new(w, comps)?;
        let mu = model.mixture();
        let pi = DenseDistribution::random_full_support(alphabet, n, &mut rng)?;
        let f = DensityFunction::random_positive(mu.num_states(), &mut rng);

        for phi in [PhiFunctional::ULogU, PhiFunctional::USquared] {
            let (inter, intra, total) = chain_rule_decompose(&model, &f, phi)?;
            checks += 1;
            if (inter + intra - total).abs() > 1e-10 {
                violations += 1;
            }
        }
        let flip = crate::entropy::conditional_flip_sum(&pi, mu)?;
        let local =
            crate::entropy::local_entropy_functional(mu, &DensityFunction::ratio(&pi, mu)?)?;
        checks += 1;
        if (flip - local).abs() > 1e-10 {
            violations += 1;
        }
        let fr = DensityFunction::ratio(&pi, mu)?;
        let (inter, _, _) = chain_rule_decompose(&model, &fr, PhiFunctional::ULogU)?;
        let rho_pi = model.rho_of(&pi)?;
        checks += 1;
        if (inter - kl_tables(&rho_pi, &model.weights)).abs() > 1e-10 {
            violations += 1;
        }
        let base = crate::entropy::phi_entropy(mu, &f, PhiFunctional::ULogU)?;
        for alpha in [0.0, 0.3, 2.0, 10.0] {
            let scaled =
                DensityFunction::new(f.values.iter().map(|v| alpha * v).collect())?;
            let ent = crate::entropy::phi_entropy(mu, &scaled, PhiFunctional::ULogU)?;
            checks += 1;
            if (ent - alpha * base).abs() > 1e-10 * (1.0 + alpha * base.abs()) {
                violations += 1;
            }
        }
        checks += 1;
        if !crate::dist::min_prob_lower_bound_check(mu) {
            violations += 1;
        }
        checks += 1;
        if kl_divergence(mu, mu) != 0.0 {
            violations += 1;
        }
    }
    // Hellinger–KL inequality on random table pairs.
    for d in [2usize, 5, 20] {
        for _ in 0..3334 {
            let mut p: Vec<f64> = (0..d).map(|_| 0.01 + rng.gen::<f64>()).collect();
            let mut q: Vec<f64> = (0..d).map(|_| 0.01 + rng.gen::<f64>()).collect();
            let sp: f64 = p.iter().sum();
            let sq: f64 = q.iter().sum();
            p.iter_mut().for_each(|v| *v /= sp);
            q.iter_mut().for_each(|v| *v /= sq);
            checks += 1;
            if !crate::tester::hellinger_kl_inequality_holds(&p, &q, 1e-12) {
                violations += 1;
            }
        }
    }
    Ok(serde_json::json!({
        "instances": instances,
        "checks": checks,
        "violations": violations,
    }))
}

/// Estimates tensorization and Sobolev constants for a distribution or for
/// every component of a mixture.
pub fn cmd_estimate_constants(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> i32 {
    match run_estimate_constants(config_path, out, flag_seed) {
        Ok(()) => EXIT_ACCEPT,
        Err(e) => {
            eprintln!("constant estimation failed: {e}");
            EXIT_INVALID
        }
    }
}

fn run_estimate_constants(config_path: &Path, out: &Path, flag_seed: Option<u64>) -> Result<()> {
    let config = load_config(config_path)?;
    let seed = resolve_seed(config.seed, flag_seed);
    let params = &config.params;
    let opts = EstimateOptions {
        restarts: field_u64_or(params, "restarts", 20) as usize,
        iters: field_u64_or(params, "iters", 500) as usize,
        tol: field_f64_or(params, "tol", 1e-9),
        seed,
    };
    let dists: Vec<(String, DenseDistribution)> = if params.get("mixture_file").is_some() {
        let model = load_mixture(params, "mixture_file")?;
        model
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| (format!("component_{j}"), c.clone()))
            .collect()
    } else {
        let path = field_str(params, "dist_file")?;
        vec![(
            "distribution".to_string(),
            DenseDistribution::from_json(&fs::read_to_string(path)?)?,
        )]
    };
    let mut entries = Vec::new();
    for (name, mu) in &dists {
        let ate = estimate_ate_constant(mu, &opts)?;
        let mlsi = estimate_mlsi_constant(mu, &opts)?;
        entries.push(serde_json::json!({
            "name": name,
            "ate_lower": ate.lower,
            "mlsi_lower": mlsi.lower,
            "balance": balance(mu),
            "min_prob": mu.min_prob(),
            "converged": ate.converged && mlsi.converged,
        }));
    }
    echo_config(out, "estimate_config.json", &config, seed)?;
    write_out(
        out,
        "constants.json",
        &serde_json::to_string_pretty(&serde_json::json!({ "estimates": entries }))?,
    )?;
    Ok(())
}

/// Minimal SVG line chart over a shared time axis.
pub fn curve_svg(times: &[f64], series: &[(&str, &Vec<f64>)]) -> String {
    let (w, h, pad) = (640.0, 400.0, 40.0);
    let t_max = times.last().copied().unwrap_or(1.0).max(1e-9);
    let y_max = series
        .iter()
        .flat_map(|(_, ys)| ys.iter())
        .cloned()
        .fold(1e-9f64, f64::max);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    );
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    for (s, (name, ys)) in series.iter().enumerate() {
        let pts: Vec<String> = times
            .iter()
            .zip(ys.iter())
            .map(|(&t, &y)| {
                let x = pad + (w - 2.0 * pad) * t / t_max;
                let yy = h - pad - (h - 2.0 * pad) * y / y_max;
                format!("{x:.1},{yy:.1}")
            })
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n\
             <text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            colors[s % colors.len()],
            pts.join(" "),
            pad,
            pad + 14.0 * s as f64,
            name
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("entmix_runner_{tag}_{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn write_mixture(dir: &Path, name: &str) -> PathBuf {
        let model = MixtureModel::new(
            vec![0.5, 0.5],
            vec![
                DenseDistribution::bernoulli_product(0.2, 3).unwrap(),
                DenseDistribution::bernoulli_product(0.8, 3).unwrap(),
            ],
        )
        .unwrap();
        let path = dir.join(name);
        fs::write(&path, model.to_json()).unwrap();
        path
    }

    #[test]
    fn verify_identities_passes() {
        let dir = tmp_dir("verify");
        let cfg = dir.join("cfg.json");
        fs::write(&cfg, r#"{"seed": 5, "instances": 10}"#).unwrap();
        assert_eq!(cmd_verify_identities(&cfg, &dir, None), EXIT_ACCEPT);
    }

    #[test]
    fn concentration_invalid_lambda_exits_2() {
        let dir = tmp_dir("conc");
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            r#"{"seed": 1, "mode": "mgf", "rho": [0.5, 0.5], "m": 50, "lambda": 60, "trials": 10}"#,
        )
        .unwrap();
        assert_eq!(cmd_concentration(&cfg, &dir, None), EXIT_INVALID);
    }

    #[test]
    fn concentration_mgf_passes() {
        let dir = tmp_dir("conc_ok");
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            r#"{"seed": 2, "mode": "mgf", "rho": [0.5, 0.5], "m": 50, "lambda": 25, "trials": 2000}"#,
        )
        .unwrap();
        assert_eq!(cmd_concentration(&cfg, &dir, None), EXIT_ACCEPT);
        assert!(dir.join("concentration_report.json").exists());
    }

    #[test]
    fn test_identity_missing_file_exits_2() {
        let dir = tmp_dir("ident_missing");
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            r#"{"seed": 3, "mixture_file": "/nonexistent.json", "pi_file": "/nonexistent2.json", "eps": 0.5, "cstar": 1.2}"#,
        )
        .unwrap();
        assert_eq!(cmd_test_identity(&cfg, &dir, None), EXIT_INVALID);
    }

    #[test]
    fn test_identity_runs_end_to_end() {
        let dir = tmp_dir("ident_ok");
        let mixture_path = write_mixture(&dir, "mixture.json");
        let pi_path = dir.join("pi.json");
        let model = MixtureModel::from_json(&fs::read_to_string(&mixture_path).unwrap()).unwrap();
        fs::write(&pi_path, model.mixture().to_json()).unwrap();
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            format!(
                r#"{{"seed": 4, "mixture_file": {:?}, "pi_file": {:?}, "eps": 0.6, "cstar": 1.5}}"#,
                mixture_path.to_str().unwrap(),
                pi_path.to_str().unwrap()
            ),
        )
        .unwrap();
        let code = cmd_test_identity(&cfg, &dir, None);
        assert!(code == EXIT_ACCEPT || code == EXIT_REJECT);
        assert!(dir.join("test_identity_report.json").exists());
        assert!(dir.join("oracle_counters.json").exists());
    }

    #[test]
    fn mixing_emits_curves() {
        let dir = tmp_dir("mixing");
        let mixture_path = write_mixture(&dir, "mixture.json");
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            format!(
                r#"{{"seed": 6, "mixture_file": {:?}, "m": 20, "trials": 5, "eps": 0.2, "t_max": 20.0, "grid_points": 8, "contraction_time": 12.0, "svg": 1}}"#,
                mixture_path.to_str().unwrap()
            ),
        )
        .unwrap();
        assert_eq!(cmd_mixing(&cfg, &dir, None), EXIT_ACCEPT);
        let csv = fs::read_to_string(dir.join("warm_start_curves.csv")).unwrap();
        assert!(csv.starts_with("trial,t,kl_nats,inter_kl_nats\n"));
        assert!(dir.join("worst_case_curve.csv").exists());
        assert!(dir.join("worst_case_curve.svg").exists());
        assert!(dir.join("mixing_summary.json").exists());
    }

    #[test]
    fn estimate_constants_runs() {
        let dir = tmp_dir("constants");
        let mixture_path = write_mixture(&dir, "mixture.json");
        let cfg = dir.join("cfg.json");
        fs::write(
            &cfg,
            format!(
                r#"{{"seed": 7, "mixture_file": {:?}, "restarts": 4, "iters": 150}}"#,
                mixture_path.to_str().unwrap()
            ),
        )
        .unwrap();
        assert_eq!(cmd_estimate_constants(&cfg, &dir, None), EXIT_ACCEPT);
        let doc: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.join("constants.json")).unwrap()).unwrap();
        let entries = doc["estimates"].as_array().unwrap();
        assert_eq!(entries.len(), 2);
        for e in entries {
            assert!(e["ate_lower"].as_f64().unwrap() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn seed_resolution_precedence() {
        assert_eq!(resolve_seed(7, Some(9)), 9);
        assert_eq!(resolve_seed(7, None), 7);
    }
}
