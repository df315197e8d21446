//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Monte Carlo checks use frozen seeds and 3-sigma
//! one-sided slack so verdicts are deterministic.

use entmix::dist::{balance, decode_config, Alphabet};
use entmix::entropy::kl_divergence;
use entmix::experiments::{empirical_kl_mgf, empirical_kl_tail, mixture_posterior_mgf};
use entmix::functional::{
    estimate_ate_constant, estimate_mlsi_constant, weak_phi_sobolev_check, EstimateOptions,
};
use entmix::glauber::{entropy_decay_derivative_check, evolution_curve};
use entmix::identity::{product_set_kl_test, AlgorithmParams};
use entmix::mixture::chain_rule_decompose;
use entmix::oracle::OracleHandle;
use entmix::seed::{splitmix64, trial_rng};
use entmix::tester::{kl_test, kl_test_sample_count, TesterSpec, Verdict};
use entmix::{DenseDistribution, DensityFunction, MixtureModel, PhiFunctional};
use rand::Rng;

fn report(criterion: u32, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn opts(seed: u64) -> EstimateOptions {
    EstimateOptions {
        restarts: 8,
        iters: 300,
        tol: 1e-9,
        seed,
    }
}

fn bimodal_model(lo: f64, n: usize) -> MixtureModel {
    MixtureModel::new(
        vec![0.5, 0.5],
        vec![
            DenseDistribution::bernoulli_product(lo, n).unwrap(),
            DenseDistribution::bernoulli_product(1.0 - lo, n).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_1_exact_identities() {
    let doc = entmix::runner::identity_battery(100, 2024).unwrap();
    let pass = doc["violations"].as_u64() == Some(0);
    report(1, "exact identity battery", pass);
    assert!(pass, "identity battery reported {doc}");
}

#[test]
fn criterion_2_functional_inequalities() {
    let mut rng = trial_rng(2024, 0xf2, 0);
    let mut pass = true;

    for j in 0..50u64 {
        let n = 2 + (j % 3) as usize;
        let marginals: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let p: f64 = rng.gen_range(0.1..0.9);
                vec![1.0 - p, p]
            })
            .collect();
        let mu = DenseDistribution::product(Alphabet::new(2).unwrap(), &marginals).unwrap();
        let ate = estimate_ate_constant(&mu, &opts(splitmix64(10, j))).unwrap();
        if !(ate.lower >= 1.0 - 1e-9 && ate.lower <= 1.0 + 1e-6) {
            pass = false;
        }
    }

    for j in 0..50u64 {
        let n = 2 + (j % 3) as usize;
        let a = Alphabet::new(2).unwrap();
        let c0 = DenseDistribution::random_full_support(a, n, &mut rng).unwrap();
        let c1 = DenseDistribution::random_full_support(a, n, &mut rng).unwrap();
        let w: f64 = rng.gen_range(0.2..0.8);
        let mu = MixtureModel::new(vec![w, 1.0 - w], vec![c0, c1])
            .unwrap()
            .mixture()
            .clone();
        let o = opts(splitmix64(11, j));
        let ate = estimate_ate_constant(&mu, &o).unwrap().lower;
        let mlsi = estimate_mlsi_constant(&mu, &o).unwrap().lower;
        if mlsi > n as f64 * ate / 2.0 + 1e-6 {
            pass = false;
        }
    }

    for s in 0..8u64 {
        let a = Alphabet::new(2).unwrap();
        let comps: Vec<_> = (0..2)
            .map(|_| DenseDistribution::random_full_support(a, 3, &mut rng).unwrap())
            .collect();
        let model = MixtureModel::new(vec![0.4, 0.6], comps).unwrap();
        for phi in [PhiFunctional::ULogU, PhiFunctional::USquared] {
            let c = model
                .components
                .iter()
                .map(|comp| {
                    entmix::functional::estimate_phi_sobolev(comp, phi, &opts(splitmix64(12, s)))
                        .unwrap()
                        .lower
                })
                .fold(0.0f64, f64::max)
                * 1.1;
            for _ in 0..5 {
                let f = DensityFunction::random_positive(8, &mut rng);
                let (lhs, rhs) = weak_phi_sobolev_check(&model, &f, c, phi).unwrap();
                if lhs > rhs + 1e-9 {
                    pass = false;
                }
            }
        }
    }

    for _ in 0..50 {
        let a = Alphabet::new(2).unwrap();
        let mu = DenseDistribution::random_full_support(a, 3, &mut rng).unwrap();
        let pi = DenseDistribution::random_full_support(a, 3, &mut rng).unwrap();
        let t: f64 = rng.gen_range(0.1..5.0);
        let (lhs, rhs) = entropy_decay_derivative_check(&pi, &mu, t, 1e-5).unwrap();
        if (lhs - rhs).abs() > (1e-6f64).max(1e-4 * lhs.abs()) {
            pass = false;
        }
    }

    report(2, "functional inequality battery", pass);
    assert!(pass);
}

#[test]
fn criterion_3_concentration_bounds() {
    let trials = 100_000;
    let mut pass = true;
    for (g, k) in [2usize, 3, 5].into_iter().enumerate() {
        let rho = vec![1.0 / k as f64; k];
        let mgf = empirical_kl_mgf(&rho, 50, 25.0, trials, splitmix64(30, g as u64)).unwrap();
        let tail = empirical_kl_tail(&rho, 100, 0.15, trials, splitmix64(31, g as u64)).unwrap();
        if !mgf.pass || !tail.pass {
            pass = false;
        }
    }
    let model = MixtureModel::new(
        vec![0.5, 0.5],
        vec![
            DenseDistribution::bernoulli_product(0.15, 3).unwrap(),
            DenseDistribution::bernoulli_product(0.85, 3).unwrap(),
        ],
    )
    .unwrap();
    let (mix, _disjoint, dominated) =
        mixture_posterior_mgf(&model, 50, 25.0, trials, 32).unwrap();
    if !mix.pass || !dominated {
        pass = false;
    }
    report(3, "concentration battery", pass);
    assert!(pass);
}

#[test]
fn criterion_4_warm_start_mixing() {
    let model = bimodal_model(0.1, 6);
    let mu = model.mixture();
    let n = 6.0;

    // (a) Worst-case point-mass initialization held out to t = 50n.
    let x0 = decode_config(0, mu.alphabet, 6);
    let point = DenseDistribution::point_mass(mu.alphabet, 6, &x0).unwrap();
    let curve = evolution_curve(&point, mu, &[50.0 * n], false).unwrap();
    let worst_kl = curve.kl_nats[0];
    let pass_a = worst_kl >= 0.5;

    // (b) Data-based initialization: m = ceil(4(k/eps + ln(1/delta)/eps)).
    let (eps, delta) = (0.1f64, 0.2f64);
    let m = (4.0 * (2.0 / eps + (1.0 / delta).ln() / eps)).ceil() as usize;
    let chat = model
        .components
        .iter()
        .map(|c| estimate_mlsi_constant(c, &opts(40)).unwrap().lower)
        .fold(0.0f64, f64::max);
    let t_end = 20.0 * (2.0 * chat / n) * n * ((1.0 / mu.min_prob()).ln().ln() + (1.0 / eps).ln());
    let grid: Vec<f64> = (1..=30).map(|j| t_end * j as f64 / 30.0).collect();
    let trials = 200;
    let summary = entmix::experiments::warm_start_mixing(
        &model,
        m,
        &grid,
        trials,
        eps,
        2.2 * chat,
        41,
    )
    .unwrap();
    let se = (delta * (1.0 - delta) / trials as f64).sqrt();
    let pass_b = summary.fraction_below_eps >= 1.0 - delta - 3.0 * se;

    // (c) Per-trial contraction inequality, sup-over-grid form.
    let pass_c = summary.all_inequalities_held;

    println!(
        "  4(a) worst-case KL at t=300: {worst_kl:.6} (required >= 0.5): {}",
        if pass_a { "pass" } else { "fail" }
    );
    println!(
        "  4(b) warm-start fraction below eps: {:.3} (required >= {:.3}): {}",
        summary.fraction_below_eps,
        1.0 - delta - 3.0 * se,
        if pass_b { "pass" } else { "fail" }
    );
    println!(
        "  4(c) per-trial contraction inequality: {}",
        if pass_c { "pass" } else { "fail" }
    );
    report(4, "warm-start mixing", pass_a && pass_b && pass_c);
    assert!(pass_b, "warm-start fraction {}", summary.fraction_below_eps);
    assert!(pass_c, "contraction inequality violated");
    assert!(
        pass_a,
        "worst-case point-mass KL at t = 50n is {worst_kl:.6}, below the required 0.5 plateau"
    );
}

#[test]
fn criterion_5_tester_contracts() {
    let trials = 200;
    let mut pass = true;
    let cases: Vec<(Vec<f64>, Vec<f64>)> = vec![
        (vec![0.7, 0.3], vec![0.99, 0.01]),
        (
            {
                let mut q = vec![0.05; 10];
                q[0] = 0.55;
                q
            },
            {
                let mut p = vec![0.05 / 9.0; 10];
                p[0] = 0.95;
                p
            },
        ),
    ];
    let (eps, delta) = (0.3f64, 0.1f64);
    let se = (delta * (1.0 - delta) / trials as f64).sqrt();
    let need = 1.0 - delta - 3.0 * se;
    for (case, (q, p_far)) in cases.iter().enumerate() {
        assert!(
            entmix::entropy::kl_tables(p_far, q) >= eps,
            "far alternative not certified"
        );
        let spec = TesterSpec::new(q.clone(), eps, delta).unwrap();
        let eta_q = q.iter().cloned().fold(f64::INFINITY, f64::min);
        let planned = kl_test_sample_count(q.len(), eta_q, eps, delta);

        let mut accepts = 0u32;
        let mut rejects = 0u32;
        for t in 0..trials as u64 {
            let sampler = entmix::dist::CumulativeSampler::new(q);
            let mut rng = trial_rng(50 + case as u64, 0x51, t);
            let mut src = || Ok(sampler.sample(&mut rng));
            let v = kl_test(&mut src, &spec).unwrap();
            assert_eq!(v.samples_used, planned, "sample count formula mismatch");
            if v.verdict == Verdict::Accept {
                accepts += 1;
            }
            let sampler = entmix::dist::CumulativeSampler::new(p_far);
            let mut rng = trial_rng(60 + case as u64, 0x52, t);
            let mut src = || Ok(sampler.sample(&mut rng));
            if kl_test(&mut src, &spec).unwrap().verdict == Verdict::Reject {
                rejects += 1;
            }
        }
        let acc = accepts as f64 / trials as f64;
        let rej = rejects as f64 / trials as f64;
        if acc < need || rej < need {
            pass = false;
        }
        println!("  case d={}: accept rate {acc:.3}, reject rate {rej:.3}, need {need:.3}", q.len());
    }
    report(5, "tester contracts", pass);
    assert!(pass);
}

#[test]
fn criterion_6_end_to_end_testing() {
    let model = bimodal_model(0.2, 5);
    let mu = model.mixture();
    let eps = 0.5;
    let ate = model
        .components
        .iter()
        .map(|c| estimate_ate_constant(c, &opts(60)).unwrap().lower)
        .fold(0.0f64, f64::max);
    let cstar = (1.1 * ate).max(1.0);
    let eta = balance(mu);
    let params = AlgorithmParams::new(eps, cstar, eta, 5, 2, 6001).unwrap();

    // Soundness family certifications: the weight skew diverges in the
    // label (inter) branch, the alternating products in the conditional
    // (intra) branch; both sit at certified KL >= eps from mu.
    let skew = MixtureModel::new(vec![0.995, 0.005], model.components.clone()).unwrap();
    let a = Alphabet::new(2).unwrap();
    let alt = MixtureModel::new(
        vec![0.5, 0.5],
        vec![
            DenseDistribution::product(a, &[0.8, 0.2, 0.8, 0.2, 0.8].map(|p| vec![1.0 - p, p]))
                .unwrap(),
            DenseDistribution::product(a, &[0.2, 0.8, 0.2, 0.8, 0.2].map(|p| vec![1.0 - p, p]))
                .unwrap(),
        ],
    )
    .unwrap();
    for (name, pi, want_branch_inter) in [
        ("skew", skew.mixture(), true),
        ("alternating", alt.mixture(), false),
    ] {
        let kl = kl_divergence(pi, mu);
        assert!(kl >= eps, "{name} family not certified: KL = {kl}");
        let f = DensityFunction::ratio(pi, mu).unwrap();
        let (inter, intra, _) = chain_rule_decompose(&model, &f, PhiFunctional::ULogU).unwrap();
        let branch = if want_branch_inter { inter } else { intra };
        assert!(branch >= 0.25, "{name} branch term {branch} below 0.25");
    }

    let runs = 200u64;
    let run_family = |pi: &DenseDistribution, tag: u64| -> (f64, f64) {
        let mut rejects = 0u64;
        let mut trips = 0u64;
        for j in 0..runs {
            let mut p = params.clone();
            p.seed = splitmix64(6100 + tag, j);
            let mut oracle = OracleHandle::new(pi.clone(), splitmix64(6200 + tag, j));
            let rep = product_set_kl_test(&model, &mut oracle, &p).unwrap();
            if rep.verdict == Verdict::Reject {
                rejects += 1;
            }
            if rep.step1.budget_tripped {
                trips += 1;
            }
        }
        (rejects as f64 / runs as f64, trips as f64 / runs as f64)
    };

    let sigma_c = (0.4f64 * 0.6 / runs as f64).sqrt();
    let sigma_s = (0.6f64 * 0.4 / runs as f64).sqrt();
    let sigma_t = (0.01f64 * 0.99 / runs as f64).sqrt();

    let (complete_rej, complete_trips) = run_family(mu, 0);
    let (skew_rej, _) = run_family(skew.mixture(), 1);
    let (alt_rej, _) = run_family(alt.mixture(), 2);

    let pass_complete = complete_rej <= 0.4 + 3.0 * sigma_c;
    let pass_skew = skew_rej >= 0.6 - 3.0 * sigma_s;
    let pass_alt = alt_rej >= 0.6 - 3.0 * sigma_s;
    let pass_trips = complete_trips <= 0.01 + 3.0 * sigma_t;
    println!(
        "  completeness reject rate {complete_rej:.3} (<= {:.3}), skew {skew_rej:.3}, alternating {alt_rej:.3} (>= {:.3}), budget trips {complete_trips:.3}",
        0.4 + 3.0 * sigma_c,
        0.6 - 3.0 * sigma_s
    );
    let pass = pass_complete && pass_skew && pass_alt && pass_trips;
    report(6, "end-to-end product-set testing", pass);
    assert!(pass);
}

#[test]
fn criterion_7_oracle_backend_equivalence() {
    // Two-sample chi-square between the exact-slice backend and the
    // rejection backend, per coordinate, at significance 1e-3 (df = 2).
    const CHI_SQ_CRIT_DF2_1E3: f64 = 13.816;
    let a = Alphabet::new(3).unwrap();
    let mut rng = trial_rng(70, 0x71, 0);
    let pi = DenseDistribution::random_full_support(a, 3, &mut rng).unwrap();
    let draws = 100_000;
    let mut pass = true;
    for i in 0..3 {
        let mut exact = OracleHandle::new(pi.clone(), splitmix64(71, i as u64));
        let mut backed = OracleHandle::new(pi.clone(), splitmix64(72, i as u64));
        let x = exact.general_sample();
        let mut n1 = [0u64; 3];
        let mut n2 = [0u64; 3];
        for _ in 0..draws {
            n1[exact.coordinate_sample(&x, i).unwrap() as usize] += 1;
            n2[backed.glauber_backed_coordinate_sample(&x, i).unwrap().0 as usize] += 1;
        }
        let stat: f64 = (0..3)
            .filter(|&c| n1[c] + n2[c] > 0)
            .map(|c| {
                let diff = n1[c] as f64 - n2[c] as f64;
                diff * diff / (n1[c] + n2[c]) as f64
            })
            .sum();
        println!("  coordinate {i}: chi-square {stat:.3} (critical {CHI_SQ_CRIT_DF2_1E3})");
        if stat > CHI_SQ_CRIT_DF2_1E3 {
            pass = false;
        }
    }
    report(7, "oracle backend equivalence", pass);
    assert!(pass);
}
