//! Glauber mixing from worst-case versus data-based initializations.
//! A point mass at the least likely state needs time ~ log(1/min mu) to
//! mix, while an empirical warm start only pays a log log factor.

use entmix::experiments::warm_start_mixing;
use entmix::glauber::{entropy_decay_derivative_check, evolution_curve};
use entmix::{DenseDistribution, MixtureModel};

fn main() -> entmix::Result<()> {
    let model = MixtureModel::new(
        vec![0.5, 0.5],
        vec![
            DenseDistribution::bernoulli_product(0.2, 4)?,
            DenseDistribution::bernoulli_product(0.8, 4)?,
        ],
    )?;
    let mu = model.mixture();
    println!(
        "log(1/min mu) = {:.3}, log log(1/min mu) = {:.3}",
        (1.0 / mu.min_prob()).ln(),
        (1.0 / mu.min_prob()).ln().ln()
    );

    let argmin = mu
        .probs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap()
        .0;
    let x0 = entmix::dist::decode_config(argmin, mu.alphabet, mu.n);
    let point = DenseDistribution::point_mass(mu.alphabet, mu.n, &x0)?;
    let grid: Vec<f64> = (1..=10).map(|j| 6.0 * j as f64).collect();
    let curve = evolution_curve(&point, mu, &grid, false)?;
    println!("\nworst-case point-mass start, KL(P_t pi || mu):");
    for (t, kl) in curve.times.iter().zip(&curve.kl_nats) {
        println!("  t = {t:5.1}  KL = {kl:.6}");
    }

    let (lhs, rhs) = entropy_decay_derivative_check(&point, mu, 5.0, 1e-4)?;
    println!("\nentropy decay derivative at t = 5: d/dt KL = {lhs:.8}, -E_P(f, log f)/2 = {rhs:.8}");

    let summary = warm_start_mixing(&model, 80, &grid, 20, 0.1, 10.0, 42)?;
    println!(
        "\nwarm starts (m = 80 samples, 20 trials): fraction below eps = {:.2}, contraction inequality held: {}",
        summary.fraction_below_eps, summary.all_inequalities_held
    );
    Ok(())
}
