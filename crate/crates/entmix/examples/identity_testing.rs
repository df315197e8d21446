//! Testing whether a sealed distribution lies near the KL-product set of a
//! known mixture, using only samples and coordinate-conditional samples.

use entmix::dist::balance;
use entmix::identity::{product_set_kl_test, AlgorithmParams};
use entmix::oracle::OracleHandle;
use entmix::{DenseDistribution, MixtureModel};

fn run(name: &str, model: &MixtureModel, pi: DenseDistribution, seed: u64) -> entmix::Result<()> {
    let mu = model.mixture();
    let params = AlgorithmParams::new(0.5, 1.3, balance(mu), mu.n, mu.alphabet.size, seed)?;
    let mut oracle = OracleHandle::new(pi, seed ^ 0x5eed);
    let report = product_set_kl_test(model, &mut oracle, &params)?;
    let counters = oracle.counters();
    println!(
        "{name}: verdict = {:?}, pairs tested = {}, coordinate calls = {}, general calls = {}",
        report.verdict,
        report.step1.pairs,
        counters.coordinate_calls,
        counters.general_calls
    );
    Ok(())
}

fn main() -> entmix::Result<()> {
    let model = MixtureModel::new(
        vec![0.5, 0.5],
        vec![
            DenseDistribution::bernoulli_product(0.2, 3)?,
            DenseDistribution::bernoulli_product(0.8, 3)?,
        ],
    )?;

    // Completeness: the hidden distribution is the mixture itself.
    run("pi = mu (expect accept)", &model, model.mixture().clone(), 21)?;

    // Soundness against a weight skew: same conditionals, wrong label law.
    let skewed = MixtureModel::new(
        vec![0.97, 0.03],
        model.components.clone(),
    )?;
    run("pi = skewed weights (expect reject)", &model, skewed.mixture().clone(), 22)?;
    Ok(())
}
