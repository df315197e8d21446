//! Divergence bookkeeping on a small mixture: chain-rule decomposition of
//! Φ-entropy into label and conditional parts, the conditional-flip
//! identity, and balance diagnostics.

use entmix::dist::balance;
use entmix::entropy::{
    chi_sq_divergence, conditional_flip_sum, hellinger_sq, kl_divergence, kl_tables,
    local_entropy_functional,
};
use entmix::mixture::chain_rule_decompose;
use entmix::{DenseDistribution, DensityFunction, MixtureModel, PhiFunctional};

fn main() -> entmix::Result<()> {
    let model = MixtureModel::new(
        vec![0.4, 0.6],
        vec![
            DenseDistribution::bernoulli_product(0.15, 4)?,
            DenseDistribution::bernoulli_product(0.85, 4)?,
        ],
    )?;
    let mu = model.mixture();
    println!("mixture on {{0,1}}^4, k = {}", model.k());
    println!("balance eta       = {:.6}", balance(mu));
    println!("min probability   = {:.6e}", mu.min_prob());

    let pi = DenseDistribution::bernoulli_product(0.5, 4)?;
    println!("\npi = uniform product, mu = bimodal mixture:");
    println!("  KL(pi || mu)   = {:.6} nats", kl_divergence(&pi, mu));
    println!("  chi^2(pi || mu) = {:.6}", chi_sq_divergence(&pi, mu));
    println!("  H^2(pi || mu)  = {:.6}", hellinger_sq(&pi, mu));

    let f = DensityFunction::ratio(&pi, mu)?;
    for phi in [PhiFunctional::ULogU, PhiFunctional::USquared] {
        let (inter, intra, total) = chain_rule_decompose(&model, &f, phi)?;
        println!(
            "\nchain rule ({phi:?}): inter {inter:.6} + intra {intra:.6} = {:.6} (total {total:.6})",
            inter + intra
        );
    }

    let flip = conditional_flip_sum(&pi, mu)?;
    let local = local_entropy_functional(mu, &f)?;
    println!("\nconditional-flip sum  = {flip:.10}");
    println!("local entropy of pi/mu = {local:.10}");
    println!("identity gap           = {:.2e}", (flip - local).abs());

    let rho_pi = model.rho_of(&pi)?;
    let (inter, _, _) = chain_rule_decompose(&model, &f, PhiFunctional::ULogU)?;
    println!(
        "\nlabel divergence KL(rho_pi || rho) = {:.10} (inter term {inter:.10})",
        kl_tables(&rho_pi, &model.weights)
    );
    Ok(())
}
