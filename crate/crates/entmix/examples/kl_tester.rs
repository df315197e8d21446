//! Sample-efficient identity testing of a label distribution: the
//! chi-square core statistic distinguishes chi^2 <= eps/2 from H^2 >= eps,
//! and a Hellinger-to-KL reduction upgrades it to a KL guarantee.

use entmix::dist::{sample_from_law, CumulativeSampler};
use entmix::entropy::kl_tables;
use entmix::seed::trial_rng;
use entmix::tester::{h2_test, kl_test, kl_test_sample_count, TesterSpec, Verdict};

fn run(name: &str, p: &[f64], q: &[f64], eps: f64, delta: f64, seed: u64) -> entmix::Result<()> {
    let spec = TesterSpec::new(q.to_vec(), eps, delta)?;
    let sampler = CumulativeSampler::new(p);
    let mut rng = trial_rng(seed, 0x2b, 0);
    let mut source = || Ok(sampler.sample(&mut rng));
    let verdict = kl_test(&mut source, &spec)?;
    println!(
        "{name}: KL(p||q) = {:.4}, verdict = {:?}, samples = {}",
        kl_tables(p, q),
        verdict.verdict,
        verdict.samples_used
    );
    Ok(())
}

fn main() -> entmix::Result<()> {
    let q = vec![0.7, 0.3];
    println!(
        "planned sample count for d=2, eta=0.3, eps=0.3, delta=0.1: {}",
        kl_test_sample_count(2, 0.3, 0.3, 0.1)
    );
    run("identical     ", &q.clone(), &q, 0.3, 0.1, 7)?;
    run("far (KL ~ 1.2)", &[0.08, 0.92], &q, 0.3, 0.1, 8)?;

    // The raw Hellinger tester on a 10-symbol uniform reference.
    let u = vec![0.1; 10];
    let spec = TesterSpec::new(u.clone(), 0.2, 0.1)?;
    let mut rng = trial_rng(9, 0x33, 0);
    let mut source = || Ok(sample_from_law(&u, &mut rng));
    let v = h2_test(&mut source, &spec)?;
    assert_eq!(v.verdict, Verdict::Accept);
    println!("uniform(10) self-test: {:?}, samples = {}", v.verdict, v.samples_used);
    Ok(())
}
