//! The sampling oracle: general samples, exact coordinate-conditional
//! samples, the Glauber-backed rejection backend, and budget enforcement.

use entmix::oracle::{Budget, OracleHandle, RestrictedPairSet};
use entmix::{DenseDistribution, EntmixError};

fn main() -> entmix::Result<()> {
    let pi = DenseDistribution::bernoulli_product(0.3, 4)?;
    let mut oracle = OracleHandle::new(pi, 77);

    let x = oracle.general_sample();
    println!("general sample: {:?}", x.symbols);

    let b = oracle.coordinate_sample(&x, 2)?;
    println!("exact conditional resample of coordinate 2: {b}");

    let mut ones = 0u64;
    let mut attempts_total = 0u64;
    let draws = 2000;
    for _ in 0..draws {
        let (s, attempts) = oracle.glauber_backed_coordinate_sample(&x, 2)?;
        ones += s as u64;
        attempts_total += attempts;
    }
    println!(
        "glauber-backed backend over {draws} draws: mean value {:.3} (law says 0.300), mean attempts {:.2} (geometric, mean n = 4)",
        ones as f64 / draws as f64,
        attempts_total as f64 / draws as f64
    );

    let mut budget = Budget::new(3);
    let idx = entmix::dist::encode_config(&x, entmix::dist::Alphabet::new(2)?)?;
    for j in 0..5 {
        match oracle.coordinate_sample_budgeted(idx, 0, &mut budget) {
            Ok(s) => println!("budgeted call {j}: drew {s} ({} remaining)", budget.remaining()),
            Err(EntmixError::BudgetExhausted { limit }) => {
                println!("budgeted call {j}: refused, budget of {limit} exhausted");
            }
            Err(e) => return Err(e),
        }
    }

    let pairs = RestrictedPairSet::draw(&mut oracle, 4);
    println!("pre-registered (sample, coordinate) pairs: {:?}", pairs.pairs);
    println!("counters: {}", oracle.counters_json());
    Ok(())
}
