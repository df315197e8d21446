//! Randomized invariants: divergence structure, chain-rule exactness,
//! balance facts, tester inequalities, and serialization round-trips.

use entmix::dist::{balance, decode_config, encode_config, Alphabet};
use entmix::entropy::{
    conditional_flip_sum, hellinger_sq_tables, kl_divergence, kl_tables, local_entropy_functional,
    phi_entropy,
};
use entmix::mixture::chain_rule_decompose;
use entmix::tester::hellinger_kl_inequality_holds;
use entmix::{DenseDistribution, DensityFunction, MixtureModel, PhiFunctional};
use proptest::prelude::*;

fn dist_strategy(q: usize, n: usize) -> impl Strategy<Value = DenseDistribution> {
    let states = q.pow(n as u32);
    prop::collection::vec(1e-3..1.0f64, states).prop_map(move |w| {
        DenseDistribution::from_weights(Alphabet::new(q).unwrap(), n, w).unwrap()
    })
}

fn table_strategy(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3..1.0f64, d).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    })
}

fn density_strategy(states: usize) -> impl Strategy<Value = DensityFunction> {
    prop::collection::vec(1e-6..10.0f64, states)
        .prop_map(|v| DensityFunction::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_rule_is_exact(
        c0 in dist_strategy(2, 3),
        c1 in dist_strategy(2, 3),
        w in 0.05..0.95f64,
        f in density_strategy(8),
    ) {
        let model = MixtureModel::new(vec![w, 1.0 - w], vec![c0, c1]).unwrap();
        for phi in [PhiFunctional::ULogU, PhiFunctional::USquared] {
            let (inter, intra, total) = chain_rule_decompose(&model, &f, phi).unwrap();
            prop_assert!((inter + intra - total).abs() <= 1e-10 * (1.0 + total.abs()));
            prop_assert!(inter >= -1e-12);
            prop_assert!(intra >= -1e-12);
        }
    }

    #[test]
    fn flip_sum_equals_local_entropy(
        pi in dist_strategy(3, 2),
        mu in dist_strategy(3, 2),
    ) {
        let flip = conditional_flip_sum(&pi, &mu).unwrap();
        let local = local_entropy_functional(&mu, &DensityFunction::ratio(&pi, &mu).unwrap()).unwrap();
        prop_assert!((flip - local).abs() <= 1e-10 * (1.0 + local.abs()));
    }

    #[test]
    fn phi_entropy_nonnegative_and_homogeneous(
        mu in dist_strategy(2, 3),
        f in density_strategy(8),
        alpha in 0.0..20.0f64,
    ) {
        let base = phi_entropy(&mu, &f, PhiFunctional::ULogU).unwrap();
        prop_assert!(base >= -1e-12);
        let scaled = DensityFunction::new(f.values.iter().map(|v| alpha * v).collect()).unwrap();
        let ent = phi_entropy(&mu, &scaled, PhiFunctional::ULogU).unwrap();
        prop_assert!((ent - alpha * base).abs() <= 1e-9 * (1.0 + alpha * base.abs()));
    }

    #[test]
    fn balance_lower_bounds_min_prob(mu in dist_strategy(2, 4)) {
        let eta = balance(&mu);
        prop_assert!(eta > 0.0 && eta <= 0.5 + 1e-12);
        prop_assert!(mu.min_prob() >= eta.powi(4) - 1e-15);
        prop_assert!(entmix::dist::min_prob_lower_bound_check(&mu));
    }

    #[test]
    fn kl_zero_iff_equal(mu in dist_strategy(2, 3)) {
        prop_assert_eq!(kl_divergence(&mu, &mu), 0.0);
        let mut other = mu.probs.clone();
        other[0] *= 1.5;
        let nu = DenseDistribution::from_weights(mu.alphabet, mu.n, other).unwrap();
        prop_assert!(kl_divergence(&nu, &mu) > 0.0);
    }

    #[test]
    fn hellinger_dominates_scaled_kl(p in table_strategy(6), q in table_strategy(6)) {
        prop_assert!(hellinger_kl_inequality_holds(&p, &q, 1e-12));
        prop_assert!(hellinger_sq_tables(&p, &q) <= 1.0 + 1e-12);
        prop_assert!(kl_tables(&p, &q) >= -1e-12);
    }

    #[test]
    fn encode_decode_roundtrip(idx in 0usize..81) {
        let a = Alphabet::new(3).unwrap();
        let x = decode_config(idx, a, 4);
        prop_assert_eq!(encode_config(&x, a).unwrap(), idx);
    }

    #[test]
    fn distribution_json_roundtrip(mu in dist_strategy(2, 3)) {
        let back = DenseDistribution::from_json(&mu.to_json()).unwrap();
        prop_assert!(mu.tv_distance(&back) <= 1e-15);
    }

    #[test]
    fn mixture_json_roundtrip(
        c0 in dist_strategy(2, 2),
        c1 in dist_strategy(2, 2),
        w in 0.1..0.9f64,
    ) {
        let model = MixtureModel::new(vec![w, 1.0 - w], vec![c0, c1]).unwrap();
        let back = MixtureModel::from_json(&model.to_json()).unwrap();
        prop_assert!(model.mixture().tv_distance(back.mixture()) <= 1e-15);
        prop_assert_eq!(back.k(), 2);
    }

    #[test]
    fn posterior_rows_normalized(
        c0 in dist_strategy(2, 3),
        c1 in dist_strategy(2, 3),
        idx in 0usize..8,
    ) {
        let model = MixtureModel::new(vec![0.3, 0.7], vec![c0, c1]).unwrap();
        let post = model.posterior_at(idx).unwrap();
        let s: f64 = post.iter().sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
        prop_assert!(post.iter().all(|&p| p >= 0.0));
    }
}
