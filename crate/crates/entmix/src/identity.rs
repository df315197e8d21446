//! End-to-end identity testing of a known mixture against conditional-oracle
//! access to an unknown distribution: local conditional testing under a call
//! budget, then posterior weight verification.

use crate::dist::{conditional_slice, decode_config, sample_from_law, DenseDistribution};
use crate::error::{EntmixError, Result};
use crate::mixture::MixtureModel;
use crate::oracle::{Budget, OracleHandle, RestrictedPairSet};
use crate::seed::trial_rng;
use crate::tester::{kl_test, TesterSpec, Verdict, C_KL_TEST};
use rand::Rng;
use serde::Serialize;

/// Parameters of the product-set identity test.
#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmParams {
    pub eps: f64,
    pub cstar: f64,
    pub eta: f64,
    pub n: usize,
    pub q: usize,
    /// Number of (x, i) pairs tested locally.
    pub t1: u64,
    /// Coordinate-call budget across all local sub-tests.
    pub budget: u64,
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub seed: u64,
}

impl AlgorithmParams {
    pub fn new(eps: f64, cstar: f64, eta: f64, n: usize, q: usize, seed: u64) -> Result<Self> {
        if eps <= 0.0 || cstar < 1.0 || !(0.0..1.0).contains(&eta) || eta <= 0.0 {
            return Err(EntmixError::InvalidSetup(
                "need eps > 0, cstar >= 1, eta in (0,1)".into(),
            ));
        }
        let ln_inv_eta = (1.0 / eta).ln();
        if eps > n as f64 * ln_inv_eta {
            return Err(EntmixError::InvalidSetup(format!(
                "eps = {eps} exceeds n·ln(1/eta) = {}",
                n as f64 * ln_inv_eta
            )));
        }
        let t1 = (25.0f64.ln() * cstar * n as f64 / (0.45 * eps)).ceil() as u64;
        let theta_lo = 0.05 * eps / (cstar * n as f64);
        let theta_hi = ln_inv_eta;
        if theta_lo >= theta_hi {
            return Err(EntmixError::InvalidSetup(
                "threshold interval is empty; eps too large for this balance".into(),
            ));
        }
        let budget = (100.0
            * t1 as f64
            * C_KL_TEST
            * (q as f64).sqrt()
            * ln_inv_eta
            * (20.0 * t1 as f64).ln()
            * 10.0
            * (theta_hi / theta_lo).ln())
        .ceil() as u64;
        Ok(AlgorithmParams {
            eps,
            cstar,
            eta,
            n,
            q,
            t1,
            budget,
            theta_lo,
            theta_hi,
            seed,
        })
    }
}

/// Per-pair outcome of the local testing step.
#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub x: usize,
    pub i: usize,
    pub theta: f64,
    pub rejected: bool,
    pub coordinate_calls: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepOneRecord {
    pub pairs: Vec<PairRecord>,
    pub budget: u64,
    pub budget_tripped: bool,
    pub unsupported_slice: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Step1Summary {
    pub pairs: u64,
    pub rejections: u64,
    pub coordinate_calls: u64,
    pub budget: u64,
    pub budget_tripped: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Step2Summary {
    pub verdict: Verdict,
    pub samples: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TestReport {
    pub verdict: Verdict,
    pub step1: Step1Summary,
    pub step2: Option<Step2Summary>,
    pub general_calls: u64,
}

impl TestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

fn check_setup(model: &MixtureModel, params: &AlgorithmParams) -> Result<()> {
    let mu = model.mixture();
    if mu.n != params.n || mu.alphabet.size != params.q {
        return Err(EntmixError::InvalidSetup(
            "model shape disagrees with parameters".into(),
        ));
    }
    if !mu.is_fully_supported() {
        return Err(EntmixError::InvalidSetup(
            "mixture must be fully supported".into(),
        ));
    }
    let eta = crate::dist::balance(mu);
    if eta + 1e-12 < params.eta {
        return Err(EntmixError::InvalidSetup(format!(
            "mixture balance {eta} is below the declared eta {}",
            params.eta
        )));
    }
    Ok(())
}

/// Local testing: pre-draws T1 pairs (x ∼ π, i uniform), then for each pair
/// draws a threshold θ uniform on [theta_lo, theta_hi] and runs the KL
/// tester on the conditional slice with failure probability 0.05/T1, all
/// coordinate calls charged to the shared budget. Rejects on any sub-test
/// rejection, on a budget trip, or on a conditional slice π cannot supply.
pub fn step_one_local(
    model: &MixtureModel,
    oracle: &mut OracleHandle,
    params: &AlgorithmParams,
    rng: &mut impl Rng,
) -> Result<(Verdict, StepOneRecord)> {
    check_setup(model, params)?;
    let mu = model.mixture();
    let mut budget = Budget::new(params.budget);
    let pair_set = RestrictedPairSet::draw(oracle, params.t1 as usize);
    let delta_sub = 0.05 / params.t1 as f64;
    let mut record = StepOneRecord {
        pairs: Vec::with_capacity(pair_set.pairs.len()),
        budget: params.budget,
        budget_tripped: false,
        unsupported_slice: false,
    };
    for &(x_idx, i) in &pair_set.pairs {
        let theta = rng.gen_range(params.theta_lo..params.theta_hi);
        let x = decode_config(x_idx, mu.alphabet, mu.n);
        let slice = conditional_slice(mu, &x, i)?;
        let spec = TesterSpec::new(slice.law, theta, delta_sub)?;
        let before = budget.consumed;
        let outcome = {
            let mut source = || -> Result<usize> {
                Ok(oracle.coordinate_sample_budgeted(x_idx, i, &mut budget)? as usize)
            };
            kl_test(&mut source, &spec)
        };
        let calls = budget.consumed - before;
        match outcome {
            Ok(v) => {
                let rejected = v.verdict == Verdict::Reject;
                record.pairs.push(PairRecord {
                    x: x_idx,
                    i,
                    theta,
                    rejected,
                    coordinate_calls: calls,
                });
                if rejected {
                    return Ok((Verdict::Reject, record));
                }
            }
            Err(EntmixError::BudgetExhausted { .. }) => {
                record.budget_tripped = true;
                record.pairs.push(PairRecord {
                    x: x_idx,
                    i,
                    theta,
                    rejected: true,
                    coordinate_calls: calls,
                });
                return Ok((Verdict::Reject, record));
            }
            Err(EntmixError::UnsupportedSlice { .. }) => {
                record.unsupported_slice = true;
                record.pairs.push(PairRecord {
                    x: x_idx,
                    i,
                    theta,
                    rejected: true,
                    coordinate_calls: calls,
                });
                return Ok((Verdict::Reject, record));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((Verdict::Accept, record))
}

/// Weight verification: simulates draws from the posterior label
/// distribution of π and KL-tests it against the mixture weights at
/// threshold eps/2 with failure probability 0.1.
pub fn step_two_weights(
    model: &MixtureModel,
    oracle: &mut OracleHandle,
    params: &AlgorithmParams,
    rng: &mut impl Rng,
) -> Result<Step2Summary> {
    check_setup(model, params)?;
    let spec = TesterSpec::new(model.weights.clone(), 0.5 * params.eps, 0.1)?;
    let mut samples = 0u64;
    let outcome = {
        let samples = &mut samples;
        let mut source = || -> Result<usize> {
            let x = oracle.general_sample_index();
            *samples += 1;
            let post = model.posterior_at(x)?;
            Ok(sample_from_law(&post, rng))
        };
        kl_test(&mut source, &spec)
    };
    let verdict = match outcome {
        Ok(v) => v.verdict,
        Err(EntmixError::UnsupportedPoint(_)) => Verdict::Reject,
        Err(e) => return Err(e),
    };
    Ok(Step2Summary { verdict, samples })
}

/// The full identity test: local conditional testing, then weight
/// verification; accepts only if both steps accept.
pub fn product_set_kl_test(
    model: &MixtureModel,
    oracle: &mut OracleHandle,
    params: &AlgorithmParams,
) -> Result<TestReport> {
    check_setup(model, params)?;
    let mut rng = trial_rng(params.seed, 0x1d, 0);
    let (v1, rec) = step_one_local(model, oracle, params, &mut rng)?;
    let step1 = Step1Summary {
        pairs: params.t1,
        rejections: rec.pairs.iter().filter(|p| p.rejected).count() as u64,
        coordinate_calls: rec.pairs.iter().map(|p| p.coordinate_calls).sum(),
        budget: rec.budget,
        budget_tripped: rec.budget_tripped,
    };
    if v1 == Verdict::Reject {
        return Ok(TestReport {
            verdict: Verdict::Reject,
            step1,
            step2: None,
            general_calls: oracle.counters().general_calls,
        });
    }
    let step2 = step_two_weights(model, oracle, params, &mut rng)?;
    let verdict = step2.verdict;
    Ok(TestReport {
        verdict,
        step1,
        step2: Some(step2),
        general_calls: oracle.counters().general_calls,
    })
}

/// Majority vote over 2r+1 independent runs, reducing the constant error of
/// the base test to δ at an O(log(1/δ)) factor in oracle calls.
pub fn amplified_test(
    model: &MixtureModel,
    pi: &DenseDistribution,
    params: &AlgorithmParams,
    delta: f64,
) -> Result<Verdict> {
    let r = ((1.0 / delta).ln() * 25.0).ceil() as u64;
    let runs = 2 * r + 1;
    let mut rejects = 0u64;
    for j in 0..runs {
        let mut oracle = OracleHandle::new(pi.clone(), crate::seed::splitmix64(params.seed, j + 1));
        let mut run_params = params.clone();
        run_params.seed = crate::seed::splitmix64(params.seed, 0x1000 + j);
        let report = product_set_kl_test(model, &mut oracle, &run_params)?;
        if report.verdict == Verdict::Reject {
            rejects += 1;
        }
    }
    Ok(if 2 * rejects > runs {
        Verdict::Reject
    } else {
        Verdict::Accept
    })
}
