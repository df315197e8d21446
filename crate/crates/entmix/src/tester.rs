//! Base identity testers on small alphabets: a χ²-statistic Hellinger
//! distinguisher and its KL wrapper.
//!
//! Calibrated constants are frozen here. `C_H` and `TAU` were fixed by Monte
//! Carlo calibration over a family of (uniform, point-heavy, two-bump)
//! instances at d ∈ {2, 10, 100} so that the accept case χ²(p‖q) ≤ eps/2 and
//! the reject case H²(p‖q) ≥ eps are separated with per-repetition error at
//! most 0.1; `C_R` controls the majority amplification.

use crate::entropy::{hellinger_sq_tables, kl_tables};
use crate::error::{EntmixError, Result};
use serde::Serialize;

/// Samples per repetition: m = ceil(C_H·√d/eps).
pub const C_H: f64 = 64.0;

/// Acceptance threshold coefficient: a repetition accepts iff Z ≤ τ·m²·eps.
pub const TAU: f64 = 0.9;

/// Repetitions: r = ceil(C_R·ln(1/δ)).
pub const C_R: f64 = 2.0;

/// The KL wrapper's sample-complexity constant; equal to `C_H` so budgets
/// are computed from the same value the tester spends.
pub const C_KL_TEST: f64 = C_H;

/// A known reference distribution with testing parameters.
#[derive(Debug, Clone)]
pub struct TesterSpec {
    pub q: Vec<f64>,
    pub eta_q: f64,
    pub eps: f64,
    pub delta: f64,
}

impl TesterSpec {
    pub fn new(q: Vec<f64>, eps: f64, delta: f64) -> Result<Self> {
        if q.len() < 2 {
            return Err(EntmixError::InvalidSpec("domain size must be >= 2".into()));
        }
        let eta_q = q.iter().cloned().fold(f64::INFINITY, f64::min);
        if eta_q <= 0.0 {
            return Err(EntmixError::InvalidSpec(
                "reference distribution must be fully supported".into(),
            ));
        }
        if eps <= 0.0 {
            return Err(EntmixError::InvalidSpec("eps must be positive".into()));
        }
        if delta <= 0.0 || delta >= 0.5 {
            return Err(EntmixError::InvalidSpec("delta must lie in (0, 1/2)".into()));
        }
        Ok(TesterSpec {
            q,
            eta_q,
            eps,
            delta,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, Serialize)]
pub struct TestVerdict {
    pub verdict: Verdict,
    pub samples_used: u64,
    #[serde(skip)]
    pub statistics: Vec<f64>,
}

impl TestVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serialization cannot fail")
    }
}

/// Samples per repetition of the Hellinger distinguisher.
pub fn h2_samples_per_repetition(d: usize, eps: f64) -> u64 {
    (C_H * (d as f64).sqrt() / eps).ceil() as u64
}

/// Repetition count for failure probability delta.
pub fn repetitions(delta: f64) -> u64 {
    (C_R * (1.0 / delta).ln()).ceil().max(1.0) as u64
}

/// Total samples drawn by [`h2_test`].
pub fn h2_sample_count(d: usize, eps: f64, delta: f64) -> u64 {
    h2_samples_per_repetition(d, eps) * repetitions(delta)
}

/// Total samples drawn by [`kl_test`] for a reference with min probability
/// eta_q: the Hellinger tester at eps′ = eps/ln(e²/eta_q).
pub fn kl_test_sample_count(d: usize, eta_q: f64, eps: f64, delta: f64) -> u64 {
    let eps_h = eps / (std::f64::consts::E.powi(2) / eta_q).ln();
    h2_sample_count(d, eps_h, delta)
}

/// Distinguishes χ²(p‖q) ≤ eps/2 from H²(p‖q) ≥ eps given sample access
/// to p. Per repetition draws m = ceil(C_H·√d/eps) samples, computes
/// Z = Σ_i ((N_i − m·q_i)² − N_i)/q_i (whose mean is m(m−1)·χ²(p‖q)), and
/// accepts iff Z ≤ τ·m²·eps; the verdict is a majority over
/// r = ceil(C_R·ln(1/δ)) repetitions.
pub fn h2_test(
    source: &mut dyn FnMut() -> Result<usize>,
    spec: &TesterSpec,
) -> Result<TestVerdict> {
    let d = spec.q.len();
    let m = h2_samples_per_repetition(d, spec.eps);
    let r = repetitions(spec.delta);
    let threshold = TAU * (m as f64) * (m as f64) * spec.eps;
    let mut rejections = 0u64;
    let mut statistics = Vec::with_capacity(r as usize);
    let mut samples_used = 0u64;
    let mut counts = vec![0u64; d];
    for _ in 0..r {
        counts.iter_mut().for_each(|c| *c = 0);
        for _ in 0..m {
            let s = source()?;
            if s >= d {
                return Err(EntmixError::InvalidSpec(format!(
                    "sample {s} outside domain of size {d}"
                )));
            }
            counts[s] += 1;
            samples_used += 1;
        }
        let mut z = 0.0;
        for (&n_i, &q_i) in counts.iter().zip(&spec.q) {
            let dlt = n_i as f64 - m as f64 * q_i;
            z += (dlt * dlt - n_i as f64) / q_i;
        }
        statistics.push(z);
        if z > threshold {
            rejections += 1;
        }
    }
    let verdict = if 2 * rejections > r {
        Verdict::Reject
    } else {
        Verdict::Accept
    };
    Ok(TestVerdict {
        verdict,
        samples_used,
        statistics,
    })
}

/// Identity tester with a KL guarantee: accepts when p = q, rejects when
/// KL(p‖q) ≥ eps, each with probability ≥ 1−δ. Reduces to [`h2_test`] at
/// eps′ = eps/ln(e²/eta_q) via the inequality H² ≥ KL/ln(e²/η).
pub fn kl_test(
    source: &mut dyn FnMut() -> Result<usize>,
    spec: &TesterSpec,
) -> Result<TestVerdict> {
    let eps_h = spec.eps / (std::f64::consts::E.powi(2) / spec.eta_q).ln();
    let inner = TesterSpec::new(spec.q.clone(), eps_h, spec.delta)?;
    h2_test(source, &inner)
}

/// The Hellinger–KL inequality the reduction rests on: for q with min
/// probability η, H²(p‖q) ≥ KL(p‖q)/ln(e²/η).
pub fn hellinger_kl_inequality_holds(p: &[f64], q: &[f64], tol: f64) -> bool {
    let eta = q.iter().cloned().fold(f64::INFINITY, f64::min);
    let kl = kl_tables(p, q);
    if kl.is_infinite() {
        // The bound is vacuous only if H² also saturates; KL = ∞ requires a
        // point where q = 0, excluded by fully supported q.
        return true;
    }
    let h2 = hellinger_sq_tables(p, q);
    h2 >= kl / (std::f64::consts::E.powi(2) / eta).ln() - tol
}
