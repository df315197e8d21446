//! Sample-access oracles over a sealed unknown distribution: unconditioned
//! draws, single-coordinate conditional draws, a Glauber-backed simulation of
//! conditional access, and call budgeting.

use crate::dist::{decode_config, encode_config, Config, CumulativeSampler, DenseDistribution};
use crate::error::{EntmixError, Result};
use crate::seed::trial_rng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A hard cap on oracle calls, enforced at call sites.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub limit: u64,
    pub consumed: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, consumed: 0 }
    }

    pub fn consume(&mut self, amount: u64) -> Result<()> {
        if self.consumed + amount > self.limit {
            Err(EntmixError::BudgetExhausted { limit: self.limit })
        } else {
            self.consumed += amount;
            Ok(())
        }
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.consumed
    }
}

#[derive(Debug, Serialize)]
pub struct OracleCounters {
    pub general_calls: u64,
    pub coordinate_calls: u64,
}

/// Sample access to an unknown distribution π.
///
/// The distribution is sealed: the public API exposes samples and call
/// counters, never the probability table. Conditional laws are precomputed
/// per (coordinate, state) so the hot sampling path is one uniform draw and
/// a short scan.
pub struct OracleHandle {
    pi: DenseDistribution,
    sampler: CumulativeSampler,
    /// Cumulative conditional laws, laid out [(i·states + idx)·q ..][q].
    /// A NaN in the first entry marks a zero-mass slice.
    slice_cum: Vec<f64>,
    rng: ChaCha8Rng,
    n: usize,
    q: usize,
    general_calls: u64,
    coordinate_calls: u64,
    /// Whether the backend can report which site an update resamples,
    /// the assumption the Glauber-backed mode relies on.
    pub reports_resampled_site: bool,
}

impl OracleHandle {
    pub fn new(pi: DenseDistribution, seed: u64) -> Self {
        let n = pi.n;
        let q = pi.alphabet.size;
        let states = pi.num_states();
        let sampler = CumulativeSampler::new(&pi.probs);
        let mut slice_cum = vec![0.0; n * states * q];
        for i in 0..n {
            let stride = q.pow((n - 1 - i) as u32);
            for idx in 0..states {
                let base = crate::dist::slice_base(idx, stride, q);
                let mass: f64 = (0..q).map(|b| pi.probs[base + b * stride]).sum();
                let row = (i * states + idx) * q;
                if mass <= 0.0 {
                    slice_cum[row] = f64::NAN;
                    continue;
                }
                let mut acc = 0.0;
                for b in 0..q {
                    acc += pi.probs[base + b * stride] / mass;
                    slice_cum[row + b] = acc;
                }
            }
        }
        OracleHandle {
            pi,
            sampler,
            slice_cum,
            rng: trial_rng(seed, 0x0c, 0),
            n,
            q,
            general_calls: 0,
            coordinate_calls: 0,
            reports_resampled_site: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.q
    }

    /// One draw x ∼ π.
    pub fn general_sample(&mut self) -> Config {
        let idx = self.general_sample_index();
        decode_config(idx, self.pi.alphabet, self.n)
    }

    /// One draw x ∼ π as an encoded state index.
    pub fn general_sample_index(&mut self) -> usize {
        self.general_calls += 1;
        self.sampler.sample(&mut self.rng)
    }

    /// One draw from the conditional law π|x∖i.
    pub fn coordinate_sample(&mut self, x: &Config, i: usize) -> Result<u8> {
        let idx = encode_config(x, self.pi.alphabet)?;
        self.coordinate_sample_index(idx, i)
    }

    /// Conditional draw addressed by encoded state index.
    pub fn coordinate_sample_index(&mut self, idx: usize, i: usize) -> Result<u8> {
        self.coordinate_calls += 1;
        let row = (i * self.pi.num_states() + idx) * self.q;
        let cum = &self.slice_cum[row..row + self.q];
        if cum[0].is_nan() {
            return Err(EntmixError::UnsupportedSlice { coordinate: i });
        }
        let u: f64 = self.rng.gen();
        for (b, &c) in cum.iter().enumerate() {
            if u < c {
                return Ok(b as u8);
            }
        }
        Ok((self.q - 1) as u8)
    }

    /// Conditional draw that also charges a budget.
    pub fn coordinate_sample_budgeted(
        &mut self,
        idx: usize,
        i: usize,
        budget: &mut Budget,
    ) -> Result<u8> {
        budget.consume(1)?;
        self.coordinate_sample_index(idx, i)
    }

    /// Simulates the conditional draw via Glauber updates: reinitialize to x,
    /// run single updates, discard resamples at sites other than i, return
    /// the first resample at site i. Expected attempts: n.
    pub fn glauber_backed_coordinate_sample(&mut self, x: &Config, i: usize) -> Result<(u8, u64)> {
        let idx = encode_config(x, self.pi.alphabet)?;
        self.coordinate_calls += 1;
        let cap = 100 * self.n as u64;
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > cap {
                return Err(EntmixError::OracleTimeout { attempts });
            }
            let site = self.rng.gen_range(0..self.n);
            if site != i {
                continue;
            }
            let row = (i * self.pi.num_states() + idx) * self.q;
            let cum = &self.slice_cum[row..row + self.q];
            if cum[0].is_nan() {
                return Err(EntmixError::UnsupportedSlice { coordinate: i });
            }
            let u: f64 = self.rng.gen();
            for (b, &c) in cum.iter().enumerate() {
                if u < c {
                    return Ok((b as u8, attempts));
                }
            }
            return Ok(((self.q - 1) as u8, attempts));
        }
    }

    pub fn counters(&self) -> OracleCounters {
        OracleCounters {
            general_calls: self.general_calls,
            coordinate_calls: self.coordinate_calls,
        }
    }

    pub fn counters_json(&self) -> String {
        serde_json::to_string(&self.counters()).expect("counter serialization cannot fail")
    }
}

/// A set of (x, i) pairs drawn before any conditional testing happens; the
/// local-testing step conditions only at listed pairs.
#[derive(Debug, Clone)]
pub struct RestrictedPairSet {
    pub pairs: Vec<(usize, usize)>,
}

impl RestrictedPairSet {
    /// Pre-draws `count` pairs with x ∼ π (general oracle) and i uniform.
    pub fn draw(handle: &mut OracleHandle, count: usize) -> Self {
        let n = handle.n();
        let pairs = (0..count)
            .map(|_| {
                let x = handle.general_sample_index();
                let i = handle.rng.gen_range(0..n);
                (x, i)
            })
            .collect();
        RestrictedPairSet { pairs }
    }
}
