//! Dense distributions over Σⁿ, configuration encoding, conditional slices,
//! and the balance machinery.

use crate::error::{EntmixError, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Dense operations refuse state spaces larger than this many configurations.
pub const STATE_SPACE_CAP: u64 = 1 << 20;

/// Absolute tolerance for simplex validation.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// A finite alphabet Σ = {0, 1, ..., size−1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(EntmixError::InvalidConfig(format!(
                "alphabet size must be at least 2, got {size}"
            )));
        }
        Ok(Alphabet { size })
    }
}

/// A configuration x ∈ Σⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub symbols: Vec<u8>,
}

impl Config {
    pub fn new(symbols: Vec<u8>) -> Self {
        Config { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Big-endian mixed-radix encoding: index = Σ_i x_i · q^(n−1−i).
pub fn encode_config(x: &Config, alphabet: Alphabet) -> Result<usize> {
    let q = alphabet.size;
    if x.is_empty() {
        return Err(EntmixError::InvalidConfig("empty configuration".into()));
    }
    let mut idx = 0usize;
    for &s in &x.symbols {
        if (s as usize) >= q {
            return Err(EntmixError::InvalidConfig(format!(
                "symbol {s} out of range for alphabet size {q}"
            )));
        }
        idx = idx * q + s as usize;
    }
    Ok(idx)
}

/// Inverse of [`encode_config`] for a given length n.
pub fn decode_config(mut index: usize, alphabet: Alphabet, n: usize) -> Config {
    let q = alphabet.size;
    let mut symbols = vec![0u8; n];
    for i in (0..n).rev() {
        symbols[i] = (index % q) as u8;
        index /= q;
    }
    Config { symbols }
}

/// An explicit probability table over Σⁿ in big-endian index order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseDistribution {
    pub alphabet: Alphabet,
    pub n: usize,
    pub probs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct DistJson {
    q: usize,
    n: usize,
    probs: Vec<f64>,
}

impl DenseDistribution {
    pub fn new(alphabet: Alphabet, n: usize, probs: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(EntmixError::InvalidDistribution("n must be >= 1".into()));
        }
        let states = (alphabet.size as u64)
            .checked_pow(n as u32)
            .unwrap_or(u64::MAX);
        if states > STATE_SPACE_CAP {
            return Err(EntmixError::StateSpaceTooLarge {
                states,
                cap: STATE_SPACE_CAP,
            });
        }
        if probs.len() as u64 != states {
            return Err(EntmixError::InvalidDistribution(format!(
                "expected {} entries, got {}",
                states,
                probs.len()
            )));
        }
        if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(EntmixError::InvalidDistribution(
                "probabilities must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(EntmixError::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(DenseDistribution { alphabet, n, probs })
    }

    /// Normalizes arbitrary nonnegative weights into a distribution.
    pub fn from_weights(alphabet: Alphabet, n: usize, weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(EntmixError::InvalidDistribution(
                "weights must have positive finite sum".into(),
            ));
        }
        let probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
        DenseDistribution::new(alphabet, n, probs)
    }

    pub fn uniform(alphabet: Alphabet, n: usize) -> Result<Self> {
        let states = (alphabet.size as u64).pow(n as u32);
        if states > STATE_SPACE_CAP {
            return Err(EntmixError::StateSpaceTooLarge {
                states,
                cap: STATE_SPACE_CAP,
            });
        }
        let p = 1.0 / states as f64;
        DenseDistribution::new(alphabet, n, vec![p; states as usize])
    }

    pub fn point_mass(alphabet: Alphabet, n: usize, at: &Config) -> Result<Self> {
        let states = (alphabet.size as u64).pow(n as u32) as usize;
        let mut probs = vec![0.0; states];
        probs[encode_config(at, alphabet)?] = 1.0;
        DenseDistribution::new(alphabet, n, probs)
    }

    /// Product distribution with the given per-coordinate marginals.
    pub fn product(alphabet: Alphabet, marginals: &[Vec<f64>]) -> Result<Self> {
        let q = alphabet.size;
        let n = marginals.len();
        for m in marginals {
            if m.len() != q {
                return Err(EntmixError::InvalidDistribution(
                    "marginal length must equal alphabet size".into(),
                ));
            }
        }
        let states = (q as u64).pow(n as u32) as usize;
        let mut weights = vec![1.0; states];
        for (idx, w) in weights.iter_mut().enumerate() {
            let x = decode_config(idx, alphabet, n);
            for (i, &s) in x.symbols.iter().enumerate() {
                *w *= marginals[i][s as usize];
            }
        }
        DenseDistribution::from_weights(alphabet, n, weights)
    }

    /// Product of n Bernoulli(p) coordinates over {0,1}: P(x_i = 1) = p.
    pub fn bernoulli_product(p: f64, n: usize) -> Result<Self> {
        let alphabet = Alphabet::new(2)?;
        DenseDistribution::product(alphabet, &vec![vec![1.0 - p, p]; n])
    }

    /// Random fully supported distribution, for test instances.
    pub fn random_full_support<R: Rng>(alphabet: Alphabet, n: usize, rng: &mut R) -> Result<Self> {
        let states = (alphabet.size as u64).pow(n as u32) as usize;
        let weights: Vec<f64> = (0..states).map(|_| 0.05 + rng.gen::<f64>()).collect();
        DenseDistribution::from_weights(alphabet, n, weights)
    }

    pub fn num_states(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, x: &Config) -> Result<f64> {
        Ok(self.probs[encode_config(x, self.alphabet)?])
    }

    pub fn is_fully_supported(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn same_shape(&self, other: &DenseDistribution) -> bool {
        self.alphabet == other.alphabet && self.n == other.n
    }

    /// Total variation distance to another distribution of the same shape.
    pub fn tv_distance(&self, other: &DenseDistribution) -> f64 {
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DistJson {
            q: self.alphabet.size,
            n: self.n,
            probs: self.probs.clone(),
        })
        .expect("distribution serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: DistJson = serde_json::from_str(s)?;
        DenseDistribution::new(Alphabet::new(d.q)?, d.n, d.probs)
    }
}

/// Iterator support for single-coordinate slices.
///
/// A slice at coordinate i is the set of q states that agree on all other
/// coordinates; `stride` is the index step between consecutive symbols at i.
pub struct SliceWalker {
    pub stride: usize,
    outer: usize,
    inner: usize,
    block: usize,
    hi: usize,
    lo: usize,
}

impl SliceWalker {
    /// Walks the base indices (symbol 0 at coordinate i) of all q^(n−1)
    /// slices for coordinate i.
    pub fn new(q: usize, n: usize, i: usize) -> Self {
        let stride = q.pow((n - 1 - i) as u32);
        let block = stride * q;
        let states = q.pow(n as u32);
        SliceWalker {
            stride,
            outer: states / block,
            inner: stride,
            block,
            hi: 0,
            lo: 0,
        }
    }
}

impl Iterator for SliceWalker {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.hi >= self.outer {
            return None;
        }
        let base = self.hi * self.block + self.lo;
        self.lo += 1;
        if self.lo >= self.inner {
            self.lo = 0;
            self.hi += 1;
        }
        Some(base)
    }
}

/// Base index (symbol 0 at coordinate i) of the slice containing `idx`.
pub fn slice_base(idx: usize, stride: usize, q: usize) -> usize {
    idx - ((idx / stride) % q) * stride
}

/// The conditional law μ|x∖i as an explicit table over Σ.
#[derive(Debug, Clone)]
pub struct ConditionalSlice {
    pub base: Config,
    pub coordinate: usize,
    pub law: Vec<f64>,
}

/// Computes the conditional law of coordinate i given the rest of x.
pub fn conditional_slice(mu: &DenseDistribution, x: &Config, i: usize) -> Result<ConditionalSlice> {
    let q = mu.alphabet.size;
    let idx = encode_config(x, mu.alphabet)?;
    let stride = q.pow((mu.n - 1 - i) as u32);
    let base = slice_base(idx, stride, q);
    let mut law: Vec<f64> = (0..q).map(|b| mu.probs[base + b * stride]).collect();
    let mass: f64 = law.iter().sum();
    if mass <= 0.0 {
        return Err(EntmixError::UnsupportedSlice { coordinate: i });
    }
    for l in law.iter_mut() {
        *l /= mass;
    }
    Ok(ConditionalSlice {
        base: x.clone(),
        coordinate: i,
        law,
    })
}

/// Minimum conditional probability η over all (x, i, b).
///
/// Returns η = 0 when some slice has zero mass (the distribution is then not
/// η-balanced for any positive η).
pub fn balance(mu: &DenseDistribution) -> f64 {
    let q = mu.alphabet.size;
    let mut eta = f64::INFINITY;
    for i in 0..mu.n {
        let walker = SliceWalker::new(q, mu.n, i);
        let stride = walker.stride;
        for base in walker {
            let mut mass = 0.0;
            let mut min_entry = f64::INFINITY;
            for b in 0..q {
                let p = mu.probs[base + b * stride];
                mass += p;
                min_entry = min_entry.min(p);
            }
            if mass <= 0.0 {
                return 0.0;
            }
            eta = eta.min(min_entry / mass);
        }
    }
    eta
}

/// Checks the fact min_x μ(x) ≥ ηⁿ for fully supported μ.
pub fn min_prob_lower_bound_check(mu: &DenseDistribution) -> bool {
    let eta = balance(mu);
    mu.min_prob() >= eta.powi(mu.n as i32) - 1e-12
}

/// A nonnegative test function f : Σⁿ → R≥0, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFunction {
    pub values: Vec<f64>,
}

impl DensityFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(EntmixError::InvalidDensity(
                "density values must be finite and nonnegative".into(),
            ));
        }
        Ok(DensityFunction { values })
    }

    pub fn constant(c: f64, states: usize) -> Result<Self> {
        DensityFunction::new(vec![c; states])
    }

    /// The density π/μ; requires μ fully supported.
    pub fn ratio(pi: &DenseDistribution, mu: &DenseDistribution) -> Result<Self> {
        if !pi.same_shape(mu) {
            return Err(EntmixError::InvalidDensity(
                "distributions must share alphabet and dimension".into(),
            ));
        }
        if !mu.is_fully_supported() {
            return Err(EntmixError::InvalidDensity(
                "reference distribution must be fully supported".into(),
            ));
        }
        DensityFunction::new(pi.probs.iter().zip(&mu.probs).map(|(p, m)| p / m).collect())
    }

    pub fn random_positive<R: Rng>(states: usize, rng: &mut R) -> Self {
        DensityFunction {
            values: (0..states).map(|_| 0.05 + 2.0 * rng.gen::<f64>()).collect(),
        }
    }
}

/// Inverse-CDF sampler over a dense table, O(log N) per draw.
pub struct CumulativeSampler {
    cum: Vec<f64>,
}

impl CumulativeSampler {
    pub fn new(probs: &[f64]) -> Self {
        let mut cum = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in probs {
            acc += p;
            cum.push(acc);
        }
        CumulativeSampler { cum }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen::<f64>() * self.cum[self.cum.len() - 1];
        let k = self.cum.partition_point(|&c| c <= u);
        k.min(self.cum.len() - 1)
    }
}

/// Linear-scan draw from a short law (conditional slices, mixture weights).
pub fn sample_from_law<R: Rng>(law: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (b, &p) in law.iter().enumerate() {
        acc += p;
        if u < acc {
            return b;
        }
    }
    law.len() - 1
}
