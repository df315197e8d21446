//! Glauber dynamics: transition structure, discrete steps, exact
//! continuous-time evolution, and Dirichlet forms.

use crate::dist::{
    conditional_slice, sample_from_law, Config, DenseDistribution, DensityFunction,
    SliceWalker,
};
use crate::error::{EntmixError, Result};
use crate::phi::PhiFunctional;
use rand::Rng;

/// Dense matrices are only materialized for state spaces up to this size;
/// evolution never needs the matrix and works at the full dense cap.
pub const MATRIX_CAP: usize = 1 << 12;

/// Dense row-stochastic transition matrix of the Glauber chain for μ.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub dim: usize,
    /// Row-major entries P(x, y).
    pub entries: Vec<f64>,
    pub stationary: DenseDistribution,
}

impl TransitionMatrix {
    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.entries[x * self.dim + y]
    }
}

/// Builds the Glauber transition matrix: pick a uniform coordinate, resample
/// it from the conditional law. P(x,y) = (1/n)·μ|x∖i(y_i) for single-site
/// moves; self-loops accumulate on the diagonal.
pub fn transition_matrix(mu: &DenseDistribution) -> Result<TransitionMatrix> {
    let dim = mu.num_states();
    if dim > MATRIX_CAP {
        return Err(EntmixError::StateSpaceTooLarge {
            states: dim as u64,
            cap: MATRIX_CAP as u64,
        });
    }
    let q = mu.alphabet.size;
    let n = mu.n;
    let mut entries = vec![0.0; dim * dim];
    for i in 0..n {
        let walker = SliceWalker::new(q, n, i);
        let stride = walker.stride;
        for base in walker {
            let mass: f64 = (0..q).map(|b| mu.probs[base + b * stride]).sum();
            if mass <= 0.0 {
                return Err(EntmixError::UnsupportedSlice { coordinate: i });
            }
            for b in 0..q {
                let row = base + b * stride;
                for c in 0..q {
                    let col = base + c * stride;
                    entries[row * dim + col] += mu.probs[col] / mass / n as f64;
                }
            }
        }
    }
    Ok(TransitionMatrix {
        dim,
        entries,
        stationary: mu.clone(),
    })
}

/// Applies one discrete Glauber kernel to a probability vector: out = vP.
pub fn apply_glauber_kernel(mu: &DenseDistribution, v: &[f64]) -> Vec<f64> {
    let q = mu.alphabet.size;
    let n = mu.n;
    let mut out = vec![0.0; v.len()];
    for i in 0..n {
        let walker = SliceWalker::new(q, n, i);
        let stride = walker.stride;
        for base in walker {
            let mut mass = 0.0;
            let mut vmass = 0.0;
            for b in 0..q {
                let idx = base + b * stride;
                mass += mu.probs[idx];
                vmass += v[idx];
            }
            if mass <= 0.0 {
                continue;
            }
            for b in 0..q {
                let idx = base + b * stride;
                out[idx] += mu.probs[idx] / mass * vmass;
            }
        }
    }
    let inv_n = 1.0 / n as f64;
    for o in out.iter_mut() {
        *o *= inv_n;
    }
    out
}

/// Access to single-coordinate conditional laws, exact or simulated.
pub trait ConditionalSampler {
    fn sample_coordinate<R: Rng>(&self, x: &Config, i: usize, rng: &mut R) -> Result<u8>;
}

/// Exact conditional sampling from a dense table.
pub struct ExactConditional<'a> {
    pub mu: &'a DenseDistribution,
}

impl ConditionalSampler for ExactConditional<'_> {
    fn sample_coordinate<R: Rng>(&self, x: &Config, i: usize, rng: &mut R) -> Result<u8> {
        let s = conditional_slice(self.mu, x, i)?;
        Ok(sample_from_law(&s.law, rng) as u8)
    }
}

/// One discrete Glauber update: uniform coordinate, conditional resample.
pub fn glauber_step<S: ConditionalSampler, R: Rng>(
    state: &Config,
    mu_access: &S,
    rng: &mut R,
) -> Result<Config> {
    let n = state.len();
    let i = rng.gen_range(0..n);
    let b = mu_access.sample_coordinate(state, i, rng)?;
    let mut next = state.clone();
    next.symbols[i] = b;
    Ok(next)
}

/// Continuous-time evolution P_t π with generator L = P − I, computed by
/// uniformization: Σ_j e^{−t} t^j/j! · P^j π with tail below 1e−12.
/// Weights are accumulated in log space so large t stays stable.
pub fn evolve_continuous(
    pi: &DenseDistribution,
    mu: &DenseDistribution,
    t: f64,
) -> Result<DenseDistribution> {
    if t < 0.0 || !t.is_finite() {
        return Err(EntmixError::InvalidTime(t));
    }
    if !pi.same_shape(mu) {
        return Err(EntmixError::InvalidDistribution(
            "shape mismatch between π and μ".into(),
        ));
    }
    if t == 0.0 {
        return Ok(pi.clone());
    }
    let mut v = pi.probs.clone();
    let mut out = vec![0.0; v.len()];
    let mut log_w = -t;
    let ln_t = t.ln();
    let mut cum = 0.0;
    let mut j: u64 = 0;
    loop {
        let w = log_w.exp();
        if w > 0.0 {
            for (o, &vi) in out.iter_mut().zip(&v) {
                *o += w * vi;
            }
            cum += w;
        }
        if cum >= 1.0 - 1e-12 {
            break;
        }
        j += 1;
        log_w += ln_t - (j as f64).ln();
        if j as f64 > t + 12.0 * t.sqrt() + 60.0 {
            break;
        }
        v = apply_glauber_kernel(mu, &v);
    }
    for o in out.iter_mut() {
        *o /= cum;
    }
    DenseDistribution::from_weights(mu.alphabet, mu.n, out)
}

/// Dirichlet form E_P(f,g) = E_{x∼μ} E_{y∼P(x,·)}[(f(x)−f(y))(g(x)−g(y))]
/// from an explicit transition matrix.
pub fn dirichlet_form(p: &TransitionMatrix, f: &DensityFunction, g: &DensityFunction) -> f64 {
    let mut total = 0.0;
    for x in 0..p.dim {
        let mx = p.stationary.probs[x];
        if mx <= 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for y in 0..p.dim {
            let pxy = p.at(x, y);
            if pxy > 0.0 {
                inner += pxy * (f.values[x] - f.values[y]) * (g.values[x] - g.values[y]);
            }
        }
        total += mx * inner;
    }
    total
}

/// Same Dirichlet form computed slice by slice without the matrix.
pub fn dirichlet_form_raw(mu: &DenseDistribution, f: &[f64], g: &[f64]) -> f64 {
    let q = mu.alphabet.size;
    let n = mu.n;
    let mut total = 0.0;
    for i in 0..n {
        let walker = SliceWalker::new(q, n, i);
        let stride = walker.stride;
        for base in walker {
            let mut mass = 0.0;
            for b in 0..q {
                mass += mu.probs[base + b * stride];
            }
            if mass <= 0.0 {
                continue;
            }
            let mut slice_sum = 0.0;
            for b in 0..q {
                let ib = base + b * stride;
                let wb = mu.probs[ib] / mass;
                if wb <= 0.0 {
                    continue;
                }
                for c in (b + 1)..q {
                    let ic = base + c * stride;
                    let wc = mu.probs[ic] / mass;
                    if wc <= 0.0 {
                        continue;
                    }
                    slice_sum += 2.0 * wb * wc * (f[ib] - f[ic]) * (g[ib] - g[ic]);
                }
            }
            total += mass * slice_sum;
        }
    }
    total / n as f64
}

/// Exact derivative check for entropy decay along the semigroup.
///
/// Returns (lhs, rhs) where lhs is the central finite difference of
/// t ↦ KL(P_tπ‖μ) and rhs = −E_P(f_t, log f_t)/2 with f_t = P_tπ/μ.
/// The factor 1/2 comes from the pairing ⟨f, −Lg⟩_μ = E_P(f,g)/2 under the
/// convention that E_P carries no 1/2 of its own.
pub fn entropy_decay_derivative_check(
    pi: &DenseDistribution,
    mu: &DenseDistribution,
    t: f64,
    dt: f64,
) -> Result<(f64, f64)> {
    if t < 0.0 {
        return Err(EntmixError::InvalidTime(t));
    }
    let kl_at = |s: f64| -> Result<f64> {
        let evolved = evolve_continuous(pi, mu, s)?;
        Ok(crate::entropy::kl_divergence(&evolved, mu))
    };
    if t == 0.0 && kl_at(0.0)?.is_infinite() {
        return Err(EntmixError::InvalidParameter(
            "derivative undefined at t = 0 with infinite divergence".into(),
        ));
    }
    let lo = (t - dt).max(0.0);
    let hi = t + dt;
    let lhs = (kl_at(hi)? - kl_at(lo)?) / (hi - lo);
    let pt = evolve_continuous(pi, mu, t)?;
    let f_t: Vec<f64> = pt.probs.iter().zip(&mu.probs).map(|(p, m)| p / m).collect();
    let log_f_t: Vec<f64> = f_t.iter().map(|&v| v.max(1e-300).ln()).collect();
    let rhs = -0.5 * dirichlet_form_raw(mu, &f_t, &log_f_t);
    Ok((lhs, rhs))
}

/// A KL(P_tπ‖μ) trajectory on a time grid.
#[derive(Debug, Clone)]
pub struct EvolutionCurve {
    pub times: Vec<f64>,
    pub kl_nats: Vec<f64>,
    pub snapshots: Option<Vec<DenseDistribution>>,
}

impl EvolutionCurve {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,kl_nats\n");
        for (t, kl) in self.times.iter().zip(&self.kl_nats) {
            s.push_str(&format!("{t},{kl}\n"));
        }
        s
    }
}

/// Evolves π along the grid (incrementally, via the semigroup property) and
/// records exact KL to μ at every grid time.
pub fn evolution_curve(
    pi: &DenseDistribution,
    mu: &DenseDistribution,
    t_grid: &[f64],
    keep_snapshots: bool,
) -> Result<EvolutionCurve> {
    let mut times = Vec::with_capacity(t_grid.len());
    let mut kl_nats = Vec::with_capacity(t_grid.len());
    let mut snapshots = if keep_snapshots { Some(Vec::new()) } else { None };
    let mut current = pi.clone();
    let mut t_prev = 0.0;
    for &t in t_grid {
        if t < t_prev {
            return Err(EntmixError::InvalidTime(t));
        }
        current = evolve_continuous(&current, mu, t - t_prev)?;
        t_prev = t;
        times.push(t);
        kl_nats.push(crate::entropy::kl_divergence(&current, mu));
        if let Some(snaps) = snapshots.as_mut() {
            snaps.push(current.clone());
        }
    }
    Ok(EvolutionCurve {
        times,
        kl_nats,
        snapshots,
    })
}

/// Dirichlet-form pairing with Φ′(f), used by the Φ-Sobolev machinery.
pub fn dirichlet_form_phi(mu: &DenseDistribution, f: &[f64], phi: PhiFunctional) -> f64 {
    let g: Vec<f64> = f.iter().map(|&v| phi.deriv(v.max(1e-300))).collect();
    dirichlet_form_raw(mu, f, &g)
}
