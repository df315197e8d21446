//! Φ-entropies, divergences, and the local (single-site) entropy functional.

use crate::dist::{DenseDistribution, DensityFunction, SliceWalker};
use crate::error::{EntmixError, Result};
use crate::phi::PhiFunctional;

/// Φ-entropy of f under μ: E_μ[Φ(f)] − Φ(E_μ[f]). Nonnegative by convexity.
pub fn phi_entropy(
    mu: &DenseDistribution,
    f: &DensityFunction,
    phi: PhiFunctional,
) -> Result<f64> {
    if f.values.len() != mu.num_states() {
        return Err(EntmixError::InvalidDensity(
            "density dimension mismatch".into(),
        ));
    }
    let mut mean = 0.0;
    let mut mean_phi = 0.0;
    for (&p, &v) in mu.probs.iter().zip(&f.values) {
        mean += p * v;
        mean_phi += p * phi.eval(v);
    }
    Ok(mean_phi - phi.eval(mean))
}

/// KL divergence KL(π‖μ) in nats; +∞ when π is not absolutely continuous
/// with respect to μ. Uses 0·ln 0 = 0.
pub fn kl_divergence(pi: &DenseDistribution, mu: &DenseDistribution) -> f64 {
    let mut kl = 0.0;
    for (&p, &m) in pi.probs.iter().zip(&mu.probs) {
        if p > 0.0 {
            if m <= 0.0 {
                return f64::INFINITY;
            }
            kl += p * (p / m).ln();
        }
    }
    kl
}

/// χ² divergence χ²(π‖μ) = Σ_x (π(x)−μ(x))²/μ(x); +∞ off μ's support.
pub fn chi_sq_divergence(pi: &DenseDistribution, mu: &DenseDistribution) -> f64 {
    let mut chi = 0.0;
    for (&p, &m) in pi.probs.iter().zip(&mu.probs) {
        if m <= 0.0 {
            if p > 0.0 {
                return f64::INFINITY;
            }
        } else {
            let d = p - m;
            chi += d * d / m;
        }
    }
    chi
}

/// Squared Hellinger distance H²(π‖μ) = Σ_x (√π(x) − √μ(x))² ∈ [0, 2].
pub fn hellinger_sq(pi: &DenseDistribution, mu: &DenseDistribution) -> f64 {
    pi.probs
        .iter()
        .zip(&mu.probs)
        .map(|(&p, &m)| {
            let d = p.sqrt() - m.sqrt();
            d * d
        })
        .sum()
}

/// KL over plain probability tables (used for label distributions over [k]).
pub fn kl_tables(p: &[f64], q: &[f64]) -> f64 {
    let mut kl = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                return f64::INFINITY;
            }
            kl += a * (a / b).ln();
        }
    }
    kl
}

/// Squared Hellinger distance over plain probability tables.
pub fn hellinger_sq_tables(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(&a, &b)| {
            let d = a.sqrt() - b.sqrt();
            d * d
        })
        .sum()
}

/// χ² divergence over plain probability tables.
pub fn chi_sq_tables(p: &[f64], q: &[f64]) -> f64 {
    let mut chi = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if b <= 0.0 {
            if a > 0.0 {
                return f64::INFINITY;
            }
        } else {
            let d = a - b;
            chi += d * d / b;
        }
    }
    chi
}

/// u log u entropy of f restricted to one slice, weighted by the slice law.
///
/// `pairs` yields (weight, value) with weights summing to 1.
fn slice_entropy_ulogu(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut mean = 0.0;
    let mut mean_phi = 0.0;
    for (w, v) in pairs {
        mean += w * v;
        if v > 0.0 {
            mean_phi += w * v * v.ln();
        }
    }
    if mean > 0.0 {
        mean_phi - mean * mean.ln()
    } else {
        mean_phi
    }
}

/// The local entropy functional L_μ[f] = Σ_i E_{x∼μ}[Ent_{μ|x∖i}[f]].
///
/// Computed slice by slice: each slice contributes its total μ-mass times the
/// u log u entropy of f under the slice's conditional law.
pub fn local_entropy_functional(mu: &DenseDistribution, f: &DensityFunction) -> Result<f64> {
    if f.values.len() != mu.num_states() {
        return Err(EntmixError::InvalidDensity(
            "density dimension mismatch".into(),
        ));
    }
    let q = mu.alphabet.size;
    let mut total = 0.0;
    for i in 0..mu.n {
        let walker = SliceWalker::new(q, mu.n, i);
        let stride = walker.stride;
        for base in walker {
            let mut mass = 0.0;
            for b in 0..q {
                mass += mu.probs[base + b * stride];
            }
            if mass <= 0.0 {
                let touched = (0..q).any(|b| f.values[base + b * stride] > 0.0);
                if touched {
                    return Err(EntmixError::UnsupportedSlice { coordinate: i });
                }
                continue;
            }
            let ent = slice_entropy_ulogu((0..q).map(|b| {
                let idx = base + b * stride;
                (mu.probs[idx] / mass, f.values[idx])
            }));
            total += mass * ent;
        }
    }
    Ok(total)
}

/// The conditional-flip sum Σ_i E_{x∼π}[ Ent_{μ|x∖i}[ π|x∖i / μ|x∖i ] ].
///
/// Per slice the inner entropy reduces to KL(π-slice law ‖ μ-slice law), and
/// the outer expectation weights the slice by its total π-mass. Summed
/// exactly, this equals L_μ[π/μ].
pub fn conditional_flip_sum(pi: &DenseDistribution, mu: &DenseDistribution) -> Result<f64> {
    if !pi.same_shape(mu) {
        return Err(EntmixError::InvalidDistribution(
            "distributions must share alphabet and dimension".into(),
        ));
    }
    let q = mu.alphabet.size;
    let mut total = 0.0;
    for i in 0..mu.n {
        let walker = SliceWalker::new(q, mu.n, i);
        let stride = walker.stride;
        for base in walker {
            let mut mu_mass = 0.0;
            let mut pi_mass = 0.0;
            for b in 0..q {
                mu_mass += mu.probs[base + b * stride];
                pi_mass += pi.probs[base + b * stride];
            }
            if pi_mass <= 0.0 {
                continue;
            }
            if mu_mass <= 0.0 {
                return Err(EntmixError::UnsupportedSlice { coordinate: i });
            }
            let mut kl = 0.0;
            for b in 0..q {
                let idx = base + b * stride;
                let v = pi.probs[idx] / pi_mass;
                let w = mu.probs[idx] / mu_mass;
                if v > 0.0 {
                    if w <= 0.0 {
                        return Err(EntmixError::UnsupportedSlice { coordinate: i });
                    }
                    kl += v * (v / w).ln();
                }
            }
            total += pi_mass * kl;
        }
    }
    Ok(total)
}
