//! Finite mixtures μ = Σ_a ρ(a) μ_a, posteriors, and the entropy chain rule.

use crate::dist::{Config, DenseDistribution, DensityFunction};
use crate::entropy::phi_entropy;
use crate::error::{EntmixError, Result};
use crate::phi::PhiFunctional;
use serde::{Deserialize, Serialize};

/// Mixture weights ρ over [k] plus k component distributions on a shared Σⁿ.
#[derive(Debug, Clone)]
pub struct MixtureModel {
    pub weights: Vec<f64>,
    pub components: Vec<DenseDistribution>,
    mixture: DenseDistribution,
}

#[derive(Serialize, Deserialize)]
struct MixtureJson {
    weights: Vec<f64>,
    components: Vec<serde_json::Value>,
}

impl MixtureModel {
    pub fn new(weights: Vec<f64>, components: Vec<DenseDistribution>) -> Result<Self> {
        if weights.is_empty() || weights.len() != components.len() {
            return Err(EntmixError::InvalidDistribution(
                "weights and components must be nonempty and matched".into(),
            ));
        }
        if weights.iter().any(|&w| w <= 0.0) {
            return Err(EntmixError::InvalidDistribution(
                "mixture weights must be strictly positive".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(EntmixError::InvalidDistribution(format!(
                "mixture weights sum to {sum}, expected 1"
            )));
        }
        let first = &components[0];
        if components.iter().any(|c| !c.same_shape(first)) {
            return Err(EntmixError::InvalidDistribution(
                "mixture components must share alphabet and dimension".into(),
            ));
        }
        let mut probs = vec![0.0; first.num_states()];
        for (w, comp) in weights.iter().zip(&components) {
            for (p, &cp) in probs.iter_mut().zip(&comp.probs) {
                *p += w * cp;
            }
        }
        let mixture = DenseDistribution::from_weights(first.alphabet, first.n, probs)?;
        Ok(MixtureModel {
            weights,
            components,
            mixture,
        })
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// The mixture distribution μ = Σ_a ρ(a) μ_a.
    pub fn mixture(&self) -> &DenseDistribution {
        &self.mixture
    }

    /// Smallest mixture weight ρ* = min_a ρ(a).
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Posterior over component labels given an observation x.
    pub fn posterior(&self, x: &Config) -> Result<Vec<f64>> {
        self.posterior_at(crate::dist::encode_config(x, self.mixture.alphabet)?)
    }

    /// Posterior over labels at an encoded state index.
    pub fn posterior_at(&self, idx: usize) -> Result<Vec<f64>> {
        let mass = self.mixture.probs[idx];
        if mass <= 0.0 {
            return Err(EntmixError::UnsupportedPoint(idx));
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.components)
            .map(|(w, c)| w * c.probs[idx] / mass)
            .collect())
    }

    /// ρ_π: the label distribution of x ∼ π followed by a posterior draw.
    pub fn rho_of(&self, pi: &DenseDistribution) -> Result<Vec<f64>> {
        if !pi.same_shape(&self.mixture) {
            return Err(EntmixError::InvalidDistribution(
                "shape mismatch between π and mixture".into(),
            ));
        }
        let mut rho_pi = vec![0.0; self.k()];
        for (idx, &p) in pi.probs.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            if self.mixture.probs[idx] <= 0.0 {
                return Err(EntmixError::AbsoluteContinuityViolation(idx));
            }
            let post = self.posterior_at(idx)?;
            for (r, q) in rho_pi.iter_mut().zip(post) {
                *r += p * q;
            }
        }
        Ok(rho_pi)
    }
}

/// Chain-rule decomposition of the Φ-entropy of f under the mixture:
/// intra = E_{a∼ρ}[Ent^Φ_{μ_a}[f]], inter = Ent^Φ_{a∼ρ}[E_{μ_a}[f]],
/// total = Ent^Φ_μ[f], with inter + intra = total.
pub fn chain_rule_decompose(
    model: &MixtureModel,
    f: &DensityFunction,
    phi: PhiFunctional,
) -> Result<(f64, f64, f64)> {
    let mut intra = 0.0;
    let mut component_means = Vec::with_capacity(model.k());
    for (w, comp) in model.weights.iter().zip(&model.components) {
        intra += w * phi_entropy(comp, f, phi)?;
        let mean: f64 = comp
            .probs
            .iter()
            .zip(&f.values)
            .map(|(&p, &v)| p * v)
            .sum();
        component_means.push(mean);
    }
    let mut grand_mean = 0.0;
    let mut mean_phi = 0.0;
    for (w, m) in model.weights.iter().zip(&component_means) {
        grand_mean += w * m;
        mean_phi += w * phi.eval(*m);
    }
    let inter = mean_phi - phi.eval(grand_mean);
    let total = phi_entropy(model.mixture(), f, phi)?;
    Ok((inter, intra, total))
}

impl MixtureModel {
    pub fn to_json(&self) -> String {
        let components = self
            .components
            .iter()
            .map(|c| serde_json::from_str(&c.to_json()).expect("component JSON is valid"))
            .collect();
        serde_json::to_string(&MixtureJson {
            weights: self.weights.clone(),
            components,
        })
        .expect("mixture serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: MixtureJson = serde_json::from_str(s)?;
        let components = m
            .components
            .iter()
            .map(|v| DenseDistribution::from_json(&v.to_string()))
            .collect::<Result<Vec<_>>>()?;
        MixtureModel::new(m.weights, components)
    }
}
