//! Convex functionals Φ used to define Φ-entropies and Φ-divergences.

use serde::{Deserialize, Serialize};

/// A convex function Φ with Φ(1) = 0, together with its derivative.
///
/// Only the two functionals the entropy machinery needs are provided:
/// Φ(u) = u ln u (KL-type entropies) and Φ(u) = u² (variance-type, shifted
/// so Φ(1) = 0 is irrelevant because entropies subtract Φ of the mean).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiFunctional {
    ULogU,
    USquared,
}

impl PhiFunctional {
    /// Evaluates Φ(u). Uses the convention 0·ln 0 = 0.
    pub fn eval(self, u: f64) -> f64 {
        match self {
            PhiFunctional::ULogU => {
                if u <= 0.0 {
                    0.0
                } else {
                    u * u.ln()
                }
            }
            PhiFunctional::USquared => u * u,
        }
    }

    /// Evaluates Φ′(u). For u log u at u = 0 this is −∞; callers only use
    /// the derivative at strictly positive arguments.
    pub fn deriv(self, u: f64) -> f64 {
        match self {
            PhiFunctional::ULogU => u.ln() + 1.0,
            PhiFunctional::USquared => 2.0 * u,
        }
    }
}
