//! Entropy tensorization for finite product-space mixtures: Φ-entropy
//! bookkeeping, Glauber dynamics, Sobolev-constant estimation, sample-based
//! identity testing against a sealed sampling oracle, and empirical
//! concentration experiments.

pub mod dist;
pub mod entropy;
pub mod error;
pub mod experiments;
pub mod functional;
pub mod glauber;
pub mod identity;
pub mod mixture;
pub mod oracle;
pub mod phi;
pub mod runner;
pub mod seed;
pub mod tester;

pub use dist::{Alphabet, Config, DenseDistribution, DensityFunction};
pub use error::{EntmixError, Result};
pub use mixture::MixtureModel;
pub use phi::PhiFunctional;
