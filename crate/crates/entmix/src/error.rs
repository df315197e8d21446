use thiserror::Error;

#[derive(Debug, Error)]
pub enum EntmixError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("state space too large: {states} states exceeds cap {cap}")]
    StateSpaceTooLarge { states: u64, cap: u64 },

    #[error("unsupported conditional slice at coordinate {coordinate}")]
    UnsupportedSlice { coordinate: usize },

    #[error("point {0} has zero probability")]
    UnsupportedPoint(usize),

    #[error("absolute continuity violation at state {0}")]
    AbsoluteContinuityViolation(usize),

    #[error("invalid time parameter: {0}")]
    InvalidTime(f64),

    #[error("invalid tester spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("oracle budget exhausted: limit {limit}")]
    BudgetExhausted { limit: u64 },

    #[error("oracle timed out after {attempts} attempts")]
    OracleTimeout { attempts: u64 },

    #[error("invalid setup: {0}")]
    InvalidSetup(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, EntmixError>;
