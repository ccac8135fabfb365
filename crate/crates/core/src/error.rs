use thiserror::Error;

use crate::freealg::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    #[error("generator count must be at least 1")]
    NoGenerators,
    #[error("cannot decompose identity")]
    DecomposeIdentity,
    #[error("weight undefined for multi-index {0}")]
    WeightUndefined(MultiIndex),
    #[error("weights must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid weight configuration: {0}")]
    InvalidWeightConfig(String),
    #[error("argument must lie in 𝒫")]
    NotHolomorphic,
    #[error("counterexamples require n ≥ 2")]
    CounterexamplesNeedTwoGenerators,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("stochastic pairing requires a seed")]
    MissingSeed,
    #[error("pairing probability must lie in [0, 1], got {0}")]
    InvalidProbability(String),
    #[error("trial count must be at least 1")]
    NoTrials,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
