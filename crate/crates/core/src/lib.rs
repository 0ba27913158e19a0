//! Two-player Snake: a deterministic rules engine, search-based agents,
//! round-robin tournaments and verifiable replay logs.
//!
//! Evaluation and search are generic over [`Scalar`]; the crate-level
//! aliases fix the exact rational type used by the built-in agents.

pub mod agents;
pub mod engine;
pub mod replay;
pub mod rng;
pub mod scalar;
pub mod search;
pub mod tournament;

pub use engine::{
    Cause, Cell, ClockMode, DirSet, Direction, EngineError, GameState, MatchConfig, MatchOutcome,
    MatchResult, Phase, Side, Snake, StepOutcome,
};
pub use scalar::Scalar;

/// Exact score type used by the built-in agents.
pub type Score = num_rational::Rational64;
/// Evaluation weights over [`Score`].
pub type Weights = search::EvalWeights<Score>;
/// Floating-point weights, for callers that prefer `f64` scores.
pub type WeightsF64 = search::EvalWeights<f64>;
/// Single-precision weights.
pub type WeightsF32 = search::EvalWeights<f32>;
