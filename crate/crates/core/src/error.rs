use thiserror::Error;

use crate::engine::Side;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} out of range for a {point_count}-point space")]
    Range { point: usize, point_count: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("empty cover")]
    EmptyCover,

    #[error("not an Alster cover: {0}")]
    NotAlster(String),

    #[error("illegal transcript: {0}")]
    IllegalTranscript(String),

    #[error("illegal move by {side} at inning {inning}: {reason}")]
    IllegalMove {
        side: Side,
        inning: usize,
        reason: String,
    },

    #[error("strategy for {side} has no move at inning {inning}: {reason}")]
    StrategyUndefined {
        side: Side,
        inning: usize,
        reason: String,
    },

    #[error("budget exceeded: more than {0} nodes expanded")]
    BudgetExceeded(u64),

    #[error("incomplete transcript: {0}")]
    Incomplete(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("translation produced non-cover: {0}")]
    Translation(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
