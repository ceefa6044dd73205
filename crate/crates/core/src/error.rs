use thiserror::Error;

/// Which frontier of a vertical representation an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: words are over the alphabet {{1,2}}")]
    InvalidLetter(char),

    #[error("invalid vertical letter {0:?}: frontiers are over the alphabet {{0,1,2}}")]
    InvalidVerticalLetter(char),

    #[error("word is not differentiable: it has a run of length {run} (contains 111 or 222)")]
    NotDifferentiable { run: usize },

    #[error("not a C∞-word: derivative D^{level} is not differentiable")]
    NotCInfinity { level: usize },

    #[error("operation needs a non-empty word (height > 0)")]
    EmptyWord,

    #[error("{side} frontier starts with 0 at level {level}: vertical words must not begin with 0")]
    LeadingZero { side: Side, level: usize },

    #[error("frontiers differ in length: left has {left}, right has {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid vertical representation: no C∞-word has these frontiers (clash at level {level})")]
    InvalidRep { level: usize },

    #[error("frontier contains 0 at level {level}: a graph node must be a 0-free frontier")]
    NotPure { level: usize },

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("budget of {budget} exhausted")]
    BudgetExceeded { budget: usize },

    #[error("counter overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("table cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
