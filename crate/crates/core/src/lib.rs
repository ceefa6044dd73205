//! Calculus of C∞-words: arbitrarily differentiable words over {1,2}.
pub mod error;
pub mod frontier;
pub mod graph;
pub mod oracle;
pub mod probe;
pub mod vertical;
pub mod word;

pub use error::{Error, Result};

/// Graph G with 64-bit path counts and lengths.
pub type MinimalGraph = graph::MinimalGraphOf<u64>;
pub type NodeStats = graph::NodeStatsOf<u64>;
pub type LevelStats = graph::LevelStatsOf<u64>;
