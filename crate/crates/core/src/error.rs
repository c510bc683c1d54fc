use crate::partitions::Partition;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("partitions have different weights: |{lambda}| = {} vs |{mu}| = {}", lambda.weight(), mu.weight())]
    WeightMismatch { lambda: Partition, mu: Partition },

    #[error("excluded configuration: genus {genus}, ({lambda}), ({mu}) admits non-trivial automorphisms or has r <= 0")]
    ExcludedConfiguration {
        lambda: Partition,
        mu: Partition,
        genus: u64,
    },

    #[error("search caps exceeded: d = {degree}, r = {branch_points} (caps: d <= {max_degree}, r <= {max_branch_points})")]
    CapExceeded {
        degree: u64,
        branch_points: usize,
        max_degree: u64,
        max_branch_points: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("bends requires an odd start value and even parts, got k = {k}")]
    BendsParity { k: i64 },

    #[error("lower bound hypotheses violated: {0}")]
    BoundHypotheses(String),

    #[error("{0}")]
    InvalidInput(String),
}
