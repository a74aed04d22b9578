use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A Pochhammer factor in a denominator vanishes at this parameter value.
    #[error("kappa = {kappa} is a pole: {factor} vanishes")]
    Pole { kappa: Rational, factor: String },

    #[error("partition {partition} has {length} parts but only {nvars} variables are available")]
    PartitionTooLong {
        partition: String,
        length: usize,
        nvars: usize,
    },

    #[error("weight mismatch: |{left}| = {left_weight} but |{right}| = {right_weight}")]
    WeightMismatch {
        left: String,
        left_weight: u32,
        right: String,
        right_weight: u32,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
