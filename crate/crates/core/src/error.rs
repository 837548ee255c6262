use thiserror::Error;

use crate::combinatorics::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length vector needs at least 3 entries, got {0}")]
    TooFewLengths(usize),

    #[error("length {index} is not strictly positive")]
    NonPositiveLength { index: usize },

    #[error("lengths must be nondecreasing (entry {index} is smaller than its predecessor)")]
    NotSorted { index: usize },

    #[error("cannot parse length {0:?}")]
    BadLength(String),

    #[error("non-generic length vector: subset {witness} sums to exactly half the total")]
    NonGeneric { witness: Subset },

    #[error("empty polygon space: the longest side is at least the sum of the others")]
    EmptySpace,

    #[error("gene {gene} is invalid for n = {n}: {reason}")]
    BadGene {
        gene: Subset,
        n: usize,
        reason: &'static str,
    },

    #[error("genes {lower} <= {upper} do not form an antichain")]
    NotAntichain { lower: Subset, upper: Subset },

    #[error("n = {n} outside supported range {min}..={max}")]
    UnsupportedN { n: usize, min: usize, max: usize },

    #[error("cannot parse genetic code {0:?}")]
    BadCode(String),

    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("product has total degree {got}, expected {expected}")]
    WrongProductDegree { expected: usize, got: usize },

    #[error("integrity failure: top-degree functional space has dimension {dim}, expected 1")]
    DualityDimension { dim: usize },

    #[error("parameters out of range: {0}")]
    BadParameters(String),

    #[error("certificate rejected: {0}")]
    Verification(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
