use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("entry {index} is {value}, expected a positive integer")]
    NonPositiveEntry { index: usize, value: BigInt },
    #[error("gcd {gcd} does not divide target {target}")]
    NotDivisible { gcd: BigInt, target: BigInt },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("vector {index} violates its lattice constraint")]
    ConstraintViolated { index: usize },
    #[error("enumeration size {size} exceeds limit {limit}")]
    BruteForceTooLarge { size: BigInt, limit: u64 },
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("cross products are not proportional at coordinate {coordinate}")]
    ProportionalityFailure { coordinate: usize },
    #[error("expected {expected} divisors, got {got}")]
    WrongDivisorCount { expected: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
