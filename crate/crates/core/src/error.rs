use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("hook statistics are undefined for the empty partition")]
    EmptyPartition,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("negative power of a non-monomial Laurent polynomial")]
    NonMonomialInverse,

    #[error("q-binomial [{m} choose {k}] is out of range")]
    BinomialRange { m: i64, k: i64 },

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("polynomial involves t; a univariate Laurent polynomial in q was expected")]
    NotUnivariate,

    #[error("Euler power must be odd and positive, got {0}")]
    EvenEulerPower(u32),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid generator {kind}({r},{s}): indices must satisfy r+s >= 1")]
    InvalidGenerator { kind: &'static str, r: usize, s: usize },

    #[error("commutator identity uses generator {kind}({r},{s}) with a negative index and nonzero scalar")]
    NegativeIndex { kind: &'static str, r: i64, s: i64 },

    #[error("commutator check expects generators of kind E or F")]
    UnsupportedCommutator,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("rank deficit: target {target} but only rank {achieved} is reachable")]
    RankDeficit { target: usize, achieved: usize },

    #[error("singular linear system")]
    Singular,

    #[error("dimension mismatch at bi-degree ({a},{b}) for n={n}: span has dimension {span}, q,t-Catalan coefficient is {expected}")]
    DimensionMismatch { n: usize, a: usize, b: usize, span: usize, expected: u64 },

    #[error("negative string count at bi-degree ({u},{v})")]
    NegativeStringCount { u: usize, v: usize },

    #[error("co-partition construction cannot reach {target} independent alternants at bi-degree ({a},{b}); found {achieved} (counterexample to the basis conjecture at n={n})")]
    AllenTargetUnreachable { n: usize, a: usize, b: usize, target: u64, achieved: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache I/O: {0}")]
    Cache(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
