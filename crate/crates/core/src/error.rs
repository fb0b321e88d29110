use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division is not exact in Q[v, v^-1]")]
    DivisionNotExact,
    #[error("q-binomial [{n} {s}] out of range")]
    OutOfRange { n: u32, s: u32 },
    #[error("expected a nonzero monomial")]
    NotMonomial,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("not a generalized Cartan matrix: {}", .0.join("; "))]
    NotGcm(Vec<String>),
    #[error("matrix is not of finite type")]
    NotFinite,
    #[error("weight {0} is not dominant integral")]
    NotDominant(String),
    #[error("braiding is not of strong exponential type: {0}")]
    NotStrongExponential(String),
    #[error("phi table is not symmetric")]
    NotSymmetric,
    #[error("non-integral braiding exponent at ({0}, {1})")]
    NonIntegralExponent(usize, usize),
    #[error("block of dimension {dim} exceeds budget {budget}")]
    BudgetExceeded { dim: usize, budget: usize },
    #[error("braiding does not satisfy the braid equation")]
    NotBraided,
    #[error("braiding is not invertible")]
    NotInvertible,
    #[error("braiding does not preserve the grading")]
    GradingViolation,
    #[error("Cartan condition q_ij q_ji = q_ii^b_ij fails: {0}")]
    CartanMismatch(String),
    #[error("quasi-R-matrix truncation {have} too small, need {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("invalid space description: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
