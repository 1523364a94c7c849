use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("negative input: {0}")]
    NegativeInput(BigInt),

    #[error("{0} has no rational square root")]
    NotASquare(String),

    #[error("factorization effort budget exceeded while splitting {0}")]
    FactorizationLimitExceeded(BigInt),

    #[error("zero input")]
    ZeroInput,

    #[error("cannot parse {0:?} as a rational")]
    ParseRational(String),

    #[error("points belong to different curves: N = {0} and N = {1}")]
    CurveMismatch(u64, u64),

    #[error("x = {x} is not the x-coordinate of a rational point on C_{n}")]
    NotOnCurve { n: u64, x: String },

    #[error("x = {x} does not satisfy the Fibonacci conditions for N = {n}")]
    NotFibonacci { n: u64, x: String },

    #[error("x = {x} is a Fibonacci solution for N = {n} but violates the stated witness property: {detail}")]
    WitnessPropertyViolation { n: u64, x: String, detail: String },

    #[error("trivial solution (y = 0) at x = {0}")]
    TrivialSolution(String),

    #[error("the two solutions are equal: x = z = {0}")]
    EqualSolutions(String),

    #[error("product {0} is not a rational square")]
    ProductNotSquare(String),

    #[error("negative solution x = {0} cannot be used in a pair selection")]
    NegativeSolution(String),

    #[error("square targets have different squarefree parts ({left} vs {right}); no scale factor exists")]
    IncompatibleSquarefreeParts { left: String, right: String },

    #[error("construction degenerates (a zero side or p = q)")]
    DegenerateOutput,

    #[error("only {found} pairs found within the multiple bound, {requested} requested")]
    InsufficientPairs { found: usize, requested: usize },

    #[error("not an equal sum of fourth powers")]
    InvalidIdentity,
}

pub type Result<T> = std::result::Result<T, Error>;
