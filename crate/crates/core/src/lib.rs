//! Exact-arithmetic construction of pairs of rational and integer right
//! triangles sharing a side, with the remaining sides of the form p² ± q².
//!
//! The pipeline: rational points on the congruent number curve
//! y² = x³ − N²x ([`curve`]) are classified and combined into solution pairs
//! ([`solutions`]), which the four parametric constructors turn into integer
//! solutions of the target Diophantine systems ([`systems`]). An independent
//! brute-force search ([`oracle`]) cross-validates everything, and
//! [`checks`] recomputes the full table of published numerical identities.
//!
//! All arithmetic is exact (`BigRational`); there is no floating point and
//! no tolerance anywhere.

pub mod arith;
pub mod checks;
pub mod curve;
pub mod error;
pub mod factor;
pub mod oracle;
pub mod solutions;
pub mod systems;

pub use arith::{
    format_rational, is_perfect_square, isqrt, make_rational, parse_rational, sqrt_exact,
    squarefree_part, Rational, SquarefreeDecomposition,
};
pub use checks::{run_reference_checks, CheckResult};
pub use curve::{CongruentCurve, CurvePoint};
pub use error::{Error, Result};
pub use factor::FactorBudget;
pub use oracle::{
    biquadratic_to_eq28, brute_force_system, cross_check, verify_biquadratic,
    BiquadraticIdentity, CrossCheckReport, Hit, SearchReport, SolutionTuple,
    DICKSON_IDENTITIES,
};
pub use solutions::{
    classify, enumerate_pairs, fibonacci_witness, make_pair, triangle_from_point, xi_zeta,
    FibonacciWitness, PairSelection, RationalTriangle, SolutionClass,
};
pub use systems::{
    build_with_k, construct_record, scale_factor, scale_record, theorem1, theorem2, theorem3,
    theorem4, theorem5_check, verify_record, QuarticBalance, ScaleFactor, SolutionRecord,
    SystemTag,
};
