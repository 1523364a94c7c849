//! Exact arbitrary-precision rational arithmetic.
//!
//! Every quantity in this crate is an exact rational; there is no floating
//! point anywhere. Rationals are kept in canonical form (lowest terms,
//! positive denominator) so equality is structural.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{self, FactorBudget};

/// Exact fraction in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A nonzero rational written as (squarefree integer) x (positive rational)^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Squarefree integer carrying the sign of the decomposed value.
    pub sf: BigInt,
    /// Positive rational with `value = sf * root^2`.
    pub root: Rational,
}

impl SquarefreeDecomposition {
    /// Recombine into the original value.
    pub fn value(&self) -> Rational {
        Rational::from_integer(self.sf.clone()) * (&self.root * &self.root)
    }
}

/// Build a rational, rejecting a zero denominator.
pub fn make_rational(numerator: BigInt, denominator: BigInt) -> Result<Rational> {
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(numerator, denominator))
}

/// Shorthand for small literals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "a/b" or "a".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::ParseRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((n, d)) => make_rational(parse_int(n)?, parse_int(d)?),
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Render as "num/den", omitting the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Floor of the square root together with an exactness flag.
pub fn isqrt(n: &BigInt) -> Result<(BigInt, bool)> {
    if n.is_negative() {
        return Err(Error::NegativeInput(n.clone()));
    }
    let m = n.magnitude();
    let root = m.sqrt();
    let exact = &root * &root == *m;
    Ok((BigInt::from_biguint(Sign::Plus, root), exact))
}

fn biguint_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}

/// True iff some rational r satisfies r^2 = q. Tested per component on the
/// canonical form: both numerator and denominator must be integer squares.
pub fn is_perfect_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    biguint_sqrt_exact(q.numer().magnitude()).is_some()
        && biguint_sqrt_exact(q.denom().magnitude()).is_some()
}

/// The nonnegative rational square root of a perfect square.
pub fn sqrt_exact(q: &Rational) -> Result<Rational> {
    if q.is_negative() {
        return Err(Error::NotASquare(format_rational(q)));
    }
    let n = biguint_sqrt_exact(q.numer().magnitude());
    let d = biguint_sqrt_exact(q.denom().magnitude());
    match (n, d) {
        (Some(n), Some(d)) => Ok(Rational::new(
            BigInt::from_biguint(Sign::Plus, n),
            BigInt::from_biguint(Sign::Plus, d),
        )),
        _ => Err(Error::NotASquare(format_rational(q))),
    }
}

/// Prime factors of a positive integer, with multiplicity.
pub fn factorize(n: &BigInt) -> Result<Vec<BigInt>> {
    factorize_with(n, &FactorBudget::default())
}

/// As [`factorize`] but with an explicit effort budget.
pub fn factorize_with(n: &BigInt, budget: &FactorBudget) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if n.is_negative() {
        return Err(Error::NegativeInput(n.clone()));
    }
    factor::factor(n.magnitude(), budget)
        .map(|v| v.into_iter().map(|p| BigInt::from_biguint(Sign::Plus, p)).collect())
}

/// Decompose a nonzero rational as (squarefree integer) x (rational)^2.
pub fn squarefree_part(q: &Rational) -> Result<SquarefreeDecomposition> {
    squarefree_part_with(q, &FactorBudget::default())
}

/// As [`squarefree_part`] but with an explicit effort budget.
pub fn squarefree_part_with(q: &Rational, budget: &FactorBudget) -> Result<SquarefreeDecomposition> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    // Perfect squares need no factorization at all; this keeps the doubled
    // curve points (whose coordinates are squares of huge rationals) cheap.
    if is_perfect_square(&q.abs()) {
        let root = sqrt_exact(&q.abs())?;
        let sf = if q.is_negative() { -BigInt::one() } else { BigInt::one() };
        return Ok(SquarefreeDecomposition { sf, root });
    }
    // Strip the obvious square content first so factorization only sees the
    // small residue. q = (n/d) = (n*d) / d^2, so sf(q) = sf(n*d).
    let nd = q.numer().magnitude() * q.denom().magnitude();
    let (core, square_root) = split_square(&nd, budget)?;
    let sf_mag = core;
    let sf = if q.is_negative() {
        -BigInt::from_biguint(Sign::Plus, sf_mag)
    } else {
        BigInt::from_biguint(Sign::Plus, sf_mag)
    };
    // q = sf * root^2 with root = square_root / d.
    let root = Rational::new(
        BigInt::from_biguint(Sign::Plus, square_root),
        q.denom().clone(),
    );
    debug_assert_eq!(
        Rational::from_integer(sf.clone()) * (&root * &root),
        q.clone()
    );
    Ok(SquarefreeDecomposition { sf, root })
}

/// Write n = core * root^2 with core squarefree.
fn split_square(n: &BigUint, budget: &FactorBudget) -> Result<(BigUint, BigUint)> {
    let factors = factor::factor(n, budget)?;
    let mut counts: std::collections::BTreeMap<BigUint, u32> = Default::default();
    for p in factors {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut core = BigUint::one();
    let mut root = BigUint::one();
    for (p, e) in counts {
        if e % 2 == 1 {
            core *= &p;
        }
        root *= p.pow(e / 2);
    }
    Ok((core, root))
}

/// Minimal positive integer s with f dividing s^2, for f >= 1.
pub fn min_square_cover(f: &BigInt, budget: &FactorBudget) -> Result<BigInt> {
    if !f.is_positive() {
        return Err(Error::NegativeInput(f.clone()));
    }
    // Perfect squares need no factorization: the cover is the square root.
    let root = f.magnitude().sqrt();
    if &(&root * &root) == f.magnitude() {
        return Ok(BigInt::from_biguint(Sign::Plus, root));
    }
    let mut counts: std::collections::BTreeMap<BigUint, u32> = Default::default();
    for p in factor::factor(f.magnitude(), budget)? {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut s = BigUint::one();
    for (p, e) in counts {
        s *= p.pow((e + 1) / 2);
    }
    Ok(BigInt::from_biguint(Sign::Plus, s))
}

/// Exact gcd-based lcm for positive integers.
pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}
