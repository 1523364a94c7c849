//! Classification of solution x-coordinates (the three square conditions),
//! the rational right triangle construction, and selection of solution pairs
//! (x, z) whose product is a rational square.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{
    self, format_rational, is_perfect_square, sqrt_exact, Rational,
};
use crate::curve::{CongruentCurve, CurvePoint};
use crate::error::{Error, Result};

/// How a solution x-coordinate sits with respect to the square conditions
/// x, x + N, x - N all being rational squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionClass {
    pub x: Rational,
    pub is_square: bool,
    /// Squarefree part of x.
    pub sf: BigInt,
    /// True iff x, x + N and x - N are all rational squares.
    pub fibonacci: bool,
}

/// Witness (L, K, M) for a Fibonacci solution: x = (L/K)^2, K = 2M,
/// gcd(L, N) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciWitness {
    pub l: BigInt,
    pub k: BigInt,
    pub m: BigInt,
}

/// A right triangle with rational sides; legs a, b and hypotenuse c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTriangle {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl RationalTriangle {
    pub fn area(&self) -> Rational {
        &self.a * &self.b / arith::int(2)
    }
}

/// A validated pair of distinct nontrivial solution x-coordinates with a
/// square product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSelection {
    pub n: u64,
    pub x: Rational,
    pub z: Rational,
    /// Exact square root of x * z.
    pub sqrt_xz: Rational,
}

impl Serialize for SolutionClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SolutionClass", 4)?;
        s.serialize_field("x", &format_rational(&self.x))?;
        s.serialize_field("is_square", &self.is_square)?;
        s.serialize_field("sf", &self.sf.to_string())?;
        s.serialize_field("fibonacci", &self.fibonacci)?;
        s.end()
    }
}

impl Serialize for PairSelection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PairSelection", 4)?;
        s.serialize_field("n", &self.n.to_string())?;
        s.serialize_field("x", &format_rational(&self.x))?;
        s.serialize_field("z", &format_rational(&self.z))?;
        s.serialize_field("sqrt_xz", &format_rational(&self.sqrt_xz))?;
        s.end()
    }
}

/// Require that x is a genuine solution x-coordinate, i.e. x^3 - N^2 x is a
/// rational square; returns its square root.
fn solution_y(curve: &CongruentCurve, x: &Rational) -> Result<Rational> {
    let rhs = curve.rhs(x);
    sqrt_exact(&rhs).map_err(|_| Error::NotOnCurve {
        n: curve.n(),
        x: format_rational(x),
    })
}

/// Classify a solution x-coordinate against the three square conditions.
pub fn classify(curve: &CongruentCurve, x: &Rational) -> Result<SolutionClass> {
    solution_y(curve, x)?;
    let n = curve.n_rat();
    let is_square = is_perfect_square(x);
    let fibonacci =
        is_square && is_perfect_square(&(x + &n)) && is_perfect_square(&(x - &n));
    let sf = arith::squarefree_part(x)?.sf;
    Ok(SolutionClass {
        x: x.clone(),
        is_square,
        sf,
        fibonacci,
    })
}

/// Extract (L, K, M) for a Fibonacci solution x = (L/K)^2 in lowest terms.
/// The stated properties K = 2M and gcd(L, N) = 1 are checked, not assumed;
/// a violation is reported as its own error.
pub fn fibonacci_witness(curve: &CongruentCurve, x: &Rational) -> Result<FibonacciWitness> {
    let class = classify(curve, x)?;
    if !class.fibonacci {
        return Err(Error::NotFibonacci {
            n: curve.n(),
            x: format_rational(x),
        });
    }
    let r = sqrt_exact(x)?;
    let l = r.numer().clone();
    let k = r.denom().clone();
    if k.is_odd() {
        return Err(Error::WitnessPropertyViolation {
            n: curve.n(),
            x: format_rational(x),
            detail: format!("K = {k} is odd"),
        });
    }
    let g = l.gcd(&BigInt::from(curve.n()));
    if !g.is_one() {
        return Err(Error::WitnessPropertyViolation {
            n: curve.n(),
            x: format_rational(x),
            detail: format!("gcd(L, N) = {g}"),
        });
    }
    let m = &k / BigInt::from(2);
    Ok(FibonacciWitness { l, k, m })
}

/// The triangle (sqrt(x+N) - sqrt(x-N), sqrt(x+N) + sqrt(x-N), 2 sqrt(x)),
/// defined exactly when the three square conditions hold; its area is N.
pub fn triangle_from_point(curve: &CongruentCurve, x: &Rational) -> Result<RationalTriangle> {
    let class = classify(curve, x)?;
    if !class.fibonacci {
        return Err(Error::NotFibonacci {
            n: curve.n(),
            x: format_rational(x),
        });
    }
    let n = curve.n_rat();
    let sp = sqrt_exact(&(x + &n))?;
    let sm = sqrt_exact(&(x - &n))?;
    let sx = sqrt_exact(x)?;
    let tri = RationalTriangle {
        a: &sp - &sm,
        b: &sp + &sm,
        c: arith::int(2) * sx,
    };
    debug_assert_eq!(&tri.a * &tri.a + &tri.b * &tri.b, &tri.c * &tri.c);
    debug_assert_eq!(tri.area(), n);
    Ok(tri)
}

/// Validate a candidate pair (x, z): distinct, nontrivial, positive, and
/// with xz a rational square.
pub fn make_pair(curve: &CongruentCurve, x: &Rational, z: &Rational) -> Result<PairSelection> {
    if x == z {
        return Err(Error::EqualSolutions(format_rational(x)));
    }
    for v in [x, z] {
        let y = solution_y(curve, v)?;
        if y.is_zero() {
            return Err(Error::TrivialSolution(format_rational(v)));
        }
        // The side formulas need real square roots of x, z and x +/- N
        // products, so negative solutions are rejected outright.
        if v.is_negative() {
            return Err(Error::NegativeSolution(format_rational(v)));
        }
    }
    let prod = x * z;
    let sqrt_xz = sqrt_exact(&prod)
        .map_err(|_| Error::ProductNotSquare(format_rational(&prod)))?;
    Ok(PairSelection {
        n: curve.n(),
        x: x.clone(),
        z: z.clone(),
        sqrt_xz,
    })
}

/// The substitution xi = sqrt(xz)/N, zeta = sqrt(z/x); satisfies
/// xi/zeta = x/N and xi*zeta = z/N exactly.
pub fn xi_zeta(pair: &PairSelection) -> Result<(Rational, Rational)> {
    let n = arith::int(pair.n as i64);
    let xi = &pair.sqrt_xz / &n;
    let ratio = &pair.z / &pair.x;
    let zeta = sqrt_exact(&ratio)
        .map_err(|_| Error::ProductNotSquare(format_rational(&ratio)))?;
    debug_assert_eq!(&xi / &zeta, &pair.x / &n);
    debug_assert_eq!(&xi * &zeta, &pair.z / &n);
    Ok((xi, zeta))
}

/// Default bound on group multiples explored by [`enumerate_pairs`].
pub const DEFAULT_MULTIPLE_BOUND: u64 = 12;

/// Generate solution x-coordinates from multiples of a seed point (and their
/// two-torsion translates), bucket them by square-product equivalence, and
/// return up to `count` valid pairs in deterministic generation order.
pub fn enumerate_pairs(
    curve: &CongruentCurve,
    seed: &CurvePoint,
    count: usize,
    multiple_bound: u64,
) -> Result<Vec<PairSelection>> {
    if !seed.is_nontrivial() {
        return Err(Error::TrivialSolution(
            seed.x().map(format_rational).unwrap_or_else(|| "O".into()),
        ));
    }
    if count == 0 {
        return Ok(Vec::new());
    }

    // Candidate x-coordinates in generation order: multiple index ascending,
    // then the plain multiple followed by its three torsion translates.
    let mut xs: Vec<Rational> = Vec::new();
    let torsion = curve.two_torsion();
    let mut mult = seed.clone();
    for m in 1..=multiple_bound {
        if m > 1 {
            mult = curve.add(&mult, seed)?;
        }
        let mut batch = vec![mult.clone()];
        for t in &torsion {
            batch.push(curve.add(&mult, t)?);
        }
        for p in batch {
            if !p.is_nontrivial() {
                continue;
            }
            let x = p.x().unwrap();
            if !x.is_positive() {
                continue;
            }
            if !xs.contains(x) {
                xs.push(x.clone());
            }
        }
    }

    // Same bucket <=> product of representatives is a square. For positive
    // values this is exactly equality of squarefree parts, without having to
    // factor the (possibly huge) coordinates.
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let slot = buckets
            .iter()
            .position(|b| is_perfect_square(&(&xs[b[0]] * x)));
        match slot {
            Some(s) => buckets[s].push(i),
            None => buckets.push(vec![i]),
        }
    }

    let mut pairs = Vec::new();
    'outer: for j in 0..xs.len() {
        for b in &buckets {
            if !b.contains(&j) {
                continue;
            }
            for &i in b {
                if i >= j {
                    break;
                }
                pairs.push(make_pair(curve, &xs[i], &xs[j])?);
                if pairs.len() == count {
                    break 'outer;
                }
            }
        }
    }
    if pairs.len() < count {
        return Err(Error::InsufficientPairs {
            found: pairs.len(),
            requested: count,
        });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::curve::primary_seed;

    fn c(n: u64) -> CongruentCurve {
        CongruentCurve::new(n).unwrap()
    }

    #[test]
    fn classify_examples() {
        let five = c(5);
        let fib = classify(&five, &rat(1681, 144)).unwrap();
        assert!(fib.fibonacci && fib.is_square);
        assert_eq!(fib.sf, 1.into());

        let sq = classify(&five, &rat(25, 4)).unwrap();
        assert!(sq.is_square && !sq.fibonacci);

        let six = c(6);
        let ns = classify(&six, &int(18)).unwrap();
        assert!(!ns.is_square);
        assert_eq!(ns.sf, 2.into());

        assert!(matches!(
            classify(&five, &int(3)),
            Err(Error::NotOnCurve { .. })
        ));
    }

    #[test]
    fn fibonacci_witness_examples() {
        let five = c(5);
        let w = fibonacci_witness(&five, &rat(1681, 144)).unwrap();
        assert_eq!((w.l, w.k, w.m), (41.into(), 12.into(), 6.into()));

        let six = c(6);
        let w = fibonacci_witness(&six, &rat(1442401, 19600)).unwrap();
        assert_eq!((w.l, w.k, w.m), (1201.into(), 140.into(), 70.into()));

        // 25/4 is Fibonacci for N = 6 but 18 is not even a square there.
        assert!(fibonacci_witness(&six, &rat(25, 4)).is_ok());
        assert!(matches!(
            fibonacci_witness(&six, &int(18)),
            Err(Error::NotFibonacci { .. })
        ));
    }

    #[test]
    fn triangle_examples() {
        let five = c(5);
        let t = triangle_from_point(&five, &rat(1681, 144)).unwrap();
        assert_eq!((t.a.clone(), t.b.clone(), t.c.clone()), (rat(3, 2), rat(20, 3), rat(41, 6)));
        assert_eq!(t.area(), int(5));

        let six = c(6);
        let t = triangle_from_point(&six, &rat(25, 4)).unwrap();
        assert_eq!((t.a.clone(), t.b.clone(), t.c.clone()), (int(3), int(4), int(5)));
        assert_eq!(t.area(), int(6));

        assert!(matches!(
            triangle_from_point(&five, &rat(25, 4)),
            Err(Error::NotFibonacci { .. })
        ));
    }

    #[test]
    fn make_pair_examples() {
        let six = c(6);
        let p = make_pair(&six, &int(18), &rat(19602, 2209)).unwrap();
        assert_eq!(p.sqrt_xz, rat(594, 47));

        let five = c(5);
        let p = make_pair(&five, &rat(25, 4), &rat(1681, 144)).unwrap();
        assert_eq!(p.sqrt_xz, rat(205, 24));

        assert!(matches!(
            make_pair(&six, &int(18), &int(6)),
            Err(Error::TrivialSolution(_))
        ));
        assert!(matches!(
            make_pair(&six, &int(18), &int(18)),
            Err(Error::EqualSolutions(_))
        ));
        assert!(matches!(
            make_pair(&six, &int(18), &int(12)),
            Err(Error::ProductNotSquare(_))
        ));
        let five = c(5);
        assert!(matches!(
            make_pair(&five, &int(-4), &(int(-4) * int(9))),
            Err(Error::NegativeSolution(_)) | Err(Error::NotOnCurve { .. })
        ));
    }

    #[test]
    fn xi_zeta_examples() {
        let six = c(6);
        let p = make_pair(&six, &int(18), &rat(19602, 2209)).unwrap();
        let (xi, zeta) = xi_zeta(&p).unwrap();
        assert_eq!((xi.clone(), zeta.clone()), (rat(99, 47), rat(33, 47)));
        assert_eq!(&xi * &zeta * int(6), p.z);

        let five = c(5);
        let p = make_pair(&five, &rat(25, 4), &rat(1681, 144)).unwrap();
        let (xi, zeta) = xi_zeta(&p).unwrap();
        assert_eq!((xi, zeta), (rat(41, 24), rat(41, 30)));
    }

    #[test]
    fn enumerate_pairs_examples() {
        let five = c(5);
        let seed = primary_seed(5).unwrap();
        let pairs = enumerate_pairs(&five, &seed, 1, DEFAULT_MULTIPLE_BOUND).unwrap();
        assert_eq!(pairs[0].x, rat(25, 4));
        assert_eq!(pairs[0].z, rat(1681, 144));

        let six = c(6);
        let seed = primary_seed(6).unwrap();
        let pairs = enumerate_pairs(&six, &seed, 1, DEFAULT_MULTIPLE_BOUND).unwrap();
        assert_eq!(pairs[0].x, int(18));
        assert_eq!(pairs[0].z, rat(19602, 2209));

        assert!(enumerate_pairs(&six, &seed, 0, 4).unwrap().is_empty());
        assert!(matches!(
            enumerate_pairs(&six, &seed, 10_000, 2),
            Err(Error::InsufficientPairs { .. })
        ));
    }

    #[test]
    fn enumerated_pairs_share_squarefree_part() {
        let six = c(6);
        let seed = primary_seed(6).unwrap();
        for p in enumerate_pairs(&six, &seed, 4, 4).unwrap() {
            let sx = arith::squarefree_part(&p.x).unwrap().sf;
            let sz = arith::squarefree_part(&p.z).unwrap().sf;
            assert_eq!(sx, sz);
            assert_eq!(&p.sqrt_xz * &p.sqrt_xz, &p.x * &p.z);
        }
    }
}
