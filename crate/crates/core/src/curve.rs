//! The curve C_N : y^2 = x^3 - N^2 x over the rationals, with the full
//! chord-and-tangent group law on its rational points.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, format_rational, sqrt_exact, Rational};
use crate::error::{Error, Result};

/// The curve y^2 = x^3 - N^2 x for a positive squarefree N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruentCurve {
    n: u64,
}

/// A rational point: the group identity or an affine pair bound to one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Identity,
    Affine { n: u64, x: Rational, y: Rational },
}

impl CongruentCurve {
    /// Checks that n is positive and squarefree.
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        let d = arith::squarefree_part(&arith::int(n as i64))?;
        if d.sf != BigInt::from(n) {
            return Err(Error::NotASquare(format!("{n} is not squarefree")));
        }
        Ok(CongruentCurve { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_rat(&self) -> Rational {
        arith::int(self.n as i64)
    }

    /// The curve polynomial x^3 - N^2 x evaluated at x.
    pub fn rhs(&self, x: &Rational) -> Rational {
        let n2 = &self.n_rat() * &self.n_rat();
        x * x * x - n2 * x
    }

    /// True iff y^2 = x^3 - N^2 x exactly.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.rhs(x)
    }

    /// Affine point constructor with an on-curve check.
    pub fn point(&self, x: Rational, y: Rational) -> Result<CurvePoint> {
        if !self.contains(&x, &y) {
            return Err(Error::NotOnCurve {
                n: self.n,
                x: format_rational(&x),
            });
        }
        Ok(CurvePoint::Affine { n: self.n, x, y })
    }

    /// Recover the point with nonnegative y above a solution x-coordinate.
    pub fn lift_x(&self, x: Rational) -> Result<CurvePoint> {
        let rhs = self.rhs(&x);
        let y = sqrt_exact(&rhs).map_err(|_| Error::NotOnCurve {
            n: self.n,
            x: format_rational(&x),
        })?;
        Ok(CurvePoint::Affine { n: self.n, x, y })
    }

    /// The three points of order two: (0,0), (N,0), (-N,0).
    pub fn two_torsion(&self) -> [CurvePoint; 3] {
        let z = arith::int(0);
        let n = self.n_rat();
        [
            CurvePoint::Affine { n: self.n, x: z.clone(), y: z.clone() },
            CurvePoint::Affine { n: self.n, x: n.clone(), y: z.clone() },
            CurvePoint::Affine { n: self.n, x: -n, y: z },
        ]
    }

    fn check_bound(&self, p: &CurvePoint) -> Result<()> {
        match p {
            CurvePoint::Identity => Ok(()),
            CurvePoint::Affine { n, .. } if *n == self.n => Ok(()),
            CurvePoint::Affine { n, .. } => Err(Error::CurveMismatch(self.n, *n)),
        }
    }

    /// Chord law. Equal points delegate to [`CongruentCurve::double`];
    /// inverse pairs give the identity.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.check_bound(p)?;
        self.check_bound(q)?;
        let (x1, y1) = match p {
            CurvePoint::Identity => return Ok(q.clone()),
            CurvePoint::Affine { x, y, .. } => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Identity => return Ok(p.clone()),
            CurvePoint::Affine { x, y, .. } => (x, y),
        };
        if x1 == x2 {
            if y1 == &(-y2.clone()) {
                return Ok(CurvePoint::Identity);
            }
            return self.double(p);
        }
        let lambda = (y2 - y1) / (x2 - x1);
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = &lambda * (x1 - &x3) - y1;
        Ok(CurvePoint::Affine { n: self.n, x: x3, y: y3 })
    }

    /// Tangent law with slope (3x^2 - N^2) / (2y); two-torsion doubles to
    /// the identity.
    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.check_bound(p)?;
        let (x, y) = match p {
            CurvePoint::Identity => return Ok(CurvePoint::Identity),
            CurvePoint::Affine { x, y, .. } => (x, y),
        };
        if y.is_zero() {
            return Ok(CurvePoint::Identity);
        }
        let n2 = &self.n_rat() * &self.n_rat();
        let lambda = (arith::int(3) * x * x - n2) / (arith::int(2) * y);
        let x3 = &lambda * &lambda - x - x;
        let y3 = &lambda * (x - &x3) - y;
        Ok(CurvePoint::Affine { n: self.n, x: x3, y: y3 })
    }

    /// m-fold group sum by double-and-add, m >= 1.
    pub fn multiply(&self, m: u64, p: &CurvePoint) -> Result<CurvePoint> {
        self.check_bound(p)?;
        if m == 0 {
            return Err(Error::ZeroInput);
        }
        let mut acc = CurvePoint::Identity;
        let mut base = p.clone();
        let mut m = m;
        loop {
            if m & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            m >>= 1;
            if m == 0 {
                break;
            }
            base = self.double(&base)?;
        }
        Ok(acc)
    }
}

impl CurvePoint {
    /// Affine with y != 0.
    pub fn is_nontrivial(&self) -> bool {
        match self {
            CurvePoint::Identity => false,
            CurvePoint::Affine { y, .. } => !y.is_zero(),
        }
    }

    pub fn negate(&self) -> CurvePoint {
        match self {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { n, x, y } => CurvePoint::Affine {
                n: *n,
                x: x.clone(),
                y: -y.clone(),
            },
        }
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Identity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Identity => None,
            CurvePoint::Affine { y, .. } => Some(y),
        }
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CurvePoint::Identity => serializer.serialize_str("O"),
            CurvePoint::Affine { x, y, .. } => {
                let mut s = serializer.serialize_struct("CurvePoint", 2)?;
                s.serialize_field("x", &format_rational(x))?;
                s.serialize_field("y", &format_rational(y))?;
                s.end()
            }
        }
    }
}

/// Point deserialization needs the curve to rebind and re-check coordinates.
pub fn deserialize_point<'de, D: Deserializer<'de>>(
    curve: &CongruentCurve,
    deserializer: D,
) -> std::result::Result<CurvePoint, D::Error> {
    use serde::de::Error as DeError;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Ident(String),
        Affine { x: String, y: String },
    }
    match Repr::deserialize(deserializer)? {
        Repr::Ident(s) if s == "O" => Ok(CurvePoint::Identity),
        Repr::Ident(s) => Err(DeError::custom(format!("unknown point literal {s:?}"))),
        Repr::Affine { x, y } => {
            let x = arith::parse_rational(&x).map_err(DeError::custom)?;
            let y = arith::parse_rational(&y).map_err(DeError::custom)?;
            curve.point(x, y).map_err(DeError::custom)
        }
    }
}

/// Built-in solution x-coordinates with a known rational point, one entry
/// per supported N; the y-coordinate is recovered exactly on demand.
pub const SEED_XS: &[(u64, &[&str])] = &[
    (5, &["-4", "25/4", "1681/144", "12005/961", "45"]),
    (6, &["18", "19602/2209", "25/4", "1442401/19600"]),
    (7, &["25"]),
    (34, &["162", "2178/49", "833/16", "153/4"]),
];

/// All seed points for a supported N, in table order.
pub fn seed_points(n: u64) -> Result<Vec<CurvePoint>> {
    let curve = CongruentCurve::new(n)?;
    let xs = SEED_XS
        .iter()
        .find(|(m, _)| *m == n)
        .map(|(_, xs)| *xs)
        .unwrap_or(&[]);
    xs.iter()
        .map(|s| curve.lift_x(arith::parse_rational(s)?))
        .collect()
}

/// The first seed point for a supported N, if any.
pub fn primary_seed(n: u64) -> Result<CurvePoint> {
    seed_points(n)?
        .into_iter()
        .next()
        .ok_or(Error::NotOnCurve { n, x: "no built-in seed".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn c(n: u64) -> CongruentCurve {
        CongruentCurve::new(n).unwrap()
    }

    #[test]
    fn contains_examples() {
        assert!(c(5).contains(&int(-4), &int(6)));
        assert!(c(5).contains(&int(0), &int(0)));
        assert!(!c(5).contains(&int(1), &int(1)));
    }

    #[test]
    fn nontriviality() {
        let five = c(5);
        assert!(!five.point(int(0), int(0)).unwrap().is_nontrivial());
        assert!(five.point(int(-4), int(6)).unwrap().is_nontrivial());
        assert!(!CurvePoint::Identity.is_nontrivial());
    }

    #[test]
    fn two_torsion_sets() {
        for n in [5u64, 6, 1] {
            let t = c(n).two_torsion();
            let xs: Vec<Rational> = t.iter().map(|p| p.x().unwrap().clone()).collect();
            assert_eq!(xs, vec![int(0), int(n as i64), int(-(n as i64))]);
            assert!(t.iter().all(|p| p.y().unwrap().is_zero()));
        }
    }

    #[test]
    fn negate_examples() {
        let five = c(5);
        let p = five.point(int(-4), int(6)).unwrap();
        assert_eq!(p.negate(), five.point(int(-4), int(-6)).unwrap());
        assert_eq!(CurvePoint::Identity.negate(), CurvePoint::Identity);
        let t = five.point(int(5), int(0)).unwrap();
        assert_eq!(t.negate(), t);
    }

    #[test]
    fn add_identity_inverse_chord() {
        let five = c(5);
        let p = five.point(int(-4), int(6)).unwrap();
        assert_eq!(five.add(&p, &CurvePoint::Identity).unwrap(), p);
        assert_eq!(
            five.add(&p, &p.negate()).unwrap(),
            CurvePoint::Identity
        );
        let t = five.point(int(0), int(0)).unwrap();
        let s = five.add(&p, &t).unwrap();
        assert_eq!(s.x().unwrap(), &rat(25, 4));
        assert_eq!(s.y().unwrap(), &rat(75, 8));
        assert!(five.contains(s.x().unwrap(), s.y().unwrap()));
    }

    #[test]
    fn double_examples() {
        let five = c(5);
        let p = five.point(int(-4), int(6)).unwrap();
        let d = five.double(&p).unwrap();
        assert_eq!(d.x().unwrap(), &rat(1681, 144));
        assert_eq!(d.y().unwrap(), &rat(-62279, 1728));
        assert!(five.contains(d.x().unwrap(), d.y().unwrap()));
        let t = five.point(int(0), int(0)).unwrap();
        assert_eq!(five.double(&t).unwrap(), CurvePoint::Identity);
        let t = five.point(int(5), int(0)).unwrap();
        assert_eq!(five.double(&t).unwrap(), CurvePoint::Identity);
    }

    #[test]
    fn multiply_matches_repeated_addition() {
        let five = c(5);
        let p = five.point(int(-4), int(6)).unwrap();
        assert_eq!(five.multiply(2, &p).unwrap(), five.double(&p).unwrap());
        let three = five.add(&five.double(&p).unwrap(), &p).unwrap();
        assert_eq!(five.multiply(3, &p).unwrap(), three);
        let t = five.point(int(0), int(0)).unwrap();
        assert_eq!(five.multiply(4, &t).unwrap(), CurvePoint::Identity);
        assert_eq!(five.multiply(1, &p).unwrap(), p);
    }

    #[test]
    fn mismatched_curves_rejected() {
        let five = c(5);
        let six = c(6);
        let p = five.point(int(-4), int(6)).unwrap();
        let q = six.point(int(18), int(72)).unwrap();
        assert_eq!(five.add(&p, &q), Err(Error::CurveMismatch(5, 6)));
    }

    #[test]
    fn curve_constructor_rejects_non_squarefree() {
        assert!(CongruentCurve::new(12).is_err());
        assert!(CongruentCurve::new(0).is_err());
        assert!(CongruentCurve::new(34).is_ok());
    }

    #[test]
    fn seed_table_lifts() {
        for (n, xs) in SEED_XS {
            let pts = seed_points(*n).unwrap();
            assert_eq!(pts.len(), xs.len());
            let curve = c(*n);
            for p in &pts {
                assert!(curve.contains(p.x().unwrap(), p.y().unwrap()));
            }
        }
    }
}
