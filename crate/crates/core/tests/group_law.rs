//! Group-law properties on the congruent number curves, all exact: closure,
//! commutativity, associativity, identity/inverse laws, and agreement of the
//! generic chord-tangent doubling with the closed-form tangent formulas.

use cnpair_core::arith::{int, is_perfect_square, Rational};
use cnpair_core::curve::{primary_seed, CongruentCurve, CurvePoint};
use cnpair_core::solutions::classify;
use proptest::prelude::*;

const CURVES: [u64; 4] = [5, 6, 7, 34];

/// Deterministic pool of nontrivial points: small multiples of the primary
/// seed, their torsion translates and negations.
fn point_pool(curve: &CongruentCurve) -> Vec<CurvePoint> {
    let seed = primary_seed(curve.n()).unwrap();
    let mut pool = Vec::new();
    for m in 1..=5u64 {
        let p = curve.multiply(m, &seed).unwrap();
        if !p.is_nontrivial() {
            continue;
        }
        pool.push(p.clone());
        pool.push(p.negate());
        for t in curve.two_torsion() {
            let q = curve.add(&p, &t).unwrap();
            if q.is_nontrivial() {
                pool.push(q);
            }
        }
    }
    pool
}

#[test]
fn identity_and_inverse_laws() {
    for n in CURVES {
        let curve = CongruentCurve::new(n).unwrap();
        for p in point_pool(&curve) {
            assert_eq!(curve.add(&p, &CurvePoint::Identity).unwrap(), p);
            assert_eq!(curve.add(&CurvePoint::Identity, &p).unwrap(), p);
            assert_eq!(curve.add(&p, &p.negate()).unwrap(), CurvePoint::Identity);
        }
        for t in curve.two_torsion() {
            assert_eq!(curve.add(&t, &t).unwrap(), CurvePoint::Identity);
        }
    }
}

#[test]
fn closure_on_pool_sums() {
    for n in CURVES {
        let curve = CongruentCurve::new(n).unwrap();
        let pool = point_pool(&curve);
        for p in &pool {
            for q in &pool {
                let s = curve.add(p, q).unwrap();
                if let (Some(x), Some(y)) = (s.x(), s.y()) {
                    assert!(curve.contains(x, y), "sum left the curve on N={n}");
                }
            }
        }
    }
}

/// Closed-form tangent doubling: x' = ((x^2+N^2)/(2y))^2 and
/// y' = (x^2+N^2)(x^4+N^4-6x^2N^2)/(8y^3).
fn closed_form_double(curve: &CongruentCurve, x: &Rational, y: &Rational) -> (Rational, Rational) {
    let n2 = curve.n_rat() * curve.n_rat();
    let x2 = x * x;
    let num = &x2 + &n2;
    let xd = (&num / (int(2) * y)) * (&num / (int(2) * y));
    let quart = &x2 * &x2 + &n2 * &n2 - int(6) * &x2 * &n2;
    let yd = &num * &quart / (int(8) * y * y * y);
    (xd, yd)
}

#[test]
fn tangent_formula_matches_generic_doubling() {
    let mut checked = 0usize;
    for n in CURVES {
        let curve = CongruentCurve::new(n).unwrap();
        for p in point_pool(&curve) {
            let (x, y) = (p.x().unwrap(), p.y().unwrap());
            let d = curve.double(&p).unwrap();
            let (xd, yd) = closed_form_double(&curve, x, y);
            assert_eq!(d.x().unwrap(), &xd);
            assert_eq!(d.y().unwrap(), &yd);
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} points checked");
}

#[test]
fn doubled_points_satisfy_three_square_conditions() {
    for n in CURVES {
        let curve = CongruentCurve::new(n).unwrap();
        for p in point_pool(&curve) {
            let d = curve.double(&p).unwrap();
            let x = d.x().unwrap();
            assert!(is_perfect_square(x));
            let class = classify(&curve, x).unwrap();
            assert!(class.fibonacci, "2P not Fibonacci on N={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn commutativity_and_associativity(
        n in prop::sample::select(CURVES.to_vec()),
        i in 0usize..64,
        j in 0usize..64,
        k in 0usize..64,
    ) {
        let curve = CongruentCurve::new(n).unwrap();
        let pool = point_pool(&curve);
        let p = &pool[i % pool.len()];
        let q = &pool[j % pool.len()];
        let r = &pool[k % pool.len()];
        prop_assert_eq!(curve.add(p, q).unwrap(), curve.add(q, p).unwrap());
        let left = curve.add(&curve.add(p, q).unwrap(), r).unwrap();
        let right = curve.add(p, &curve.add(q, r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn double_matches_self_addition(
        n in prop::sample::select(CURVES.to_vec()),
        i in 0usize..64,
    ) {
        let curve = CongruentCurve::new(n).unwrap();
        let pool = point_pool(&curve);
        let p = &pool[i % pool.len()];
        prop_assert_eq!(curve.double(p).unwrap(), curve.add(p, p).unwrap());
    }
}
