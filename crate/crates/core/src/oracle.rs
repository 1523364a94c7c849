//! Independent brute-force search for the four Diophantine systems, plus the
//! classical equal-sum-of-biquadratics identities as external solutions of
//! the quartic balance equation. Used to cross-validate the parametric
//! constructors: anything they produce within bounds must also be found here.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::systems::{SolutionRecord, SystemTag};

/// One integer solution of a system: the shared side plus the square
/// generators. `rs` is populated only for [`SystemTag::DoubleSquares`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SolutionTuple {
    pub p: u64,
    pub q: u64,
    pub side: u128,
    pub rs: Option<(u64, u64)>,
}

/// A search hit in raw and gcd-primitive form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub raw: SolutionTuple,
    pub primitive: SolutionTuple,
}

/// Result of one exhaustive search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub tag: SystemTag,
    pub bound_pq: u64,
    pub bound_side: u128,
    pub hits: Vec<Hit>,
    pub elapsed: Duration,
}

/// u⁴ + v⁴ = e⁴ + f⁴ + g⁴ with all entries positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BiquadraticIdentity {
    pub left: (u64, u64),
    pub right: (u64, u64, u64),
}

/// The three classical identities used in the intersection section.
pub const DICKSON_IDENTITIES: [BiquadraticIdentity; 3] = [
    BiquadraticIdentity { left: (7, 28), right: (3, 20, 26) },
    BiquadraticIdentity { left: (51, 76), right: (5, 42, 78) },
    BiquadraticIdentity { left: (37, 38), right: (25, 26, 42) },
];

/// External quartic-balance solution derived from a biquadratic identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eq28Solution {
    pub p: u64,
    pub q: u64,
    pub a: u128,
    pub r: u64,
    pub s: u64,
    pub pq_equals_rs: bool,
}

fn quart(v: u64) -> u128 {
    let v = v as u128;
    v * v * v * v
}

/// Exact check of u⁴ + v⁴ = e⁴ + f⁴ + g⁴.
pub fn verify_biquadratic(id: &BiquadraticIdentity) -> bool {
    let (u, v) = id.left;
    let (e, f, g) = id.right;
    [u, v, e, f, g].iter().all(|&w| w > 0) && quart(u) + quart(v) == quart(e) + quart(f) + quart(g)
}

/// Transform u⁴ + v⁴ = e⁴ + f⁴ + g⁴ into a quartic-balance solution by
/// moving g⁴ to the left: p = u, q = v, a = g², r = e, s = f.
pub fn biquadratic_to_eq28(id: &BiquadraticIdentity) -> Result<Eq28Solution> {
    if !verify_biquadratic(id) {
        return Err(Error::InvalidIdentity);
    }
    let (u, v) = id.left;
    let (e, f, g) = id.right;
    let a = (g as u128) * (g as u128);
    debug_assert_eq!(quart(u) + quart(v) - a * a, quart(e) + quart(f));
    Ok(Eq28Solution {
        p: u,
        q: v,
        a,
        r: e,
        s: f,
        pq_equals_rs: (u as u128) * (v as u128) == (e as u128) * (f as u128),
    })
}

fn isqrt_u128(n: u128) -> (u128, bool) {
    let r = n.sqrt();
    (r, r * r == n)
}

fn is_square_u128(n: u128) -> bool {
    isqrt_u128(n).1
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Largest d dividing all square generators with d² dividing the side.
fn primitive_form(t: SolutionTuple) -> SolutionTuple {
    let mut g = gcd_u64(t.p, t.q);
    if let Some((r, s)) = t.rs {
        g = gcd_u64(g, gcd_u64(r, s));
    }
    let mut d = 1u64;
    for cand in (1..=g).rev() {
        if g % cand == 0 && t.side % ((cand as u128) * (cand as u128)) == 0 {
            d = cand;
            break;
        }
    }
    SolutionTuple {
        p: t.p / d,
        q: t.q / d,
        side: t.side / ((d as u128) * (d as u128)),
        rs: t.rs.map(|(r, s)| (r / d, s / d)),
    }
}

fn tuple_satisfies(tag: SystemTag, t: &SolutionTuple) -> bool {
    let p2 = (t.p as u128) * (t.p as u128);
    let q2 = (t.q as u128) * (t.q as u128);
    if t.p <= t.q || t.q == 0 || t.side == 0 {
        return false;
    }
    let plus = p2 + q2;
    let minus = p2 - q2;
    let sq = t.side * t.side;
    match tag {
        SystemTag::LegsCommonHypSquares => {
            plus * plus > sq
                && minus * minus > sq
                && is_square_u128(plus * plus - sq)
                && is_square_u128(minus * minus - sq)
        }
        SystemTag::HypCommonLegSquares => {
            sq > plus * plus
                && is_square_u128(sq - plus * plus)
                && is_square_u128(sq - minus * minus)
        }
        SystemTag::LegsCommonLegSquares => {
            is_square_u128(sq + plus * plus) && is_square_u128(sq + minus * minus)
        }
        SystemTag::DoubleSquares => match t.rs {
            Some((r, s)) => {
                let r2 = (r as u128) * (r as u128);
                let s2 = (s as u128) * (s as u128);
                r > s
                    && (r, s) != (t.p, t.q)
                    && plus * plus - sq == (r2 + s2) * (r2 + s2)
                    && minus * minus - sq == (r2 - s2) * (r2 - s2)
            }
            None => false,
        },
    }
}

/// Exhaustive search: square generators up to `bound_pq`, the free shared
/// side up to `bound_side`. Deterministic; hits sorted lexicographically.
pub fn brute_force_system(tag: SystemTag, bound_pq: u64, bound_side: u128) -> SearchReport {
    let start = Instant::now();
    let mut hits = Vec::new();
    match tag {
        SystemTag::DoubleSquares => {
            // Subtracting the two equations forces pq = rs, so (r, s) ranges
            // over the divisor pairs of pq and the side follows by square
            // root instead of a scan.
            for p in 2..=bound_pq {
                for q in 1..p {
                    let prod = p * q;
                    for r in (q + 1)..p {
                        if prod % r != 0 {
                            continue;
                        }
                        let s = prod / r;
                        if s >= r || s == 0 || r > bound_pq {
                            continue;
                        }
                        let p2 = (p as u128) * (p as u128);
                        let q2 = (q as u128) * (q as u128);
                        let r2 = (r as u128) * (r as u128);
                        let s2 = (s as u128) * (s as u128);
                        let plus = p2 + q2;
                        let rplus = r2 + s2;
                        if rplus >= plus {
                            continue;
                        }
                        let (side, exact) = isqrt_u128(plus * plus - rplus * rplus);
                        if !exact || side == 0 || side > bound_side {
                            continue;
                        }
                        let t = SolutionTuple { p, q, side, rs: Some((r, s)) };
                        if tuple_satisfies(tag, &t) {
                            hits.push(Hit { raw: t, primitive: primitive_form(t) });
                        }
                    }
                }
            }
        }
        _ => {
            for p in 2..=bound_pq {
                for q in 1..p {
                    for side in 1..=bound_side {
                        let t = SolutionTuple { p, q, side, rs: None };
                        if tuple_satisfies(tag, &t) {
                            hits.push(Hit { raw: t, primitive: primitive_form(t) });
                        }
                    }
                }
            }
        }
    }
    hits.sort_by_key(|h| h.raw);
    SearchReport {
        tag,
        bound_pq,
        bound_side,
        hits,
        elapsed: start.elapsed(),
    }
}

/// Outcome of comparing parametric records against the brute-force oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    pub tag: SystemTag,
    pub bound_pq: u64,
    pub bound_side: u128,
    /// Records whose primitive tuple appeared among the oracle hits.
    pub matched: Vec<SolutionTuple>,
    /// Records within bounds that the oracle did not find. Must be empty.
    pub misses: Vec<SolutionTuple>,
    /// Records whose unknowns exceed the bounds; skipped, not compared.
    pub out_of_range: usize,
    /// Oracle hits not covered by any supplied record (informational).
    pub unmatched_hits: Vec<SolutionTuple>,
}

impl CrossCheckReport {
    pub fn consistent(&self) -> bool {
        self.misses.is_empty()
    }
}

fn record_tuple(rec: &SolutionRecord, bound_pq: u64, bound_side: u128) -> Option<SolutionTuple> {
    let small = |v: &BigInt| v.to_u64().filter(|&w| w <= bound_pq);
    let mut p = small(rec.unknown("p")?)?;
    let mut q = small(rec.unknown("q")?)?;
    if p < q {
        std::mem::swap(&mut p, &mut q);
    }
    let side = rec.side().to_u128().filter(|&w| w <= bound_side)?;
    let rs = match rec.tag {
        SystemTag::DoubleSquares => {
            let mut r = small(rec.unknown("r")?)?;
            let mut s = small(rec.unknown("s")?)?;
            if r < s {
                std::mem::swap(&mut r, &mut s);
            }
            Some((r, s))
        }
        _ => None,
    };
    Some(SolutionTuple { p, q, side, rs })
}

/// Compare a batch of same-tag records against an exhaustive search over the
/// given bounds. Records outside the bounds are skipped and counted.
pub fn cross_check(
    tag: SystemTag,
    records: &[SolutionRecord],
    bound_pq: u64,
    bound_side: u128,
) -> CrossCheckReport {
    let report = brute_force_system(tag, bound_pq, bound_side);
    let oracle: Vec<SolutionTuple> = report.hits.iter().map(|h| h.primitive).collect();
    let mut matched = Vec::new();
    let mut misses = Vec::new();
    let mut out_of_range = 0usize;
    let mut covered = vec![false; oracle.len()];
    for rec in records.iter().filter(|r| r.tag == tag) {
        match record_tuple(rec, bound_pq, bound_side) {
            Some(t) => {
                let prim = primitive_form(t);
                match oracle.iter().position(|o| *o == prim) {
                    Some(i) => {
                        covered[i] = true;
                        matched.push(t);
                    }
                    None => misses.push(t),
                }
            }
            None => out_of_range += 1,
        }
    }
    let unmatched_hits = oracle
        .iter()
        .zip(&covered)
        .filter(|(_, c)| !**c)
        .map(|(t, _)| *t)
        .collect();
    CrossCheckReport {
        tag,
        bound_pq,
        bound_side,
        matched,
        misses,
        out_of_range,
        unmatched_hits,
    }
}
