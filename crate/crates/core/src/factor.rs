//! Small-scale integer factorization: trial division over a sieved prime
//! table followed by Brent's cycle-finding splitter with an iteration budget.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| {
    let n = TRIAL_LIMIT as usize;
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::with_capacity(80_000);
    for p in 2..=n {
        if !is_comp[p] {
            primes.push(p as u32);
            let mut m = p * p;
            while m <= n {
                is_comp[m] = true;
                m += p;
            }
        }
    }
    primes
});

/// Effort cap for the randomized splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Maximum number of cycle-finding iterations per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 8_000_000,
        }
    }
}

/// Prime factors of n >= 1 with multiplicity, sorted ascending.
pub fn factor(n: &BigUint, budget: &FactorBudget) -> Result<Vec<BigUint>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out: Vec<BigUint> = Vec::new();
    let mut rem = n.clone();

    // Trial division keeps the expensive path rare.
    for &p in SMALL_PRIMES.iter() {
        if rem.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rem {
            break;
        }
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            out.push(pb.clone());
        }
    }
    if !rem.is_one() {
        split(rem, budget, &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn split(n: BigUint, budget: &FactorBudget, out: &mut Vec<BigUint>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(m) = n.to_u128() {
        return split_u128(m, budget, out);
    }
    // Cofactors beyond 128 bits fall back to big-integer arithmetic.
    if is_prime_big(&n) {
        out.push(n);
        return Ok(());
    }
    let d = brent_big(&n, budget).ok_or_else(|| Error::FactorizationLimitExceeded(n.clone().into()))?;
    let q = &n / &d;
    split(d, budget, out)?;
    split(q, budget, out)
}

fn split_u128(n: u128, budget: &FactorBudget, out: &mut Vec<BigUint>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u128(n) {
        out.push(BigUint::from(n));
        return Ok(());
    }
    let d = brent_u128(n, budget).ok_or_else(|| Error::FactorizationLimitExceeded(BigUint::from(n).into()))?;
    split_u128(d, budget, out)?;
    split_u128(n / d, budget, out)
}

// ---- 128-bit modular arithmetic ----

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        // Reduced operands fit in 64 bits, so the product fits in 128.
        return (a % m) * (b % m) % m;
    }
    mulmod_double(a, b, m)
}

// Russian-peasant fallback for moduli wider than 64 bits.
fn mulmod_double(mut a: u128, mut b: u128, m: u128) -> u128 {
    let mut acc = 0u128;
    a %= m;
    while b > 0 {
        if b & 1 == 1 {
            acc = addmod(acc, a, m);
        }
        a = addmod(a, a, m);
        b >>= 1;
    }
    acc
}

fn addmod(a: u128, b: u128, m: u128) -> u128 {
    let (s, over) = a.overflowing_add(b);
    if over || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn powmod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_u128(n: u128, budget: &FactorBudget) -> Option<u128> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mut spent = 0u64;
    for c in 1u128.. {
        if spent >= budget.rho_iterations {
            return None;
        }
        let f = |x: u128| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut ys) = (2u128, 2u128);
        let mut y = 2u128;
        let (mut r, mut q, m) = (1u128, 1u128, 128u128);
        let mut g = 1u128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u128;
            while k < r && g == 1 {
                ys = y;
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q, n);
                k += m;
                spent += lim as u64;
                if spent >= budget.rho_iterations {
                    return None;
                }
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time.
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys), n);
                spent += 1;
                if spent >= budget.rho_iterations {
                    return None;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---- big-integer fallback ----

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        let ab = BigUint::from(a);
        if &ab >= n {
            continue;
        }
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_big(n: &BigUint, budget: &FactorBudget) -> Option<BigUint> {
    let mut spent = 0u64;
    for c in 1u32..64 {
        let cb = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cb) % n;
        let mut x = BigUint::from(2u32);
        let mut y = f(&x);
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            g = diff.gcd(n);
            spent += 1;
            if spent >= budget.rho_iterations {
                return None;
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_small_and_medium() {
        let b = FactorBudget::default();
        assert!(factor(&BigUint::from(1u32), &b).unwrap().is_empty());
        let f = factor(&BigUint::from(5476u32), &b).unwrap();
        assert_eq!(f, vec![2u32.into(), 2u32.into(), 37u32.into(), 37u32.into()]);
        // Semiprime past the trial-division limit.
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let f = factor(&(&p * &q), &b).unwrap();
        assert_eq!(f, vec![p, q]);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let tight = FactorBudget { rho_iterations: 1 };
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(1_000_033u64);
        let err = factor(&(&p * &q), &tight).unwrap_err();
        assert!(matches!(err, Error::FactorizationLimitExceeded(_)));
    }

    #[test]
    fn large_prime_detected() {
        // 2^89 - 1 is a Mersenne prime, larger than u64.
        let m89 = (BigUint::one() << 89) - BigUint::one();
        let f = factor(&m89, &FactorBudget::default()).unwrap();
        assert_eq!(f, vec![m89]);
    }
}
