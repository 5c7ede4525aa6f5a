//! Bounded integer factorization.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_prime::factor::pollard_rho;
use num_prime::nt_funcs::{is_prime, primes};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Default number of rho iterations allowed per attempt.
pub const DEFAULT_FACTOR_BOUND: u64 = 1 << 20;

pub const FACTOR_BOUND_ENV: &str = "CYCLOTORIC_FACTOR_BOUND";

const RHO_ATTEMPTS: u64 = 8;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes(TRIAL_DIVISION_LIMIT))
}

/// The rho iteration cap, from the environment when set.
pub fn factor_bound() -> u64 {
    std::env::var(FACTOR_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_FACTOR_BOUND)
}

/// `m = rᵏ` with `k` maximal.
fn perfect_power(m: &BigUint) -> (BigUint, u32) {
    let max_k = m.bits() as u32 / 20;
    for k in (2..=max_k).rev() {
        let r = m.nth_root(k);
        if r.pow(k) == *m {
            return (r, k);
        }
    }
    (m.clone(), 1)
}

fn find_divisor(m: &BigUint, bound: u64) -> Option<BigUint> {
    for offset in 1..=RHO_ATTEMPTS {
        let (d, _) = pollard_rho(m, BigUint::from(2u32), BigUint::from(offset), bound as usize);
        if let Some(d) = d.filter(|d| !d.is_one() && d != m) {
            return Some(d);
        }
    }
    None
}

/// Prime factorization of `|n|`. Composite cofactors that resist every rho
/// attempt within `bound` iterations give [`Error::FactorBoundExceeded`].
pub fn factorize(n: &BigInt, bound: u64) -> Result<BTreeMap<BigUint, u32>> {
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let mut m = n.abs().to_biguint().expect("absolute value");
    let mut out = BTreeMap::new();
    for &p in small_primes() {
        if m.is_one() {
            return Ok(out);
        }
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    if m.is_one() {
        return Ok(out);
    }

    let mut todo = vec![(m, 1u32)];
    while let Some((m, mult)) = todo.pop() {
        let small = m.to_u64().is_some_and(|v| v < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT);
        if small || is_prime(&m, None).probably() {
            *out.entry(m).or_insert(0) += mult;
            continue;
        }
        let (root, k) = perfect_power(&m);
        if k > 1 {
            todo.push((root, mult * k));
            continue;
        }
        let d = find_divisor(&m, bound).ok_or(Error::FactorBoundExceeded(bound))?;
        let (q, r) = m.div_rem(&d);
        debug_assert!(r.is_zero());
        todo.push((d, mult));
        todo.push((q, mult));
    }
    Ok(out)
}
