//! Central binomial coefficients and symmetric chain decompositions.

use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

pub const CENTRAL_BINOMIAL_CAP: usize = 10_000;

/// `b(n) = C(n, floor(n/2))`, the largest antichain in the subsets of an `n`-set.
pub fn central_binomial_b(n: usize) -> Result<BigUint> {
    if n > CENTRAL_BINOMIAL_CAP {
        return Err(Error::SizeLimit {
            what: "central binomial argument",
            size: n as u128,
            cap: CENTRAL_BINOMIAL_CAP as u128,
        });
    }
    let k = n / 2;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    Ok(acc)
}

/// `b(n)` as a machine integer, for `n <= 66`.
pub fn central_binomial_u64(n: usize) -> Option<u64> {
    if n > 66 {
        return None;
    }
    let k = n as u64 / 2;
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n as u128 - i as u128) / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

/// Least `n` with `c <= b(n)`.
pub fn least_n_with_b_at_least(c: u64) -> usize {
    (0..).find(|&n| central_binomial_u64(n).is_some_and(|b| b >= c)).unwrap()
}

/// A symmetric chain decomposition of the subsets of `{0..n-1}` (as bit masks),
/// built by the recursive doubling construction. There are exactly `b(n)` chains.
pub fn symmetric_chains(n: usize) -> Result<Vec<Vec<u64>>> {
    if n > 20 {
        return Err(Error::SizeLimit {
            what: "symmetric chain decomposition ground set",
            size: n as u128,
            cap: 20,
        });
    }
    let mut chains: Vec<Vec<u64>> = vec![vec![0]];
    for i in 0..n {
        let bit = 1u64 << i;
        let mut next = Vec::with_capacity(chains.len() * 2);
        for chain in &chains {
            let mut longer = chain.clone();
            longer.push(chain.last().unwrap() | bit);
            next.push(longer);
            if chain.len() >= 2 {
                next.push(chain[..chain.len() - 1].iter().map(|s| s | bit).collect());
            }
        }
        chains = next;
    }
    Ok(chains)
}
