//! Small prime utilities on top of `primal`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    primal::Primes::all().take(n).map(|p| p as u64).collect()
}

/// Primes `<= bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    primal::Primes::all().take_while(|&p| p as u64 <= bound).map(|p| p as u64).collect()
}

/// The `n`-th prime, 1-based (`nth_prime(1) = 2`).
pub fn nth_prime(n: usize) -> u64 {
    assert!(n >= 1, "primes are indexed from 1");
    primal::StreamingSieve::nth_prime(n) as u64
}

/// 1-based index of a prime (`prime_index(2) = 1`), `None` for non-primes.
pub fn prime_index(p: u64) -> Option<usize> {
    if !primal::is_prime(p) {
        return None;
    }
    Some(primal::StreamingSieve::prime_pi(p as usize))
}

pub fn is_prime(n: u64) -> bool {
    primal::is_prime(n)
}

/// Prime factorization as `(p, exponent)` pairs in increasing order.
///
/// Trial division up to `trial_limit`; a cofactor that is then prime is
/// accepted, otherwise `None`.
pub fn factorize(n: &BigUint, trial_limit: u64) -> Option<Vec<(u64, u32)>> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.clone();
    let mut out = Vec::new();
    for p in primal::Primes::all().map(|p| p as u64).take_while(|&p| p <= trial_limit) {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if &bp * &bp > rest {
            break;
        }
    }
    if !rest.is_one() {
        let r = rest.to_u64()?;
        if r <= trial_limit.saturating_mul(trial_limit) || primal::is_prime(r) {
            out.push((r, 1));
        } else {
            return None;
        }
    }
    Some(out)
}

/// Default trial-division limit: enough for every denominator in the
/// gallery and the property suites.
pub const TRIAL_LIMIT: u64 = 1 << 20;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices() {
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
        assert_eq!(nth_prime(25), 97);
        assert_eq!(prime_index(97), Some(25));
        assert_eq!(prime_index(91), None);
    }

    #[test]
    fn factor_small() {
        let f = factorize(&BigUint::from(360u32), TRIAL_LIMIT).unwrap();
        assert_eq!(f, vec![(2, 3), (3, 2), (5, 1)]);
        let big = BigUint::from(1_000_003u64) * BigUint::from(4u32);
        assert_eq!(factorize(&big, 100), Some(vec![(2, 2), (1_000_003, 1)]));
        assert_eq!(factorize(&BigUint::one(), 10), Some(vec![]));
    }
}
