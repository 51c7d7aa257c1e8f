//! Number-theoretic decision procedures for the rational families.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ordered::Rational;
use crate::primes;

/// Smallest `N` with `d^N * x` an integer, if any.
pub fn level(x: &Rational, d: &BigInt) -> Option<u32> {
    let mut rest = x.denom().clone();
    let mut n = 0;
    while !rest.is_one() {
        let g = rest.gcd(d);
        if g.is_one() {
            return None;
        }
        rest /= g;
        n += 1;
    }
    Some(n)
}

/// Modular inverse of `a` modulo `m` (`m >= 1`), if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Canonical representation `x = c_0 + sum_{k=1}^N c_k q^k` with
/// `0 <= c_k < d(q)` for `k >= 1` and `c_N > 0`.
///
/// Every element of `M_q` has exactly one such representation; the digits are
/// recovered top-down from `c_k = d^k x_k * n^{-k} mod d`. Returns `None` when
/// `x` has a denominator outside `Z[1/d]` or the leftover `c_0` is negative.
pub fn mq_digits(q: &Rational, x: &Rational) -> Option<Vec<BigInt>> {
    let (n, d) = (q.numer().clone(), q.denom().clone());
    let top = level(x, &d)?;
    let n_inv = mod_inverse(&n, &d).expect("n(q) and d(q) are coprime");
    let mut digits = vec![BigInt::zero(); top as usize + 1];
    let mut rest = x.clone();
    for k in (1..=top).rev() {
        let scaled = rest.mul_int(&num_traits::pow(d.clone(), k as usize));
        debug_assert!(scaled.is_integer());
        let c = (scaled.numer() * num_traits::pow(n_inv.clone(), k as usize)).mod_floor(&d);
        rest = &rest - &q.pow(k).mul_int(&c);
        digits[k as usize] = c;
    }
    debug_assert!(rest.is_integer());
    if rest.is_negative() {
        return None;
    }
    digits[0] = rest.floor();
    Some(digits)
}

/// Squarefree partial fractions `x = m + sum_p r_p / p` with `0 < r_p < p`
/// over the primes dividing `d(x)`. `None` if `d(x)` is not squarefree.
pub fn prime_partial_fractions(x: &Rational) -> Option<(Vec<(u64, u64)>, BigInt)> {
    let den = x.denom_u();
    let factors = primes::factorize(&den, primes::TRIAL_LIMIT)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return None;
    }
    let den_i = BigInt::from(den);
    let mut terms = Vec::with_capacity(factors.len());
    let mut acc = BigInt::zero();
    for &(p, _) in &factors {
        let bp = BigInt::from(p);
        let cof = &den_i / &bp;
        let inv = mod_inverse(&cof, &bp).expect("squarefree cofactor is invertible");
        let r = (x.numer() * inv).mod_floor(&bp);
        acc += &r * &cof;
        terms.push((p, r.to_u64().expect("r < p")));
    }
    let m = (x.numer() - acc).div_floor(&den_i);
    Some((terms, m))
}

/// Membership in `<1/p | p prime>`: squarefree denominator and a nonnegative
/// integer part after removing the minimal partial fractions.
pub fn in_m0(x: &Rational) -> bool {
    !x.is_negative() && prime_partial_fractions(x).is_some_and(|(_, m)| !m.is_negative())
}

/// Whether every prime factor of `d(x)` is `p`.
pub fn denominator_power_of(x: &Rational, p: u64) -> bool {
    let mut den = x.denom_u();
    let bp = BigUint::from(p);
    while (&den % &bp).is_zero() {
        den /= &bp;
    }
    den.is_one()
}

/// Squarefree denominator test (the difference group of `<1/p>`).
pub fn squarefree_denominator(x: &Rational) -> bool {
    primes::factorize(&x.denom_u(), primes::TRIAL_LIMIT).is_some_and(|f| f.iter().all(|&(_, e)| e == 1))
}

/// Splits `x in Z[1/(p1 p2)]` as `m + s/p1^i + t/p2^j` with `0 <= s < p1^i`
/// and `0 <= t < p2^j` for the minimal exponents `i, j`.
pub fn two_prime_split(x: &Rational, p1: u64, p2: u64) -> Option<(BigInt, Rational, Rational)> {
    let mut den = x.denom().clone();
    let (b1, b2) = (BigInt::from(p1), BigInt::from(p2));
    let mut pow1 = BigInt::one();
    let mut pow2 = BigInt::one();
    while (&den % &b1).is_zero() {
        den /= &b1;
        pow1 *= &b1;
    }
    while (&den % &b2).is_zero() {
        den /= &b2;
        pow2 *= &b2;
    }
    if !den.is_one() {
        return None;
    }
    let a = x.numer();
    let s = (a * mod_inverse(&pow2, &pow1)?).mod_floor(&pow1);
    let t = (a * mod_inverse(&pow1, &pow2)?).mod_floor(&pow2);
    let s = Rational::new(s, pow1.clone()).expect("nonzero");
    let t = Rational::new(t, pow2.clone()).expect("nonzero");
    let m = x - &s - &t;
    debug_assert!(m.is_integer());
    Some((m.floor(), s, t))
}

/// Membership in `<Z[1/p1]_{>=0} u Z[1/p2]_{>=bound}>`.
///
/// Writing `x = u + v` with `u` in the first set and `v` zero or in the
/// second: if `x` has no `p2` part, `v = 0` works whenever `x >= 0`;
/// otherwise `v = t/p2^j + k` for an integer `k` with
/// `bound - t/p2^j <= k <= m + s/p1^i`.
pub fn two_prime_tail_split(x: &Rational, p1: u64, p2: u64, bound: &Rational) -> Option<(Rational, Rational)> {
    if x.is_negative() {
        return None;
    }
    let (_, _, t) = two_prime_split(x, p1, p2)?;
    if t.is_zero() {
        return Some((x.clone(), Rational::zero()));
    }
    let k = (bound - &t).ceil();
    let v = &t + &Rational::from_integer(k);
    let u = x - &v;
    if u.is_negative() {
        None
    } else {
        Some((u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn mq_digits_examples() {
        let q = r(2, 3);
        let d = mq_digits(&q, &r(4, 3)).unwrap();
        // 4/3 = 2 * (2/3)
        assert_eq!(d, vec![BigInt::zero(), BigInt::from(2)]);
        assert!(mq_digits(&q, &r(1, 2)).is_none());
        // 1/3 = c0 + c1 (2/3) forces c1 = 2 (mod 3), c0 = -1.
        assert!(mq_digits(&q, &r(1, 3)).is_none());
    }

    #[test]
    fn m0_examples() {
        assert!(in_m0(&r(5, 6)));
        assert!(!in_m0(&r(1, 6)));
        assert!(!in_m0(&r(1, 4)));
        assert!(in_m0(&r(1, 1)));
        let (terms, m) = prime_partial_fractions(&r(1, 6)).unwrap();
        assert_eq!(terms, vec![(2, 1), (3, 2)]);
        assert_eq!(m, BigInt::from(-1));
    }

    #[test]
    fn quasi_split() {
        let four_thirds = r(4, 3);
        assert!(two_prime_tail_split(&r(1, 2), 2, 3, &four_thirds).is_some());
        assert!(two_prime_tail_split(&r(4, 3), 2, 3, &four_thirds).is_some());
        assert!(two_prime_tail_split(&r(1, 3), 2, 3, &four_thirds).is_none());
        assert!(two_prime_tail_split(&r(5, 6), 2, 3, &four_thirds).is_none());
        // 11/6 = 1/2 + 4/3
        assert_eq!(two_prime_tail_split(&r(11, 6), 2, 3, &four_thirds), Some((r(1, 2), r(4, 3))));
    }
}
