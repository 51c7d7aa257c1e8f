//! Deterministic injections into the primes used by the two monoids built
//! over `sqrt2` / `sqrt3`.
//!
//! * For `S = {s in M_q : s < sqrt2}` the enumeration is by level (the least
//!   `N` with `d(q)^N s` integral) and by value inside a level; the `n`-th
//!   element (0-based) is sent to the `(n+1)`-th prime, so `phi(0) = 2`.
//! * For the nonnegative rationals the enumeration is `0` followed by the
//!   Calkin-Wilf sequence `1, 1/2, 2, 1/3, 3/2, ...`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::arith;
use crate::ordered::Rational;
use crate::primes;

/// Deepest level of `S` that will be materialized.
pub const MAX_S_LEVEL: u32 = 9;

#[derive(Default)]
struct Discovery {
    levels: Vec<Vec<Rational>>,
    flat: Vec<Rational>,
}

fn cache() -> &'static Mutex<HashMap<Rational, Discovery>> {
    static CACHE: OnceLock<Mutex<HashMap<Rational, Discovery>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn below_sqrt2(x: &Rational) -> bool {
    x.is_negative() || &(x * x) < &Rational::from(2)
}

/// Elements of level exactly `level`, sorted by value.
fn level_elements(q: &Rational, level: u32) -> Vec<Rational> {
    let d = q.denom().to_u64().expect("small denominator");
    let mut out = Vec::new();
    if level == 0 {
        return vec![Rational::zero(), Rational::one()];
    }
    let powers: Vec<Rational> = (0..=level).map(|k| q.pow(k)).collect();
    // digits c_level in 1..d, then c_{level-1}..c_1 in 0..d, then c_0 in {0,1}
    fn walk(k: u32, partial: Rational, powers: &[Rational], d: u64, out: &mut Vec<Rational>) {
        if k == 0 {
            for c0 in 0..2 {
                let v = &partial + &Rational::from(c0);
                if below_sqrt2(&v) {
                    out.push(v);
                }
            }
            return;
        }
        let top = k as usize == powers.len() - 1;
        for c in (if top { 1 } else { 0 })..d {
            let v = &partial + &powers[k as usize].mul_int(&BigInt::from(c));
            if !below_sqrt2(&v) {
                break;
            }
            walk(k - 1, v, powers, d, out);
        }
    }
    walk(level, Rational::zero(), &powers, d, &mut out);
    out.sort();
    out
}

fn with_discovery<R>(q: &Rational, count: usize, f: impl FnOnce(&Discovery) -> R) -> R {
    let mut guard = cache().lock().expect("discovery cache poisoned");
    let entry = guard.entry(q.clone()).or_default();
    while entry.flat.len() < count && (entry.levels.len() as u32) <= MAX_S_LEVEL {
        let next = level_elements(q, entry.levels.len() as u32);
        entry.flat.extend(next.iter().cloned());
        entry.levels.push(next);
    }
    f(entry)
}

/// First `n` elements of `S` in discovery order (fewer if the level cap is hit).
pub fn s_prefix(q: &Rational, n: usize) -> Vec<Rational> {
    with_discovery(q, n, |disc| disc.flat.iter().take(n).cloned().collect())
}

/// Position of `s` in the discovery order of `S`.
pub fn s_index(q: &Rational, s: &Rational) -> Option<usize> {
    if !below_sqrt2(s) || s.is_negative() || arith::mq_digits(q, s).is_none() {
        return None;
    }
    let level = arith::level(s, q.denom())?;
    if level > MAX_S_LEVEL {
        return None;
    }
    let mut guard = cache().lock().expect("discovery cache poisoned");
    let entry = guard.entry(q.clone()).or_default();
    while entry.levels.len() as u32 <= level {
        let next = level_elements(q, entry.levels.len() as u32);
        entry.flat.extend(next.iter().cloned());
        entry.levels.push(next);
    }
    let before: usize = entry.levels[..level as usize].iter().map(Vec::len).sum();
    entry.levels[level as usize].binary_search(s).ok().map(|i| before + i)
}

/// `phi(s)` for `s in S`.
pub fn phi_s(q: &Rational, s: &Rational) -> Option<u64> {
    s_index(q, s).map(|i| primes::nth_prime(i + 1))
}

/// `phi^{-1}(p)`: the element of `S` sent to the prime `p`.
pub fn phi_s_inverse(q: &Rational, p: u64) -> Option<Rational> {
    let idx = primes::prime_index(p)? - 1;
    with_discovery(q, idx + 1, |disc| disc.flat.get(idx).cloned())
}

/// The `n`-th term (1-based) of the Calkin-Wilf sequence.
pub fn calkin_wilf(n: u64) -> Rational {
    assert!(n >= 1, "the Calkin-Wilf sequence starts at index 1");
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        if (n >> i) & 1 == 0 {
            b = &a + &b;
        } else {
            a = &a + &b;
        }
    }
    Rational::new(a, b).expect("positive")
}

/// Index of a positive rational in the Calkin-Wilf sequence.
pub fn calkin_wilf_index(x: &Rational) -> Option<u64> {
    if !x.is_positive() {
        return None;
    }
    let (mut a, mut b) = (x.numer().clone(), x.denom().clone());
    let mut path = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if path.len() >= 63 {
            return None;
        }
        if a < b {
            b -= &a;
            path.push(0u8);
        } else {
            a -= &b;
            path.push(1u8);
        }
        if a.is_zero() || b.is_zero() {
            return None;
        }
    }
    let mut n: u64 = 1;
    for bit in path.iter().rev() {
        n = (n << 1) | *bit as u64;
    }
    Some(n)
}

/// `phi(x)` on the nonnegative rationals.
pub fn phi_q(x: &Rational) -> Option<u64> {
    if x.is_zero() {
        return Some(2);
    }
    let pos = calkin_wilf_index(x)?;
    let pos = usize::try_from(pos).ok().filter(|&p| p < 5_000_000)?;
    Some(primes::nth_prime(pos + 1))
}

/// `phi^{-1}(p)` on the nonnegative rationals.
pub fn phi_q_inverse(p: u64) -> Option<Rational> {
    let pos = primes::prime_index(p)? - 1;
    Some(if pos == 0 { Rational::zero() } else { calkin_wilf(pos as u64) })
}

/// First `n` nonnegative rationals in the enumeration `0, cw(1), cw(2), ...`.
pub fn rational_prefix(n: usize) -> Vec<Rational> {
    (0..n).map(|i| if i == 0 { Rational::zero() } else { calkin_wilf(i as u64) }).collect()
}

/// Sum of the minimal partial-fraction weights `sum_p r_p * phi^{-1}(p) / p`.
pub(crate) fn weighted_partial_sum(
    terms: &[(u64, u64)],
    inverse: impl Fn(u64) -> Option<Rational>,
) -> Option<Rational> {
    let mut acc = Rational::zero();
    for &(p, r) in terms {
        let s = inverse(p)?;
        acc += &(s.mul_int(&BigInt::from(r)) / Rational::from(p as i64));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calkin_wilf_prefix() {
        let got: Vec<String> = (1..=7).map(|n| calkin_wilf(n).to_string()).collect();
        assert_eq!(got, ["1", "1/2", "2", "1/3", "3/2", "2/3", "3"]);
        for n in 1..200 {
            assert_eq!(calkin_wilf_index(&calkin_wilf(n)), Some(n));
        }
    }

    #[test]
    fn phi_on_rationals() {
        assert_eq!(phi_q(&Rational::zero()), Some(2));
        assert_eq!(phi_q(&Rational::one()), Some(3));
        assert_eq!(phi_q(&Rational::frac(1, 2)), Some(5));
        assert_eq!(phi_q_inverse(5), Some(Rational::frac(1, 2)));
    }

    #[test]
    fn discovery_order_two_thirds() {
        let q = Rational::frac(2, 3);
        let s = s_prefix(&q, 6);
        // level 0: 0, 1; level 1: 2/3, 4/3 (c1 in {1,2}), then 5/3 > sqrt2 is cut.
        let text: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        assert_eq!(&text[..4], ["0", "1", "2/3", "4/3"]);
        assert_eq!(phi_s(&q, &Rational::zero()), Some(2));
        assert_eq!(phi_s(&q, &Rational::one()), Some(3));
        assert_eq!(phi_s_inverse(&q, 7), Some(Rational::frac(4, 3)));
        assert_eq!(s_index(&q, &Rational::frac(3, 2)), None);
    }
}
