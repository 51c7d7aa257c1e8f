//! Valuation, sign and order properties of the ground groups. Oracles use
//! only the group order and addition, or exact integer squaring.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use posmon_core::ordered::{integer_triple_sign, AlgebraicTriple, GroupElement, GroupId, Rational};

const CASES: u32 = 10_000;
/// Coordinates stay below 1000 in magnitude, so any two elements of the same
/// class are within this factor of each other.
const N: i64 = 1_000_000;

/// `|h| <= N |g|`: `h` is O(g), i.e. `v(g) <= v(h)`.
fn dominated(h: &GroupElement, g: &GroupElement) -> bool {
    h.abs() <= g.abs().scale_i64(N)
}

fn check_pair(g: &GroupElement, h: &GroupElement) -> Result<(), TestCaseError> {
    let (vg, vh) = (g.arch_valuation().unwrap(), h.arch_valuation().unwrap());
    // the valuation order agrees with domination
    prop_assert_eq!(vg <= vh, dominated(h, g));
    prop_assert_eq!(vh <= vg, dominated(g, h));
    let s = g + h;
    if s.is_zero() {
        return Ok(());
    }
    let vs = s.arch_valuation().unwrap();
    let min = if vg <= vh { &vg } else { &vh };
    prop_assert!(&vs >= min);
    let big = if vg <= vh { g } else { h };
    prop_assert!(dominated(&s, big));
    if vg != vh {
        prop_assert!(&vs == min);
        prop_assert!(dominated(big, &s));
    }
    Ok(())
}

fn lex_elem(group: GroupId, c: Vec<i64>) -> GroupElement {
    group.from_coords(c.into_iter().map(Rational::from).collect()).unwrap()
}

/// Sparse coordinates, so different classes show up often.
fn coord() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 2 => -999i64..=999]
}

fn lex_coords(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(coord(), rank).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(CASES))]

    #[test]
    fn valuation_integers(a in -999i64..=999, b in -999i64..=999) {
        prop_assume!(a != 0 && b != 0);
        check_pair(&GroupElement::integer(a), &GroupElement::integer(b))?;
    }

    #[test]
    fn valuation_rationals(a in -999i64..=999, d in 1i64..=30, b in -999i64..=999, e in 1i64..=30) {
        prop_assume!(a != 0 && b != 0);
        check_pair(&GroupElement::rational(Rational::frac(a, d)), &GroupElement::rational(Rational::frac(b, e)))?;
    }

    #[test]
    fn valuation_lex_rank2(g in lex_coords(2), h in lex_coords(2), prio in 0usize..2) {
        let group = GroupId::lex(2, prio).unwrap();
        check_pair(&lex_elem(group, g), &lex_elem(group, h))?;
    }

    #[test]
    fn valuation_lex_rank3(g in lex_coords(3), h in lex_coords(3), prio in 0usize..3) {
        let group = GroupId::lex(3, prio).unwrap();
        check_pair(&lex_elem(group, g), &lex_elem(group, h))?;
    }

    #[test]
    fn valuation_lex_rational(g in lex_coords(2), h in lex_coords(2), d in 1i64..=7) {
        let group = GroupId::lex_over(2, 0, false).unwrap();
        let mk = |v: Vec<i64>| group.from_coords(v.into_iter().map(|c| Rational::frac(c, d)).collect()).unwrap();
        check_pair(&mk(g), &mk(h))?;
    }

    #[test]
    fn valuation_triples(g in prop::array::uniform3(-30i64..=30), h in prop::array::uniform3(-30i64..=30)) {
        prop_assume!(g != [0; 3] && h != [0; 3]);
        let mk = |c: [i64; 3]| GroupElement::triple(AlgebraicTriple::new(c[0].into(), c[1].into(), c[2].into()));
        // one class: the valuation is constant
        let (x, y) = (mk(g), mk(h));
        prop_assert_eq!(x.arch_valuation().unwrap(), y.arch_valuation().unwrap());
        let s = &x + &y;
        if !s.is_zero() {
            prop_assert_eq!(s.arch_valuation().unwrap(), x.arch_valuation().unwrap());
        }
    }
}

/// Sign of `x + y sqrt2` by squaring.
fn sign2(x: i128, y: i128) -> Ordering {
    let (sx, sy) = (x.cmp(&0), y.cmp(&0));
    if sy == Ordering::Equal || sx == sy {
        return if sx == Ordering::Equal { sy } else { sx };
    }
    if sx == Ordering::Equal {
        return sy;
    }
    // opposite signs: compare x^2 with 2 y^2
    match (x * x).cmp(&(2 * y * y)) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b sqrt2 + c sqrt3`.
fn sign3(a: i128, b: i128, c: i128) -> Ordering {
    let su = sign2(a, b);
    let sc = c.cmp(&0);
    if sc == Ordering::Equal || su == sc {
        return if su == Ordering::Equal { sc } else { su };
    }
    if su == Ordering::Equal {
        return sc;
    }
    // |u|^2 - 3 c^2 = a^2 + 2 b^2 - 3 c^2 + 2ab sqrt2
    match sign2(a * a + 2 * b * b - 3 * c * c, 2 * a * b) {
        Ordering::Greater => su,
        Ordering::Less => sc,
        Ordering::Equal => Ordering::Equal,
    }
}

proptest! {
    #![proptest_config(config(5_000))]

    #[test]
    fn triple_sign_matches_squaring(a in -10_000i64..=10_000, b in -10_000i64..=10_000, c in -10_000i64..=10_000) {
        let got = integer_triple_sign(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
        prop_assert_eq!(got, sign3(a.into(), b.into(), c.into()));
    }

    #[test]
    fn near_cancellation(k in 1i64..200) {
        // convergents of sqrt2 and sqrt3 give tiny values
        let (p, q) = [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70), (239, 169), (577, 408)][(k % 8) as usize];
        for (a, b, c) in [(p, -q, 0), (-p, q, 0), (p * k, -q * k, 0), (0, p, -q), (q, p - q, -p)] {
            let got = integer_triple_sign(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
            prop_assert_eq!(got, sign3(a.into(), b.into(), c.into()));
        }
    }

    #[test]
    fn order_is_translation_invariant(g in prop::collection::vec(-50i64..=50, 3), h in prop::collection::vec(-50i64..=50, 3), k in prop::collection::vec(-50i64..=50, 3), prio in 0usize..3) {
        let group = GroupId::lex(3, prio).unwrap();
        let (g, h, k) = (lex_elem(group, g), lex_elem(group, h), lex_elem(group, k));
        prop_assert_eq!(g.cmp(&h), (&g + &k).cmp(&(&h + &k)));
        prop_assert_eq!(g.cmp(&h), (-&h).cmp(&(-&g)));
        prop_assert_eq!(&(&g + &h) - &h, g);
    }

    #[test]
    fn triple_order_is_translation_invariant(g in prop::array::uniform3(-50i64..=50), h in prop::array::uniform3(-50i64..=50), k in prop::array::uniform3(-50i64..=50)) {
        let mk = |c: [i64; 3]| GroupElement::triple(AlgebraicTriple::new(c[0].into(), c[1].into(), c[2].into()));
        let (g, h, k) = (mk(g), mk(h), mk(k));
        prop_assert_eq!(g.cmp(&h), (&g + &k).cmp(&(&h + &k)));
        let d = (&g - &h).as_triple().unwrap().clone();
        let c = d.coeffs();
        let int = |x: &Rational| i128::try_from(x.floor()).unwrap();
        prop_assert_eq!(g.cmp(&h), sign3(int(&c[0]), int(&c[1]), int(&c[2])));
    }

    #[test]
    fn rationals_stay_in_lowest_terms(a in -500i64..=500, b in 1i64..=500, c in -500i64..=500, d in 1i64..=500) {
        let (x, y) = (Rational::frac(a, b), Rational::frac(c, d));
        let mut vals = vec![&x + &y, &x - &y, &x * &y];
        if !y.is_zero() {
            vals.push(&x / &y);
        }
        for v in vals {
            prop_assert!(v.denom() > &BigInt::from(0));
            prop_assert_eq!(v.numer().gcd(v.denom()), BigInt::from(1));
        }
        let s = &x + &y;
        prop_assert_eq!(s.numer() * BigInt::from(b * d), BigInt::from(a * d + c * b) * s.denom());
    }
}
