use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::membership::nearly_generator;
use super::{alpha, arith, contains, MonoidDescriptor, TailRule};
use crate::ordered::{AlgebraicTriple, GroupElement, GroupId, Rational};
use crate::primes;

/// Finite list of generators of `m` determined by `depth`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorWindow {
    pub descriptor: MonoidDescriptor,
    pub depth: usize,
    pub generators: Arc<Vec<GroupElement>>,
}

type Cache = Mutex<HashMap<(MonoidDescriptor, usize), Arc<Vec<GroupElement>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The generator window of depth `depth` (memoized). Windows grow with depth.
pub fn generators(m: &MonoidDescriptor, depth: usize) -> GeneratorWindow {
    let depth = depth.max(1);
    let key = (m.clone(), depth);
    if let Some(g) = cache().lock().expect("window cache poisoned").get(&key) {
        return GeneratorWindow { descriptor: m.clone(), depth, generators: g.clone() };
    }
    let g = Arc::new(build(m, depth));
    cache().lock().expect("window cache poisoned").insert(key, g.clone());
    GeneratorWindow { descriptor: m.clone(), depth, generators: g }
}

fn rat(x: Rational) -> GroupElement {
    GroupElement::rational(x)
}

/// Integer vectors with every coordinate in `-r..=r`, in comparison order.
pub(crate) fn lex_box(group: GroupId, radii: &[i64]) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; radii.len()];
    fn rec(i: usize, radii: &[i64], cur: &mut Vec<i64>, group: GroupId, out: &mut Vec<GroupElement>) {
        if i == radii.len() {
            let coords = cur.iter().map(|&c| Rational::from(c)).collect();
            out.push(group.from_coords(coords).expect("box element"));
            return;
        }
        for c in -radii[i]..=radii[i] {
            cur[i] = c;
            rec(i + 1, radii, cur, group, out);
        }
    }
    rec(0, radii, &mut cur, group, &mut out);
    out
}

fn build(m: &MonoidDescriptor, depth: usize) -> Vec<GroupElement> {
    let d = depth as i64;
    match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => gens.clone(),
        MonoidDescriptor::GeometricPuiseux { q } => (0..=depth as u32).map(|k| rat(q.pow(k))).collect(),
        MonoidDescriptor::PrimeReciprocal => primes::first_primes(depth).into_iter().map(|p| rat(Rational::frac(1, p as i64))).collect(),
        MonoidDescriptor::Localization { prime } => {
            let p = BigInt::from(*prime);
            (0..=depth).map(|k| rat(Rational::new(1, num_traits::pow(p.clone(), k)).expect("nonzero"))).collect()
        }
        MonoidDescriptor::Conductive { group, a } => match group {
            GroupId::Integers => (0..=d).map(|k| a + &GroupElement::integer(k)).collect(),
            GroupId::Rationals => {
                let step = Rational::new(BigInt::one(), a.as_rational().expect("scalar").denom().clone()).expect("nonzero");
                (0..=d).map(|k| rat(a.as_rational().expect("scalar") + &step.mul_int(&BigInt::from(k)))).collect()
            }
            _ => {
                let radii = vec![d; group.dimension()];
                lex_box(*group, &radii).into_iter().filter(|x| x >= a).collect()
            }
        },
        MonoidDescriptor::LexCone { group, .. } => {
            let radii = vec![d; group.dimension()];
            lex_box(*group, &radii)
                .into_iter()
                .filter(|x| !x.is_zero() && contains(m, x, depth).is_ok_and(|v| v.is_in()))
                .collect()
        }
        MonoidDescriptor::Product { left, right } => {
            let zl = left.group().zero();
            let zr = right.group().zero();
            let mut out: Vec<GroupElement> =
                build(left, depth).iter().map(|g| m.join_product(g, &zr).expect("product element")).collect();
            out.extend(build(right, depth).iter().map(|g| m.join_product(&zl, g).expect("product element")));
            out
        }
        MonoidDescriptor::UnionShift { base, tail } => {
            let mut out = build(base, depth);
            out.extend(tail_window(tail, depth).into_iter().map(rat));
            out.sort();
            out.dedup();
            out
        }
        MonoidDescriptor::AlphaBeta { q } => {
            let mut out = Vec::new();
            for s in alpha::s_prefix(q, depth) {
                let p = alpha::phi_s(q, &s).expect("prefix element") as i64;
                if !s.is_zero() {
                    out.push(GroupElement::triple(AlgebraicTriple::rational(s.clone())));
                }
                let k = Rational::frac(1, p);
                out.push(GroupElement::triple(AlgebraicTriple::new(-&s, Rational::one(), Rational::zero()).scale_rational(&k)));
                out.push(GroupElement::triple(AlgebraicTriple::new(-&s, Rational::zero(), Rational::one()).scale_rational(&k)));
            }
            out
        }
        MonoidDescriptor::NearlyAtomicAlpha => {
            let mut out = Vec::new();
            for r in alpha::rational_prefix(depth) {
                let p = alpha::phi_q(&r).expect("prefix element");
                if !r.is_zero() {
                    out.push(GroupElement::triple(AlgebraicTriple::rational(r.clone())));
                }
                out.push(nearly_generator(&r, p));
            }
            out
        }
    }
}

/// Tail generators in `[bound, bound + 1)` with small denominators.
fn tail_window(tail: &TailRule, depth: usize) -> Vec<Rational> {
    let (bound, dens): (&Rational, Vec<i64>) = match tail {
        TailRule::GroupAtLeast { bound } => {
            let ps = primes::first_primes(depth.min(3));
            let mut dens = vec![1i64];
            for p in ps {
                let more: Vec<i64> = dens.iter().map(|d| d * p as i64).collect();
                dens.extend(more);
            }
            (bound, dens)
        }
        TailRule::LocalizationAtLeast { prime, bound } => {
            (bound, (0..=depth.min(3) as u32).map(|k| (*prime as i64).pow(k)).collect())
        }
    };
    let mut out = Vec::new();
    for den in dens {
        let lo = bound.mul_int(&BigInt::from(den)).ceil();
        let hi = (bound + &Rational::one()).mul_int(&BigInt::from(den)).ceil();
        let mut n = lo;
        while n < hi {
            out.push(Rational::new(n.clone(), BigInt::from(den)).expect("nonzero"));
            n += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Whether `g` belongs to the defining generating set of `m`.
pub fn is_generator(m: &MonoidDescriptor, g: &GroupElement) -> bool {
    if g.group() != m.group() || !g.is_positive() {
        return false;
    }
    match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => gens.contains(g),
        MonoidDescriptor::GeometricPuiseux { q } => {
            let x = g.as_rational().expect("scalar");
            arith::level(x, q.denom()).is_some_and(|k| &q.pow(k) == x)
        }
        MonoidDescriptor::PrimeReciprocal => {
            let x = g.as_rational().expect("scalar");
            x.numer().is_one() && x.denom().try_into().is_ok_and(primes::is_prime)
        }
        MonoidDescriptor::Localization { prime } => {
            let x = g.as_rational().expect("scalar");
            x.numer().is_one() && arith::denominator_power_of(x, *prime)
        }
        // the cones are generated by all of their nonzero elements
        MonoidDescriptor::Conductive { .. } | MonoidDescriptor::LexCone { .. } => contains(m, g, 1).is_ok_and(|v| v.is_in()),
        MonoidDescriptor::Product { left, right } => {
            let Ok((l, r)) = m.split_product(g) else { return false };
            (r.is_zero() && is_generator(left, &l)) || (l.is_zero() && is_generator(right, &r))
        }
        MonoidDescriptor::UnionShift { base, tail } => {
            let x = g.as_rational().expect("scalar");
            is_generator(base, g)
                || match tail {
                    TailRule::GroupAtLeast { bound } => x >= bound && arith::squarefree_denominator(x),
                    TailRule::LocalizationAtLeast { prime, bound } => x >= bound && arith::denominator_power_of(x, *prime),
                }
        }
        MonoidDescriptor::AlphaBeta { q } => {
            let t = g.as_triple().expect("triple");
            let [c0, c1, c2] = t.coeffs();
            match (c1.is_zero(), c2.is_zero()) {
                (true, true) => alpha::s_index(q, c0).is_some(),
                (false, true) | (true, false) => {
                    let c = if c1.is_zero() { c2 } else { c1 };
                    // c = 1/p and c0 = -s/p
                    let Some(p) = c.recip().filter(Rational::is_integer).and_then(|p| u64::try_from(p.floor()).ok()) else {
                        return false;
                    };
                    let s = -(c0.mul_int(&BigInt::from(p)));
                    alpha::phi_s(q, &s) == Some(p)
                }
                _ => false,
            }
        }
        MonoidDescriptor::NearlyAtomicAlpha => {
            let t = g.as_triple().expect("triple");
            let [c0, c1, c2] = t.coeffs();
            if !c2.is_zero() {
                return false;
            }
            if c1.is_zero() {
                return !c0.is_negative();
            }
            let Some(p) = c1.recip().filter(Rational::is_integer).and_then(|p| u64::try_from(p.floor()).ok()) else {
                return false;
            };
            let r = c0.mul_int(&BigInt::from(p));
            alpha::phi_q(&r) == Some(p)
        }
    }
}
