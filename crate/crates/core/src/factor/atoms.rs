use num_bigint::BigInt;
use serde::Serialize;

use crate::models::alpha;
use crate::models::{contains, generators, window::lex_box, LexConeRule, MembershipStatus, MonoidDescriptor, TailRule};
use crate::ordered::{AlgebraicTriple, GroupElement, GroupId, Rational};
use crate::primes;

/// Atoms of a monoid inside a finite window.
#[derive(Clone, Debug, Serialize)]
pub struct AtomSet {
    pub descriptor: MonoidDescriptor,
    pub depth: usize,
    /// Ascending.
    pub atoms: Vec<GroupElement>,
    /// Every atom of the monoid is listed.
    pub complete: bool,
    /// Every atom `<=` this bound is listed.
    pub exhaustive_below: Option<GroupElement>,
    /// Closed-form candidates that failed re-verification.
    pub rejected: Vec<GroupElement>,
}

impl AtomSet {
    /// Whether every atom `<= b` is listed.
    pub fn covers(&self, b: &GroupElement) -> bool {
        self.complete || self.exhaustive_below.as_ref().is_some_and(|e| e >= b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomCheck {
    Atom,
    Decomposes(GroupElement, GroupElement),
    NotMember,
    Unknown,
}

/// Searches `a = g + (a - g)` over the window generators `g < a`.
///
/// Any decomposition `a = b + c` refines to one whose first summand is a
/// generator, so the check is exact once the window holds every generator
/// below `a`.
pub fn check_atom(m: &MonoidDescriptor, a: &GroupElement, window: &[GroupElement], depth: usize) -> AtomCheck {
    match contains(m, a, depth) {
        Ok(v) if v.is_in() => {}
        Ok(v) if v.is_out() => return AtomCheck::NotMember,
        _ => return AtomCheck::Unknown,
    }
    if a.is_zero() {
        return AtomCheck::NotMember;
    }
    let mut unknown = false;
    for g in window {
        if !g.is_positive() || g >= a {
            continue;
        }
        let rest = a - g;
        match contains(m, &rest, depth).map(|v| v.status) {
            Ok(MembershipStatus::In) => return AtomCheck::Decomposes(g.clone(), rest),
            Ok(MembershipStatus::Out) => {}
            _ => unknown = true,
        }
    }
    if unknown {
        AtomCheck::Unknown
    } else {
        AtomCheck::Atom
    }
}

struct Candidates {
    atoms: Vec<GroupElement>,
    complete: bool,
    exhaustive_below: Option<GroupElement>,
}

fn rat(x: Rational) -> GroupElement {
    GroupElement::rational(x)
}

/// Atoms with a square window box of radius `depth` for lex groups.
pub fn atoms(m: &MonoidDescriptor, depth: usize) -> AtomSet {
    let radii = vec![depth.max(1) as i64; m.group().dimension()];
    atoms_in_box(m, depth, &radii)
}

/// Atoms; lex families use the box `|coord_i| <= radii[i]` (comparison order).
pub fn atoms_in_box(m: &MonoidDescriptor, depth: usize, radii: &[i64]) -> AtomSet {
    let depth = depth.max(1);
    let cand = closed_form(m, depth, radii);
    let mut window: Vec<GroupElement> = generators(m, depth).generators.iter().cloned().collect();
    window.extend(cand.atoms.iter().cloned());
    window.sort();
    window.dedup();
    let mut atoms = Vec::new();
    let mut rejected = Vec::new();
    for a in cand.atoms {
        match check_atom(m, &a, &window, depth) {
            AtomCheck::Atom => atoms.push(a),
            _ => rejected.push(a),
        }
    }
    atoms.sort();
    atoms.dedup();
    let complete = cand.complete && rejected.is_empty();
    AtomSet { descriptor: m.clone(), depth, atoms, complete, exhaustive_below: cand.exhaustive_below, rejected }
}

fn closed_form(m: &MonoidDescriptor, depth: usize, radii: &[i64]) -> Candidates {
    let window = || Candidates { atoms: Vec::new(), complete: false, exhaustive_below: None };
    let all = |atoms: Vec<GroupElement>| {
        let top = atoms.iter().max().cloned();
        Candidates { atoms, complete: true, exhaustive_below: top }
    };
    match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => {
            // a generator is an atom iff it is not a sum of two nonzero members
            let mut out: Vec<GroupElement> = Vec::new();
            for g in gens {
                if check_atom(m, g, gens, depth) == AtomCheck::Atom && !out.contains(g) {
                    out.push(g.clone());
                }
            }
            all(out)
        }
        MonoidDescriptor::GeometricPuiseux { q } => {
            Candidates { atoms: (0..=depth as u32).map(|k| rat(q.pow(k))).collect(), ..window() }
        }
        MonoidDescriptor::PrimeReciprocal => Candidates { atoms: reciprocals(depth), ..window() },
        // 1/p^k = p * 1/p^(k+1): no atoms at all
        MonoidDescriptor::Localization { .. } => all(Vec::new()),
        MonoidDescriptor::Conductive { group, a } => {
            let two_a = a + a;
            match group {
                GroupId::Integers => {
                    let lo = a.as_rational().expect("scalar").floor();
                    let hi = two_a.as_rational().expect("scalar").floor();
                    let mut out = Vec::new();
                    let mut k = lo;
                    while k < hi {
                        out.push(GroupElement::integer(k.clone()));
                        k += 1;
                    }
                    all(out)
                }
                GroupId::Rationals => {
                    let out = generators(m, depth).generators.iter().filter(|x| **x < two_a).cloned().collect();
                    Candidates { atoms: out, ..window() }
                }
                _ => {
                    let out = lex_box(*group, radii).into_iter().filter(|x| x >= a && *x < two_a).collect();
                    Candidates { atoms: out, ..window() }
                }
            }
        }
        MonoidDescriptor::LexCone { group, rule } => {
            if !group.is_integral() {
                return all(Vec::new());
            }
            match rule {
                LexConeRule::PositiveLeading => {
                    let out = lex_box(*group, radii)
                        .into_iter()
                        .filter(|x| x.coords()[0] == Rational::one())
                        .collect();
                    Candidates { atoms: out, ..window() }
                }
                LexConeRule::NonnegativeCone => {
                    let k = group.dimension();
                    let mut c = vec![Rational::zero(); k];
                    c[k - 1] = Rational::one();
                    all(vec![group.from_coords(c).expect("unit vector")])
                }
            }
        }
        MonoidDescriptor::Product { left, right } => {
            let k = left.group().dimension();
            let (rl, rr) = if radii.len() == k + right.group().dimension() {
                (radii[..k].to_vec(), radii[k..].to_vec())
            } else {
                (vec![depth as i64; k], vec![depth as i64; right.group().dimension()])
            };
            let l = closed_form(left, depth, &rl);
            let r = closed_form(right, depth, &rr);
            let zl = left.group().zero();
            let zr = right.group().zero();
            let mut out: Vec<GroupElement> = l.atoms.iter().map(|x| m.join_product(x, &zr).expect("product")).collect();
            out.extend(r.atoms.iter().map(|x| m.join_product(&zl, x).expect("product")));
            Candidates { atoms: out, complete: l.complete && r.complete, exhaustive_below: None }
        }
        MonoidDescriptor::UnionShift { tail, .. } => match tail {
            TailRule::GroupAtLeast { .. } => Candidates { atoms: reciprocals(depth), ..window() },
            TailRule::LocalizationAtLeast { .. } => {
                // non-integers of the tail below bound + 1
                let out = generators(m, depth)
                    .generators
                    .iter()
                    .filter(|x| {
                        let v = x.as_rational().expect("scalar");
                        !v.is_integer() && tail_contains(tail, v)
                    })
                    .cloned()
                    .collect();
                Candidates { atoms: out, ..window() }
            }
        },
        MonoidDescriptor::AlphaBeta { q } => {
            let mut out: Vec<GroupElement> =
                (0..=depth as u32).map(|k| GroupElement::triple(AlgebraicTriple::rational(q.pow(k)))).collect();
            for s in alpha::s_prefix(q, depth) {
                let p = alpha::phi_s(q, &s).expect("prefix") as i64;
                let k = Rational::frac(1, p);
                out.push(GroupElement::triple(AlgebraicTriple::new(-&s, Rational::one(), Rational::zero()).scale_rational(&k)));
                out.push(GroupElement::triple(AlgebraicTriple::new(-&s, Rational::zero(), Rational::one()).scale_rational(&k)));
            }
            Candidates { atoms: out, ..window() }
        }
        MonoidDescriptor::NearlyAtomicAlpha => {
            let out = alpha::rational_prefix(depth)
                .iter()
                .map(|r| crate::models::membership::nearly_generator(r, alpha::phi_q(r).expect("prefix")))
                .collect();
            Candidates { atoms: out, ..window() }
        }
    }
}

fn tail_contains(tail: &TailRule, v: &Rational) -> bool {
    match tail {
        TailRule::GroupAtLeast { bound } => v >= bound && v < &(bound + &Rational::one()),
        TailRule::LocalizationAtLeast { bound, .. } => v >= bound && v < &(bound + &Rational::one()),
    }
}

fn reciprocals(depth: usize) -> Vec<GroupElement> {
    primes::first_primes(depth).into_iter().map(|p| rat(Rational::new(1, BigInt::from(p)).expect("prime"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &AtomSet) -> Vec<String> {
        s.atoms.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn conductive_integers() {
        let m = MonoidDescriptor::conductive(GroupElement::integer(3)).unwrap();
        let s = atoms(&m, 2);
        assert_eq!(text(&s), ["3", "4", "5"]);
        assert!(s.complete && s.rejected.is_empty());
    }

    #[test]
    fn numerical_generators() {
        let s = atoms(&MonoidDescriptor::numerical(&[4, 6, 7, 8]).unwrap(), 4);
        assert_eq!(text(&s), ["4", "6", "7"]);
    }

    #[test]
    fn lex_cone_atoms() {
        let g = GroupId::lex(2, 0).unwrap();
        let m = MonoidDescriptor::lex_cone(g, LexConeRule::PositiveLeading).unwrap();
        let s = atoms(&m, 5);
        assert_eq!(s.atoms.len(), 11);
        assert!(!s.complete && s.rejected.is_empty());
        let cone = MonoidDescriptor::lex_cone(g, LexConeRule::NonnegativeCone).unwrap();
        assert_eq!(text(&atoms(&cone, 3)), ["(0,1)@prio=0"]);
        let anti = MonoidDescriptor::lex_cone(GroupId::lex_over(2, 0, false).unwrap(), LexConeRule::PositiveLeading).unwrap();
        let s = atoms(&anti, 3);
        assert!(s.atoms.is_empty() && s.complete);
    }

    #[test]
    fn rational_families() {
        let s = atoms(&MonoidDescriptor::PrimeReciprocal, 5);
        assert_eq!(text(&s), ["1/11", "1/7", "1/5", "1/3", "1/2"]);
        let quasi = atoms(&MonoidDescriptor::quasi_not_almost(), 3);
        assert!(quasi.rejected.is_empty());
        assert!(quasi.atoms.contains(&GroupElement::rational(Rational::frac(4, 3))));
        assert!(!quasi.atoms.contains(&GroupElement::rational(Rational::from(2))));
        let ab = atoms(&MonoidDescriptor::alpha_beta(Rational::frac(2, 3)).unwrap(), 4);
        assert!(ab.rejected.is_empty(), "{:?}", ab.rejected);
        let na = atoms(&MonoidDescriptor::NearlyAtomicAlpha, 4);
        assert!(na.rejected.is_empty() && na.atoms.len() == 4);
    }
}
