use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::atoms::{atoms, AtomSet};
use super::kernel;
use crate::error::{Error, Result};
use crate::models::{contains, MonoidDescriptor};
use crate::ordered::GroupElement;

pub const DEFAULT_MAX_COUNT: usize = 10_000;

/// Multiplicity cap for atoms whose multiplicity no order argument bounds.
const MULT_CAP: u64 = 64;

/// A factorization: atoms with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub value: GroupElement,
    pub parts: Vec<(GroupElement, u64)>,
}

impl Factorization {
    pub fn length(&self) -> u64 {
        self.parts.iter().map(|(_, k)| k).sum()
    }

    /// `sum mult * atom`.
    pub fn evaluate(&self) -> GroupElement {
        self.parts.iter().fold(self.value.group().zero(), |acc, (a, k)| &acc + &a.scale(&BigInt::from(*k)))
    }

    pub fn empty(value: GroupElement) -> Self {
        Factorization { value, parts: Vec::new() }
    }
}

impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Factorization", 4)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("atoms", &self.parts.iter().map(|(a, _)| a).collect::<Vec<_>>())?;
        st.serialize_field("mults", &self.parts.iter().map(|(_, k)| k).collect::<Vec<_>>())?;
        st.serialize_field("length", &self.length())?;
        st.end()
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|(a, k)| format!("{k}*[{}]", crate::models::bare_text(a))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationSet {
    pub value: GroupElement,
    pub factorizations: Vec<Factorization>,
    /// Equals the full set of factorizations.
    pub complete: bool,
    /// Stopped at `max_count`.
    pub truncated: bool,
    pub note: Option<String>,
}

/// Atoms `<= b`, descending, as used by the search.
fn usable(set: &AtomSet, b: &GroupElement) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = set.atoms.iter().filter(|a| *a <= b).cloned().collect();
    out.reverse();
    out
}

/// Enumerates factorizations of `b` over the atoms of the depth window.
pub fn factorizations(m: &MonoidDescriptor, b: &GroupElement, depth: usize, max_count: usize) -> Result<FactorizationSet> {
    let set = atoms(m, depth);
    factorizations_over(m, &set, b, depth, max_count)
}

pub fn factorizations_over(
    m: &MonoidDescriptor,
    set: &AtomSet,
    b: &GroupElement,
    depth: usize,
    max_count: usize,
) -> Result<FactorizationSet> {
    let v = contains(m, b, depth)?;
    if v.is_out() {
        return Err(Error::NotAMember(b.to_string()));
    }
    if b.is_zero() {
        return Ok(FactorizationSet {
            value: b.clone(),
            factorizations: vec![Factorization::empty(b.clone())],
            complete: true,
            truncated: false,
            note: None,
        });
    }
    let pool = usable(set, b);
    if pool.is_empty() {
        let note = if set.complete && set.atoms.is_empty() { "NotAtomicFamily: the monoid has no atoms" } else { "no atoms below the element in the window" };
        return Ok(FactorizationSet {
            value: b.clone(),
            factorizations: Vec::new(),
            complete: set.complete,
            truncated: false,
            note: Some(note.into()),
        });
    }
    let out = kernel::solve_elements(&pool, b, max_count, MULT_CAP);
    let factorizations = out
        .solutions
        .iter()
        .map(|sol| Factorization {
            value: b.clone(),
            parts: pool.iter().cloned().zip(sol.iter().copied()).filter(|(_, k)| *k > 0).collect(),
        })
        .collect();
    Ok(FactorizationSet {
        value: b.clone(),
        factorizations,
        complete: set.covers(b) && out.exhaustive(),
        truncated: out.truncated,
        note: out.capped.then(|| format!("multiplicities capped at {MULT_CAP}")),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub value: GroupElement,
    pub lengths: BTreeSet<u64>,
    pub complete: bool,
}

pub fn length_set(m: &MonoidDescriptor, b: &GroupElement, depth: usize) -> Result<LengthSet> {
    let fs = factorizations(m, b, depth, DEFAULT_MAX_COUNT)?;
    Ok(lengths_of(&fs))
}

pub fn lengths_of(fs: &FactorizationSet) -> LengthSet {
    LengthSet { value: fs.value.clone(), lengths: fs.factorizations.iter().map(Factorization::length).collect(), complete: fs.complete }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "factorization", rename_all = "kebab-case")]
pub enum AtomicVerdict {
    Yes(Factorization),
    No,
    Unknown,
}

/// Searches for one factorization of `b`, deepening the window once.
pub fn is_atomic_element(m: &MonoidDescriptor, b: &GroupElement, depth: usize) -> Result<AtomicVerdict> {
    if b.is_zero() {
        contains(m, b, depth)?;
        return Ok(AtomicVerdict::Yes(Factorization::empty(b.clone())));
    }
    let deeper = if m.group().is_archimedean() { vec![depth, 2 * depth] } else { vec![depth] };
    for d in deeper {
        let fs = factorizations(m, b, d, 1)?;
        if let Some(f) = fs.factorizations.into_iter().next() {
            return Ok(AtomicVerdict::Yes(f));
        }
        if fs.complete {
            return Ok(AtomicVerdict::No);
        }
    }
    Ok(AtomicVerdict::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::LexConeRule;
    use crate::ordered::{GroupId, Rational};

    #[test]
    fn three_five() {
        let m = MonoidDescriptor::numerical(&[3, 5]).unwrap();
        let fs = factorizations(&m, &GroupElement::integer(15), 4, 100).unwrap();
        let text: Vec<String> = fs.factorizations.iter().map(|f| f.to_string()).collect();
        assert_eq!(text, ["5*[3]", "3*[5]"]);
        assert!(fs.complete);
        let ls = lengths_of(&fs);
        assert_eq!(ls.lengths.into_iter().collect::<Vec<_>>(), [3, 5]);
        assert!(factorizations(&m, &GroupElement::integer(7), 4, 100).is_err());
    }

    #[test]
    fn nz_cone_two_zero() {
        let g = GroupId::lex(2, 0).unwrap();
        let m = MonoidDescriptor::lex_cone(g, LexConeRule::PositiveLeading).unwrap();
        let fs = factorizations(&m, &GroupElement::lex(&[2, 0], 0).unwrap(), 5, 100).unwrap();
        assert_eq!(fs.factorizations.len(), 6);
        assert!(!fs.complete);
        assert!(fs.factorizations.iter().all(|f| f.length() == 2 && f.evaluate() == fs.value));
    }

    #[test]
    fn atomic_elements() {
        let quasi = MonoidDescriptor::quasi_not_almost();
        let four = GroupElement::rational(Rational::from(4));
        match is_atomic_element(&quasi, &four, 3).unwrap() {
            AtomicVerdict::Yes(f) => assert_eq!(f.evaluate(), four),
            v => panic!("{v:?}"),
        }
        let cone = MonoidDescriptor::lex_cone(GroupId::lex(2, 0).unwrap(), LexConeRule::NonnegativeCone).unwrap();
        let e = GroupElement::lex(&[1, 0], 0).unwrap();
        assert_eq!(is_atomic_element(&cone, &e, 4).unwrap(), AtomicVerdict::No);
    }
}
