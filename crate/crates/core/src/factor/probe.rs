use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::atoms::{atoms, atoms_in_box, AtomSet};
use super::enumerate::{factorizations_over, is_atomic_element, AtomicVerdict, Factorization, DEFAULT_MAX_COUNT};
use crate::error::{Error, Result};
use crate::models::window::lex_box;
use crate::models::{contains, MonoidDescriptor};
use crate::ordered::{GroupElement, GroupId};

/// Default member box for lex families: `|c_0| <= 4`, `|c_i| <= 20`.
pub const DEFAULT_LEX_BOX: (i64, i64) = (4, 20);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    Ufm,
    Hfm,
    Lfm,
    Ffm,
    Bfm,
    Accp,
    Sam,
    Atm,
    Nam,
    Aam,
    Qam,
}

impl Property {
    /// Strongest first; each implies the next.
    pub const CHAIN: [Property; 10] = [
        Property::Ufm,
        Property::Lfm,
        Property::Ffm,
        Property::Bfm,
        Property::Accp,
        Property::Sam,
        Property::Atm,
        Property::Nam,
        Property::Aam,
        Property::Qam,
    ];

    pub const ALL: [Property; 11] = [
        Property::Ufm,
        Property::Hfm,
        Property::Lfm,
        Property::Ffm,
        Property::Bfm,
        Property::Accp,
        Property::Sam,
        Property::Atm,
        Property::Nam,
        Property::Aam,
        Property::Qam,
    ];

    pub const PROBED: [Property; 6] = [Property::Atm, Property::Bfm, Property::Ffm, Property::Hfm, Property::Lfm, Property::Ufm];

    pub fn name(self) -> &'static str {
        match self {
            Property::Ufm => "UFM",
            Property::Hfm => "HFM",
            Property::Lfm => "LFM",
            Property::Ffm => "FFM",
            Property::Bfm => "BFM",
            Property::Accp => "ACCP",
            Property::Sam => "SAM",
            Property::Atm => "ATM",
            Property::Nam => "NAM",
            Property::Aam => "AAM",
            Property::Qam => "QAM",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown property `{s}`")))
    }
}

/// Members examined by a probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeBound {
    /// Members `0 <= b <= bound` of a monoid of the integers.
    Scalar(i64),
    /// Members in the box `|c_i| <= radii[i]` (comparison order) of a lex group.
    LexBox(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ProbeResult {
    Consistent { members_checked: usize, exhaustive: bool },
    Refuted { element: GroupElement, factorizations: Vec<Factorization> },
    Inconclusive { element: GroupElement, reason: String },
}

impl ProbeResult {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ProbeResult::Refuted { .. })
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, ProbeResult::Consistent { .. })
    }
}

/// Nonzero members of `m` below the bound, ascending.
pub fn members_below(m: &MonoidDescriptor, bound: &ProbeBound, depth: usize) -> Result<Vec<GroupElement>> {
    let candidates: Vec<GroupElement> = match (m.group(), bound) {
        (GroupId::Integers, ProbeBound::Scalar(n)) => (1..=*n).map(GroupElement::integer).collect(),
        (g @ GroupId::Lex { .. }, ProbeBound::LexBox(r)) if r.len() == g.dimension() => lex_box(g, r),
        (g, b) => return Err(Error::Unsupported(format!("probe bound {b:?} for group {g}"))),
    };
    let mut out = Vec::new();
    for x in candidates {
        if !x.is_positive() {
            continue;
        }
        let v = contains(m, &x, depth)?;
        if v.is_in() {
            out.push(x);
        } else if !v.is_out() {
            return Err(Error::Unsupported(format!("membership of {x} is not exact")));
        }
    }
    out.sort();
    Ok(out)
}

/// The default bound for a descriptor: `bound` itself for integer monoids,
/// the box `(4, 20, 20, ...)` for lex groups.
pub fn default_bound(m: &MonoidDescriptor, scalar: i64) -> ProbeBound {
    match m.group() {
        GroupId::Lex { rank, .. } => {
            let mut r = vec![DEFAULT_LEX_BOX.1; rank];
            r[0] = DEFAULT_LEX_BOX.0;
            ProbeBound::LexBox(r)
        }
        _ => ProbeBound::Scalar(scalar),
    }
}

/// Checks `prop` on every member below the bound.
pub fn probe_property(m: &MonoidDescriptor, prop: Property, bound: &ProbeBound, depth: usize) -> Result<ProbeResult> {
    if !Property::PROBED.contains(&prop) {
        return Err(Error::Unsupported(format!("{prop} is not probe-decidable")));
    }
    let members = members_below(m, bound, depth)?;
    let set = match bound {
        ProbeBound::LexBox(r) => {
            let radii: Vec<i64> = r.iter().map(|&x| x.max(depth as i64)).collect();
            atoms_in_box(m, depth, &radii)
        }
        ProbeBound::Scalar(_) => atoms(m, depth),
    };
    if let (ProbeBound::Scalar(n), true) = (bound, set.complete && m.group() == GroupId::Integers) {
        if let Some(r) = scalar_fast_path(m, &set, prop, *n, depth)? {
            return Ok(r);
        }
    }
    let mut exhaustive = true;
    for b in &members {
        if prop == Property::Atm {
            match is_atomic_element(m, b, depth)? {
                AtomicVerdict::Yes(_) => continue,
                AtomicVerdict::No => return Ok(ProbeResult::Refuted { element: b.clone(), factorizations: Vec::new() }),
                AtomicVerdict::Unknown => {
                    return Ok(ProbeResult::Inconclusive { element: b.clone(), reason: "no factorization in the window".into() })
                }
            }
        }
        let fs = factorizations_over(m, &set, b, depth, DEFAULT_MAX_COUNT)?;
        exhaustive &= fs.complete;
        if let Some(pair) = violation(prop, &fs.factorizations) {
            return Ok(ProbeResult::Refuted { element: b.clone(), factorizations: pair });
        }
    }
    Ok(ProbeResult::Consistent { members_checked: members.len(), exhaustive })
}

/// Two factorizations breaking `prop`, if any.
fn violation(prop: Property, fs: &[Factorization]) -> Option<Vec<Factorization>> {
    match prop {
        Property::Ufm => (fs.len() > 1).then(|| fs[..2].to_vec()),
        Property::Hfm => {
            let first = fs.first()?;
            fs.iter().find(|f| f.length() != first.length()).map(|f| vec![first.clone(), f.clone()])
        }
        Property::Lfm => {
            let mut seen: HashMap<u64, &Factorization> = HashMap::new();
            for f in fs {
                if let Some(g) = seen.insert(f.length(), f) {
                    return Some(vec![g.clone(), f.clone()]);
                }
            }
            None
        }
        // a window only ever holds finitely many factorizations
        _ => None,
    }
}

/// Length-indexed counting over a complete finite atom set of the integers.
fn scalar_fast_path(m: &MonoidDescriptor, set: &AtomSet, prop: Property, n: i64, depth: usize) -> Result<Option<ProbeResult>> {
    let atoms: Vec<usize> = set.atoms.iter().filter_map(|a| a.as_rational()?.numer().to_usize()).collect();
    if atoms.len() != set.atoms.len() || n < 0 || n > 100_000 {
        return Ok(None);
    }
    let n = n as usize;
    // counts[b][len], saturating at 2
    let mut counts: Vec<HashMap<u64, u8>> = vec![HashMap::new(); n + 1];
    counts[0].insert(0, 1);
    for &a in &atoms {
        for b in a..=n {
            let prev: Vec<(u64, u8)> = counts[b - a].iter().map(|(&l, &c)| (l, c)).collect();
            for (l, c) in prev {
                let e = counts[b].entry(l + 1).or_insert(0);
                *e = (*e + c).min(2);
            }
        }
    }
    let mut members = 0;
    for b in 1..=n {
        let cb = &counts[b];
        if cb.is_empty() {
            continue;
        }
        members += 1;
        let total: u32 = cb.values().map(|&c| c as u32).sum();
        let lengths: BTreeSet<u64> = cb.keys().copied().collect();
        let bad = match prop {
            Property::Ufm => total > 1,
            Property::Hfm => lengths.len() > 1,
            Property::Lfm => cb.values().any(|&c| c > 1),
            _ => false,
        };
        if bad {
            let x = GroupElement::integer(b as i64);
            let fs = factorizations_over(m, set, &x, depth, DEFAULT_MAX_COUNT)?;
            let pair = violation(prop, &fs.factorizations).expect("counting and enumeration agree");
            return Ok(Some(ProbeResult::Refuted { element: x, factorizations: pair }));
        }
    }
    Ok(Some(ProbeResult::Consistent { members_checked: members, exhaustive: true }))
}

/// Checks `l(u) = 0 <=> u = 0` on the samples and `l(b + c) >= l(b) + l(c)` on
/// every pair of samples.
pub fn length_function_check(samples: &[GroupElement], ell: impl Fn(&GroupElement) -> i64) -> bool {
    for u in samples {
        if (ell(u) == 0) != u.is_zero() || ell(u) < 0 {
            return false;
        }
    }
    for (i, b) in samples.iter().enumerate() {
        for c in &samples[i..] {
            if ell(&(b + c)) < ell(b) + ell(c) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conductive(a: i64) -> MonoidDescriptor {
        MonoidDescriptor::conductive(GroupElement::integer(a)).unwrap()
    }

    #[test]
    fn conductive_probes() {
        let r = probe_property(&conductive(3), Property::Hfm, &ProbeBound::Scalar(60), 4).unwrap();
        match r {
            ProbeResult::Refuted { element, factorizations } => {
                assert_eq!(element, GroupElement::integer(9));
                assert_ne!(factorizations[0].length(), factorizations[1].length());
            }
            r => panic!("{r:?}"),
        }
        assert!(probe_property(&conductive(2), Property::Lfm, &ProbeBound::Scalar(60), 4).unwrap().is_consistent());
        assert!(probe_property(&conductive(1), Property::Ufm, &ProbeBound::Scalar(60), 4).unwrap().is_consistent());
    }

    #[test]
    fn length_functions() {
        let m = MonoidDescriptor::numerical(&[3, 5]).unwrap();
        let s = members_below(&m, &ProbeBound::Scalar(20), 4).unwrap();
        assert!(!length_function_check(&s, |x| x.as_rational().unwrap().floor().to_i64().unwrap() / 5));
        assert!(!length_function_check(&s, |_| 0));
    }

    #[test]
    fn property_names() {
        assert_eq!("hfm".parse::<Property>().unwrap(), Property::Hfm);
        assert!("xyz".parse::<Property>().is_err());
    }
}
