//! The example library: one entry per worked example, each with expected
//! report fragments and a recipe that re-derives them.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::classifier::{classify_known, ClassifyOptions, PropertyReport, Status};
use crate::error::Result;
use crate::factor::{
    atoms, atoms_in_box, factorizations, is_atomic_element, length_set, probe_property, AtomicVerdict, ProbeBound,
    Property,
};
use crate::instance::parse_instance;
use crate::models::window::lex_box;
use crate::models::{atom_group_membership, bare_text, contains, gp_membership, MonoidDescriptor};
use crate::ordered::{GroupElement, Rational};
use crate::primes;
use crate::witness::{self, subatomic};

/// How an entry is certified beyond its classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// Every window member `b` has `b/2` a nonzero member, so nothing is an atom.
    Halving { numerators: i64, denominators: i64 },
    /// The box holds exactly one atom and `witness` has no factorization.
    SingleAtom { radii: Vec<i64>, atom: Vec<i64>, witness: Vec<i64> },
    CommonDivisors { count: usize },
    /// Chain replay plus a few hereditary break steps.
    Chain { depth: usize, break_steps: usize },
    /// Atoms over the first `atom_primes` primes; `L(1)` over `length_primes`.
    PrimeReciprocals { atom_primes: usize, length_primes: usize },
    /// The product's verdicts equal those of its left factor.
    Inherits,
    /// Window atoms equal `[a, 2a)`.
    ConductiveAtoms { radii: Vec<i64> },
    /// Conductive over Z: window atoms, plus probes at `30a` agreeing with the theorems.
    ConductiveProbes,
    NearlyIdentities { depth: usize },
    /// Greedy sieve refutations for the listed members.
    NearlyRefutations { members: Vec<(i64, i64)>, sieve: u64 },
    QuasiSamples { count: usize, seed: u64 },
    /// Every factorization in the box has length equal to the first coordinate.
    HalfFactorialBox { radii: Vec<i64>, atom_radius: usize, min_factorizations: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GalleryEntry {
    pub id: &'static str,
    pub instance: String,
    #[serde(skip)]
    pub descriptor: MonoidDescriptor,
    /// What the example asserts, in words.
    pub citation: &'static str,
    pub expected: Vec<(Property, Status)>,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), ok, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub id: &'static str,
    pub instance: String,
    pub citation: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub report: Option<PropertyReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GalleryRun {
    pub passed: bool,
    pub entries: Vec<EntryOutcome>,
}

fn entry(id: &'static str, instance: &str, citation: &'static str, expected: &[(Property, Status)], recipe: Recipe) -> GalleryEntry {
    GalleryEntry {
        id,
        instance: instance.into(),
        descriptor: parse_instance(instance).expect("gallery instance text"),
        citation,
        expected: expected.to_vec(),
        recipe,
    }
}

/// Every entry, in a fixed order.
pub fn gallery_list() -> Vec<GalleryEntry> {
    use Property::*;
    use Status::{Proved as P, Refuted as R};
    let box_3_10 = vec![3, 10];
    vec![
        entry("antimatter-QxQ", "lexcone:Q2:positive-leading", "antimatter: every nonzero b has b/2 in the monoid",
            &[(Atm, R), (Qam, R)], Recipe::Halving { numerators: 4, denominators: 3 }),
        entry("nonatomic-ZxZ", "lexcone:Z2:nonnegative", "nonnegative cone of Z x Z: (0,1) is the only atom, not atomic",
            &[(Atm, R), (Qam, R)], Recipe::SingleAtom { radii: box_3_10.clone(), atom: vec![0, 1], witness: vec![1, 0] }),
        entry("alphabeta", "alphabeta:2/3", "alpha/beta construction: atomic, not strongly atomic",
            &[(Atm, P), (Sam, R)], Recipe::CommonDivisors { count: 3 }),
        entry("mq-chain", "mq:2/3", "M_q: strongly atomic, ascending chain of principal ideals",
            &[(Sam, P), (Accp, R), (Bfm, R)], Recipe::Chain { depth: 20, break_steps: 3 }),
        entry("mq-times-N", "product(mq:2/3;nm:1)", "M_q x N_0 keeps strong atomicity and the chain",
            &[(Sam, P), (Accp, R)], Recipe::Inherits),
        entry("m0", "m0", "M_0 = <1/p>: ACCP, but L(1) contains every prime",
            &[(Accp, P), (Bfm, R)], Recipe::PrimeReciprocals { atom_primes: 25, length_primes: 15 }),
        entry("m0-times-N", "product(m0;nm:1)", "M_0 x N_0: ACCP, not BFM",
            &[(Accp, P), (Bfm, R)], Recipe::Inherits),
        entry("conductive-Z2-leading", "conductive:Z2:a=(2,1)", "conductive Z x Z, a in the leading class: BFM",
            &[(Bfm, P), (Qam, P), (Ffm, R)], Recipe::ConductiveAtoms { radii: box_3_10.clone() }),
        entry("conductive-Z2-trailing", "conductive:Z2:a=(0,1)", "conductive Z x Z, a in the trailing class: not atomic",
            &[(Atm, R), (Qam, R), (Bfm, R)], Recipe::ConductiveAtoms { radii: box_3_10.clone() }),
        entry("nearly-alpha", "nearly-alpha", "nearly atomic, not atomic",
            &[(Nam, P), (Atm, R)], Recipe::NearlyIdentities { depth: 4 }),
        entry("almost-not-nearly", "unionshift(m0;ge:1)", "M_0 u G>=1: almost atomic, not nearly atomic",
            &[(Aam, P), (Nam, R)], Recipe::NearlyRefutations { members: vec![(1, 3), (1, 5), (1, 7)], sieve: 1_000_000 }),
        entry("quasi-not-almost", "unionshift(localization:2;loc:3>=4/3)", "quasi-atomic, 1/2 outside the atom group",
            &[(Qam, P), (Aam, R)], Recipe::QuasiSamples { count: 100, seed: 0x5eed }),
        entry("bfm-not-ffm", "conductive:Z2:a=(1,0)", "conductive Z x Z, a = (1,0): BFM, not FFM",
            &[(Bfm, P), (Ffm, R)], Recipe::ConductiveAtoms { radii: box_3_10 }),
        entry("hfm-NxZ", "lexcone:Z2:positive-leading", "{0} u (N x Z): half-factorial, infinitely many factorizations of (2,0)",
            &[(Hfm, P), (Ffm, R)], Recipe::HalfFactorialBox { radii: vec![4, 20], atom_radius: 25, min_factorizations: 10 }),
        entry("conductive-Z-a1", "conductive:Z:a=1", "M_1 = N_0: UFM",
            &[(Ufm, P), (Hfm, P)], Recipe::ConductiveProbes),
        entry("conductive-Z-a2", "conductive:Z:a=2", "M_2: LFM, not HFM",
            &[(Lfm, P), (Hfm, R), (Ufm, R)], Recipe::ConductiveProbes),
        entry("conductive-Z-a3", "conductive:Z:a=3", "M_3: FFM, not LFM",
            &[(Ffm, P), (Lfm, R), (Bfm, P)], Recipe::ConductiveProbes),
    ]
}

pub fn find_entry(id: &str) -> Option<GalleryEntry> {
    gallery_list().into_iter().find(|e| e.id == id)
}

const DEPTH: usize = 8;

/// Classifies the entry and runs its recipe. Never panics on a failed check.
pub fn run_entry(e: &GalleryEntry) -> EntryOutcome {
    let mut checks = Vec::new();
    let report = match classify_known(&e.descriptor, &ClassifyOptions { depth: DEPTH, ..Default::default() }) {
        Ok(r) => Some(r),
        Err(err) => {
            checks.push(Check::new("classify", false, err.to_string()));
            None
        }
    };
    if let Some(r) = &report {
        for (p, want) in &e.expected {
            let got = r.status(*p);
            checks.push(Check::new(format!("expect {p}"), got == *want, format!("{got:?} ({})", r.verdicts[p].source)));
        }
        checks.push(Check::new("chain-consistency", r.chain_ok, ""));
        checks.push(Check::new("probe-conflicts", r.conflicts.is_empty(), r.conflicts.join("; ")));
    }
    match run_recipe(e, report.as_ref()) {
        Ok(mut cs) => checks.append(&mut cs),
        Err(err) => checks.push(Check::new("recipe", false, err.to_string())),
    }
    EntryOutcome {
        id: e.id,
        instance: e.instance.clone(),
        citation: e.citation,
        passed: checks.iter().all(|c| c.ok),
        checks,
        report,
    }
}

/// Runs every entry on `jobs` threads; output order is the gallery order.
pub fn run_all(jobs: usize) -> GalleryRun {
    let list = gallery_list();
    let slots: Vec<Mutex<Option<EntryOutcome>>> = list.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, list.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(e) = list.get(i) else { break };
                *slots[i].lock().expect("slot") = Some(run_entry(e));
            });
        }
    });
    let entries: Vec<EntryOutcome> = slots.into_iter().map(|m| m.into_inner().expect("slot").expect("ran")).collect();
    GalleryRun { passed: entries.iter().all(|e| e.passed), entries }
}

fn lex(c: &[i64]) -> GroupElement {
    GroupElement::lex(c, 0).expect("lex element")
}

fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

fn run_recipe(e: &GalleryEntry, report: Option<&PropertyReport>) -> Result<Vec<Check>> {
    let m = &e.descriptor;
    let mut out = Vec::new();
    match &e.recipe {
        Recipe::Halving { numerators, denominators } => {
            let g = m.group();
            let mut members = 0;
            let mut bad = Vec::new();
            for d in 1..=*denominators {
                for k in 1..=*numerators {
                    for j in -numerators..=*numerators {
                        let b = g.from_coords(vec![q(k, d), q(j, d)])?;
                        if !contains(m, &b, DEPTH)?.is_in() {
                            bad.push(format!("{} not a member", bare_text(&b)));
                            continue;
                        }
                        members += 1;
                        let half = g.from_coords(vec![q(k, 2 * d), q(j, 2 * d)])?;
                        if half.is_zero() || !contains(m, &half, DEPTH)?.is_in() || &half + &half != b {
                            bad.push(bare_text(&b));
                        }
                    }
                }
            }
            out.push(Check::new("halving", bad.is_empty() && members > 0, format!("{members} members; failures: {bad:?}")));
            let a = atoms(m, DEPTH);
            out.push(Check::new("no atoms", a.atoms.is_empty() && a.complete, format!("{} atoms", a.atoms.len())));
        }
        Recipe::SingleAtom { radii, atom, witness } => {
            let a = atoms_in_box(m, DEPTH, radii);
            let want = vec![lex(atom)];
            out.push(Check::new("atoms in box", a.atoms == want, format!("{:?}", a.atoms.iter().map(bare_text).collect::<Vec<_>>())));
            let w = lex(witness);
            let v = is_atomic_element(m, &w, DEPTH)?;
            out.push(Check::new(format!("{} has no factorization", bare_text(&w)), matches!(v, AtomicVerdict::No), format!("{v:?}")));
        }
        Recipe::CommonDivisors { count } => {
            let MonoidDescriptor::AlphaBeta { q } = m else { unreachable!("alpha-beta entry") };
            let rs = subatomic::replay_common_divisors(q, *count, DEPTH)?;
            let ok = rs.len() == *count && rs.iter().all(|r| r.verify().is_ok());
            out.push(Check::new("common divisors", ok, format!("{} replays", rs.len())));
        }
        Recipe::Chain { depth, break_steps } => {
            let MonoidDescriptor::GeometricPuiseux { q } = m else { unreachable!("mq entry") };
            let c = witness::mq_chain(q, *depth)?;
            out.push(Check::new("chain replay", c.verify().is_ok() && c.depth == *depth, format!("depth {}", c.depth)));
            let b = witness::synthesize_break(q, *break_steps, 10)?;
            out.push(Check::new("hereditary break", b.verify().is_ok() && b.steps.len() == *break_steps, format!("{} steps", b.steps.len())));
        }
        Recipe::PrimeReciprocals { atom_primes, length_primes } => {
            let a = atoms(m, *atom_primes);
            let want: Vec<GroupElement> = primes::first_primes(*atom_primes)
                .into_iter()
                .rev()
                .map(|p| GroupElement::rational(q(1, p as i64)))
                .collect();
            out.push(Check::new("atoms are 1/p", a.atoms == want, format!("{} atoms", a.atoms.len())));
            let ls = length_set(m, &GroupElement::rational(Rational::one()), *length_primes)?;
            let want: Vec<u64> = primes::first_primes(*length_primes);
            let got: Vec<u64> = ls.lengths.iter().copied().collect();
            out.push(Check::new("L(1) is the prime window", got == want, format!("{got:?}")));
        }
        Recipe::Inherits => {
            let MonoidDescriptor::Product { left, .. } = m else { unreachable!("product entry") };
            let inner = classify_known(left, &ClassifyOptions { depth: DEPTH, probes: false, ..Default::default() })?;
            let mut diffs = Vec::new();
            if let Some(r) = report {
                for p in Property::ALL {
                    let (a, b) = (inner.status(p), r.status(p));
                    let decided = |s: Status| matches!(s, Status::Proved | Status::Refuted);
                    if decided(a) && a != b {
                        diffs.push(format!("{p}: {a:?} vs {b:?}"));
                    }
                }
            }
            out.push(Check::new("inherits left factor", report.is_some() && diffs.is_empty(), diffs.join("; ")));
        }
        Recipe::ConductiveAtoms { radii } => {
            let MonoidDescriptor::Conductive { group, a } = m else { unreachable!("conductive entry") };
            let two_a = a + a;
            let got = atoms_in_box(m, DEPTH, radii).atoms;
            let want: Vec<GroupElement> = lex_box(*group, radii).into_iter().filter(|x| x >= a && x < &two_a).collect();
            out.push(Check::new("atoms are [a, 2a)", got == want, format!("{} atoms", got.len())));
        }
        Recipe::ConductiveProbes => {
            let MonoidDescriptor::Conductive { a, .. } = m else { unreachable!("conductive entry") };
            let k: i64 = a.as_rational().and_then(|x| i64::try_from(x.floor()).ok()).expect("integer conductor");
            let got = atoms(m, DEPTH).atoms;
            let want: Vec<GroupElement> = (k..2 * k).map(GroupElement::integer).collect();
            out.push(Check::new("atoms are [a, 2a)", got == want, format!("{} atoms", got.len())));
            if let Some(r) = report {
                let bound = ProbeBound::Scalar(30 * k);
                for p in Property::PROBED {
                    let res = probe_property(m, p, &bound, DEPTH)?;
                    let agree = match r.status(p) {
                        Status::Proved => res.is_consistent(),
                        Status::Refuted => res.is_refuted(),
                        _ => false,
                    };
                    out.push(Check::new(format!("probe {p} at {}", 30 * k), agree, format!("{:?}", r.status(p))));
                }
            }
        }
        Recipe::NearlyIdentities { depth } => {
            let rep = subatomic::verify_nearly_atomic(*depth)?;
            let ok = !rep.identities.is_empty() && rep.identities.iter().all(|i| i.verify(*depth).is_ok());
            out.push(Check::new("nearly identities", ok, format!("{} identities", rep.identities.len())));
            let ok = rep.obstructions.iter().all(|o| o.window_factorizations == 0);
            out.push(Check::new("rational obstructions", ok && !rep.obstructions.is_empty(), format!("{} members", rep.obstructions.len())));
        }
        Recipe::NearlyRefutations { members, sieve } => {
            let sieve = primes::primes_up_to(*sieve);
            for (n, d) in members {
                let x = q(*n, *d);
                let r = subatomic::refute_nearly(&x, &sieve)?;
                out.push(Check::new(format!("refute {x}"), r.verify_against(&sieve).is_ok(), format!("|S| = {}", r.s_len)));
            }
        }
        Recipe::QuasiSamples { count, seed } => {
            let mut rng = StdRng::seed_from_u64(*seed);
            let mut failures = Vec::new();
            for _ in 0..*count {
                let x = random_quasi_member(&mut rng);
                match subatomic::verify_quasi_witness(&x) {
                    Ok(w) if w.verify().is_ok() && w.multiplicity == Rational::from_integer(3 * x.numer()) => {}
                    Ok(_) => failures.push(format!("{x}: multiplicity")),
                    Err(err) => failures.push(format!("{x}: {err}")),
                }
            }
            out.push(Check::new(format!("{count} quasi identities"), failures.is_empty(), failures.join("; ")));
            let half = GroupElement::rational(q(1, 2));
            let ok = gp_membership(m, &half)? && !atom_group_membership(m, &half)?;
            out.push(Check::new("1/2 outside Z[1/3]", ok, ""));
        }
        Recipe::HalfFactorialBox { radii, atom_radius, min_factorizations } => {
            let res = probe_property(m, Property::Hfm, &ProbeBound::LexBox(radii.clone()), *atom_radius)?;
            out.push(Check::new("probe HFM", res.is_consistent(), format!("{res:?}").chars().take(120).collect::<String>()));
            let two = lex(&[2, 0]);
            let fs = factorizations(m, &two, *atom_radius, crate::factor::DEFAULT_MAX_COUNT)?;
            let ok = fs.factorizations.len() >= *min_factorizations && fs.factorizations.iter().all(|f| f.length() == 2);
            out.push(Check::new("factorizations of (2,0)", ok, format!("{}", fs.factorizations.len())));
        }
    }
    Ok(out)
}

/// A nonzero member `x / 2^i` or `x / 2^i + (4/3 + y / 3^j)`.
pub fn random_quasi_member(rng: &mut impl Rng) -> Rational {
    loop {
        let mut v = q(rng.gen_range(0..64), 1 << rng.gen_range(0..6));
        if rng.gen_bool(0.5) {
            v = &v + &(&q(4, 3) + &q(rng.gen_range(0..40), 3i64.pow(rng.gen_range(0..5))));
        }
        if v.is_positive() {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_parse() {
        let list = gallery_list();
        assert!(list.len() >= 11);
        let mut ids: Vec<_> = list.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), list.len());
        for e in &list {
            assert_eq!(e.descriptor.to_string(), e.instance);
        }
    }

    #[test]
    fn quasi_members_are_members() {
        let m = MonoidDescriptor::quasi_not_almost();
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..50 {
            let x = random_quasi_member(&mut rng);
            assert!(contains(&m, &GroupElement::rational(x), 4).unwrap().is_in());
        }
    }

    #[test]
    fn cheap_entries_pass() {
        for id in ["mq-chain", "conductive-Z-a2", "bfm-not-ffm", "antimatter-QxQ"] {
            let o = run_entry(&find_entry(id).unwrap());
            assert!(o.passed, "{id}: {:?}", o.checks);
        }
    }
}
