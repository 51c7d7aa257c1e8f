//! Theorem-backed verdicts for the atomicity hierarchy, merged with bounded
//! probes and checked against the chain of implications.
//!
//! Whether every hereditarily atomic monoid satisfies the ACCP is an open
//! question; nothing here takes a position on it.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::factor::{
    atoms, default_bound, factorizations, length_set, probe_property, AtomSet, ProbeBound, ProbeResult, Property,
    DEFAULT_MAX_COUNT,
};
use crate::models::{gp_membership, LexConeRule, MonoidDescriptor, TailRule, DEFAULT_DEPTH};
use crate::ordered::{GroupElement, GroupId, Rational};
use crate::primes;
use crate::witness::{self, subatomic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Refuted,
    ProbeConsistent,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Theorem tag, `probe`, `implied by X`, or `none`.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Json>,
}

impl Verdict {
    pub fn proved(tag: &str) -> Self {
        Verdict { status: Status::Proved, source: tag.into(), bound: None, witness: None }
    }

    pub fn refuted(tag: &str) -> Self {
        Verdict { status: Status::Refuted, source: tag.into(), bound: None, witness: None }
    }

    pub fn unknown() -> Self {
        Verdict { status: Status::Unknown, source: "none".into(), bound: None, witness: None }
    }

    pub fn with_witness(mut self, w: Json) -> Self {
        self.witness = Some(w);
        self
    }

    fn decided(&self) -> bool {
        matches!(self.status, Status::Proved | Status::Refuted)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub instance: String,
    pub family: &'static str,
    /// The conductive equivalences are enforced on top of the chain.
    pub conductive: bool,
    pub verdicts: BTreeMap<Property, Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<Vec<GroupElement>>,
    /// Probe verdicts contradicting a theorem verdict.
    pub conflicts: Vec<String>,
    pub chain_ok: bool,
}

impl PropertyReport {
    fn new(m: &MonoidDescriptor) -> Self {
        PropertyReport {
            instance: m.to_string(),
            family: m.family(),
            conductive: matches!(m, MonoidDescriptor::Conductive { .. }),
            verdicts: Property::ALL.into_iter().map(|p| (p, Verdict::unknown())).collect(),
            atoms: None,
            conflicts: Vec::new(),
            chain_ok: true,
        }
    }

    pub fn status(&self, p: Property) -> Status {
        self.verdicts[&p].status
    }

    pub fn set(&mut self, p: Property, v: Verdict) {
        self.verdicts.insert(p, v);
    }

    /// Passes the chain check and no probe contradicts a theorem.
    pub fn is_sound(&self) -> bool {
        self.chain_ok && self.conflicts.is_empty()
    }

    /// Pushes proved verdicts down and refuted verdicts up every implication,
    /// filling only undecided slots.
    pub fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for (strong, weak) in implications() {
                let (s, w) = (self.verdicts[&strong].clone(), self.verdicts[&weak].clone());
                if s.status == Status::Proved && !w.decided() {
                    self.set(weak, Verdict::proved(&format!("implied by {strong}")));
                    changed = true;
                }
                if w.status == Status::Refuted && !s.decided() {
                    self.set(strong, Verdict::refuted(&format!("implied by {weak}")));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Direct implications `(stronger, weaker)`.
pub fn implications() -> Vec<(Property, Property)> {
    let mut out: Vec<(Property, Property)> = Property::CHAIN.windows(2).map(|w| (w[0], w[1])).collect();
    out.push((Property::Ufm, Property::Hfm));
    // all lengths equal: L(b) is a singleton
    out.push((Property::Hfm, Property::Bfm));
    out
}

/// No property is proved while something it implies is refuted; for
/// conductive reports also UFM <=> HFM and BFM <=> ... <=> QAM.
pub fn check_chain_consistency(report: &PropertyReport) -> bool {
    let st = |p: Property| report.verdicts.get(&p).map(|v| v.status).unwrap_or(Status::Unknown);
    // transitive closure of the implication graph
    let mut reach: BTreeMap<Property, Vec<Property>> = BTreeMap::new();
    for p in Property::ALL {
        let mut seen = vec![p];
        let mut i = 0;
        while i < seen.len() {
            for (s, w) in implications() {
                if s == seen[i] && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        reach.insert(p, seen);
    }
    for (p, weaker) in &reach {
        if st(*p) == Status::Proved && weaker.iter().any(|w| st(*w) == Status::Refuted) {
            return false;
        }
    }
    if report.conductive {
        let clash = |group: &[Property]| {
            group.iter().any(|p| st(*p) == Status::Proved) && group.iter().any(|p| st(*p) == Status::Refuted)
        };
        if clash(&[Property::Ufm, Property::Hfm]) || clash(&CONDUCTIVE_BF_CLASS) {
            return false;
        }
    }
    true
}

const CONDUCTIVE_BF_CLASS: [Property; 7] =
    [Property::Bfm, Property::Accp, Property::Sam, Property::Atm, Property::Nam, Property::Aam, Property::Qam];

fn finish(mut r: PropertyReport) -> PropertyReport {
    r.propagate();
    r.chain_ok = check_chain_consistency(&r);
    r
}

// ------------------------------------------------------------ conductive

/// Exact classification of `M_a = {0} u G_{>=a}`.
pub fn classify_conductive(group: GroupId, a: &GroupElement, depth: usize) -> Result<PropertyReport> {
    if a.group() != group {
        return Err(Error::InvalidParameter(format!("a = {a} is not in {group}")));
    }
    let m = MonoidDescriptor::conductive(a.clone())?;
    let mut r = PropertyReport::new(&m);
    // v(a) = min Gamma_G: a sits in the largest Archimedean class
    let minimal = a.class_index() == Some(0);
    let bf_tag = "conductive-bf-equivalence";
    for p in CONDUCTIVE_BF_CLASS {
        r.set(p, if minimal { Verdict::proved(bf_tag) } else { Verdict::refuted(bf_tag) });
    }
    if !minimal {
        r.verdicts.get_mut(&Property::Atm).expect("all").witness = Some(json!({
            "reason": "a lies in a smaller Archimedean class than the leading one",
            "class_index": a.class_index(),
        }));
    }
    let ff_tag = "conductive-ff-iff-cyclic";
    let lf_tag = "conductive-lf-iff-a-in-b-2b";
    let uf_tag = "conductive-uf-hf-iff-a-generates";
    if !minimal {
        for p in [Property::Ufm, Property::Hfm, Property::Lfm, Property::Ffm] {
            r.set(p, Verdict::refuted(bf_tag));
        }
    } else if !group.is_cyclic() {
        r.set(Property::Ffm, Verdict::refuted(ff_tag).with_witness(json!({
            "element": (a.scale_i64(3)).to_string(),
            "reason": "3a = b + (3a - b) for every b in [a, 2a), an infinite interval",
        })));
        r.set(Property::Hfm, Verdict::refuted(uf_tag));
    } else {
        r.set(Property::Ffm, Verdict::proved(ff_tag));
        // generator b = 1 of Z (or of the rank-one lex group)
        let k = a.coords()[0].clone();
        let (one, two) = (Rational::one(), Rational::from(2));
        if k == one {
            r.set(Property::Ufm, Verdict::proved(uf_tag));
            r.set(Property::Hfm, Verdict::proved(uf_tag));
            r.set(Property::Lfm, Verdict::proved(lf_tag));
        } else {
            // 3a = a + a + a = (a + 1) + (2a - 1)
            let hf_w = json!({
                "element": a.scale_i64(3).to_string(),
                "lengths": [3, 2],
                "factorizations": [format!("3*[{a}]"), format!("1*[{}] + 1*[{}]", bump(a, 1), bump(&a.scale_i64(2), -1))],
            });
            r.set(Property::Hfm, Verdict::refuted(uf_tag).with_witness(hf_w));
            r.set(Property::Ufm, Verdict::refuted(uf_tag));
            if k == two {
                r.set(Property::Lfm, Verdict::proved(lf_tag));
            } else {
                // 2(a + 1) = a + (a + 2), both of length 2
                let lf_w = json!({
                    "element": bump(&a.scale_i64(2), 2).to_string(),
                    "factorizations": [format!("2*[{}]", bump(a, 1)), format!("1*[{a}] + 1*[{}]", bump(a, 2))],
                });
                r.set(Property::Lfm, Verdict::refuted(lf_tag).with_witness(lf_w));
            }
        }
    }
    r.atoms = Some(atoms(&m, depth).atoms);
    Ok(finish(r))
}

/// `x + n` times the unit of a rank-one group.
fn bump(x: &GroupElement, n: i64) -> GroupElement {
    let unit = x.group().from_coords(vec![Rational::one()]).expect("rank one");
    x + &unit.scale_i64(n)
}

// ------------------------------------------------------------ limit point

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LimitPointVerdict {
    /// `inf M^\bullet > 0`, hence a BFM.
    Bounded { infimum: GroupElement },
    /// 0 is a limit point; the criterion does not apply.
    LimitPoint { reason: String },
}

/// The limit-point criterion for monoids of Archimedean groups.
pub fn limit_point_bfm(m: &MonoidDescriptor) -> Result<LimitPointVerdict> {
    if !m.group().is_archimedean() {
        return Err(Error::Unsupported(format!(
            "{} lives in a non-Archimedean group; use the conductive classifier or probes",
            m.family()
        )));
    }
    let lp = |s: &str| Ok(LimitPointVerdict::LimitPoint { reason: s.into() });
    match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => {
            let inf = gens.iter().filter(|g| g.is_positive()).min().cloned().expect("validated generators");
            Ok(LimitPointVerdict::Bounded { infimum: inf })
        }
        MonoidDescriptor::Conductive { a, .. } => Ok(LimitPointVerdict::Bounded { infimum: a.clone() }),
        MonoidDescriptor::GeometricPuiseux { .. } => lp("q^n -> 0"),
        MonoidDescriptor::PrimeReciprocal => lp("1/p -> 0"),
        MonoidDescriptor::Localization { prime } => lp(&format!("1/{prime}^n -> 0")),
        MonoidDescriptor::UnionShift { .. } => lp("the base already accumulates at 0"),
        MonoidDescriptor::AlphaBeta { .. } => lp("q^n -> 0"),
        MonoidDescriptor::NearlyAtomicAlpha => lp("contains every nonnegative rational"),
        MonoidDescriptor::LexCone { .. } | MonoidDescriptor::Product { .. } => unreachable!("non-Archimedean"),
    }
}

// ------------------------------------------------------------ known

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub depth: usize,
    /// Probe bound for monoids of the integers; `None` picks `30 * min atom`.
    pub scalar_bound: Option<i64>,
    /// Box radii for lex families; `None` uses the default box.
    pub lex_box: Option<Vec<i64>>,
    pub probes: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { depth: DEFAULT_DEPTH, scalar_bound: None, lex_box: None, probes: true }
    }
}

/// Whether `m` is a copy of `N_0`.
fn is_naturals(m: &MonoidDescriptor) -> bool {
    match m {
        MonoidDescriptor::FiniteGenerated { group: GroupId::Integers, gens } => gens.iter().any(|g| g == &GroupElement::integer(1)),
        MonoidDescriptor::Conductive { group: GroupId::Integers, a } => a == &GroupElement::integer(1),
        _ => false,
    }
}

/// Attaches the verdicts asserted for the known families, merges probes for
/// the undecided probe-decidable properties, and checks the chain.
pub fn classify_known(m: &MonoidDescriptor, opts: &ClassifyOptions) -> Result<PropertyReport> {
    let depth = opts.depth.max(1);
    let mut r = match m {
        MonoidDescriptor::Conductive { group, a } => classify_conductive(*group, a, depth)?,
        _ => {
            let mut r = PropertyReport::new(m);
            known_verdicts(m, depth, &mut r)?;
            r.propagate();
            r
        }
    };
    if opts.probes {
        merge_probes(m, opts, &mut r)?;
    }
    Ok(finish(r))
}

fn known_verdicts(m: &MonoidDescriptor, depth: usize, r: &mut PropertyReport) -> Result<()> {
    use Property::*;
    match m {
        MonoidDescriptor::FiniteGenerated { group, .. } if group.is_archimedean() => {
            if let LimitPointVerdict::Bounded { infimum } = limit_point_bfm(m)? {
                r.set(Bfm, Verdict::proved("limit-point-bfm").with_witness(json!({ "infimum": infimum })));
            }
        }
        MonoidDescriptor::FiniteGenerated { .. } | MonoidDescriptor::Conductive { .. } => {}
        MonoidDescriptor::GeometricPuiseux { q } => {
            r.set(Sam, Verdict::proved("mq-strongly-atomic"));
            let chain = witness::mq_chain(q, 5)?;
            r.set(Accp, Verdict::refuted("mq-ascending-chain").with_witness(serde_json::to_value(&chain).expect("json")));
        }
        MonoidDescriptor::PrimeReciprocal => {
            r.set(Accp, Verdict::proved("m0-accp"));
            r.set(Bfm, Verdict::refuted("m0-lengths-of-one").with_witness(m0_lengths(depth.min(8))?));
        }
        MonoidDescriptor::Localization { .. } => antimatter(r, "localization-antimatter"),
        MonoidDescriptor::LexCone { group, rule } => match (rule, group.is_integral()) {
            (LexConeRule::PositiveLeading, true) => {
                r.set(Hfm, Verdict::proved("nxz-half-factorial"));
                r.set(Ffm, Verdict::refuted("nxz-not-ffm").with_witness(nxz_witness(m, depth)?));
            }
            (LexConeRule::NonnegativeCone, true) => {
                r.set(Atm, Verdict::refuted("zxz-cone-not-atomic").with_witness(json!({
                    "atoms": ["(0,1)"],
                    "element": "(1,0)",
                    "reason": "sums of the only atom stay in {0} x N",
                })));
                // atomic elements are {0} x N_0, so (1,0) + b is never atomic
                r.set(Qam, Verdict::refuted("zxz-cone-atomic-elements"));
            }
            _ => antimatter(r, "qxq-cone-antimatter"),
        },
        MonoidDescriptor::Product { left, right } if is_naturals(right) && left.group().is_archimedean() => {
            let inner = classify_known(left, &ClassifyOptions { depth, probes: false, ..Default::default() })?;
            for (p, v) in inner.verdicts {
                if v.decided() {
                    let tag = format!("inherited from {} (divisor-closed factor)", inner.instance);
                    let mut nv = if v.status == Status::Proved { Verdict::proved(&tag) } else { Verdict::refuted(&tag) };
                    nv.witness = v.witness;
                    r.set(p, nv);
                }
            }
        }
        MonoidDescriptor::Product { .. } => {}
        MonoidDescriptor::UnionShift { tail: TailRule::GroupAtLeast { .. }, .. } => {
            r.set(Aam, Verdict::proved("m0-union-almost-atomic"));
            let sieve = primes::primes_up_to(1_000_000);
            let refutation = subatomic::refute_nearly(&Rational::frac(1, 3), &sieve)?;
            r.set(Nam, Verdict::refuted("m0-union-not-nearly-atomic").with_witness(serde_json::to_value(&refutation).expect("json")));
        }
        MonoidDescriptor::UnionShift { tail: TailRule::LocalizationAtLeast { .. }, .. } => {
            let w = subatomic::verify_quasi_witness(&Rational::frac(1, 2))?;
            r.set(Qam, Verdict::proved("two-prime-quasi-atomic").with_witness(serde_json::to_value(&w).expect("json")));
            let half = GroupElement::rational(Rational::frac(1, 2));
            let in_gp = crate::models::atom_group_membership(m, &half)?;
            let in_m = gp_membership(m, &half)?;
            if in_gp || !in_m {
                return Err(Error::InvalidParameter("1/2 should lie in M but not in the atom group".into()));
            }
            r.set(Aam, Verdict::refuted("two-prime-not-almost-atomic").with_witness(json!({
                "element": "1/2",
                "in_atom_difference_group": in_gp,
            })));
        }
        MonoidDescriptor::AlphaBeta { q } => {
            r.set(Atm, Verdict::proved("alpha-beta-atomic"));
            let replay = subatomic::replay_common_divisors(q, 3, depth)?;
            r.set(Sam, Verdict::refuted("alpha-beta-not-strongly-atomic").with_witness(serde_json::to_value(&replay).expect("json")));
        }
        MonoidDescriptor::NearlyAtomicAlpha => {
            let rep = subatomic::verify_nearly_atomic(depth.min(4))?;
            r.set(Nam, Verdict::proved("alpha-nearly-atomic").with_witness(json!({
                "identities": rep.identities.len(),
                "first": rep.identities.first(),
            })));
            r.set(Atm, Verdict::refuted("alpha-rationals-not-atomic").with_witness(json!({
                "obstructions": rep.obstructions,
            })));
        }
    }
    Ok(())
}

fn antimatter(r: &mut PropertyReport, tag: &str) {
    // no atoms: the only atomic element is 0, so b + c is never atomic for c > 0
    r.set(Property::Atm, Verdict::refuted(tag));
    r.set(Property::Qam, Verdict::refuted(tag));
}

fn m0_lengths(window: usize) -> Result<Json> {
    let m = MonoidDescriptor::PrimeReciprocal;
    let ls = length_set(&m, &GroupElement::rational(Rational::one()), window)?;
    Ok(json!({ "element": "1", "window_primes": primes::first_primes(window), "lengths": ls.lengths }))
}

fn nxz_witness(m: &MonoidDescriptor, depth: usize) -> Result<Json> {
    let two = m.group().from_coords(vec![Rational::from(2), Rational::zero()])?;
    let fs = factorizations(m, &two, depth.max(10), DEFAULT_MAX_COUNT)?;
    Ok(json!({
        "element": crate::models::bare_text(&two),
        "factorizations_in_window": fs.factorizations.len(),
        "sample": fs.factorizations.iter().take(3).map(|f| f.to_string()).collect::<Vec<_>>(),
    }))
}

fn probe_bound(m: &MonoidDescriptor, set: &AtomSet, opts: &ClassifyOptions) -> ProbeBound {
    match (m.group(), &opts.lex_box) {
        (GroupId::Lex { .. }, Some(b)) => ProbeBound::LexBox(b.clone()),
        (GroupId::Lex { .. }, None) => default_bound(m, 0),
        _ => {
            let least = set.atoms.first().and_then(|a| a.as_rational()).map(|x| x.floor()).and_then(|x| i64::try_from(x).ok());
            ProbeBound::Scalar(opts.scalar_bound.unwrap_or(30 * least.unwrap_or(1).max(1)))
        }
    }
}

fn merge_probes(m: &MonoidDescriptor, opts: &ClassifyOptions, r: &mut PropertyReport) -> Result<()> {
    let probeable = match m.group() {
        GroupId::Integers => true,
        GroupId::Lex { integral, .. } => integral && !matches!(m, MonoidDescriptor::Product { .. }),
        _ => false,
    };
    if !probeable {
        return Ok(());
    }
    let set = atoms(m, opts.depth);
    let bound = probe_bound(m, &set, opts);
    let bound_text = match &bound {
        ProbeBound::Scalar(n) => format!("members <= {n}"),
        ProbeBound::LexBox(b) => format!("box {b:?}"),
    };
    for p in Property::PROBED {
        let current = r.verdicts[&p].clone();
        if current.decided() && current.status == Status::Refuted {
            continue;
        }
        let res = match probe_property(m, p, &bound, opts.depth) {
            Ok(x) => x,
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        match res {
            ProbeResult::Refuted { element, factorizations } => {
                let w = json!({
                    "element": element,
                    "factorizations": factorizations.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                });
                if current.status == Status::Proved {
                    r.conflicts.push(format!("{p}: proved by {} but refuted by probe at {element}", current.source));
                } else {
                    r.set(p, Verdict::refuted("probe").with_witness(w));
                }
            }
            ProbeResult::Consistent { .. } if current.status == Status::Unknown => {
                r.set(p, Verdict { status: Status::ProbeConsistent, source: "probe".into(), bound: Some(bound_text.clone()), witness: None });
            }
            _ => {}
        }
    }
    r.propagate();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conductive_z(a: i64) -> PropertyReport {
        classify_conductive(GroupId::Integers, &GroupElement::integer(a), 4).unwrap()
    }

    #[test]
    fn conductive_table() {
        use Property::*;
        let r = conductive_z(1);
        assert!(Property::ALL.iter().all(|p| r.status(*p) == Status::Proved));
        let r = conductive_z(2);
        assert_eq!((r.status(Lfm), r.status(Hfm), r.status(Ufm)), (Status::Proved, Status::Refuted, Status::Refuted));
        let r = conductive_z(5);
        assert_eq!((r.status(Ffm), r.status(Lfm)), (Status::Proved, Status::Refuted));
        assert!(r.chain_ok);
        assert_eq!(r.atoms.as_ref().unwrap().len(), 5);
    }

    #[test]
    fn conductive_lex() {
        let g = GroupId::lex(2, 0).unwrap();
        let r = classify_conductive(g, &GroupElement::lex(&[1, 0], 0).unwrap(), 3).unwrap();
        assert_eq!((r.status(Property::Bfm), r.status(Property::Ffm)), (Status::Proved, Status::Refuted));
        let r = classify_conductive(g, &GroupElement::lex(&[0, 1], 0).unwrap(), 3).unwrap();
        assert!(CONDUCTIVE_BF_CLASS.iter().all(|p| r.status(*p) == Status::Refuted));
        assert!(r.chain_ok);
    }

    #[test]
    fn chain_violations() {
        let m = MonoidDescriptor::numerical(&[3, 5]).unwrap();
        let mut r = PropertyReport::new(&m);
        r.set(Property::Ufm, Verdict::proved("t"));
        r.set(Property::Bfm, Verdict::refuted("t"));
        assert!(!check_chain_consistency(&r));
        let c = MonoidDescriptor::conductive(GroupElement::integer(3)).unwrap();
        let mut r = PropertyReport::new(&c);
        r.set(Property::Bfm, Verdict::proved("t"));
        r.set(Property::Qam, Verdict::refuted("t"));
        assert!(!check_chain_consistency(&r));
    }

    #[test]
    fn limit_points() {
        let m = MonoidDescriptor::numerical(&[3, 5]).unwrap();
        assert_eq!(limit_point_bfm(&m).unwrap(), LimitPointVerdict::Bounded { infimum: GroupElement::integer(3) });
        let mq = MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap();
        assert!(matches!(limit_point_bfm(&mq).unwrap(), LimitPointVerdict::LimitPoint { .. }));
        let cone = MonoidDescriptor::lex_cone(GroupId::lex(2, 0).unwrap(), LexConeRule::PositiveLeading).unwrap();
        assert!(limit_point_bfm(&cone).is_err());
    }

    #[test]
    fn known_families() {
        let opts = ClassifyOptions { depth: 6, ..Default::default() };
        let mq = classify_known(&MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap(), &opts).unwrap();
        assert_eq!((mq.status(Property::Sam), mq.status(Property::Accp), mq.status(Property::Bfm)), (Status::Proved, Status::Refuted, Status::Refuted));
        let m0 = classify_known(&MonoidDescriptor::PrimeReciprocal, &opts).unwrap();
        assert_eq!((m0.status(Property::Accp), m0.status(Property::Bfm)), (Status::Proved, Status::Refuted));
        let nat = MonoidDescriptor::numerical(&[1]).unwrap();
        let prod = MonoidDescriptor::product(MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap(), nat).unwrap();
        let p = classify_known(&prod, &opts).unwrap();
        assert_eq!((p.status(Property::Sam), p.status(Property::Accp)), (Status::Proved, Status::Refuted));
        let nm = classify_known(&MonoidDescriptor::numerical(&[3, 5]).unwrap(), &opts).unwrap();
        assert_eq!(nm.status(Property::Hfm), Status::Refuted);
        assert!([mq, m0, p, nm].iter().all(PropertyReport::is_sound));
    }
}
