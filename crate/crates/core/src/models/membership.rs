use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, ToBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{alpha, arith, check_group, is_generator, LexConeRule, MonoidDescriptor, TailRule};
use crate::error::{Error, Result};
use crate::factor::kernel;
use crate::ordered::{AlgebraicTriple, GroupElement, GroupId, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "depth", rename_all = "kebab-case")]
pub enum MembershipStatus {
    In,
    Out,
    UnknownAtDepth(usize),
}

fn big_str<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertTerm {
    pub generator: GroupElement,
    #[serde(serialize_with = "big_str")]
    pub multiplicity: BigUint,
}

/// Nonnegative integer combination of generators of the monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub terms: Vec<CertTerm>,
}

impl Certificate {
    fn new(terms: impl IntoIterator<Item = (GroupElement, BigUint)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(g, n)| !n.is_zero() && !g.is_zero())
            .map(|(generator, multiplicity)| CertTerm { generator, multiplicity })
            .collect();
        Certificate { terms }
    }

    pub fn replay(&self, group: GroupId) -> Result<GroupElement> {
        let mut acc = group.zero();
        for t in &self.terms {
            let k = t.multiplicity.to_bigint().expect("unsigned");
            acc = acc.checked_add(&t.generator.scale(&k))?;
        }
        Ok(acc)
    }

    /// Replays to `x` and every term is a generator of `m`.
    pub fn verify(&self, m: &MonoidDescriptor, x: &GroupElement) -> bool {
        self.replay(m.group()).is_ok_and(|v| &v == x) && self.terms.iter().all(|t| is_generator(m, &t.generator))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    #[serde(flatten)]
    pub status: MembershipStatus,
    pub certificate: Option<Certificate>,
}

impl MembershipVerdict {
    fn member(cert: Certificate) -> Self {
        MembershipVerdict { status: MembershipStatus::In, certificate: Some(cert) }
    }

    fn out() -> Self {
        MembershipVerdict { status: MembershipStatus::Out, certificate: None }
    }

    fn unknown(depth: usize) -> Self {
        MembershipVerdict { status: MembershipStatus::UnknownAtDepth(depth), certificate: None }
    }

    pub fn is_in(&self) -> bool {
        self.status == MembershipStatus::In
    }

    pub fn is_out(&self) -> bool {
        self.status == MembershipStatus::Out
    }
}

fn ubig(n: &BigInt) -> BigUint {
    n.to_biguint().expect("nonnegative multiplicity")
}

fn rat_el(x: Rational) -> GroupElement {
    GroupElement::rational(x)
}

fn single(x: &GroupElement) -> Certificate {
    Certificate::new([(x.clone(), BigUint::one())])
}

/// Decides `x in m`. Exact for every family except the tails of
/// `AlphaBeta`, which may answer `UnknownAtDepth`.
pub fn contains(m: &MonoidDescriptor, x: &GroupElement, depth: usize) -> Result<MembershipVerdict> {
    check_group(m, x)?;
    if x.is_negative() {
        return Err(Error::NegativeInput(x.to_string()));
    }
    if x.is_zero() {
        return Ok(MembershipVerdict::member(Certificate::new([])));
    }
    match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => Ok(finite_generated(gens, x, depth)),
        MonoidDescriptor::Conductive { a, .. } => Ok(if x >= a { MembershipVerdict::member(single(x)) } else { MembershipVerdict::out() }),
        MonoidDescriptor::LexCone { rule, .. } => {
            let ok = match rule {
                LexConeRule::NonnegativeCone => true,
                // x > 0 here, so the leading slot carries a positive entry
                LexConeRule::PositiveLeading => x.class_index() == Some(0),
            };
            Ok(if ok { MembershipVerdict::member(single(x)) } else { MembershipVerdict::out() })
        }
        MonoidDescriptor::GeometricPuiseux { q } => Ok(geometric(q, rational(x))),
        MonoidDescriptor::PrimeReciprocal => Ok(prime_reciprocal(rational(x))),
        MonoidDescriptor::Localization { prime } => Ok(localization(*prime, rational(x))),
        MonoidDescriptor::Product { left, right } => {
            let (l, r) = m.split_product(x)?;
            // positive pairs may still have a negative component
            if l.is_negative() || r.is_negative() {
                return Ok(MembershipVerdict::out());
            }
            let zl = left.group().zero();
            let zr = right.group().zero();
            let (vl, vr) = (contains(left, &l, depth)?, contains(right, &r, depth)?);
            Ok(match (&vl.status, &vr.status) {
                (MembershipStatus::Out, _) | (_, MembershipStatus::Out) => MembershipVerdict::out(),
                (MembershipStatus::In, MembershipStatus::In) => {
                    let mut terms = Vec::new();
                    for t in &vl.certificate.expect("In carries a certificate").terms {
                        terms.push((m.join_product(&t.generator, &zr)?, t.multiplicity.clone()));
                    }
                    for t in &vr.certificate.expect("In carries a certificate").terms {
                        terms.push((m.join_product(&zl, &t.generator)?, t.multiplicity.clone()));
                    }
                    MembershipVerdict::member(Certificate::new(terms))
                }
                _ => MembershipVerdict::unknown(depth),
            })
        }
        MonoidDescriptor::UnionShift { base, tail } => Ok(union_shift(base, tail, rational(x))),
        MonoidDescriptor::AlphaBeta { q } => Ok(alpha_beta(q, triple(x), depth)),
        MonoidDescriptor::NearlyAtomicAlpha => Ok(nearly_alpha(triple(x), depth)),
    }
}

fn rational(x: &GroupElement) -> &Rational {
    x.as_rational().expect("rational-valued family")
}

fn triple(x: &GroupElement) -> &AlgebraicTriple {
    x.as_triple().expect("triple-valued family")
}

fn finite_generated(gens: &[GroupElement], x: &GroupElement, depth: usize) -> MembershipVerdict {
    let out = kernel::solve_elements(gens, x, 1, 1 << 20);
    match out.solutions.first() {
        Some(sol) => MembershipVerdict::member(Certificate::new(
            gens.iter().cloned().zip(sol.iter().map(|&c| BigUint::from(c))),
        )),
        None if out.exhaustive() => MembershipVerdict::out(),
        None => MembershipVerdict::unknown(depth),
    }
}

/// Digits of the canonical representation as generator multiplicities.
pub(crate) fn mq_terms(q: &Rational, digits: &[BigInt]) -> Vec<(GroupElement, BigUint)> {
    digits.iter().enumerate().map(|(k, c)| (rat_el(q.pow(k as u32)), ubig(c))).collect()
}

fn geometric(q: &Rational, x: &Rational) -> MembershipVerdict {
    match arith::mq_digits(q, x) {
        Some(d) => MembershipVerdict::member(Certificate::new(mq_terms(q, &d))),
        None => MembershipVerdict::out(),
    }
}

/// `x = m + sum r_p/p` with `m >= 0`; the integer part is spent as `2m` halves.
fn m0_terms(x: &Rational) -> Option<Vec<(GroupElement, BigUint)>> {
    let (terms, m) = arith::prime_partial_fractions(x)?;
    if m.is_negative() {
        return None;
    }
    let mut halves = BigUint::zero();
    let mut out = Vec::new();
    for (p, r) in terms {
        if p == 2 {
            halves += r;
        } else {
            out.push((rat_el(Rational::frac(1, p as i64)), BigUint::from(r)));
        }
    }
    halves += ubig(&(m * 2));
    out.insert(0, (rat_el(Rational::frac(1, 2)), halves));
    Some(out)
}

fn prime_reciprocal(x: &Rational) -> MembershipVerdict {
    match m0_terms(x) {
        Some(t) => MembershipVerdict::member(Certificate::new(t)),
        None => MembershipVerdict::out(),
    }
}

fn localization_terms(p: u64, x: &Rational) -> Option<(GroupElement, BigUint)> {
    if x.is_negative() || !arith::denominator_power_of(x, p) {
        return None;
    }
    let unit = Rational::new(BigInt::one(), x.denom().clone()).expect("nonzero");
    Some((rat_el(unit), ubig(x.numer())))
}

fn localization(p: u64, x: &Rational) -> MembershipVerdict {
    match localization_terms(p, x) {
        Some(t) => MembershipVerdict::member(Certificate::new([t])),
        None => MembershipVerdict::out(),
    }
}

fn union_shift(base: &MonoidDescriptor, tail: &TailRule, x: &Rational) -> MembershipVerdict {
    match (base, tail) {
        (MonoidDescriptor::PrimeReciprocal, TailRule::GroupAtLeast { bound }) => {
            if let Some(t) = m0_terms(x) {
                MembershipVerdict::member(Certificate::new(t))
            } else if x >= bound && arith::squarefree_denominator(x) {
                MembershipVerdict::member(single(&rat_el(x.clone())))
            } else {
                MembershipVerdict::out()
            }
        }
        (MonoidDescriptor::Localization { prime: p1 }, TailRule::LocalizationAtLeast { prime: p2, bound }) => {
            match arith::two_prime_tail_split(x, *p1, *p2, bound) {
                Some((u, v)) => {
                    let mut terms = Vec::new();
                    if !u.is_zero() {
                        terms.push(localization_terms(*p1, &u).expect("split lands in the base"));
                    }
                    if !v.is_zero() {
                        terms.push((rat_el(v), BigUint::one()));
                    }
                    MembershipVerdict::member(Certificate::new(terms))
                }
                None => MembershipVerdict::out(),
            }
        }
        _ => unreachable!("validated union shapes"),
    }
}

struct SqrtSide {
    terms: Vec<(u64, u64)>,
    extra: BigInt,
}

fn sqrt_side(c: &Rational) -> Option<SqrtSide> {
    if c.is_negative() {
        return None;
    }
    let (terms, extra) = arith::prime_partial_fractions(c)?;
    if extra.is_negative() {
        return None;
    }
    Some(SqrtSide { terms, extra })
}

/// Membership in the monoid over `S = M_q n [0, sqrt2)`.
///
/// Writing the `sqrt2`/`sqrt3` coefficients as sums `a_p/p`, each `a_p`
/// is `r_p + p k_p` with `r_p` the minimal partial-fraction numerator, and
/// every extra unit of `k_p` shifts the rational part by `phi^{-1}(p)`.
/// With `y = c0 + sum r_p phi^{-1}(p)/p` and `K = sum k_p`, `x` is a member
/// iff `y + s_1 + ... + s_K` lies in `M_q` for some `s_i` in `S`.
fn alpha_beta(q: &Rational, x: &AlgebraicTriple, depth: usize) -> MembershipVerdict {
    let [c0, c1, c2] = x.coeffs();
    let (Some(s1), Some(s2)) = (sqrt_side(c1), sqrt_side(c2)) else {
        return MembershipVerdict::out();
    };
    let inv = |p: u64| alpha::phi_s_inverse(q, p);
    let (Some(r1), Some(r2)) = (alpha::weighted_partial_sum(&s1.terms, inv), alpha::weighted_partial_sum(&s2.terms, inv)) else {
        return MembershipVerdict::unknown(depth);
    };
    let y = c0 + &r1 + r2;
    let k1 = s1.extra.to_usize().unwrap_or(usize::MAX);
    let k2 = s2.extra.to_usize().unwrap_or(usize::MAX);
    let k = k1.saturating_add(k2);
    let d = q.denom().clone();
    if arith::level(&y, &d).is_none() {
        return MembershipVerdict::out();
    }
    // y + (sum of K elements below sqrt2) < y + K sqrt2
    let reach = AlgebraicTriple::new(y.clone(), Rational::from_integer(BigInt::from(k)), Rational::zero());
    if reach.signum() != Ordering::Greater && !(k == 0 && y.is_zero()) {
        return MembershipVerdict::out();
    }
    let Some(extras) = pick_shifts(q, &y, k, depth) else {
        return if k == 0 { MembershipVerdict::out() } else { MembershipVerdict::unknown(depth) };
    };
    let total: Rational = &y + &extras.iter().sum::<Rational>();
    let digits = arith::mq_digits(q, &total).expect("chosen shifts land in M_q");
    let mut terms = mq_terms(q, &digits);
    let alpha_gen = |s: &Rational, p: u64| {
        let t = AlgebraicTriple::new(-s, Rational::one(), Rational::zero()).scale_rational(&Rational::frac(1, p as i64));
        GroupElement::triple(t)
    };
    let beta_gen = |s: &Rational, p: u64| {
        let t = AlgebraicTriple::new(-s, Rational::zero(), Rational::one()).scale_rational(&Rational::frac(1, p as i64));
        GroupElement::triple(t)
    };
    let mut side = |sd: &SqrtSide, shifts: &[Rational], gen: &dyn Fn(&Rational, u64) -> GroupElement| {
        let mut mult: std::collections::BTreeMap<u64, BigUint> = sd.terms.iter().map(|&(p, r)| (p, BigUint::from(r))).collect();
        for s in shifts {
            let p = alpha::phi_s(q, s).expect("window element of S");
            *mult.entry(p).or_default() += p;
        }
        for (p, n) in mult {
            let s = alpha::phi_s_inverse(q, p).expect("materialized");
            terms.push((gen(&s, p), n));
        }
    };
    side(&s1, &extras[..k1], &alpha_gen);
    side(&s2, &extras[k1..], &beta_gen);
    MembershipVerdict::member(Certificate::new(terms))
}

/// Finds `K` elements of the `S` window whose sum shifts `y` into `M_q`.
fn pick_shifts(q: &Rational, y: &Rational, k: usize, depth: usize) -> Option<Vec<Rational>> {
    if arith::mq_digits(q, y).is_some() {
        return Some(vec![Rational::zero(); k]);
    }
    if k == 0 || k > 64 {
        return None;
    }
    let window = alpha::s_prefix(q, depth.max(2));
    // multisets in nondecreasing index order
    fn go(q: &Rational, w: &[Rational], start: usize, left: usize, acc: &Rational, chosen: &mut Vec<Rational>, budget: &mut u64) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if left == 0 {
            return arith::mq_digits(q, acc).is_some();
        }
        for i in start..w.len() {
            chosen.push(w[i].clone());
            if go(q, w, i, left - 1, &(acc + &w[i]), chosen, budget) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let mut budget = 200_000u64;
    if go(q, &window, 0, k, y, &mut chosen, &mut budget) {
        Some(chosen)
    } else {
        None
    }
}

/// Membership in `<r, (sqrt2 + r)/phi(r)>`: exact.
fn nearly_alpha(x: &AlgebraicTriple, depth: usize) -> MembershipVerdict {
    let [c0, c1, c2] = x.coeffs();
    if !c2.is_zero() {
        return MembershipVerdict::out();
    }
    let Some(side) = sqrt_side(c1) else {
        return MembershipVerdict::out();
    };
    let Some(r) = alpha::weighted_partial_sum(&side.terms, alpha::phi_q_inverse) else {
        return MembershipVerdict::unknown(depth);
    };
    let t = c0 - &r;
    if t.is_negative() {
        return MembershipVerdict::out();
    }
    let mut mult: std::collections::BTreeMap<u64, BigUint> = side.terms.iter().map(|&(p, r)| (p, BigUint::from(r))).collect();
    *mult.entry(2).or_default() += ubig(&(&side.extra * 2));
    let mut terms: Vec<(GroupElement, BigUint)> = mult
        .into_iter()
        .map(|(p, n)| (nearly_generator(&alpha::phi_q_inverse(p).expect("prime"), p), n))
        .collect();
    terms.push((GroupElement::triple(AlgebraicTriple::rational(t)), BigUint::one()));
    MembershipVerdict::member(Certificate::new(terms))
}

/// `(sqrt2 + r)/p`.
pub(crate) fn nearly_generator(r: &Rational, p: u64) -> GroupElement {
    GroupElement::triple(AlgebraicTriple::new(r.clone(), Rational::one(), Rational::zero()).scale_rational(&Rational::frac(1, p as i64)))
}

/// Decides `d | x`, i.e. `x - d in m`.
pub fn divides(m: &MonoidDescriptor, d: &GroupElement, x: &GroupElement, depth: usize) -> Result<MembershipVerdict> {
    check_group(m, d)?;
    let diff = x.checked_sub(d)?;
    if diff.is_negative() {
        return Ok(MembershipVerdict::out());
    }
    contains(m, &diff, depth)
}

/// Decides `x in gp(m)`.
pub fn gp_membership(m: &MonoidDescriptor, x: &GroupElement) -> Result<bool> {
    check_group(m, x)?;
    Ok(match m {
        MonoidDescriptor::FiniteGenerated { gens, .. } => lattice_contains(gens, x),
        MonoidDescriptor::GeometricPuiseux { q } => arith::level(rational(x), q.denom()).is_some(),
        // implementation-derived: the subgroup generated by all 1/p
        MonoidDescriptor::PrimeReciprocal => arith::squarefree_denominator(rational(x)),
        MonoidDescriptor::Localization { prime } => arith::denominator_power_of(rational(x), *prime),
        MonoidDescriptor::Conductive { .. } | MonoidDescriptor::LexCone { .. } => true,
        MonoidDescriptor::Product { left, right } => {
            let (l, r) = m.split_product(x)?;
            gp_membership(left, &l)? && gp_membership(right, &r)?
        }
        MonoidDescriptor::UnionShift { base, tail } => match tail {
            TailRule::GroupAtLeast { .. } => gp_membership(base, x)?,
            TailRule::LocalizationAtLeast { prime, .. } => {
                let MonoidDescriptor::Localization { prime: p1 } = base.as_ref() else { unreachable!("validated") };
                arith::two_prime_split(rational(x), *p1, *prime).is_some()
            }
        },
        MonoidDescriptor::AlphaBeta { .. } | MonoidDescriptor::NearlyAtomicAlpha => {
            return Err(Error::Unsupported(format!("difference group of {}", m.family())))
        }
    })
}

/// Membership in the difference group of the submonoid generated by the
/// atoms. Differs from [`gp_membership`] only for the two-prime union, whose
/// atoms all lie in `Z[1/p2]`.
pub fn atom_group_membership(m: &MonoidDescriptor, x: &GroupElement) -> Result<bool> {
    match m {
        MonoidDescriptor::UnionShift { tail: TailRule::LocalizationAtLeast { prime, .. }, .. } => {
            check_group(m, x)?;
            Ok(arith::denominator_power_of(rational(x), *prime))
        }
        _ => gp_membership(m, x),
    }
}

/// Integer row echelon membership test for the lattice spanned by `gens`.
fn lattice_contains(gens: &[GroupElement], x: &GroupElement) -> bool {
    let coords: Vec<Vec<Rational>> = gens.iter().map(|g| g.coords()).collect();
    let xc = x.coords();
    let scale = Rational::common_denominator(coords.iter().flatten().chain(xc.iter()));
    let mut rows: Vec<Vec<BigInt>> = coords.iter().map(|v| v.iter().map(|c| c.scaled_integer(&scale)).collect()).collect();
    let mut target: Vec<BigInt> = xc.iter().map(|c| c.scaled_integer(&scale)).collect();
    let dim = target.len();
    let mut pivot_row = 0;
    for col in 0..dim {
        // gcd-combine all rows below pivot_row into a single pivot for col
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    rows.swap(pivot_row, i);
                }
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).expect("nonempty");
            rows.swap(pivot_row, best);
            for i in pivot_row + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col].div_floor(&rows[pivot_row][col]);
                let p = rows[pivot_row].clone();
                for (a, b) in rows[i].iter_mut().zip(&p) {
                    *a -= &f * b;
                }
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            let (f, r) = target[col].div_mod_floor(&rows[pivot_row][col]);
            if !r.is_zero() {
                return false;
            }
            let p = rows[pivot_row].clone();
            for (a, b) in target.iter_mut().zip(&p) {
                *a -= &f * b;
            }
            pivot_row += 1;
        } else if !target[col].is_zero() {
            return false;
        }
    }
    target.iter().all(Zero::is_zero)
}
