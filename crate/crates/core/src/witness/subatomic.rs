//! Witnesses separating nearly / almost / quasi atomicity, and the common
//! divisor replay for the monoid over `sqrt2`, `sqrt3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{atoms, check_atom, factorizations, AtomCheck};
use crate::models::{alpha, contains, divides, generators, is_generator, MonoidDescriptor};
use crate::ordered::{AlgebraicTriple, GroupElement, Rational};
use crate::primes;

// ---------------------------------------------------------------- quasi

/// `b + q = 4 n(q) = 3 n(q) * [4/3]` with `b = (4 d(q) - 1) q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiWitness {
    pub q: Rational,
    pub b: Rational,
    pub sum: Rational,
    pub atom: Rational,
    pub multiplicity: Rational,
}

fn quasi_atom() -> Rational {
    Rational::frac(4, 3)
}

/// Builds and checks the companion of a nonzero member `q`.
pub fn verify_quasi_witness(q: &Rational) -> Result<QuasiWitness> {
    let d = Rational::from_integer(q.denom().clone());
    let n = Rational::from_integer(q.numer().clone());
    let b = &(&d.mul_int(&BigInt::from(4)) - &Rational::one()) * q;
    let w = QuasiWitness {
        q: q.clone(),
        sum: &b + q,
        b,
        atom: quasi_atom(),
        multiplicity: n.mul_int(&BigInt::from(3)),
    };
    w.verify()?;
    Ok(w)
}

impl QuasiWitness {
    pub fn verify(&self) -> Result<()> {
        let m = MonoidDescriptor::quasi_not_almost();
        let el = |x: &Rational| GroupElement::rational(x.clone());
        if !self.q.is_positive() || !contains(&m, &el(&self.q), 1)?.is_in() {
            return Err(Error::NotAMember(self.q.to_string()));
        }
        let fail = |s: &str| Err(Error::InvalidParameter(format!("quasi witness: {s}")));
        let d = Rational::from_integer(self.q.denom().clone());
        let four_n = Rational::from_integer(self.q.numer() * 4);
        if self.b != &(&d.mul_int(&BigInt::from(4)) - &Rational::one()) * &self.q || self.sum != &self.b + &self.q {
            return fail("companion does not match q");
        }
        if self.sum != four_n || &self.multiplicity * &self.atom != self.sum || !self.multiplicity.is_integer() {
            return fail("b + q is not 3 n(q) copies of 4/3");
        }
        if self.atom != quasi_atom() || !contains(&m, &el(&self.b), 1)?.is_in() {
            return fail("companion or atom outside the monoid");
        }
        // every member with a 3 in its denominator is >= 4/3, so 4/3 - x for
        // 0 < x < 4/3 a member would have to avoid the tail: checked on the window
        let window: Vec<GroupElement> = generators(&m, 6).generators.iter().cloned().collect();
        if check_atom(&m, &el(&self.atom), &window, 6) != AtomCheck::Atom {
            return fail("4/3 decomposes");
        }
        Ok(())
    }
}

// ------------------------------------------------------- almost, not nearly

/// Odd-ish primes are summed as `floor(2^SCALE / p)` (lower bound) and
/// `ceil(2^SCALE / p)` (upper bound); both are exact integer certificates.
const SCALE: u32 = 100;

/// Primes are sieved up to this bound when building refuting sets.
pub const SIEVE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearlyRefutation {
    /// Candidate companion `q` (a nonzero member).
    pub q: Rational,
    /// Primes dividing `d(q)`.
    pub excluded: Vec<u64>,
    /// `S`: the greedy prefix of primes outside `excluded`, given by its
    /// first and last prime and its size.
    pub s_first: u64,
    pub s_last: u64,
    pub s_len: usize,
    /// `sum_{p in S} floor(2^100 / p)`, a lower bound on `2^100 sum 1/p`.
    pub lower_sum: String,
    /// `sum_{p in S, p < s_last} ceil(2^100 / p)`: the prefix without its last
    /// prime does not yet pass `q + 2`.
    pub upper_prefix_sum: String,
    /// `r = 1 + prod_{p in S} 1/p`, kept symbolic.
    pub r: String,
    pub r_below_two: bool,
    pub r_in_tail: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostNotNearlyReport {
    pub candidate_primes: usize,
    pub refutations: Vec<NearlyRefutation>,
}

fn scaled(q: &Rational) -> BigInt {
    // 2^SCALE * (q + 2), rounded up
    let t = &(q + &Rational::from(2)) * &Rational::from_integer(BigInt::one() << SCALE);
    t.ceil()
}

/// Refutes `q` as a nearly-atomic companion of `M_0 u G_{>=1}`.
pub fn refute_nearly(q: &Rational, sieve: &[u64]) -> Result<NearlyRefutation> {
    let m = MonoidDescriptor::almost_not_nearly();
    if !q.is_positive() {
        return Err(Error::InvalidParameter("the companion must be a nonzero member".into()));
    }
    if !contains(&m, &GroupElement::rational(q.clone()), 1)?.is_in() {
        return Err(Error::NotAMember(q.to_string()));
    }
    let excluded: Vec<u64> = primes::factorize(&q.denom_u(), primes::TRIAL_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("cannot factor d({q})")))?
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let target = scaled(q);
    let unit: u128 = 1u128 << SCALE;
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut chosen: Option<(u64, u64, usize)> = None;
    let mut first = None;
    let mut len = 0usize;
    for &p in sieve {
        if excluded.contains(&p) {
            continue;
        }
        first.get_or_insert(p);
        len += 1;
        let lo = unit / p as u128;
        let hi = lo + u128::from(unit % p as u128 != 0);
        lower += BigInt::from(lo);
        if lower > target {
            chosen = Some((first.expect("set"), p, len));
            break;
        }
        upper += BigInt::from(hi);
    }
    let (s_first, s_last, s_len) = chosen.ok_or_else(|| Error::SearchExhausted {
        depth: sieve.len(),
        what: format!("prime reciprocals below {} do not pass {q} + 2", sieve.last().copied().unwrap_or(0)),
    })?;
    let r = NearlyRefutation {
        q: q.clone(),
        excluded,
        s_first,
        s_last,
        s_len,
        lower_sum: lower.to_string(),
        upper_prefix_sum: upper.to_string(),
        r: format!("1 + 1/({s_len} distinct primes {s_first}..{s_last}, product)"),
        r_below_two: s_first >= 2,
        r_in_tail: true,
    };
    r.verify_against(sieve)?;
    Ok(r)
}

impl NearlyRefutation {
    /// Rechecks the two integer bounds and the structural facts about `S`.
    pub fn verify_against(&self, sieve: &[u64]) -> Result<()> {
        let fail = |s: String| Err(Error::InvalidParameter(format!("nearly refutation for {}: {s}", self.q)));
        let d = self.q.denom_u();
        let s: Vec<u64> = sieve
            .iter()
            .copied()
            .filter(|p| !self.excluded.contains(p))
            .take_while(|&p| p <= self.s_last)
            .collect();
        if s.len() != self.s_len || s.first() != Some(&self.s_first) || s.last() != Some(&self.s_last) {
            return fail("S does not match the sieve".into());
        }
        if s.iter().any(|&p| (&d % p).is_zero()) || self.excluded.iter().any(|&p| !(&d % p).is_zero()) {
            return fail("S meets the primes of d(q)".into());
        }
        let unit: u128 = 1u128 << SCALE;
        let lower: BigInt = s.iter().map(|&p| BigInt::from(unit / p as u128)).sum();
        let upper: BigInt = s[..s.len() - 1].iter().map(|&p| BigInt::from(unit.div_ceil(p as u128))).sum();
        let target = scaled(&self.q);
        if lower.to_string() != self.lower_sum || upper.to_string() != self.upper_prefix_sum {
            return fail("recorded sums differ".into());
        }
        if lower <= target {
            return fail("sum over S does not exceed q + 2".into());
        }
        // the last prime is needed: 2^100 (q + 2) is at least the prefix upper bound
        let exact_target = &(&self.q + &Rational::from(2)) * &Rational::from_integer(BigInt::one() << SCALE);
        if Rational::from_integer(upper) > exact_target {
            return fail("S is not minimal".into());
        }
        // 1/prod S has squarefree denominator and r = 1 + 1/prod S lies in [1, 2)
        if !(self.r_below_two && self.r_in_tail && self.s_first >= 2) {
            return fail("r is not in G_{>=1} below 2".into());
        }
        Ok(())
    }
}

/// Refutes every candidate companion `1/p` (first `b` primes) and `1`.
pub fn verify_almost_not_nearly(b: usize) -> Result<AlmostNotNearlyReport> {
    let sieve = primes::primes_up_to(SIEVE_LIMIT);
    let mut candidates: Vec<Rational> = primes::first_primes(b).into_iter().map(|p| Rational::frac(1, p as i64)).collect();
    candidates.push(Rational::one());
    let refutations = candidates.iter().map(|q| refute_nearly(q, &sieve)).collect::<Result<_>>()?;
    Ok(AlmostNotNearlyReport { candidate_primes: b, refutations })
}

// ------------------------------------------------------- nearly atomic alpha

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearlyIdentity {
    /// `r = q_0 + sum a_k`.
    pub q0: Rational,
    pub atoms: Vec<GroupElement>,
    pub r: GroupElement,
    /// `phi(q_0)`.
    pub prime: u64,
    /// `(sqrt2 + q_0)/phi(q_0)`.
    pub lead_atom: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalObstruction {
    pub element: Rational,
    pub window_factorizations: usize,
    /// Every atom in the window has a positive `sqrt2` coordinate; the
    /// element has none.
    pub sqrt2_coordinate: Rational,
    pub least_atom_sqrt2_coordinate: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearlyAtomicReport {
    pub depth: usize,
    pub identities: Vec<NearlyIdentity>,
    pub obstructions: Vec<RationalObstruction>,
}

fn nearly_atom(r: &Rational) -> Result<(u64, GroupElement)> {
    let p = alpha::phi_q(r).ok_or_else(|| Error::Unsupported(format!("phi({r}) is out of range")))?;
    let t = AlgebraicTriple::new(r.clone(), Rational::one(), Rational::zero()).scale_rational(&Rational::frac(1, p as i64));
    Ok((p, GroupElement::triple(t)))
}

/// Replays `sqrt2 + r = phi(q_0) (sqrt2 + q_0)/phi(q_0) + sum a_k` for members
/// `r` built from the depth window, and records the obstruction for rational
/// members.
pub fn verify_nearly_atomic(depth: usize) -> Result<NearlyAtomicReport> {
    let depth = depth.max(1);
    let m = MonoidDescriptor::NearlyAtomicAlpha;
    let prefix = alpha::rational_prefix(depth);
    let window_atoms = atoms(&m, depth);
    let mut identities = Vec::new();
    for (i, q0) in prefix.iter().enumerate() {
        // no atoms, then one and two atoms from the window
        for n_atoms in 0..3usize {
            let chosen: Vec<GroupElement> =
                (0..n_atoms).map(|k| window_atoms.atoms[(i + k) % window_atoms.atoms.len()].clone()).collect();
            let (prime, lead) = nearly_atom(q0)?;
            let r = chosen.iter().fold(GroupElement::triple(AlgebraicTriple::rational(q0.clone())), |acc, a| &acc + a);
            let id = NearlyIdentity { q0: q0.clone(), atoms: chosen, r, prime, lead_atom: lead };
            id.verify(depth)?;
            identities.push(id);
        }
    }
    let least = window_atoms
        .atoms
        .iter()
        .map(|a| a.as_triple().expect("triple").sqrt2_part().clone())
        .min()
        .ok_or_else(|| Error::SearchExhausted { depth, what: "no atoms in the window".into() })?;
    let mut obstructions = Vec::new();
    for x in prefix.iter().filter(|x| x.is_positive()) {
        let el = GroupElement::triple(AlgebraicTriple::rational(x.clone()));
        let fs = factorizations(&m, &el, depth, 16)?;
        let ob = RationalObstruction {
            element: x.clone(),
            window_factorizations: fs.factorizations.len(),
            sqrt2_coordinate: Rational::zero(),
            least_atom_sqrt2_coordinate: least.clone(),
        };
        if ob.window_factorizations != 0 || !ob.least_atom_sqrt2_coordinate.is_positive() {
            return Err(Error::InvalidParameter(format!("rational member {x} has an atomic decomposition")));
        }
        obstructions.push(ob);
    }
    Ok(NearlyAtomicReport { depth, identities, obstructions })
}

impl NearlyIdentity {
    pub fn verify(&self, depth: usize) -> Result<()> {
        let m = MonoidDescriptor::NearlyAtomicAlpha;
        let fail = |s: &str| Err(Error::InvalidParameter(format!("nearly identity at q0 = {}: {s}", self.q0)));
        let (p, lead) = nearly_atom(&self.q0)?;
        if p != self.prime || lead != self.lead_atom || !is_generator(&m, &lead) {
            return fail("lead atom");
        }
        if self.atoms.iter().any(|a| !is_generator(&m, a) || a.as_triple().is_some_and(|t| t.sqrt2_part().is_zero())) {
            return fail("summand is not an atom generator");
        }
        let sum: GroupElement = self.atoms.iter().fold(GroupElement::triple(AlgebraicTriple::rational(self.q0.clone())), |a, b| &a + b);
        if sum != self.r || !contains(&m, &self.r, depth)?.is_in() {
            return fail("r");
        }
        let lhs = &GroupElement::triple(AlgebraicTriple::alpha()) + &self.r;
        let rhs = self.atoms.iter().fold(lead.scale_i64(p as i64), |a, b| &a + b);
        if lhs != rhs {
            return fail("identity does not replay");
        }
        Ok(())
    }
}

// -------------------------------------------------- common divisor replay

/// `alpha - d = phi(s) (alpha - s)/phi(s) + q^k` and the same for `beta`,
/// with `s = d + q^k` in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonDivisorReplay {
    pub q: Rational,
    pub d: Rational,
    pub k: u32,
    pub shifted: Rational,
    pub prime: u64,
    pub alpha_atom: GroupElement,
    pub beta_atom: GroupElement,
    pub divides_alpha_side: bool,
    pub divides_beta_side: bool,
}

/// Replays the identities for the first `count` elements `d` of `S`, trying
/// `k <= depth`.
pub fn replay_common_divisors(q: &Rational, count: usize, depth: usize) -> Result<Vec<CommonDivisorReplay>> {
    let m = MonoidDescriptor::alpha_beta(q.clone())?;
    let mut out = Vec::new();
    for d in alpha::s_prefix(q, count) {
        let found = (1..=depth as u32).find_map(|k| {
            let s = &d + &q.pow(k);
            alpha::phi_s(q, &s).map(|p| (k, s, p))
        });
        let (k, shifted, prime) = found.ok_or_else(|| Error::SearchExhausted {
            depth,
            what: format!("no k with {d} + q^k in the materialized part of S"),
        })?;
        let inv = Rational::frac(1, prime as i64);
        let alpha_atom = GroupElement::triple(AlgebraicTriple::new(-&shifted, Rational::one(), Rational::zero()).scale_rational(&inv));
        let beta_atom = GroupElement::triple(AlgebraicTriple::new(-&shifted, Rational::zero(), Rational::one()).scale_rational(&inv));
        let qk = GroupElement::triple(AlgebraicTriple::rational(q.pow(k)));
        let a_side = GroupElement::triple(AlgebraicTriple::alpha().sub(&AlgebraicTriple::rational(d.clone())));
        let b_side = GroupElement::triple(AlgebraicTriple::beta().sub(&AlgebraicTriple::rational(d.clone())));
        // the membership search must see `shifted` in its window of S
        let reach = depth.max(alpha::s_index(q, &shifted).expect("in S") + 1);
        let r = CommonDivisorReplay {
            q: q.clone(),
            d,
            k,
            shifted,
            prime,
            divides_alpha_side: divides(&m, &qk, &a_side, reach)?.is_in(),
            divides_beta_side: divides(&m, &qk, &b_side, reach)?.is_in(),
            alpha_atom,
            beta_atom,
        };
        r.verify()?;
        out.push(r);
    }
    Ok(out)
}

impl CommonDivisorReplay {
    pub fn verify(&self) -> Result<()> {
        let m = MonoidDescriptor::alpha_beta(self.q.clone())?;
        let fail = |s: &str| Err(Error::InvalidParameter(format!("common divisor replay at d = {}: {s}", self.d)));
        if self.shifted != &self.d + &self.q.pow(self.k) || alpha::phi_s(&self.q, &self.shifted) != Some(self.prime) {
            return fail("shift");
        }
        if !is_generator(&m, &self.alpha_atom) || !is_generator(&m, &self.beta_atom) {
            return fail("atoms");
        }
        let qk = GroupElement::triple(AlgebraicTriple::rational(self.q.pow(self.k)));
        let p = self.prime as i64;
        let a_side = GroupElement::triple(AlgebraicTriple::alpha().sub(&AlgebraicTriple::rational(self.d.clone())));
        let b_side = GroupElement::triple(AlgebraicTriple::beta().sub(&AlgebraicTriple::rational(self.d.clone())));
        if a_side != &self.alpha_atom.scale_i64(p) + &qk || b_side != &self.beta_atom.scale_i64(p) + &qk {
            return fail("identity does not replay");
        }
        if !(self.divides_alpha_side && self.divides_beta_side) {
            return fail("q^k does not divide both sides");
        }
        Ok(())
    }
}
