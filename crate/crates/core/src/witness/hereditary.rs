//! The constructive half of the ACCP / hereditary atomicity equivalence.
//!
//! Starting from the chain `q_n = q_{n+1} + a_{n+1}` of `M_q`, builds
//! `a'_{k+1} = a_{m+1} + a_j` with `j > m + 1` minimal such that no residue
//! `q in q_0 - <a'_1, ..., a'_k>` is a positive multiple of `a'_{k+1}`. Each
//! step records the finite residue set (an exhaustive knapsack) and the
//! membership certificate for `s_j - s'_{k+1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::chain::{chain_difference, chain_element};
use crate::error::{Error, Result};
use crate::models::{arith, MonoidDescriptor};
use crate::ordered::{GroupElement, Rational};

/// Hard cap on (residue, multiple) pairs per step.
const COMBINATION_LIMIT: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionTranscript {
    /// `floor(q_0 / a'_i)` for every constructed element so far.
    pub coefficient_bounds: Vec<u64>,
    /// (residue, multiple) pairs examined.
    pub combinations: u64,
    /// `{q_0 - sum c_i a'_i >= 0}`; `0` is absent iff `q_0` is excluded.
    pub residues: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityProof {
    /// `m(k)`: the chain index with `s'_k | s_m`.
    pub m: usize,
    pub s_m: Rational,
    /// `s_m - s'_k`, a member.
    pub difference: Rational,
    /// Canonical digits of the difference over `q^0, q^1, ...`.
    pub digits: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakStep {
    /// `a'_k = a_left + a_right` (chain indices).
    pub left: usize,
    pub right: usize,
    /// Smaller indices tried for `right` and rejected.
    pub rejected: Vec<usize>,
    pub a_prime: Rational,
    pub partial_sum: Rational,
    pub same_class: bool,
    /// Exclusion of `q_0` from `<a'_1, ..., a'_k>`.
    pub exclusion: ExclusionTranscript,
    pub divisibility: DivisibilityProof,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HereditaryBreakCertificate {
    pub descriptor: MonoidDescriptor,
    pub q: Rational,
    pub q0: Rational,
    pub steps: Vec<BreakStep>,
}

/// All `q_0 - sum c_i a_i >= 0` over nonnegative integer vectors `c`.
pub fn residues(q0: &Rational, gens: &[Rational]) -> Result<ExclusionTranscript> {
    let bounds: Vec<u64> = gens
        .iter()
        .map(|a| (q0 / a).floor().try_into().map_err(|_| Error::InvalidParameter("coefficient bound overflow".into())))
        .collect::<Result<_>>()?;
    // layer by layer: residues of the first i generators, then subtract
    // every multiple of the next one
    let mut layer: BTreeSet<Rational> = BTreeSet::from([q0.clone()]);
    let mut combinations = 0u64;
    for a in gens {
        let mut next = BTreeSet::new();
        for r in &layer {
            let mut r = r.clone();
            while !r.is_negative() {
                combinations += 1;
                if combinations > COMBINATION_LIMIT {
                    return Err(Error::SearchExhausted { depth: gens.len(), what: "knapsack combination limit".into() });
                }
                let lower = &r - a;
                next.insert(r);
                r = lower;
            }
        }
        layer = next;
    }
    Ok(ExclusionTranscript { coefficient_bounds: bounds, combinations, residues: layer.into_iter().collect() })
}

/// Whether some residue is a positive integer multiple of `a`.
fn hits(res: &[Rational], a: &Rational) -> bool {
    res.iter().any(|q| q.is_positive() && (q / a).is_integer())
}

fn prefix_sum(q: &Rational, m: usize) -> Rational {
    (1..=m).map(|i| chain_difference(q, i)).sum()
}

fn divisibility(q: &Rational, m: usize, partial: &Rational) -> Result<DivisibilityProof> {
    let s_m = prefix_sum(q, m);
    let difference = &s_m - partial;
    let digits = arith::mq_digits(q, &difference)
        .ok_or_else(|| Error::InvalidParameter(format!("s_{m} - s' = {difference} is not a member")))?;
    Ok(DivisibilityProof { m, s_m, difference, digits: digits.iter().map(|d| d.to_string()).collect() })
}

/// Runs `steps` construction steps, trying `right` indices up to `depth`
/// beyond the forced lower bound.
pub fn synthesize_break(q: &Rational, steps: usize, depth: usize) -> Result<HereditaryBreakCertificate> {
    let descriptor = MonoidDescriptor::geometric(q.clone())?;
    let q0 = chain_element(q, 0);
    let mut cert = HereditaryBreakCertificate { descriptor, q: q.clone(), q0: q0.clone(), steps: Vec::new() };
    let mut primes: Vec<Rational> = Vec::new();
    let mut partial = Rational::zero();
    let mut m = 0usize;
    let mut res = vec![q0.clone()];
    for k in 0..steps {
        let left = m + 1;
        let a_left = chain_difference(q, left);
        let mut rejected = Vec::new();
        let mut chosen = None;
        for j in left + 1..=left + depth.max(1) {
            let cand = &a_left + &chain_difference(q, j);
            if hits(&res, &cand) {
                rejected.push(j);
            } else {
                chosen = Some((j, cand));
                break;
            }
        }
        let (j, a_prime) = chosen.ok_or_else(|| Error::SearchExhausted {
            depth,
            what: format!("no admissible index for step {}", k + 1),
        })?;
        primes.push(a_prime.clone());
        partial = &partial + &a_prime;
        let exclusion = residues(&q0, &primes)?;
        if exclusion.residues.iter().any(Rational::is_zero) {
            return Err(Error::InvalidParameter(format!("step {}: q_0 is in the generated monoid", k + 1)));
        }
        let same_class = GroupElement::rational(q0.clone()).arch_valuation()? == GroupElement::rational(a_prime.clone()).arch_valuation()?;
        m = j;
        cert.steps.push(BreakStep {
            left,
            right: j,
            rejected,
            a_prime,
            partial_sum: partial.clone(),
            same_class,
            divisibility: divisibility(q, m, &partial)?,
            exclusion: exclusion.clone(),
        });
        res = exclusion.residues;
    }
    cert.verify()?;
    Ok(cert)
}

impl HereditaryBreakCertificate {
    /// Recomputes every step from `q` alone.
    pub fn verify(&self) -> Result<()> {
        let fail = |s: String| Err(Error::InvalidParameter(format!("break certificate: {s}")));
        if self.descriptor != MonoidDescriptor::geometric(self.q.clone())? || self.q0 != chain_element(&self.q, 0) {
            return fail("header does not match q".into());
        }
        let q = &self.q;
        let mut primes = Vec::new();
        let mut partial = Rational::zero();
        let mut m = 0;
        let mut res = vec![self.q0.clone()];
        for (k, st) in self.steps.iter().enumerate() {
            let n = k + 1;
            if st.left != m + 1 || st.right <= st.left {
                return fail(format!("step {n}: indices"));
            }
            let a_left = chain_difference(q, st.left);
            let expected_rejected: Vec<usize> = (st.left + 1..st.right).collect();
            if st.rejected != expected_rejected
                || st.rejected.iter().any(|&j| !hits(&res, &(&a_left + &chain_difference(q, j))))
            {
                return fail(format!("step {n}: minimality"));
            }
            let a_prime = &a_left + &chain_difference(q, st.right);
            if st.a_prime != a_prime || hits(&res, &a_prime) {
                return fail(format!("step {n}: admissibility"));
            }
            primes.push(a_prime.clone());
            partial = &partial + &a_prime;
            if st.partial_sum != partial {
                return fail(format!("step {n}: partial sum"));
            }
            let ex = residues(&self.q0, &primes)?;
            if ex != st.exclusion || ex.residues.iter().any(Rational::is_zero) {
                return fail(format!("step {n}: exclusion transcript"));
            }
            let same = GroupElement::rational(self.q0.clone()).arch_valuation()? == GroupElement::rational(a_prime).arch_valuation()?;
            if !(same && st.same_class) {
                return fail(format!("step {n}: class"));
            }
            m = st.right;
            if st.divisibility != divisibility(q, m, &partial)? {
                return fail(format!("step {n}: divisibility"));
            }
            res = ex.residues;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_two_thirds() {
        let c = synthesize_break(&Rational::frac(2, 3), 1, 10).unwrap();
        let st = &c.steps[0];
        // a_1 + a_2 = 1 + 2/3; 3 / (5/3) = 9/5
        assert_eq!((st.left, st.right), (1, 2));
        assert_eq!(st.a_prime, Rational::frac(5, 3));
        assert!(st.rejected.is_empty());
    }

    #[test]
    fn empty_and_replay() {
        assert!(synthesize_break(&Rational::frac(2, 3), 0, 10).unwrap().steps.is_empty());
        let mut c = synthesize_break(&Rational::frac(2, 3), 3, 10).unwrap();
        c.verify().unwrap();
        c.steps[1].exclusion.residues.pop();
        assert!(c.verify().is_err());
    }

    #[test]
    fn knapsack_oracle() {
        // 3 in <13/9>? 27/13 is not an integer.
        let ex = residues(&Rational::from(3), &[Rational::frac(13, 9)]).unwrap();
        assert!(!ex.residues.iter().any(Rational::is_zero));
        assert_eq!(ex.coefficient_bounds, [2]);
        let ex = residues(&Rational::from(3), &[Rational::frac(3, 2)]).unwrap();
        assert!(ex.residues.iter().any(Rational::is_zero));
    }
}
