use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{arith, MonoidDescriptor};
use crate::ordered::Rational;

/// A strictly ascending chain of principal ideals `q_0 + M c q_1 + M c ...`
/// of `M_q`, witnessed by `q_n = q_{n+1} + a_{n+1}` with `a_{n+1}` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub descriptor: MonoidDescriptor,
    pub q: Rational,
    /// `q_0, ..., q_N`.
    pub elements: Vec<Rational>,
    /// `a_1, ..., a_N`.
    pub differences: Vec<Rational>,
    pub depth: usize,
}

/// `a_n = (d(q) - n(q)) q^(n-1)` for `n >= 1`.
pub fn chain_difference(q: &Rational, n: usize) -> Rational {
    assert!(n >= 1, "differences start at a_1");
    let gap = q.denom() - q.numer();
    q.pow(n as u32 - 1).mul_int(&gap)
}

/// `q_n = d(q) q^n`.
pub fn chain_element(q: &Rational, n: usize) -> Rational {
    q.pow(n as u32).mul_int(q.denom())
}

/// The chain `d(q) q^n = (d(q) - n(q)) q^n + d(q) q^(n+1)` to depth `n`.
pub fn mq_chain(q: &Rational, depth: usize) -> Result<ChainCertificate> {
    let descriptor = MonoidDescriptor::geometric(q.clone())?;
    let cert = ChainCertificate {
        descriptor,
        q: q.clone(),
        elements: (0..=depth).map(|n| chain_element(q, n)).collect(),
        differences: (1..=depth).map(|n| chain_difference(q, n)).collect(),
        depth,
    };
    cert.verify()?;
    Ok(cert)
}

impl ChainCertificate {
    /// Exact replay: every identity and every membership.
    pub fn verify(&self) -> Result<()> {
        let fail = |s: String| Err(Error::InvalidParameter(format!("chain certificate: {s}")));
        if self.descriptor != MonoidDescriptor::geometric(self.q.clone())? {
            return fail("descriptor does not match q".into());
        }
        if self.elements.len() != self.depth + 1 || self.differences.len() != self.depth {
            return fail("length mismatch".into());
        }
        for (i, x) in self.elements.iter().enumerate() {
            if arith::mq_digits(&self.q, x).is_none() {
                return fail(format!("q_{i} = {x} is not a member"));
            }
        }
        for (n, a) in self.differences.iter().enumerate() {
            if &(&self.elements[n] - &self.elements[n + 1]) != a {
                return fail(format!("q_{n} - q_{} != a_{}", n + 1, n + 1));
            }
            if !a.is_positive() || arith::mq_digits(&self.q, a).is_none() {
                return fail(format!("a_{} = {a} is not a nonzero member", n + 1));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn texts(v: &[Rational]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn two_thirds() {
        let c = mq_chain(&Rational::frac(2, 3), 3).unwrap();
        assert_eq!(texts(&c.elements), ["3", "2", "4/3", "8/9"]);
        assert_eq!(texts(&c.differences), ["1", "2/3", "4/9"]);
    }

    #[test]
    fn three_fifths() {
        let c = mq_chain(&Rational::frac(3, 5), 1).unwrap();
        assert_eq!(texts(&c.elements), ["5", "3"]);
        assert_eq!(texts(&c.differences), ["2"]);
    }

    #[test]
    fn tampering_is_caught() {
        assert!(mq_chain(&Rational::frac(1, 2), 3).is_err());
        let mut c = mq_chain(&Rational::frac(2, 3), 3).unwrap();
        c.differences[1] = c.differences[1].mul_int(&BigInt::from(2));
        assert!(c.verify().is_err());
    }
}
