//! Machine-checkable witnesses: ascending chains, the hereditary break
//! construction, and the subatomic separations.

pub mod chain;
pub mod hereditary;
pub mod subatomic;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{chain_difference, chain_element, mq_chain, ChainCertificate};
pub use hereditary::{residues, synthesize_break, BreakStep, HereditaryBreakCertificate};
pub use subatomic::{
    refute_nearly, replay_common_divisors, verify_almost_not_nearly, verify_nearly_atomic, verify_quasi_witness,
    AlmostNotNearlyReport, CommonDivisorReplay, NearlyAtomicReport, NearlyRefutation, QuasiWitness,
};

/// A certificate file as written by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateFile {
    Chain(ChainCertificate),
    Break(HereditaryBreakCertificate),
    Quasi(QuasiWitness),
}

impl CertificateFile {
    pub fn verify(&self) -> Result<()> {
        match self {
            CertificateFile::Chain(c) => c.verify(),
            CertificateFile::Break(c) => c.verify(),
            CertificateFile::Quasi(c) => c.verify(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CertificateFile::Chain(_) => "chain",
            CertificateFile::Break(_) => "break",
            CertificateFile::Quasi(_) => "quasi",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered::Rational;

    #[test]
    fn file_round_trip() {
        let f = CertificateFile::Break(synthesize_break(&Rational::frac(2, 3), 2, 10).unwrap());
        let back = CertificateFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        back.verify().unwrap();
        let tampered = f.to_json().replacen("\"5/3\"", "\"4/3\"", 1);
        let t = CertificateFile::from_json(&tampered).unwrap();
        assert!(t.verify().is_err());
    }
}
