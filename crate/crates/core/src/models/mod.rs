//! Finite descriptions of the monoid families, with membership, divisibility
//! and difference-group tests.

pub mod alpha;
pub mod arith;
pub(crate) mod membership;
pub(crate) mod window;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordered::{GroupElement, GroupId, Rational, Value};

pub use membership::{contains, divides, gp_membership, atom_group_membership, Certificate, MembershipStatus, MembershipVerdict};
pub use window::{generators, is_generator, GeneratorWindow};

/// Default depth of generator windows and bounded searches.
pub const DEFAULT_DEPTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LexConeRule {
    /// `{0}` together with every element whose first compared coordinate is
    /// positive (e.g. `N x Z` or `Q_{>0} x Q`).
    PositiveLeading,
    /// The full nonnegative cone `G^+`.
    NonnegativeCone,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum TailRule {
    /// Elements of the difference group of the base that are `>= bound`.
    GroupAtLeast { bound: Rational },
    /// Elements of `Z[1/prime]` that are `>= bound`.
    LocalizationAtLeast { prime: u64, bound: Rational },
}

/// A monoid family instance. Every descriptor denotes a reduced positive
/// monoid of its ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub enum MonoidDescriptor {
    FiniteGenerated { group: GroupId, gens: Vec<GroupElement> },
    /// `M_q = <q^n | n >= 0>`.
    GeometricPuiseux { q: Rational },
    /// `M_0 = <1/p | p prime>`.
    PrimeReciprocal,
    /// `Z[1/p]_{>=0}`.
    Localization { prime: u64 },
    /// `M_a = {0} u G_{>=a}`.
    Conductive { group: GroupId, a: GroupElement },
    LexCone { group: GroupId, rule: LexConeRule },
    /// Direct product, ordered lexicographically with the left factor first.
    Product { left: Box<MonoidDescriptor>, right: Box<MonoidDescriptor> },
    /// The monoid generated by `base` together with a tail set.
    UnionShift { base: Box<MonoidDescriptor>, tail: TailRule },
    /// `<s, (sqrt2 - s)/phi(s), (sqrt3 - s)/phi(s) | s in M_q, s < sqrt2>`.
    AlphaBeta { q: Rational },
    /// `<r, (sqrt2 + r)/phi(r) | r in Q_{>=0}>`.
    NearlyAtomicAlpha,
}

impl MonoidDescriptor {
    pub fn finite_generated(gens: Vec<GroupElement>) -> Result<Self> {
        let group = gens
            .first()
            .map(GroupElement::group)
            .ok_or_else(|| Error::InvalidParameter("at least one generator is required".into()))?;
        let m = MonoidDescriptor::FiniteGenerated { group, gens };
        m.validate()?;
        Ok(m)
    }

    /// Numerical monoid `<g_1, ..., g_k>` of the integers.
    pub fn numerical(gens: &[i64]) -> Result<Self> {
        Self::finite_generated(gens.iter().map(|&g| GroupElement::integer(g)).collect())
    }

    pub fn geometric(q: Rational) -> Result<Self> {
        let m = MonoidDescriptor::GeometricPuiseux { q };
        m.validate()?;
        Ok(m)
    }

    pub fn conductive(a: GroupElement) -> Result<Self> {
        let m = MonoidDescriptor::Conductive { group: a.group(), a };
        m.validate()?;
        Ok(m)
    }

    pub fn lex_cone(group: GroupId, rule: LexConeRule) -> Result<Self> {
        let m = MonoidDescriptor::LexCone { group, rule };
        m.validate()?;
        Ok(m)
    }

    pub fn product(left: MonoidDescriptor, right: MonoidDescriptor) -> Result<Self> {
        let m = MonoidDescriptor::Product { left: Box::new(left), right: Box::new(right) };
        m.validate()?;
        Ok(m)
    }

    /// `M_0 u G_{>=1}` with `G` the difference group of `M_0`.
    pub fn almost_not_nearly() -> Self {
        MonoidDescriptor::UnionShift {
            base: Box::new(MonoidDescriptor::PrimeReciprocal),
            tail: TailRule::GroupAtLeast { bound: Rational::one() },
        }
    }

    /// `<Z[1/2]_{>=0} u Z[1/3]_{>=4/3}>`.
    pub fn quasi_not_almost() -> Self {
        MonoidDescriptor::UnionShift {
            base: Box::new(MonoidDescriptor::Localization { prime: 2 }),
            tail: TailRule::LocalizationAtLeast { prime: 3, bound: Rational::frac(4, 3) },
        }
    }

    pub fn alpha_beta(q: Rational) -> Result<Self> {
        let m = MonoidDescriptor::AlphaBeta { q };
        m.validate()?;
        Ok(m)
    }

    /// Checks the side conditions of every family.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidParameter(s));
        match self {
            MonoidDescriptor::FiniteGenerated { group, gens } => {
                if gens.is_empty() {
                    return bad("at least one generator is required".into());
                }
                for g in gens {
                    if g.group() != *group {
                        return bad(format!("generator {g} is not in group {group}"));
                    }
                    if !g.is_positive() {
                        return bad(format!("generator {g} is not positive"));
                    }
                }
            }
            MonoidDescriptor::GeometricPuiseux { q } | MonoidDescriptor::AlphaBeta { q } => check_geometric(q)?,
            MonoidDescriptor::PrimeReciprocal | MonoidDescriptor::NearlyAtomicAlpha => {}
            MonoidDescriptor::Localization { prime } => {
                if !crate::primes::is_prime(*prime) {
                    return bad(format!("{prime} is not prime"));
                }
            }
            MonoidDescriptor::Conductive { group, a } => {
                if matches!(group, GroupId::Real3) {
                    return Err(Error::Unsupported("conductive monoids over Q[sqrt2,sqrt3]".into()));
                }
                if a.group() != *group {
                    return bad(format!("{a} is not in group {group}"));
                }
                if !a.is_positive() {
                    return bad(format!("conductor {a} must be positive"));
                }
            }
            MonoidDescriptor::LexCone { group, .. } => {
                if !matches!(group, GroupId::Lex { .. }) {
                    return bad(format!("lex cones need a lex group, got {group}"));
                }
            }
            MonoidDescriptor::Product { left, right } => {
                left.validate()?;
                right.validate()?;
                for side in [left, right] {
                    if matches!(side.group(), GroupId::Real3) {
                        return Err(Error::Unsupported("products with Q[sqrt2,sqrt3] factors".into()));
                    }
                }
                let rank = left.group().dimension() + right.group().dimension();
                if rank > crate::ordered::MAX_LEX_RANK {
                    return bad(format!("product rank {rank} is too large"));
                }
            }
            MonoidDescriptor::UnionShift { base, tail } => match (base.as_ref(), tail) {
                (MonoidDescriptor::PrimeReciprocal, TailRule::GroupAtLeast { bound }) if bound.is_positive() => {}
                (MonoidDescriptor::Localization { prime: p1 }, TailRule::LocalizationAtLeast { prime: p2, bound })
                    if p1 != p2 && bound.is_positive() && crate::primes::is_prime(*p2) =>
                {
                    base.validate()?
                }
                _ => return Err(Error::Unsupported(format!("union of {base} with tail {tail:?}"))),
            },
        }
        Ok(())
    }

    /// The ambient totally ordered group.
    pub fn group(&self) -> GroupId {
        match self {
            MonoidDescriptor::FiniteGenerated { group, .. }
            | MonoidDescriptor::Conductive { group, .. }
            | MonoidDescriptor::LexCone { group, .. } => *group,
            MonoidDescriptor::GeometricPuiseux { .. }
            | MonoidDescriptor::PrimeReciprocal
            | MonoidDescriptor::Localization { .. }
            | MonoidDescriptor::UnionShift { .. } => GroupId::Rationals,
            MonoidDescriptor::AlphaBeta { .. } | MonoidDescriptor::NearlyAtomicAlpha => GroupId::Real3,
            MonoidDescriptor::Product { left, right } => {
                let (l, r) = (left.group(), right.group());
                GroupId::Lex {
                    rank: l.dimension() + r.dimension(),
                    priority: 0,
                    integral: l.is_integral() && r.is_integral(),
                }
            }
        }
    }

    /// Splits an element of a product's group into its two components.
    pub fn split_product(&self, x: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        let MonoidDescriptor::Product { left, right } = self else {
            return Err(Error::Unsupported("split of a non-product".into()));
        };
        check_group(self, x)?;
        let coords = x.coords();
        let k = left.group().dimension();
        let lg = left.group().from_coords(coords[..k].to_vec())?;
        let rg = right.group().from_coords(coords[k..].to_vec())?;
        Ok((lg, rg))
    }

    /// Element of a product's group from its components.
    pub fn join_product(&self, l: &GroupElement, r: &GroupElement) -> Result<GroupElement> {
        let mut coords = l.coords();
        coords.extend(r.coords());
        Ok(self.group().from_coords(coords)?)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        Ok(self.group().parse_element(s)?)
    }

    pub fn family(&self) -> &'static str {
        match self {
            MonoidDescriptor::FiniteGenerated { .. } => "finite-generated",
            MonoidDescriptor::GeometricPuiseux { .. } => "geometric-puiseux",
            MonoidDescriptor::PrimeReciprocal => "prime-reciprocal",
            MonoidDescriptor::Localization { .. } => "localization",
            MonoidDescriptor::Conductive { .. } => "conductive",
            MonoidDescriptor::LexCone { .. } => "lex-cone",
            MonoidDescriptor::Product { .. } => "product",
            MonoidDescriptor::UnionShift { .. } => "union-shift",
            MonoidDescriptor::AlphaBeta { .. } => "alpha-beta",
            MonoidDescriptor::NearlyAtomicAlpha => "nearly-atomic-alpha",
        }
    }
}

fn check_geometric(q: &Rational) -> Result<()> {
    if !q.is_positive() || q >= &Rational::one() {
        return Err(Error::InvalidParameter(format!("q = {q} must lie in (0,1)")));
    }
    if q.numer() < &num_bigint::BigInt::from(2) {
        return Err(Error::InvalidParameter(format!("q = {q}: 1/q must not be an integer")));
    }
    Ok(())
}

pub(crate) fn check_group(m: &MonoidDescriptor, x: &GroupElement) -> Result<()> {
    if x.group() != m.group() {
        return Err(crate::ordered::ElementError::GroupMismatch { left: m.group().to_string(), right: x.group().to_string() }.into());
    }
    Ok(())
}

/// Element text without the lex priority suffix (the group carries it).
pub fn bare_text(x: &GroupElement) -> String {
    match x.value() {
        Value::Lex(v) => {
            let parts: Vec<String> = v.coords().iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        }
        _ => x.to_string(),
    }
}

/// The canonical instance text understood by [`crate::instance::parse_instance`].
impl fmt::Display for MonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidDescriptor::FiniteGenerated { group: GroupId::Integers, gens } => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "nm:{}", parts.join(","))
            }
            MonoidDescriptor::FiniteGenerated { group, gens } => {
                let parts: Vec<String> = gens.iter().map(bare_text).collect();
                write!(f, "fg:{group}:{}", parts.join(";"))
            }
            MonoidDescriptor::GeometricPuiseux { q } => write!(f, "mq:{q}"),
            MonoidDescriptor::PrimeReciprocal => write!(f, "m0"),
            MonoidDescriptor::Localization { prime } => write!(f, "localization:{prime}"),
            MonoidDescriptor::Conductive { group, a } => write!(f, "conductive:{group}:a={}", bare_text(a)),
            MonoidDescriptor::LexCone { group, rule } => {
                let r = match rule {
                    LexConeRule::PositiveLeading => "positive-leading",
                    LexConeRule::NonnegativeCone => "nonnegative",
                };
                write!(f, "lexcone:{group}:{r}")
            }
            MonoidDescriptor::Product { left, right } => write!(f, "product({left};{right})"),
            MonoidDescriptor::UnionShift { base, tail } => match tail {
                TailRule::GroupAtLeast { bound } => write!(f, "unionshift({base};ge:{bound})"),
                TailRule::LocalizationAtLeast { prime, bound } => write!(f, "unionshift({base};loc:{prime}>={bound})"),
            },
            MonoidDescriptor::AlphaBeta { q } => write!(f, "alphabeta:{q}"),
            MonoidDescriptor::NearlyAtomicAlpha => write!(f, "nearly-alpha"),
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
enum Repr {
    FiniteGenerated { group: String, gens: Vec<String> },
    GeometricPuiseux { q: Rational },
    PrimeReciprocal,
    Localization { prime: u64 },
    Conductive { group: String, a: String },
    LexCone { group: String, rule: LexConeRule },
    Product { left: Box<MonoidDescriptor>, right: Box<MonoidDescriptor> },
    UnionShift { base: Box<MonoidDescriptor>, tail: TailRule },
    AlphaBeta { q: Rational },
    NearlyAtomicAlpha,
}

impl From<MonoidDescriptor> for Repr {
    fn from(m: MonoidDescriptor) -> Self {
        match m {
            MonoidDescriptor::FiniteGenerated { group, gens } => {
                Repr::FiniteGenerated { group: group.to_string(), gens: gens.iter().map(bare_text).collect() }
            }
            MonoidDescriptor::GeometricPuiseux { q } => Repr::GeometricPuiseux { q },
            MonoidDescriptor::PrimeReciprocal => Repr::PrimeReciprocal,
            MonoidDescriptor::Localization { prime } => Repr::Localization { prime },
            MonoidDescriptor::Conductive { group, a } => Repr::Conductive { group: group.to_string(), a: bare_text(&a) },
            MonoidDescriptor::LexCone { group, rule } => Repr::LexCone { group: group.to_string(), rule },
            MonoidDescriptor::Product { left, right } => Repr::Product { left, right },
            MonoidDescriptor::UnionShift { base, tail } => Repr::UnionShift { base, tail },
            MonoidDescriptor::AlphaBeta { q } => Repr::AlphaBeta { q },
            MonoidDescriptor::NearlyAtomicAlpha => Repr::NearlyAtomicAlpha,
        }
    }
}

impl TryFrom<Repr> for MonoidDescriptor {
    type Error = Error;

    fn try_from(r: Repr) -> Result<Self> {
        let m = match r {
            Repr::FiniteGenerated { group, gens } => {
                let group: GroupId = group.parse()?;
                let gens = gens.iter().map(|g| group.parse_element(g)).collect::<Result<Vec<_>, _>>()?;
                MonoidDescriptor::FiniteGenerated { group, gens }
            }
            Repr::GeometricPuiseux { q } => MonoidDescriptor::GeometricPuiseux { q },
            Repr::PrimeReciprocal => MonoidDescriptor::PrimeReciprocal,
            Repr::Localization { prime } => MonoidDescriptor::Localization { prime },
            Repr::Conductive { group, a } => {
                let group: GroupId = group.parse()?;
                let a = group.parse_element(&a)?;
                MonoidDescriptor::Conductive { group, a }
            }
            Repr::LexCone { group, rule } => MonoidDescriptor::LexCone { group: group.parse()?, rule },
            Repr::Product { left, right } => MonoidDescriptor::Product { left, right },
            Repr::UnionShift { base, tail } => MonoidDescriptor::UnionShift { base, tail },
            Repr::AlphaBeta { q } => MonoidDescriptor::AlphaBeta { q },
            Repr::NearlyAtomicAlpha => MonoidDescriptor::NearlyAtomicAlpha,
        };
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_side_condition() {
        assert!(MonoidDescriptor::geometric(Rational::frac(2, 3)).is_ok());
        assert!(MonoidDescriptor::geometric(Rational::frac(1, 2)).is_err());
        assert!(MonoidDescriptor::geometric(Rational::frac(3, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let ms = [
            MonoidDescriptor::numerical(&[3, 5]).unwrap(),
            MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap(),
            MonoidDescriptor::conductive(GroupElement::lex(&[1, 0], 0).unwrap()).unwrap(),
            MonoidDescriptor::quasi_not_almost(),
            MonoidDescriptor::product(
                MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap(),
                MonoidDescriptor::numerical(&[1]).unwrap(),
            )
            .unwrap(),
        ];
        for m in ms {
            let json = serde_json::to_string(&m).unwrap();
            let back: MonoidDescriptor = serde_json::from_str(&json).unwrap();
            assert_eq!(back, m, "{json}");
        }
        let bad = r#"{"family":"geometric-puiseux","q":"1/2"}"#;
        assert!(serde_json::from_str::<MonoidDescriptor>(bad).is_err());
    }

    #[test]
    fn product_group() {
        let m = MonoidDescriptor::product(
            MonoidDescriptor::geometric(Rational::frac(2, 3)).unwrap(),
            MonoidDescriptor::numerical(&[1]).unwrap(),
        )
        .unwrap();
        assert_eq!(m.group().to_string(), "Q2");
        let x = m.parse_element("(4/3,2)").unwrap();
        let (l, r) = m.split_product(&x).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("4/3".into(), "2".into()));
    }
}
