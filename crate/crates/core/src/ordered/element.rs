use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::{AlgebraicTriple, ElementError, LexVector, Rational, MAX_LEX_RANK};

/// Identifies one of the ground groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    /// The integers.
    Integers,
    /// The rationals.
    Rationals,
    /// `Z^rank` (or `Q^rank` when not `integral`) under the lexicographic
    /// order comparing coordinate `priority` first.
    Lex { rank: usize, priority: usize, integral: bool },
    /// The subgroup `Q + Q*sqrt2 + Q*sqrt3` of the reals.
    Real3,
}

impl GroupId {
    pub fn lex(rank: usize, priority: usize) -> Result<Self, ElementError> {
        Self::lex_over(rank, priority, true)
    }

    pub fn lex_over(rank: usize, priority: usize, integral: bool) -> Result<Self, ElementError> {
        if rank == 0 || rank > MAX_LEX_RANK {
            return Err(ElementError::RankOutOfRange(rank));
        }
        if priority >= rank {
            return Err(ElementError::BadPriority { priority, rank });
        }
        Ok(GroupId::Lex { rank, priority, integral })
    }

    /// True for subgroups of the reals: every nonzero element lies in one class.
    pub fn is_archimedean(&self) -> bool {
        !matches!(self, GroupId::Lex { rank, .. } if *rank > 1)
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupId::Integers | GroupId::Lex { rank: 1, integral: true, .. })
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, GroupId::Integers | GroupId::Lex { integral: true, .. })
    }

    /// Number of kernel coordinates (see [`GroupElement::coords`]).
    pub fn dimension(&self) -> usize {
        match self {
            GroupId::Integers | GroupId::Rationals => 1,
            GroupId::Lex { rank, .. } => *rank,
            GroupId::Real3 => 3,
        }
    }

    /// Number of Archimedean classes of nonzero elements.
    pub fn class_count(&self) -> usize {
        match self {
            GroupId::Lex { rank, .. } => *rank,
            _ => 1,
        }
    }

    pub fn zero(&self) -> GroupElement {
        let value = match self {
            GroupId::Integers | GroupId::Rationals => Value::Scalar(Rational::zero()),
            GroupId::Lex { rank, priority, .. } => {
                Value::Lex(LexVector::zero(*rank, *priority).expect("validated group"))
            }
            GroupId::Real3 => Value::Triple(AlgebraicTriple::zero()),
        };
        GroupElement { group: *self, value }
    }

    /// Element from kernel coordinates (prioritized order for lex groups).
    pub fn from_coords(&self, coords: Vec<Rational>) -> Result<GroupElement, ElementError> {
        if coords.len() != self.dimension() {
            return Err(ElementError::Parse(format!(
                "expected {} coordinates for group {self}, got {}",
                self.dimension(),
                coords.len()
            )));
        }
        let value = match self {
            GroupId::Integers | GroupId::Rationals => Value::Scalar(coords.into_iter().next().expect("one coordinate")),
            GroupId::Lex { priority, .. } => Value::Lex(LexVector::from_prioritized(coords, *priority)?),
            GroupId::Real3 => {
                let [c0, c1, c2]: [Rational; 3] = coords.try_into().expect("three coordinates");
                Value::Triple(AlgebraicTriple::new(c0, c1, c2))
            }
        };
        GroupElement::new(*self, value)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement, ElementError> {
        let s = s.trim();
        let value = match self {
            GroupId::Integers | GroupId::Rationals => Value::Scalar(s.parse()?),
            GroupId::Lex { rank, priority, .. } => {
                let v = LexVector::parse(s, Some(*priority))?;
                if v.rank() != *rank {
                    return Err(ElementError::Parse(format!("`{s}` does not have rank {rank}")));
                }
                Value::Lex(v)
            }
            GroupId::Real3 => Value::Triple(AlgebraicTriple::parse(s)?),
        };
        GroupElement::new(*self, value)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Integers => write!(f, "Z"),
            GroupId::Rationals => write!(f, "Q"),
            GroupId::Lex { rank, priority, integral } => {
                write!(f, "{}{rank}", if *integral { "Z" } else { "Q" })?;
                if *priority != 0 {
                    write!(f, "@prio={priority}")?;
                }
                Ok(())
            }
            GroupId::Real3 => write!(f, "Q[sqrt2,sqrt3]"),
        }
    }
}

impl FromStr for GroupId {
    type Err = ElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" => return Ok(GroupId::Integers),
            "Q" => return Ok(GroupId::Rationals),
            "Q[sqrt2,sqrt3]" | "R3" => return Ok(GroupId::Real3),
            _ => {}
        }
        let bad = || ElementError::Parse(format!("unknown group `{s}`"));
        let (body, priority) = match s.split_once("@prio=") {
            Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let integral = match body.chars().next() {
            Some('Z') => true,
            Some('Q') => false,
            _ => return Err(bad()),
        };
        let rank: usize = body[1..].parse().map_err(|_| bad())?;
        GroupId::lex_over(rank, priority, integral)
    }
}

impl Serialize for GroupId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Value {
    Scalar(Rational),
    Lex(LexVector),
    Triple(AlgebraicTriple),
}

/// An element of one of the ground groups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupId,
    value: Value,
}

impl GroupElement {
    pub fn new(group: GroupId, value: Value) -> Result<Self, ElementError> {
        let ok = match (&group, &value) {
            (GroupId::Integers, Value::Scalar(x)) => x.is_integer(),
            (GroupId::Rationals, Value::Scalar(_)) => true,
            (GroupId::Lex { rank, priority, integral }, Value::Lex(v)) => {
                v.rank() == *rank && v.priority() == *priority && (!integral || v.coords().iter().all(Rational::is_integer))
            }
            (GroupId::Real3, Value::Triple(_)) => true,
            _ => false,
        };
        if ok {
            Ok(GroupElement { group, value })
        } else {
            Err(ElementError::NotInGroup { element: format!("{value:?}"), group: group.to_string() })
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        GroupElement { group: GroupId::Integers, value: Value::Scalar(Rational::from_integer(n)) }
    }

    pub fn rational(q: Rational) -> Self {
        GroupElement { group: GroupId::Rationals, value: Value::Scalar(q) }
    }

    pub fn lex(coords: &[i64], priority: usize) -> Result<Self, ElementError> {
        let v = LexVector::from_ints(coords, priority)?;
        let group = GroupId::lex(v.rank(), priority)?;
        Ok(GroupElement { group, value: Value::Lex(v) })
    }

    pub fn lex_vector(group: GroupId, v: LexVector) -> Result<Self, ElementError> {
        GroupElement::new(group, Value::Lex(v))
    }

    pub fn triple(t: AlgebraicTriple) -> Self {
        GroupElement { group: GroupId::Real3, value: Value::Triple(t) }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.value {
            Value::Scalar(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_lex(&self) -> Option<&LexVector> {
        match &self.value {
            Value::Lex(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_triple(&self) -> Option<&AlgebraicTriple> {
        match &self.value {
            Value::Triple(t) => Some(t),
            _ => None,
        }
    }

    /// Kernel coordinates: the scalar, the lex coordinates in comparison
    /// order, or `[c0, c1, c2]`.
    pub fn coords(&self) -> Vec<Rational> {
        match &self.value {
            Value::Scalar(x) => vec![x.clone()],
            Value::Lex(v) => v.prioritized(),
            Value::Triple(t) => t.coeffs().to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Scalar(x) => x.is_zero(),
            Value::Lex(v) => v.is_zero(),
            Value::Triple(t) => t.is_zero(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.value {
            Value::Scalar(x) => x.signum(),
            Value::Lex(v) => v.signum(),
            Value::Triple(t) => t.signum(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    fn same_group(&self, other: &GroupElement) -> Result<(), ElementError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(ElementError::GroupMismatch { left: self.group.to_string(), right: other.group.to_string() })
        }
    }

    pub fn compare(&self, other: &GroupElement) -> Result<Ordering, ElementError> {
        self.same_group(other)?;
        Ok(match (&self.value, &other.value) {
            (Value::Scalar(a), Value::Scalar(b)) => a.cmp(b),
            (Value::Lex(a), Value::Lex(b)) => a.lex_cmp(b),
            (Value::Triple(a), Value::Triple(b)) => a.cmp_value(b),
            _ => unreachable!("group check guarantees matching kinds"),
        })
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement, ElementError> {
        self.same_group(other)?;
        Ok(self.combine(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement, ElementError> {
        self.same_group(other)?;
        Ok(self.combine(other, |a, b| a - b))
    }

    fn combine(&self, other: &GroupElement, f: impl Fn(&Rational, &Rational) -> Rational) -> GroupElement {
        let value = match (&self.value, &other.value) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(f(a, b)),
            (Value::Lex(a), Value::Lex(b)) => Value::Lex(a.zip_with(b, &f)),
            (Value::Triple(a), Value::Triple(b)) => {
                let (x, y) = (a.coeffs(), b.coeffs());
                Value::Triple(AlgebraicTriple::new(f(&x[0], &y[0]), f(&x[1], &y[1]), f(&x[2], &y[2])))
            }
            _ => unreachable!("group check guarantees matching kinds"),
        };
        GroupElement { group: self.group, value }
    }

    pub fn negate(&self) -> GroupElement {
        self.scale_rational(&Rational::from(-1))
    }

    /// `n * self`.
    pub fn scale(&self, n: &BigInt) -> GroupElement {
        self.scale_rational(&Rational::from_integer(n.clone()))
    }

    pub fn scale_i64(&self, n: i64) -> GroupElement {
        self.scale(&BigInt::from(n))
    }

    /// Multiplication by a rational. Only closed for rational-valued groups;
    /// callers must ensure the result stays in an integral group.
    pub(crate) fn scale_rational(&self, k: &Rational) -> GroupElement {
        let value = match &self.value {
            Value::Scalar(x) => Value::Scalar(x * k),
            Value::Lex(v) => Value::Lex(v.map(|c| c * k)),
            Value::Triple(t) => Value::Triple(t.scale_rational(k)),
        };
        GroupElement { group: self.group, value }
    }

    pub fn abs(&self) -> GroupElement {
        if self.is_negative() {
            self.negate()
        } else {
            self.clone()
        }
    }

    /// The Archimedean class of a nonzero element.
    pub fn arch_valuation(&self) -> Result<ArchClass, ElementError> {
        let index = match &self.value {
            Value::Lex(v) => v.leading_slot().ok_or(ElementError::ZeroInput)?,
            _ if self.is_zero() => return Err(ElementError::ZeroInput),
            _ => 0,
        };
        Ok(ArchClass { group: self.group, index, representative: self.clone() })
    }

    /// Whether `|self| <= n|h|` for some natural `n`.
    pub fn big_o(&self, h: &GroupElement) -> Result<bool, ElementError> {
        self.same_group(h)?;
        let vh = h.arch_valuation()?;
        if self.is_zero() {
            return Ok(true);
        }
        Ok(self.arch_valuation()?.index >= vh.index)
    }

    /// Leading kernel slot of a lex element, `0` for other nonzero elements.
    pub fn class_index(&self) -> Option<usize> {
        self.arch_valuation().ok().map(|c| c.index)
    }

    pub fn to_f64(&self) -> Option<f64> {
        match &self.value {
            Value::Scalar(x) => Some(x.to_f64()),
            Value::Triple(t) => Some(t.to_f64()),
            Value::Lex(_) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Scalar(x) => write!(f, "{x}"),
            Value::Lex(v) => write!(f, "{v}"),
            Value::Triple(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group, self)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Orders by group first, then by the group order.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then_with(|| self.compare(other).expect("same group"))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("group mismatch in addition")
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("group mismatch in subtraction")
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.negate()
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.negate()
    }
}

/// An Archimedean class. For lex groups `index` is the comparison slot of
/// the first nonzero coordinate; Archimedean groups have the single class 0.
///
/// The order realizes `v(g) <= v(h)` iff `h = O(g)`: a smaller index is a
/// bigger class of elements.
#[derive(Clone, Debug)]
pub struct ArchClass {
    pub group: GroupId,
    pub index: usize,
    pub representative: GroupElement,
}

impl PartialEq for ArchClass {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.index == other.index
    }
}

impl Eq for ArchClass {}

impl PartialOrd for ArchClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArchClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then(self.index.cmp(&other.index))
    }
}

impl Serialize for ArchClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&format_args!("{}#{}", self.group, self.index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(c: &[i64]) -> GroupElement {
        GroupElement::lex(c, 0).unwrap()
    }

    #[test]
    fn lex_valuation_classes() {
        let a = lex(&[0, 7]).arch_valuation().unwrap();
        let b = lex(&[3, -5]).arch_valuation().unwrap();
        assert_eq!((a.index, b.index), (1, 0));
        assert!(b <= a);
    }

    #[test]
    fn triple_single_class() {
        let x = GroupElement::triple(AlgebraicTriple::new(Rational::one(), Rational::one(), Rational::zero()));
        let y = GroupElement::triple(AlgebraicTriple::new(Rational::zero(), Rational::zero(), Rational::from(2)));
        assert_eq!(x.arch_valuation().unwrap(), y.arch_valuation().unwrap());
    }

    #[test]
    fn big_o_cases() {
        assert!(lex(&[0, 5]).big_o(&lex(&[1, 0])).unwrap());
        assert!(!lex(&[1, 0]).big_o(&lex(&[0, 5])).unwrap());
        let g = GroupElement::rational(Rational::from(1_000_000));
        assert!(g.big_o(&GroupElement::rational(Rational::frac(1, 7))).unwrap());
        assert!(lex(&[0, 0, 9]).big_o(&lex(&[0, 1, 0])).unwrap());
        assert!(matches!(g.big_o(&GroupElement::rational(Rational::zero())), Err(ElementError::ZeroInput)));
    }

    #[test]
    fn mismatch_is_error() {
        let a = GroupElement::integer(1);
        let b = GroupElement::rational(Rational::one());
        assert!(matches!(a.compare(&b), Err(ElementError::GroupMismatch { .. })));
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let x = GroupElement::rational(Rational::frac(1, 2)) + GroupElement::rational(Rational::frac(1, 3));
        assert_eq!(x.to_string(), "5/6");
        assert_eq!(lex(&[2, -3]).negate(), lex(&[-2, 3]));
        let t = GroupElement::triple(AlgebraicTriple::alpha()).scale_i64(3);
        assert_eq!(t.as_triple().unwrap().sqrt2_part(), &Rational::from(3));
    }

    #[test]
    fn group_tokens() {
        for s in ["Z", "Q", "Z2", "Z2@prio=1", "Q2", "Z3", "Q[sqrt2,sqrt3]"] {
            assert_eq!(s.parse::<GroupId>().unwrap().to_string(), s);
        }
        assert!("Z9".parse::<GroupId>().is_err());
        assert!("Z2@prio=2".parse::<GroupId>().is_err());
    }

    #[test]
    fn parse_in_group() {
        let g: GroupId = "Z2@prio=1".parse().unwrap();
        let e = g.parse_element("(1,-4)").unwrap();
        assert_eq!(e.to_string(), "(1,-4)@prio=1");
        assert!(e.is_negative());
        assert!("Z".parse::<GroupId>().unwrap().parse_element("1/2").is_err());
        assert!("Z2".parse::<GroupId>().unwrap().parse_element("(1/2,0)").is_err());
    }
}
