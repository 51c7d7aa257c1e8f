use std::cmp::Ordering;
use std::fmt;

use super::{ElementError, Rational};

/// Largest supported rank for lexicographically ordered groups.
pub const MAX_LEX_RANK: usize = 8;

/// A vector in `Z^k` or `Q^k` under the lexicographic order that compares
/// coordinate `priority` first and the remaining coordinates in index order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LexVector {
    coords: Vec<Rational>,
    priority: usize,
}

impl LexVector {
    pub fn new(coords: Vec<Rational>, priority: usize) -> Result<Self, ElementError> {
        if coords.is_empty() || coords.len() > MAX_LEX_RANK {
            return Err(ElementError::RankOutOfRange(coords.len()));
        }
        if priority >= coords.len() {
            return Err(ElementError::BadPriority { priority, rank: coords.len() });
        }
        Ok(LexVector { coords, priority })
    }

    pub fn from_ints(coords: &[i64], priority: usize) -> Result<Self, ElementError> {
        LexVector::new(coords.iter().map(|&c| Rational::from(c)).collect(), priority)
    }

    pub fn zero(rank: usize, priority: usize) -> Result<Self, ElementError> {
        LexVector::new(vec![Rational::zero(); rank], priority)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn priority(&self) -> usize {
        self.priority
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinate indices in comparison order.
    pub fn comparison_order(rank: usize, priority: usize) -> impl Iterator<Item = usize> {
        std::iter::once(priority).chain((0..rank).filter(move |&i| i != priority))
    }

    /// Coordinates listed in comparison order, so that the plain lexicographic
    /// order on the returned slice is the group order.
    pub fn prioritized(&self) -> Vec<Rational> {
        Self::comparison_order(self.rank(), self.priority)
            .map(|i| self.coords[i].clone())
            .collect()
    }

    /// Inverse of [`LexVector::prioritized`].
    pub fn from_prioritized(prioritized: Vec<Rational>, priority: usize) -> Result<Self, ElementError> {
        let rank = prioritized.len();
        let mut coords = vec![Rational::zero(); rank];
        for (slot, index) in Self::comparison_order(rank, priority).enumerate() {
            if index >= rank {
                return Err(ElementError::BadPriority { priority, rank });
            }
            coords[index] = prioritized[slot].clone();
        }
        LexVector::new(coords, priority)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Position (in comparison order) of the first nonzero coordinate.
    pub fn leading_slot(&self) -> Option<usize> {
        Self::comparison_order(self.rank(), self.priority)
            .position(|i| !self.coords[i].is_zero())
    }

    pub fn signum(&self) -> Ordering {
        Self::comparison_order(self.rank(), self.priority)
            .map(|i| self.coords[i].signum())
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub fn lex_cmp(&self, other: &LexVector) -> Ordering {
        debug_assert_eq!(self.rank(), other.rank());
        Self::comparison_order(self.rank(), self.priority)
            .map(|i| self.coords[i].cmp(&other.coords[i]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub(crate) fn zip_with(&self, other: &LexVector, f: impl Fn(&Rational, &Rational) -> Rational) -> LexVector {
        LexVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
            priority: self.priority,
        }
    }

    pub(crate) fn map(&self, f: impl Fn(&Rational) -> Rational) -> LexVector {
        LexVector {
            coords: self.coords.iter().map(f).collect(),
            priority: self.priority,
        }
    }

    /// Parses `(a,b,...)` with an optional `@prio=i` suffix; `default_priority`
    /// applies when the suffix is absent.
    pub fn parse(s: &str, default_priority: Option<usize>) -> Result<Self, ElementError> {
        let s = s.trim();
        let bad = |why: &str| ElementError::Parse(format!("invalid lex vector `{s}`: {why}"));
        let (body, priority) = match s.split_once('@') {
            Some((body, suffix)) => {
                let p = suffix
                    .trim()
                    .strip_prefix("prio=")
                    .ok_or_else(|| bad("expected `@prio=i`"))?;
                (body.trim(), Some(p.parse::<usize>().map_err(|_| bad("bad priority"))?))
            }
            None => (s, None),
        };
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| bad("expected parentheses"))?;
        let coords = inner
            .split(',')
            .map(|c| c.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        if let (Some(given), Some(expected)) = (priority, default_priority) {
            if given != expected {
                return Err(bad("priority does not match the group"));
            }
        }
        LexVector::new(coords, priority.or(default_priority).unwrap_or(0))
    }
}

impl fmt::Display for LexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")@prio={}", self.priority)
    }
}

impl fmt::Debug for LexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_priority_order() {
        let a = LexVector::from_ints(&[0, 5], 0).unwrap();
        let b = LexVector::from_ints(&[1, -100], 0).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
    }

    #[test]
    fn second_priority_order() {
        let a = LexVector::from_ints(&[0, 5], 1).unwrap();
        let b = LexVector::from_ints(&[1, -100], 1).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(b.signum(), Ordering::Less);
        assert_eq!(LexVector::from_ints(&[1, 0], 1).unwrap().leading_slot(), Some(1));
    }

    #[test]
    fn text_round_trip() {
        for s in ["(0,5)@prio=0", "(1/2,-3,7)@prio=2", "(4)@prio=0"] {
            assert_eq!(LexVector::parse(s, None).unwrap().to_string(), s);
        }
        assert_eq!(LexVector::parse("(2,-7)", Some(1)).unwrap().to_string(), "(2,-7)@prio=1");
        assert!(LexVector::parse("(2,-7)@prio=1", Some(0)).is_err());
        assert!(LexVector::parse("(1,2,3,4,5,6,7,8,9)", None).is_err());
        assert!(LexVector::parse("(1,2)@prio=2", None).is_err());
    }

    #[test]
    fn prioritized_round_trip() {
        let v = LexVector::from_ints(&[3, 4, 5], 1).unwrap();
        let p = v.prioritized();
        assert_eq!(p, vec![Rational::from(4), Rational::from(3), Rational::from(5)]);
        assert_eq!(LexVector::from_prioritized(p, 1).unwrap(), v);
    }
}
