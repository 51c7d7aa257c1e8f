//! Exact elements of the ground groups: the integers and rationals, lex
//! ordered `Z^k` / `Q^k`, and `Q + Q*sqrt2 + Q*sqrt3`.

mod element;
mod lex;
mod rational;
mod triple;

pub use element::{ArchClass, GroupElement, GroupId, Value};
pub use lex::{LexVector, MAX_LEX_RANK};
pub use rational::Rational;
pub use triple::{integer_triple_sign, AlgebraicTriple, INITIAL_SIGN_PRECISION};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0}")]
    Parse(String),
    #[error("lex rank {0} is outside 1..={MAX_LEX_RANK}")]
    RankOutOfRange(usize),
    #[error("priority {priority} is not a coordinate of a rank {rank} vector")]
    BadPriority { priority: usize, rank: usize },
    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error("{element} is not an element of {group}")]
    NotInGroup { element: String, group: String },
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
}
