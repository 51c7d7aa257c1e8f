use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ElementError, Rational};

/// Initial precision (bits) of the interval sign test.
pub const INITIAL_SIGN_PRECISION: u64 = 64;

/// `c0 + c1*sqrt(2) + c2*sqrt(3)` with rational coefficients.
///
/// Because `{1, sqrt2, sqrt3}` is linearly independent over the rationals,
/// equality is coefficient-wise and a nonzero triple has a nonzero real value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicTriple {
    coeffs: [Rational; 3],
}

impl AlgebraicTriple {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        AlgebraicTriple { coeffs: [c0, c1, c2] }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn rational(c0: Rational) -> Self {
        Self::new(c0, Rational::zero(), Rational::zero())
    }

    /// `sqrt(2)`.
    pub fn alpha() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `sqrt(3)`.
    pub fn beta() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.coeffs[1]
    }

    pub fn sqrt3_part(&self) -> &Rational {
        &self.coeffs[2]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1].is_zero() && self.coeffs[2].is_zero()
    }

    pub fn signum(&self) -> Ordering {
        let scale = Rational::common_denominator(self.coeffs.iter());
        let [a, b, c] = self.coeffs.clone().map(|x| x.scaled_integer(&scale));
        integer_triple_sign(&a, &b, &c)
    }

    pub fn cmp_value(&self, other: &AlgebraicTriple) -> Ordering {
        self.sub(other).signum()
    }

    pub fn add(&self, other: &AlgebraicTriple) -> AlgebraicTriple {
        AlgebraicTriple {
            coeffs: [0, 1, 2].map(|i| &self.coeffs[i] + &other.coeffs[i]),
        }
    }

    pub fn sub(&self, other: &AlgebraicTriple) -> AlgebraicTriple {
        AlgebraicTriple {
            coeffs: [0, 1, 2].map(|i| &self.coeffs[i] - &other.coeffs[i]),
        }
    }

    pub fn neg(&self) -> AlgebraicTriple {
        AlgebraicTriple {
            coeffs: [0, 1, 2].map(|i| -&self.coeffs[i]),
        }
    }

    pub fn scale_rational(&self, k: &Rational) -> AlgebraicTriple {
        AlgebraicTriple {
            coeffs: [0, 1, 2].map(|i| &self.coeffs[i] * k),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs[0].to_f64()
            + self.coeffs[1].to_f64() * std::f64::consts::SQRT_2
            + self.coeffs[2].to_f64() * 3f64.sqrt()
    }

    pub fn parse(s: &str) -> Result<Self, ElementError> {
        let bad = || ElementError::Parse(format!("invalid triple `{s}`, expected `c0 + c1*sqrt2 + c2*sqrt3`"));
        let parts: Vec<&str> = s.split(" + ").map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let c0: Rational = parts[0].parse().map_err(|_| bad())?;
        let c1: Rational = parts[1].strip_suffix("*sqrt2").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let c2: Rational = parts[2].strip_suffix("*sqrt3").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(Self::new(c0, c1, c2))
    }
}

/// Sign of `a + b*sqrt2 + c*sqrt3` for integers `a, b, c`.
///
/// Interval evaluation with `floor(sqrt(2) * 2^k)` and `floor(sqrt(3) * 2^k)`
/// at doubling precision `k`, starting from [`INITIAL_SIGN_PRECISION`], until
/// the enclosing interval excludes zero.
pub fn integer_triple_sign(a: &BigInt, b: &BigInt, c: &BigInt) -> Ordering {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Ordering::Equal;
    }
    if b.is_zero() && c.is_zero() {
        return sign_of(a);
    }
    let mut bits = INITIAL_SIGN_PRECISION;
    loop {
        let scale = BigInt::one() << bits;
        let (r2_lo, r2_hi) = sqrt_bounds(2, bits);
        let (r3_lo, r3_hi) = sqrt_bounds(3, bits);
        let base = a * &scale;
        let (b_lo, b_hi) = if b.is_negative() { (b * &r2_hi, b * &r2_lo) } else { (b * &r2_lo, b * &r2_hi) };
        let (c_lo, c_hi) = if c.is_negative() { (c * &r3_hi, c * &r3_lo) } else { (c * &r3_lo, c * &r3_hi) };
        let lo = &base + b_lo + c_lo;
        let hi = &base + b_hi + c_hi;
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

/// Integers `lo <= sqrt(n) * 2^bits <= hi` with `hi = lo + 1`.
fn sqrt_bounds(n: u32, bits: u64) -> (BigInt, BigInt) {
    let lo = (BigInt::from(n) << (2 * bits)).sqrt();
    let hi = &lo + 1;
    (lo, hi)
}

fn sign_of(x: &BigInt) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl fmt::Display for AlgebraicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2 + {}*sqrt3", self.coeffs[0], self.coeffs[1], self.coeffs[2])
    }
}

impl fmt::Debug for AlgebraicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
