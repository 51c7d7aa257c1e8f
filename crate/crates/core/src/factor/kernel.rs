//! Bounded enumeration of nonnegative integer solutions of `sum m_i a_i = b`
//! where every `a_i` is a positive element of an ordered group given by
//! integer coordinates.
//!
//! Coordinates of lex groups are in comparison order, so the group order is
//! the plain lexicographic order on coordinate vectors. For the real group
//! `Q + Q*sqrt2 + Q*sqrt3` the coordinates are `[c0, c1, c2]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ordered::integer_triple_sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Real3,
}

pub trait Coord: Clone + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn sign(&self) -> Ordering;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, m: u64) -> Self;
    /// `floor(self / o)` clamped into `u64` for nonnegative quotients.
    fn quotient(&self, o: &Self) -> u64;
    fn gcd_with(&self, o: &Self) -> Self;
    fn divisible_by(&self, g: &Self) -> bool;
    fn big(&self) -> BigInt;
    fn approx(&self) -> f64;
}

impl Coord for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, m: u64) -> Self {
        self * m as i128
    }
    fn quotient(&self, o: &Self) -> u64 {
        let q = self.div_euclid(*o);
        q.clamp(0, u64::MAX as i128) as u64
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn divisible_by(&self, g: &Self) -> bool {
        *g == 0 || self % g == 0
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn approx(&self) -> f64 {
        *self as f64
    }
}

impl Coord for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, m: u64) -> Self {
        self * BigInt::from(m)
    }
    fn quotient(&self, o: &Self) -> u64 {
        let q = self.div_floor(o);
        if q.is_negative() {
            0
        } else {
            q.to_u64().unwrap_or(u64::MAX)
        }
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn divisible_by(&self, g: &Self) -> bool {
        Zero::is_zero(g) || Zero::is_zero(&(self % g))
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Sign of an element given by kernel coordinates.
pub fn sign_of<T: Coord>(order: OrderKind, v: &[T]) -> Ordering {
    match order {
        OrderKind::Lex => v.iter().map(Coord::sign).find(|s| *s != Ordering::Equal).unwrap_or(Ordering::Equal),
        OrderKind::Real3 => {
            let approx = v[0].approx() + v[1].approx() * std::f64::consts::SQRT_2 + v[2].approx() * 3f64.sqrt();
            let scale = v[0].approx().abs() + 2.0 * (v[1].approx().abs() + v[2].approx().abs());
            if approx.is_finite() && approx.abs() > 1e-9 * scale.max(1.0) {
                approx.partial_cmp(&0.0).expect("finite")
            } else {
                integer_triple_sign(&v[0].big(), &v[1].big(), &v[2].big())
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    /// Multiplicity vectors in ascending lexicographic order.
    pub solutions: Vec<Vec<u64>>,
    /// Stopped because `max_count` solutions were found.
    pub truncated: bool,
    /// Some multiplicity had no finite bound and was cut at `mult_cap`.
    pub capped: bool,
    /// Search nodes visited.
    pub nodes: u64,
}

impl Outcome {
    /// The search space was fully explored.
    pub fn exhaustive(&self) -> bool {
        !self.truncated && !self.capped
    }
}

struct Suffix<T> {
    all_zero: Vec<bool>,
    nonneg: Vec<bool>,
    nonpos: Vec<bool>,
    gcd: Vec<T>,
}

pub struct Search<'a, T: Coord> {
    atoms: &'a [Vec<T>],
    order: OrderKind,
    max_count: usize,
    mult_cap: u64,
    suffix: Vec<Suffix<T>>,
    out: Outcome,
}

impl<'a, T: Coord> Search<'a, T> {
    /// `atoms` must be positive elements. `max_count` bounds the number of
    /// solutions; `mult_cap` bounds multiplicities that no order or
    /// coordinate argument bounds.
    pub fn new(atoms: &'a [Vec<T>], order: OrderKind, max_count: usize, mult_cap: u64) -> Self {
        let dim = atoms.first().map_or(0, Vec::len);
        let mut suffix = Vec::with_capacity(atoms.len() + 1);
        let mut cur = Suffix {
            all_zero: vec![true; dim],
            nonneg: vec![true; dim],
            nonpos: vec![true; dim],
            gcd: vec![T::zero(); dim],
        };
        suffix.push(Suffix {
            all_zero: cur.all_zero.clone(),
            nonneg: cur.nonneg.clone(),
            nonpos: cur.nonpos.clone(),
            gcd: cur.gcd.clone(),
        });
        for a in atoms.iter().rev() {
            for (j, c) in a.iter().enumerate() {
                match c.sign() {
                    Ordering::Less => {
                        cur.all_zero[j] = false;
                        cur.nonneg[j] = false;
                    }
                    Ordering::Greater => {
                        cur.all_zero[j] = false;
                        cur.nonpos[j] = false;
                    }
                    Ordering::Equal => {}
                }
                cur.gcd[j] = cur.gcd[j].gcd_with(c);
            }
            suffix.push(Suffix {
                all_zero: cur.all_zero.clone(),
                nonneg: cur.nonneg.clone(),
                nonpos: cur.nonpos.clone(),
                gcd: cur.gcd.clone(),
            });
        }
        suffix.reverse();
        Search { atoms, order, max_count, mult_cap, suffix, out: Outcome::default() }
    }

    pub fn run(mut self, target: &[T]) -> Outcome {
        if self.max_count == 0 {
            self.out.truncated = true;
            return self.out;
        }
        let mut mults = Vec::with_capacity(self.atoms.len());
        self.dfs(0, target.to_vec(), &mut mults);
        self.out
    }

    fn feasible(&self, i: usize, r: &[T]) -> bool {
        let s = &self.suffix[i];
        for (j, c) in r.iter().enumerate() {
            match c.sign() {
                Ordering::Equal => {}
                Ordering::Greater if s.nonpos[j] => return false,
                Ordering::Less if s.nonneg[j] => return false,
                _ => {}
            }
            if s.all_zero[j] && !c.is_zero() {
                return false;
            }
            if !c.divisible_by(&s.gcd[j]) {
                return false;
            }
        }
        true
    }

    /// Largest `m` with `m * a <= r` permitted by the order and by
    /// coordinates that no remaining atom can decrease.
    fn bound(&self, i: usize, r: &[T]) -> Option<u64> {
        let a = &self.atoms[i];
        let mut best: Option<u64> = None;
        let mut tighten = |b: u64| best = Some(best.map_or(b, |x| x.min(b)));
        match self.order {
            OrderKind::Lex => {
                let la = a.iter().position(|c| !c.is_zero());
                let lr = r.iter().position(|c| !c.is_zero());
                if let (Some(la), Some(lr)) = (la, lr) {
                    match lr.cmp(&la) {
                        Ordering::Greater => tighten(0),
                        Ordering::Equal => tighten(r[la].quotient(&a[la])),
                        Ordering::Less => {}
                    }
                }
            }
            OrderKind::Real3 => tighten(real3_quotient(r, a)),
        }
        let s = &self.suffix[i];
        for (j, c) in a.iter().enumerate() {
            if s.nonneg[j] && c.sign() == Ordering::Greater {
                tighten(r[j].quotient(c));
            }
        }
        best
    }

    fn dfs(&mut self, i: usize, r: Vec<T>, mults: &mut Vec<u64>) {
        self.out.nodes += 1;
        if r.iter().all(Coord::is_zero) {
            let mut sol = mults.clone();
            sol.resize(self.atoms.len(), 0);
            self.out.solutions.push(sol);
            if self.out.solutions.len() >= self.max_count {
                self.out.truncated = true;
            }
            return;
        }
        if i == self.atoms.len() || !self.feasible(i, &r) || sign_of(self.order, &r) != Ordering::Greater {
            return;
        }
        let limit = match self.bound(i, &r) {
            Some(b) => b,
            None => {
                self.out.capped = true;
                self.mult_cap
            }
        };
        let a = &self.atoms[i];
        let mut cur = r;
        let mut m = 0u64;
        loop {
            mults.push(m);
            self.dfs(i + 1, cur.clone(), mults);
            mults.pop();
            if self.out.truncated || m >= limit {
                break;
            }
            m += 1;
            cur = cur.iter().zip(a).map(|(x, y)| x.minus(y)).collect();
            if sign_of(self.order, &cur) == Ordering::Less {
                break;
            }
        }
    }
}

fn real3_quotient<T: Coord>(r: &[T], a: &[T]) -> u64 {
    let val = |v: &[T]| v[0].approx() + v[1].approx() * std::f64::consts::SQRT_2 + v[2].approx() * 3f64.sqrt();
    let est = (val(r) / val(a)).floor();
    let mut m = if est.is_finite() && est >= 0.0 { est.min(1e15) as u64 } else { 0 };
    let rest = |m: u64| -> Vec<T> { r.iter().zip(a).map(|(x, y)| x.minus(&y.times(m))).collect() };
    while m > 0 && sign_of(OrderKind::Real3, &rest(m)) == Ordering::Less {
        m -= 1;
    }
    while sign_of(OrderKind::Real3, &rest(m + 1)) != Ordering::Less {
        m += 1;
    }
    m
}

/// Runs the search on the fastest representation that cannot overflow.
pub fn solve(atoms: &[Vec<BigInt>], target: &[BigInt], order: OrderKind, max_count: usize, mult_cap: u64) -> Outcome {
    let small = |v: &BigInt| v.bits() <= 48;
    let fits = atoms.iter().flatten().chain(target).all(small) && mult_cap <= 1 << 40;
    if fits {
        let a: Vec<Vec<i128>> = atoms.iter().map(|v| v.iter().map(|c| c.to_i128().expect("fits")).collect()).collect();
        let t: Vec<i128> = target.iter().map(|c| c.to_i128().expect("fits")).collect();
        Search::new(&a, order, max_count, mult_cap).run(&t)
    } else {
        Search::new(atoms, order, max_count, mult_cap).run(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn three_five_fifteen() {
        let atoms = vec![v(&[5]), v(&[3])];
        let out = solve(&atoms, &v(&[15]), OrderKind::Lex, 100, 1000);
        assert_eq!(out.solutions, vec![vec![0, 5], vec![3, 0]]);
        assert!(out.exhaustive());
    }

    #[test]
    fn lex_closure_prune() {
        // Only (0,1) available; (1,0) is unreachable.
        let atoms = vec![v(&[0, 1])];
        let out = solve(&atoms, &v(&[1, 0]), OrderKind::Lex, 100, 1000);
        assert!(out.solutions.is_empty());
        assert!(out.exhaustive());
    }

    #[test]
    fn pairs_in_half_plane() {
        let atoms: Vec<_> = (-2..=2).rev().map(|n| v(&[1, n])).collect();
        let out = solve(&atoms, &v(&[2, 0]), OrderKind::Lex, 100, 1000);
        assert_eq!(out.solutions.len(), 3);
        assert!(out.solutions.iter().all(|s| s.iter().sum::<u64>() == 2));
    }

    #[test]
    fn truncation_flag() {
        let atoms = vec![v(&[2]), v(&[1])];
        let out = solve(&atoms, &v(&[10]), OrderKind::Lex, 3, 1000);
        assert_eq!(out.solutions.len(), 3);
        assert!(out.truncated);
    }

    #[test]
    fn real3_alpha() {
        // sqrt2 = 2 * (sqrt2/2), coordinates scaled by 2.
        let atoms = vec![v(&[0, 1, 0])];
        let out = solve(&atoms, &v(&[0, 2, 0]), OrderKind::Real3, 10, 100);
        assert_eq!(out.solutions, vec![vec![2]]);
    }
}

/// Solves over group elements: scales all coordinates to integers first.
pub(crate) fn solve_elements(
    gens: &[crate::ordered::GroupElement],
    target: &crate::ordered::GroupElement,
    max_count: usize,
    mult_cap: u64,
) -> Outcome {
    use crate::ordered::{GroupId, Rational};
    let order = if matches!(target.group(), GroupId::Real3) { OrderKind::Real3 } else { OrderKind::Lex };
    let coords: Vec<Vec<Rational>> = gens.iter().map(|g| g.coords()).collect();
    let tc = target.coords();
    let scale = Rational::common_denominator(coords.iter().flatten().chain(tc.iter()));
    let atoms: Vec<Vec<BigInt>> = coords.iter().map(|v| v.iter().map(|c| c.scaled_integer(&scale)).collect()).collect();
    let t: Vec<BigInt> = tc.iter().map(|c| c.scaled_integer(&scale)).collect();
    solve(&atoms, &t, order, max_count, mult_cap)
}
