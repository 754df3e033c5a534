//! Truncated power series in `t` with exact rational coefficients.
//!
//! A series carries its own truncation order `K`: every term of degree
//! above `K` has been discarded. Constants built through [`Zero`] and
//! [`One`] are exact (unbounded order) and adopt the order of whatever they
//! are combined with.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

const EXACT: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<Rational>,
    order: usize,
}

impl Series {
    /// Series with the given coefficients (lowest degree first), truncated at
    /// `order`.
    pub fn new(coeffs: Vec<Rational>, order: usize) -> Self {
        let mut s = Series { coeffs, order };
        s.normalize();
        s
    }

    /// An exact polynomial in `t` (no truncation).
    pub fn exact(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs, EXACT)
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::exact(alloc::vec![c])
    }

    fn normalize(&mut self) {
        if self.order != EXACT && self.coeffs.len() > self.order + 1 {
            self.coeffs.truncate(self.order + 1);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Truncation order, or `None` for an exact value.
    pub fn order(&self) -> Option<usize> {
        (self.order != EXACT).then_some(self.order)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order.min(self.order))
    }

    /// Coefficient of `t^k`; zero beyond the stored terms.
    ///
    /// Panics if `k` exceeds the truncation order, since that coefficient is
    /// unknown.
    pub fn coeff(&self, k: usize) -> Rational {
        assert!(k <= self.order, "coefficient t^{k} is beyond truncation order {}", self.order);
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Lowest power of `t` with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Evaluates the stored (truncated) polynomial at `t`.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * t + a)
    }
}

impl Zero for Series {
    fn zero() -> Self {
        Series { coeffs: Vec::new(), order: EXACT }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Series {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Neg for Series {
    type Output = Self;

    fn neg(self) -> Self {
        Series { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), order: self.order }
    }
}

impl Add for Series {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        Self::new(long, order)
    }
}

impl Sub for Series {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Series {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let order = self.order.min(rhs.order);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Series { coeffs: Vec::new(), order };
        }
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = if order == EXACT { full } else { full.min(order + 1) };
        let mut out = alloc::vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn s(cs: &[i64], k: usize) -> Series {
        Series::new(cs.iter().map(|&c| int(c)).collect(), k)
    }

    #[test]
    fn product_respects_truncation() {
        // (1 + t)^2 = 1 + 2t + t^2, truncated after t^1
        let a = s(&[1, 1], 1);
        let sq = a.clone() * a;
        assert_eq!(sq, s(&[1, 2], 1));
        assert_eq!(sq.order(), Some(1));
    }

    #[test]
    fn exact_constants_adopt_order() {
        let a = s(&[0, 1, 1, 1], 2);
        assert_eq!(a.coeffs().len(), 3);
        let b = a.clone() + Series::one();
        assert_eq!(b.order(), Some(2));
        assert_eq!(b.coeff(0), int(1));
        let c = Series::from_rational(frac(1, 2)) * a;
        assert_eq!(c.coeff(2), frac(1, 2));
    }

    #[test]
    fn valuation_and_eval() {
        let a = s(&[0, 0, 3, 1], 5);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.eval(&int(2)), int(20));
        assert_eq!(Series::zero().valuation(), None);
    }

    #[test]
    #[should_panic]
    fn unknown_coefficient_panics() {
        s(&[1, 2], 1).coeff(2);
    }
}
