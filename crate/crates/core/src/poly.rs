//! Dense univariate polynomials over a commutative ring.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Minimal commutative-ring interface used by [`Poly`].
pub trait Ring:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> {}

/// Polynomial with coefficients stored lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    /// The polynomial `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 0 { a.clone() } else { -a.clone() })
                .collect(),
        )
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a = a.clone() + b;
        }
        Self::new(long)
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|a| -a).collect() }
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl Poly<Rational> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * rational::int(k as i64))
                .collect(),
        )
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) if !lead.is_zero() => {
                let inv = lead.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(d).max(1)];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1 - d;
            let q = rem[rem.len() - 1].clone() * lead_inv.clone();
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - q.clone() * b.clone();
            }
            quot[k] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors (same roots, all simple).
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let p = self.square_free();
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain
    }

    /// Positive real roots, each refined by exact bisection until its
    /// bracket is narrower than `width`.
    pub fn positive_roots(&self, width: &Rational) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let chain = self.sturm_chain();
        let p = &chain[0];
        let bound = {
            let lead = p.leading();
            let max_ratio = p.coeffs[..p.coeffs.len() - 1]
                .iter()
                .map(|a| (a / &lead).abs())
                .fold(Rational::zero(), |m, v| if v > m { v } else { m });
            max_ratio + Rational::one()
        };
        let count = |x: &Rational| sign_changes(&chain, x);
        let mut roots = Vec::new();
        let mut stack = vec![(Rational::zero(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = count(&lo) - count(&hi);
            if n == 0 {
                continue;
            }
            if n == 1 {
                roots.push(refine(p, lo, hi, width));
                continue;
            }
            let mid = (&lo + &hi) / rational::int(2);
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        roots.sort();
        roots
    }
}

fn sign_changes(chain: &[Poly<Rational>], x: &Rational) -> i64 {
    let mut changes = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Bisection on a bracket `(lo, hi]` holding exactly one simple root.
fn refine(p: &Poly<Rational>, mut lo: Rational, mut hi: Rational, width: &Rational) -> Rational {
    let two = rational::int(2);
    if p.eval(&hi).is_zero() {
        return hi;
    }
    let lo_sign = p.eval(&lo).is_positive();
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return mid;
        }
        if v.is_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let simplest = simplest_between(&lo, &hi);
    if p.eval(&simplest).is_zero() {
        return simplest;
    }
    (lo + hi) / two
}

/// The rational with the smallest denominator in `[lo, hi]`, for
/// `0 <= lo <= hi`. Recovers exact rational roots after bisection.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let ceil = lo.ceil();
    if ceil <= *hi {
        return ceil;
    }
    let floor = lo.floor();
    let inner = simplest_between(&(hi - &floor).recip(), &(lo - &floor).recip());
    floor + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trims_and_multiplies() {
        let a = Poly::new(vec![int(1), int(1), int(0)]);
        assert_eq!(a.degree(), Some(1));
        let sq = a.clone() * a;
        assert_eq!(sq, p(&[1, 2, 1]));
        assert_eq!(sq.eval(&int(2)), int(9));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let f = p(&[2, -3, 0, 1]);
        let (q, r) = f.div_rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[-2, 1, 1]));
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert_eq!(f.square_free(), p(&[-2, 1, 1]));
    }

    #[test]
    fn isolates_positive_roots() {
        // (x - 1/2)(x - 3)(x + 5), with a double root at 3 thrown in
        let f = Poly::new(vec![frac(-1, 2), int(1)])
            * p(&[-3, 1])
            * p(&[-3, 1])
            * p(&[5, 1]);
        let roots = f.positive_roots(&frac(1, 1 << 40));
        assert_eq!(roots.len(), 2);
        assert!((rational::to_f64(&roots[0]) - 0.5).abs() < 1e-11);
        assert!((rational::to_f64(&roots[1]) - 3.0).abs() < 1e-11);
    }

    #[test]
    fn no_positive_roots() {
        assert!(p(&[1, 1]).positive_roots(&frac(1, 1000)).is_empty());
        assert!(p(&[4]).positive_roots(&frac(1, 1000)).is_empty());
    }
}
