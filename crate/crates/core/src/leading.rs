//! Leading-order secular equations in the rescaled variable `L = s / t`.
//!
//! At small `t` the secular polynomial of the rescaled family collapses to
//! `prod_k (L - b_k) + shift`, where the `b_k` are the squared harmonic levels
//! and the single number `shift` is an affine functional of the rescaled
//! couplings: `omega` for even `N`, `epsilon` for odd `N`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::roots::polynomial_roots;
use crate::secular::{base_levels, Parity};

type C64 = Complex<f64>;

/// `prod_k (L - base_roots[k]) + shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingOrderPolynomial {
    base_roots: Vec<i64>,
    shift: Rational,
    parity: Parity,
}

/// First-order root `L(shift) = base + slope * shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedRoot {
    pub base: i64,
    pub slope: Rational,
}

impl LinearizedRoot {
    pub fn at(&self, shift: &Rational) -> Rational {
        rational::int(self.base) + &self.slope * shift
    }
}

impl LeadingOrderPolynomial {
    pub fn new(dimension: usize, shift: Rational) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::DimensionTooSmall { dimension, minimum: 2 });
        }
        Ok(LeadingOrderPolynomial {
            base_roots: base_levels(dimension),
            shift,
            parity: Parity::of(dimension),
        })
    }

    pub fn base_roots(&self) -> &[i64] {
        &self.base_roots
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The shift-free product `prod_k (L - b_k)`.
    pub fn base_poly(&self) -> Poly<Rational> {
        self.base_roots.iter().fold(Poly::one(), |acc, &b| {
            acc * Poly::new(vec![rational::int(-b), Rational::one()])
        })
    }

    pub fn poly(&self) -> Poly<Rational> {
        self.base_poly() + Poly::constant(self.shift.clone())
    }

    pub fn eval(&self, l: &Rational) -> Rational {
        self.poly().eval(l)
    }

    /// All `J` roots in `L`, sorted by real part. Imaginary parts below `tol`
    /// (relative to the root magnitude, floored at one) are dropped.
    pub fn leading_roots(&self, tol: f64) -> Result<Vec<C64>> {
        if !(tol > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive"));
        }
        let coeffs: Vec<f64> = self.poly().coeffs().iter().map(rational::to_f64).collect();
        let mut roots = polynomial_roots(&coeffs)?;
        for z in roots.iter_mut() {
            if z.im.abs() <= tol * z.norm().max(1.0) {
                z.im = 0.0;
            }
        }
        crate::roots::sort_complex(&mut roots);
        Ok(roots)
    }

    /// Real roots to within `width`, found by exact isolation. Only valid
    /// while every real root is positive, which holds for small `|shift|`.
    pub fn positive_roots(&self, width: &Rational) -> Vec<Rational> {
        self.poly().positive_roots(width)
    }

    /// First-order expansion of each root in the shift:
    /// slope `-1 / prod_{j != k} (b_k - b_j)`.
    pub fn linearized_roots(&self) -> Vec<LinearizedRoot> {
        self.base_roots
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let denom = self
                    .base_roots
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .fold(BigInt::one(), |acc, (_, &c)| acc * BigInt::from(b - c));
                LinearizedRoot { base: b, slope: -Rational::new(BigInt::one(), denom) }
            })
            .collect()
    }
}

/// The integer triangle feeding the odd-dimension functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl CoefficientTriangle {
    /// Number of stored rows (`J_max`).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `J` as `C_1 ..= C_J`.
    pub fn row(&self, j: usize) -> &[BigInt] {
        &self.rows[j - 1]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// `C_n^(J)` for any integer `n`, using `C_{1-n} = -C_n` for `n <= 0`
    /// and zero beyond `n = J`.
    pub fn get(&self, j: usize, n: i64) -> BigInt {
        extended(self.row(j), n)
    }
}

fn extended(row: &[BigInt], n: i64) -> BigInt {
    if n <= 0 {
        -extended(row, 1 - n)
    } else {
        row.get(n as usize - 1).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// The next row from the antisymmetric three-term recurrence.
pub fn next_triangle_row(row: &[BigInt]) -> Vec<BigInt> {
    (1..=row.len() as i64 + 1)
        .map(|n| extended(row, n - 1) + BigInt::from(2) * extended(row, n) + extended(row, n + 1))
        .collect()
}

/// Rows `1 ..= j_max` of the coefficient triangle, starting from `(1)`.
pub fn triangle_rows(j_max: usize) -> Result<CoefficientTriangle> {
    if j_max == 0 {
        return Err(Error::InvalidArgument("triangle needs at least one row"));
    }
    let mut rows = vec![vec![BigInt::one()]];
    while rows.len() < j_max {
        let next = next_triangle_row(rows.last().expect("nonempty"));
        rows.push(next);
    }
    Ok(CoefficientTriangle { rows })
}

/// Plain Pascal steps from the antisymmetric seed `(-1, 1)`.
///
/// Row `r` has `r + 2` entries. Rows of even length `2J` carry the
/// coefficient row `C^(J)` as their right half.
pub fn pascal_like_triangle(count: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(count);
    let mut row = vec![BigInt::from(-1), BigInt::one()];
    for _ in 0..count {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (i, v) in row.iter().enumerate() {
            next[i] += v;
            next[i + 1] += v;
        }
        rows.push(core::mem::replace(&mut row, next));
    }
    rows
}

fn check_functional_input(j: usize, g: &[Rational]) -> Result<()> {
    if j < 2 {
        return Err(Error::InvalidArgument("the shift functionals need J >= 2"));
    }
    if g.len() != j {
        return Err(Error::LengthMismatch { expected: j, found: g.len() });
    }
    Ok(())
}

fn alternating(j: usize, k: usize) -> Rational {
    if (j + k + 1).is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Center-out entry `G^_k = G_{J+1-k}`: `k = 1` is the innermost coupling.
fn center_out(g: &[Rational], k: usize) -> &Rational {
    &g[g.len() - k]
}

/// The even-`N` shift `omega^(J)(G)`, with `G` given in coupling order
/// `g_1 ..= g_J`.
pub fn omega_even(j: usize, g: &[Rational]) -> Result<Rational> {
    check_functional_input(j, g)?;
    let ji = j as i64;
    let prefactor = BigInt::from(2 * (2 * ji - 1)) * rational::factorial(2 * j as u64 - 1);
    let sum = (1..=j).fold(Rational::zero(), |acc, k| {
        let mut weight = Rational::from_integer(rational::binomial(2 * ji - 2, ji - 2 + k as i64));
        if k == 1 {
            weight /= rational::int(2);
        }
        acc + alternating(j, k) * weight * center_out(g, k)
    });
    Ok(Rational::from_integer(prefactor) * sum)
}

fn epsilon_with_sign(j: usize, g: &[Rational], flip: bool) -> Result<Rational> {
    check_functional_input(j, g)?;
    let triangle = triangle_rows(j)?;
    let row = triangle.row(j);
    let prefactor = BigInt::from(2 * (2 * j as i64 - 1)) * rational::factorial(2 * j as u64);
    let sum = (1..=j).fold(Rational::zero(), |acc, k| {
        let sign = if flip { -alternating(j, k) } else { alternating(j, k) };
        acc + sign * Rational::from_integer(row[k - 1].clone()) * center_out(g, k)
    });
    Ok(Rational::from_integer(prefactor) * sum)
}

/// The odd-`N` shift `epsilon^(J)(G)`, with `G` in coupling order.
pub fn epsilon_odd(j: usize, g: &[Rational]) -> Result<Rational> {
    epsilon_with_sign(j, g, false)
}

/// `epsilon_odd` with the opposite overall sign convention `(-1)^{J-k}`.
/// Kept only so the factorization check can demonstrate that it fails.
pub fn epsilon_odd_flipped_sign(j: usize, g: &[Rational]) -> Result<Rational> {
    epsilon_with_sign(j, g, true)
}

/// `omega` or `epsilon` according to the parity of `dimension`.
pub fn shift_functional(dimension: usize, g: &[Rational]) -> Result<Rational> {
    let j = dimension / 2;
    match Parity::of(dimension) {
        Parity::Even => omega_even(j, g),
        Parity::Odd => epsilon_odd(j, g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    /// Two roots of the leading-order polynomial merge at `L* > 0`.
    DoubleRoot,
    /// The smallest root reaches `L = 0`, i.e. zero energy.
    ZeroRoot,
}

impl CriticalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalKind::DoubleRoot => "double_root",
            CriticalKind::ZeroRoot => "zero_root",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalShift {
    pub shift: Rational,
    pub l_star: Rational,
    pub kind: CriticalKind,
}

impl CriticalShift {
    pub fn shift_f64(&self) -> f64 {
        rational::to_f64(&self.shift)
    }

    pub fn l_star_f64(&self) -> f64 {
        rational::to_f64(&self.l_star)
    }

    /// Collision energy `sqrt(L*)` in units of `sqrt(t)`.
    pub fn energy(&self) -> f64 {
        num_traits::Float::sqrt(self.l_star_f64())
    }
}

/// Shifts at which the leading-order spectrum degenerates, sorted by shift.
///
/// Stationary points `L*` of the base product are isolated exactly and
/// refined to width `tol`; the shift `-q(L*)` is then accurate to second
/// order in that width. The zero-root shift `-q(0)` is exact.
pub fn critical_shifts(dimension: usize, tol: f64) -> Result<Vec<CriticalShift>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let base = LeadingOrderPolynomial::new(dimension, Rational::zero())?.base_poly();
    let width = rational::from_f64(tol)?;
    let mut out: Vec<CriticalShift> = base
        .derivative()
        .positive_roots(&width)
        .into_iter()
        .map(|l| CriticalShift { shift: -base.eval(&l), l_star: l, kind: CriticalKind::DoubleRoot })
        .collect();
    out.push(CriticalShift {
        shift: -base.eval(&Rational::zero()),
        l_star: Rational::zero(),
        kind: CriticalKind::ZeroRoot,
    });
    out.sort_by(|a, b| a.shift.cmp(&b.shift));
    Ok(out)
}

/// Threshold estimates from the linearized roots: adjacent first-order roots
/// crossing each other, and the lowest one crossing zero. Sorted by shift.
pub fn linearized_critical_shifts(dimension: usize) -> Result<Vec<CriticalShift>> {
    let lin = LeadingOrderPolynomial::new(dimension, Rational::zero())?.linearized_roots();
    let mut out = Vec::new();
    for pair in lin.windows(2) {
        let dslope = &pair[0].slope - &pair[1].slope;
        if dslope.is_zero() {
            continue;
        }
        let shift = rational::int(pair[1].base - pair[0].base) / dslope;
        out.push(CriticalShift {
            l_star: pair[0].at(&shift),
            shift,
            kind: CriticalKind::DoubleRoot,
        });
    }
    if let Some(first) = lin.first() {
        if !first.slope.is_zero() {
            let shift = -rational::int(first.base) / &first.slope;
            out.push(CriticalShift { shift, l_star: Rational::zero(), kind: CriticalKind::ZeroRoot });
        }
    }
    out.sort_by(|a, b| a.shift.cmp(&b.shift));
    Ok(out)
}
