//! Exact characteristic and secular polynomials.
//!
//! The determinant of `H - E` for a chain model follows the three-term
//! recurrence `D_k = (d_k - E) D_{k-1} + c_{k-1} D_{k-2}`, where the plus sign
//! comes from the off-diagonal product `g * (-g) = -c`. Running it over exact
//! rationals gives the characteristic polynomial; running it over truncated
//! power series in `t` gives the strong-coupling expansion of the secular
//! coefficients.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{self, ChainModel};
use crate::poly::{Poly, Ring};
use crate::rational::{self, Rational};
use crate::series::Series;

/// Whether the dimension was even, or odd with the zero root divided out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(dimension: usize) -> Self {
        if dimension.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Runs the tridiagonal determinant recurrence and normalizes the result to
/// be monic in `E`.
fn determinant<T: Ring>(diagonal: &[T], couplings: &[T]) -> Poly<T> {
    let e = Poly::<T>::x();
    let mut prev = Poly::<T>::zero();
    let mut cur = Poly::<T>::one();
    for (k, d) in diagonal.iter().enumerate() {
        let mut next = (Poly::constant(d.clone()) - e.clone()) * cur.clone();
        if k > 0 {
            next = next + prev * Poly::constant(couplings[k - 1].clone());
        }
        prev = cur;
        cur = next;
    }
    if diagonal.len() % 2 == 1 {
        -cur
    } else {
        cur
    }
}

/// Characteristic polynomial `det(E - H)` of a chain model, exact and monic.
pub fn char_poly(model: &ChainModel) -> Poly<Rational> {
    let diagonal: Vec<Rational> = model.diagonal().map(rational::int).collect();
    determinant(&diagonal, &model.full_couplings())
}

/// Rewrites an even (or odd, after dividing by `E`) polynomial in `E` as a
/// polynomial in `s = E^2`.
fn reduce_generic<T: Ring>(p: &Poly<T>, dimension: usize) -> Result<Poly<T>> {
    let coeffs = p.coeffs();
    let shifted: &[T] = match Parity::of(dimension) {
        Parity::Even => coeffs,
        Parity::Odd => {
            if coeffs.first().is_some_and(|c| !c.is_zero()) {
                return Err(Error::ParityViolation { power: 0 });
            }
            coeffs.get(1..).unwrap_or(&[])
        }
    };
    let offset = dimension % 2;
    let mut s_coeffs = Vec::with_capacity(shifted.len() / 2 + 1);
    for (k, c) in shifted.iter().enumerate() {
        if k % 2 == 0 {
            s_coeffs.push(c.clone());
        } else if !c.is_zero() {
            return Err(Error::ParityViolation { power: k + offset });
        }
    }
    Ok(Poly::new(s_coeffs))
}

/// Secular polynomial in `s = E^2`:
/// `s^J - P_1 s^{J-1} + P_2 s^{J-2} - ... + (-1)^J P_J`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularPolynomial {
    half_size: usize,
    poly: Poly<Rational>,
    parity: Parity,
}

impl SecularPolynomial {
    pub fn from_model(model: &ChainModel) -> Self {
        reduce_to_s(&char_poly(model), model.dimension())
            .expect("chain-model characteristic polynomials have definite parity")
    }

    pub fn half_size(&self) -> usize {
        self.half_size
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The polynomial in `s`, lowest degree first.
    pub fn poly(&self) -> &Poly<Rational> {
        &self.poly
    }

    /// Plain monic coefficients, lowest degree first (`J + 1` entries).
    pub fn coeffs(&self) -> Vec<Rational> {
        (0..=self.half_size).map(|k| self.poly.coeff(k)).collect()
    }

    /// `P_k` for `k` in `0..=J` (`P_0 = 1`).
    pub fn p(&self, k: usize) -> Rational {
        let c = self.poly.coeff(self.half_size - k);
        if k.is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    /// Coefficients `Q_k = P_k / C(J, k)` of the binomially weighted form
    /// `s^J - C(J,1) Q_1 s^{J-1} + C(J,2) Q_2 s^{J-2} - ...`.
    pub fn binomial_weighted(&self) -> Vec<Rational> {
        let j = self.half_size as i64;
        (1..=self.half_size)
            .map(|k| self.p(k) / Rational::from_integer(rational::binomial(j, k as i64)))
            .collect()
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.poly.eval(s)
    }

    /// Coefficients converted to `f64`, lowest degree first.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs().iter().map(rational::to_f64).collect()
    }
}

/// Reduces the characteristic polynomial of an `N`-dimensional chain model to
/// its secular polynomial in `s = E^2`.
pub fn reduce_to_s(p: &Poly<Rational>, dimension: usize) -> Result<SecularPolynomial> {
    let poly = reduce_generic(p, dimension)?;
    let half_size = dimension / 2;
    if poly.degree() != Some(half_size) {
        return Err(Error::ParityViolation { power: p.degree().unwrap_or(0) });
    }
    Ok(SecularPolynomial { half_size, poly, parity: Parity::of(dimension) })
}

/// Secular polynomial in `s` with coefficients that are power series in `t`,
/// truncated after `t^K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSecular {
    half_size: usize,
    order: usize,
    poly: Poly<Series>,
}

impl SeriesSecular {
    pub fn half_size(&self) -> usize {
        self.half_size
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Series coefficient of `s^j`, truncated at order `K`.
    pub fn coeff(&self, j: usize) -> Series {
        self.poly.coeff(j).truncate(self.order)
    }

    /// Exact value of the coefficient of `s^j` at order `t^k`.
    pub fn term(&self, j: usize, k: usize) -> Rational {
        self.coeff(j).coeff(k)
    }

    /// Evaluates every series coefficient at `t`, giving a polynomial in `s`.
    pub fn eval_t(&self, t: &Rational) -> Poly<Rational> {
        Poly::new((0..=self.half_size).map(|j| self.coeff(j).eval(t)).collect())
    }
}

/// Expands the secular polynomial of the rescaled family
/// `c_n = n (N - n) (1 - xi_n(t))` in powers of `t` through `t^K`.
///
/// `rescaled[n - 1]` is attached to coupling `g_n`.
pub fn char_poly_series(dimension: usize, rescaled: &[Rational], order: usize) -> Result<SeriesSecular> {
    model::check_dimension(dimension)?;
    let half_size = dimension / 2;
    if rescaled.len() != half_size {
        return Err(Error::LengthMismatch { expected: half_size, found: rescaled.len() });
    }
    if order < half_size {
        return Err(Error::TruncationTooSmall { order, needed: half_size });
    }
    let n_dim = dimension as i64;
    let half: Vec<Series> = rescaled
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let n = i as i64 + 1;
            let xi = model::xi_polynomial(half_size, g);
            let one_minus_xi = Poly::one() - xi;
            let scaled = one_minus_xi.scale(&rational::int(n * (n_dim - n)));
            Series::new(scaled.into_coeffs(), order)
        })
        .collect();
    let couplings: Vec<Series> = (1..dimension)
        .map(|k| half[k.min(dimension - k) - 1].clone())
        .collect();
    let diagonal: Vec<Series> = (1..=n_dim)
        .map(|k| Series::from_rational(rational::int(2 * k - 1 - n_dim)))
        .collect();
    let poly = reduce_generic(&determinant(&diagonal, &couplings), dimension)?;
    Ok(SeriesSecular { half_size, order, poly })
}

/// `e_k` of the squared harmonic levels: `{1, 9, 25, ...}` for even `N`,
/// `{4, 16, 36, ...}` for odd `N`.
pub fn base_levels(dimension: usize) -> Vec<i64> {
    let offset = if dimension.is_multiple_of(2) { 1 } else { 2 };
    (0..dimension as i64 / 2)
        .map(|k| {
            let v = 2 * k + offset;
            v * v
        })
        .collect()
}

/// Elementary symmetric polynomials `e_0 ..= e_n` of the given values.
pub fn elementary_symmetric(values: &[i64]) -> Vec<Rational> {
    let mut e = alloc::vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (i, v) in values.iter().enumerate() {
        let v = rational::int(*v);
        for k in (1..=i + 1).rev() {
            let add = &e[k - 1] * &v;
            e[k] += add;
        }
    }
    e
}
