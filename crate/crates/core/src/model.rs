//! The up-down symmetric tridiagonal chain model and its parametrizations.
//!
//! An `N x N` chain model has the fixed equidistant diagonal
//! `1-N, 3-N, ..., N-1` and antisymmetric nearest-neighbour couplings
//! `H[k][k+1] = g_k`, `H[k+1][k] = -g_k` with `g_{N-k} = g_k`. Only the
//! `J = floor(N/2)` squared couplings `c_n = g_n^2` are stored; a negative
//! `c_n` encodes a purely imaginary `g_n`.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{Float, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{self, Rational};

/// Squared couplings at the maximal-coupling vertex: `c_n = n (N - n)`.
pub fn eep_couplings(dimension: usize) -> Result<Vec<Rational>> {
    check_dimension(dimension)?;
    let n_dim = dimension as i64;
    Ok((1..=dimension as i64 / 2).map(|n| rational::int(n * (n_dim - n))).collect())
}

pub(crate) fn check_dimension(dimension: usize) -> Result<()> {
    if dimension < 2 {
        return Err(Error::DimensionTooSmall { dimension, minimum: 2 });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    dimension: usize,
    squared_couplings: Vec<Rational>,
}

impl ChainModel {
    pub fn new(dimension: usize, squared_couplings: Vec<Rational>) -> Result<Self> {
        check_dimension(dimension)?;
        let expected = dimension / 2;
        if squared_couplings.len() != expected {
            return Err(Error::LengthMismatch { expected, found: squared_couplings.len() });
        }
        Ok(ChainModel { dimension, squared_couplings })
    }

    /// The model at the maximal-coupling vertex.
    pub fn eep(dimension: usize) -> Result<Self> {
        Self::new(dimension, eep_couplings(dimension)?)
    }

    /// All couplings switched off.
    pub fn decoupled(dimension: usize) -> Result<Self> {
        Self::new(dimension, alloc::vec![Rational::zero(); dimension / 2])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `J = floor(N / 2)`.
    pub fn half_size(&self) -> usize {
        self.dimension / 2
    }

    /// The `J` independent squared couplings `c_1 .. c_J`.
    pub fn squared_couplings(&self) -> &[Rational] {
        &self.squared_couplings
    }

    /// Diagonal entries `d_k = 2k - 1 - N` for `k = 1..=N`.
    pub fn diagonal(&self) -> impl Iterator<Item = i64> + '_ {
        let n = self.dimension as i64;
        (1..=n).map(move |k| 2 * k - 1 - n)
    }

    /// The `N - 1` squared couplings along the chain, with `c_{N-k} = c_k`.
    pub fn full_couplings(&self) -> Vec<Rational> {
        (1..self.dimension)
            .map(|k| {
                let n = k.min(self.dimension - k);
                self.squared_couplings[n - 1].clone()
            })
            .collect()
    }

    /// Dense matrix of the model. Couplings use the principal square root,
    /// so `c_n < 0` gives `g_n = i sqrt(|c_n|)`.
    pub fn build_matrix(&self) -> ChainMatrix {
        let n = self.dimension;
        let mut entries = alloc::vec![Complex::new(0.0, 0.0); n * n];
        for (k, d) in self.diagonal().enumerate() {
            entries[k * n + k] = Complex::new(d as f64, 0.0);
        }
        for (k, c) in self.full_couplings().iter().enumerate() {
            let c = rational::to_f64(c);
            let g = if c >= 0.0 {
                Complex::new(Float::sqrt(c), 0.0)
            } else {
                Complex::new(0.0, Float::sqrt(-c))
            };
            entries[k * n + k + 1] = g;
            entries[(k + 1) * n + k] = -g;
        }
        ChainMatrix { dimension: n, entries }
    }

    /// First secular coefficient `P_1 = sum_k d_k^2 / 2 - sum_n c_n` and
    /// whether the model lies inside the circumscribing domain `P_1 >= 0`.
    pub fn trace_bound(&self) -> TraceBound {
        let n = self.dimension as i64;
        let half_trace = rational::frac(n * n * n - n, 6);
        let p1 = self
            .full_couplings()
            .iter()
            .fold(half_trace, |acc, c| acc - c);
        let inside = !p1.is_negative();
        TraceBound { p1, inside }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceBound {
    pub p1: Rational,
    pub inside: bool,
}

/// Row-major dense matrix produced by [`ChainModel::build_matrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMatrix {
    dimension: usize,
    entries: Vec<Complex<f64>>,
}

impl ChainMatrix {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<f64> {
        self.entries[row * self.dimension + col]
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<f64>]> {
        self.entries.chunks(self.dimension)
    }
}

/// A point of the rescaled-coupling family
/// `c_n = n (N - n) (1 - xi_n(t))`, `xi_n(t) = t + ... + t^{J-1} + G_n t^J`.
///
/// `rescaled[n - 1]` is the coefficient attached to coupling `g_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledPoint {
    dimension: usize,
    t: Rational,
    rescaled: Vec<Rational>,
}

impl RescaledPoint {
    pub fn new(dimension: usize, t: Rational, rescaled: Vec<Rational>) -> Result<Self> {
        check_dimension(dimension)?;
        let expected = dimension / 2;
        if rescaled.len() != expected {
            return Err(Error::LengthMismatch { expected, found: rescaled.len() });
        }
        Ok(RescaledPoint { dimension, t, rescaled })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn half_size(&self) -> usize {
        self.dimension / 2
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn rescaled(&self) -> &[Rational] {
        &self.rescaled
    }

    /// `lambda = 1 - t`.
    pub fn lambda(&self) -> Rational {
        Rational::one() - &self.t
    }

    /// Same rescaled couplings at a different `t`.
    pub fn with_t(&self, t: Rational) -> Self {
        RescaledPoint { t, ..self.clone() }
    }

    /// `xi_n(t)` for coupling index `n` in `1..=J`.
    pub fn xi(&self, n: usize) -> Rational {
        xi_polynomial(self.half_size(), &self.rescaled[n - 1]).eval(&self.t)
    }

    pub fn xis(&self) -> Vec<Rational> {
        (1..=self.half_size()).map(|n| self.xi(n)).collect()
    }

    /// The chain model with `c_n = n (N - n) (1 - xi_n(t))`.
    pub fn to_model(&self) -> ChainModel {
        let n_dim = self.dimension as i64;
        let couplings = (1..=self.half_size())
            .map(|n| rational::int(n as i64 * (n_dim - n as i64)) * (Rational::one() - self.xi(n)))
            .collect();
        ChainModel { dimension: self.dimension, squared_couplings: couplings }
    }
}

/// `xi(t) = t + t^2 + ... + t^{J-1} + g t^J` as a polynomial in `t`.
pub fn xi_polynomial(half_size: usize, g: &Rational) -> Poly<Rational> {
    let mut coeffs = alloc::vec![Rational::zero(); half_size + 1];
    for c in coeffs.iter_mut().take(half_size).skip(1) {
        *c = Rational::one();
    }
    coeffs[half_size] = g.clone();
    Poly::new(coeffs)
}

/// Convenience alias matching [`RescaledPoint::to_model`].
pub fn couplings_from_rescaled(point: &RescaledPoint) -> ChainModel {
    point.to_model()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn eep_values() {
        assert_eq!(eep_couplings(4).unwrap(), alloc::vec![int(3), int(4)]);
        assert_eq!(eep_couplings(2).unwrap(), alloc::vec![int(1)]);
        assert_eq!(eep_couplings(6).unwrap(), alloc::vec![int(5), int(8), int(9)]);
        assert_eq!(eep_couplings(5).unwrap(), alloc::vec![int(4), int(6)]);
        assert!(matches!(eep_couplings(1), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn rejects_wrong_length() {
        assert_eq!(
            ChainModel::new(5, alloc::vec![int(1)]),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        );
        assert!(RescaledPoint::new(4, int(0), alloc::vec![]).is_err());
    }

    #[test]
    fn rescaled_n4_small_t() {
        let p = RescaledPoint::new(4, frac(1, 10), alloc::vec![int(0), int(0)]).unwrap();
        assert_eq!(p.to_model().squared_couplings(), &[frac(27, 10), frac(18, 5)]);
    }

    #[test]
    fn rescaled_n4_matches_alpha_beta_form() {
        // beta = t + B t^2 on g_1, alpha = t + A t^2 on g_2
        let (t, b, a) = (frac(1, 7), frac(-3, 5), frac(11, 4));
        let p = RescaledPoint::new(4, t.clone(), alloc::vec![b.clone(), a.clone()]).unwrap();
        let beta = &t + &b * &t * &t;
        let alpha = &t + &a * &t * &t;
        let m = p.to_model();
        assert_eq!(m.squared_couplings()[0], int(3) * (int(1) - beta));
        assert_eq!(m.squared_couplings()[1], int(4) * (int(1) - alpha));
    }

    #[test]
    fn xi_for_single_coupling() {
        let p = RescaledPoint::new(3, frac(1, 3), alloc::vec![int(6)]).unwrap();
        assert_eq!(p.xi(1), int(2));
        assert_eq!(p.to_model().squared_couplings(), &[int(-2)]);
        assert_eq!(p.lambda(), frac(2, 3));
    }

    #[test]
    fn matrix_n2() {
        let m = ChainModel::new(2, alloc::vec![int(1)]).unwrap().build_matrix();
        let want = [[-1.0, 1.0], [-1.0, 1.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), Complex::new(v, 0.0));
            }
        }
        assert!(m.is_real());
    }

    #[test]
    fn matrix_n6_pattern() {
        let m = ChainModel::new(6, alloc::vec![int(4), int(9), int(16)]).unwrap().build_matrix();
        let g = [2.0, 3.0, 4.0, 3.0, 2.0];
        for k in 0..6 {
            assert_eq!(m.get(k, k).re, (2 * k as i64 - 5) as f64);
            for j in 0..6 {
                if j > k + 1 || k > j + 1 {
                    assert_eq!(m.get(k, j), Complex::new(0.0, 0.0));
                }
            }
        }
        for k in 0..5 {
            assert_eq!(m.get(k, k + 1).re, g[k]);
            assert_eq!(m.get(k + 1, k).re, -g[k]);
        }
    }

    #[test]
    fn imaginary_couplings_give_hermitian_matrix() {
        let m = ChainModel::new(4, alloc::vec![int(-4), int(-9)]).unwrap().build_matrix();
        assert!(!m.is_real());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), m.get(j, i).conj());
            }
        }
    }

    #[test]
    fn trace_bound_values() {
        let eep = ChainModel::eep(4).unwrap().trace_bound();
        assert_eq!(eep.p1, int(0));
        assert!(eep.inside);
        let free = ChainModel::decoupled(4).unwrap().trace_bound();
        assert_eq!(free.p1, int(10));
        // N = 5 with c_1 = 4(1-beta), c_2 = 6(1-alpha): P_1 = 8 beta + 12 alpha
        let (beta, alpha) = (frac(1, 3), frac(2, 7));
        let m = ChainModel::new(
            5,
            alloc::vec![int(4) * (int(1) - &beta), int(6) * (int(1) - &alpha)],
        )
        .unwrap();
        assert_eq!(m.trace_bound().p1, int(8) * beta + int(12) * alpha);
        let outside = ChainModel::new(4, alloc::vec![int(4), int(4)]).unwrap().trace_bound();
        assert!(!outside.inside);
    }
}
