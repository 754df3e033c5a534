//! Numeric energies, reality classification and the `N = 4` perturbation
//! series.
//!
//! Energies are obtained from the exact secular polynomial in `s = E^2`:
//! exact zero roots are split off in rational arithmetic, the remaining
//! coefficients are rounded to `f64` and solved simultaneously, and every
//! `s`-root contributes the pair `E = +-sqrt(s)`.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::model::{ChainModel, RescaledPoint};
use crate::rational::{self, Rational};
use crate::roots::{polynomial_roots, sort_complex};
use crate::secular::SecularPolynomial;

type C64 = Complex<f64>;

/// Default reality tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum {
    /// All `N` energies, sorted by real part then imaginary part.
    pub eigenvalues: Vec<C64>,
    /// The `J` roots in `s = E^2`, same ordering.
    pub s_roots: Vec<C64>,
    /// Every `s`-root is real and non-negative within the tolerance.
    pub all_real: bool,
    /// `N` is odd, so one energy is exactly zero.
    pub zero_mode: bool,
}

/// Computes the spectrum of a chain model.
///
/// An `s`-root counts as real when `|Im s| <= tol` and `Re s >= -tol`; such
/// roots are snapped onto the non-negative real axis before taking square
/// roots, so real spectra come out with exactly zero imaginary parts.
pub fn energies(model: &ChainModel, tol: f64) -> Result<EnergySpectrum> {
    energies_of_secular(&SecularPolynomial::from_model(model), model.dimension(), tol)
}

pub fn energies_of_secular(
    secular: &SecularPolynomial,
    dimension: usize,
    tol: f64,
) -> Result<EnergySpectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let exact = secular.coeffs();
    let zeros = exact.iter().take_while(|c| c.is_zero()).count();
    let floats: Vec<f64> = exact[zeros..].iter().map(rational::to_f64).collect();
    let mut s_roots = alloc::vec![C64::new(0.0, 0.0); zeros];
    s_roots.extend(polynomial_roots(&floats)?);

    let mut all_real = true;
    for s in s_roots.iter_mut() {
        if s.im.abs() <= tol && s.re >= -tol {
            *s = C64::new(s.re.max(0.0), 0.0);
        } else {
            all_real = false;
        }
    }
    sort_complex(&mut s_roots);

    let zero_mode = dimension % 2 == 1;
    let mut eigenvalues = Vec::with_capacity(dimension);
    for s in &s_roots {
        let e = s.sqrt();
        eigenvalues.push(e);
        eigenvalues.push(-e);
    }
    if zero_mode {
        eigenvalues.push(C64::new(0.0, 0.0));
    }
    for e in eigenvalues.iter_mut() {
        // normalize signed zeros so output is stable
        if e.re == 0.0 {
            e.re = 0.0;
        }
        if e.im == 0.0 {
            e.im = 0.0;
        }
    }
    sort_complex(&mut eigenvalues);
    Ok(EnergySpectrum { eigenvalues, s_roots, all_real, zero_mode })
}

/// The four parameter regimes along a ray of fixed rescaled couplings, in
/// the order they are met as `t` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegimeLabel {
    /// Some energies are complex.
    Unobservable,
    /// Real spectrum, real couplings (`max_n xi_n <= 1`).
    QuasiHermitianPt,
    /// Real spectrum, some couplings imaginary.
    PseudoHermitianComplex,
    /// All couplings imaginary (`min_n xi_n > 1`): a Hermitian matrix.
    Hermitian,
}

impl RegimeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::Unobservable => "UNOBSERVABLE",
            RegimeLabel::QuasiHermitianPt => "QUASI_HERMITIAN_PT",
            RegimeLabel::PseudoHermitianComplex => "PSEUDO_HERMITIAN_COMPLEX",
            RegimeLabel::Hermitian => "HERMITIAN",
        }
    }
}

pub fn classify_regime(point: &RescaledPoint, tol: f64) -> Result<RegimeLabel> {
    let spectrum = energies(&point.to_model(), tol)?;
    if !spectrum.all_real {
        return Ok(RegimeLabel::Unobservable);
    }
    let xis = point.xis();
    let one = Rational::from_integer(1.into());
    if xis.iter().all(|x| *x <= one) {
        Ok(RegimeLabel::QuasiHermitianPt)
    } else if xis.iter().all(|x| *x > one) {
        Ok(RegimeLabel::Hermitian)
    } else {
        Ok(RegimeLabel::PseudoHermitianComplex)
    }
}

/// One grid point of an energy curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub t: f64,
    /// Sorted energies, or the error raised at this grid point.
    pub energies: Result<Vec<C64>>,
}

/// The uniform grid `t_min, ..., t_max` with `steps` points.
pub fn curve_grid(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(t_min < t_max) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidArgument("need finite t_min < t_max"));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument("need at least two grid points"));
    }
    let h = (t_max - t_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { t_max } else { t_min + h * i as f64 })
        .collect())
}

/// Energies at a single `t` of the rescaled family.
pub fn curve_row(dimension: usize, rescaled: &[Rational], t: f64, tol: f64) -> CurveRow {
    let energies = rational::from_f64(t)
        .and_then(|t| RescaledPoint::new(dimension, t, rescaled.to_vec()))
        .and_then(|p| energies(&p.to_model(), tol))
        .map(|s| s.eigenvalues);
    CurveRow { t, energies }
}

/// Energies along `t` for fixed rescaled couplings. A failing grid point is
/// recorded in its row and does not abort the curve.
pub fn energy_curve(
    dimension: usize,
    rescaled: &[Rational],
    t_min: f64,
    t_max: f64,
    steps: usize,
    tol: f64,
) -> Result<Vec<CurveRow>> {
    RescaledPoint::new(dimension, Rational::zero(), rescaled.to_vec())?;
    let grid = curve_grid(t_min, t_max, steps)?;
    Ok(grid.into_iter().map(|t| curve_row(dimension, rescaled, t, tol)).collect())
}

/// Leading and next-to-leading coefficients of the `N = 4` energies
/// `E(t) = E^(0) sqrt(t) + E^(1) t^{3/2} + ...` for the outer (`E3`) and
/// inner (`E2`) positive levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationCoeffs {
    pub e3_0: f64,
    pub e3_1: f64,
    pub e2_0: f64,
    pub e2_1: f64,
}

impl PerturbationCoeffs {
    pub fn e3(&self, t: f64) -> f64 {
        self.e3_0 * t.sqrt() + self.e3_1 * t * t.sqrt()
    }

    pub fn e2(&self, t: f64) -> f64 {
        self.e2_0 * t.sqrt() + self.e2_1 * t * t.sqrt()
    }
}

/// Closed-form perturbation coefficients at `N = 4` for rescaled couplings
/// `B` (on `g_1`) and `A` (on `g_2`).
pub fn perturbation_coeffs_n4(a: &Rational, b: &Rational) -> Result<PerturbationCoeffs> {
    let a = rational::to_f64(a);
    let b = rational::to_f64(b);
    let radicand = 9.0 * b - 9.0 * a + 4.0;
    if !(radicand > 0.0) {
        return Err(Error::Domain("9B - 9A + 4 must be positive"));
    }
    let root = Float::sqrt(radicand);
    let inner = 5.0 - 2.0 * root;
    if !(inner > 0.0) {
        return Err(Error::Domain("5 - 2 sqrt(9B - 9A + 4) must be positive"));
    }
    let e3_0 = Float::sqrt(5.0 + 2.0 * root);
    let e2_0 = Float::sqrt(inner);
    let skew = (3.0 * b + 5.0 * a) / root;
    let e3_1 = (skew + 3.0 * b + 2.0 * a) / (2.0 * e3_0);
    let e2_1 = (2.0 * a + 3.0 * b - skew) / (2.0 * e2_0);
    Ok(PerturbationCoeffs { e3_0, e3_1, e2_0, e2_1 })
}
