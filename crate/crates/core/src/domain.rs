//! Locating the boundary of the region with a real spectrum.
//!
//! Thresholds along `t` and boundary points along rays of rescaled couplings
//! are found by bisection on the reality predicate of [`energies`]. The
//! coupling-type thresholds `t_PH` and `t_H` only involve the exact
//! polynomials `xi_n(t) - 1` and are isolated exactly.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::{Float, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{xi_polynomial, RescaledPoint};
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::spectrum::{energies, EnergySpectrum};

/// Tuning for reality scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Reality tolerance handed to [`energies`].
    pub reality_tol: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub bisect_tol: f64,
    /// Number of grid samples used to bracket sign changes.
    pub samples: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { reality_tol: 1e-12, bisect_tol: 1e-10, samples: 200 }
    }
}

impl ScanOptions {
    fn validate(&self) -> Result<()> {
        if !(self.reality_tol > 0.0) || !(self.bisect_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive"));
        }
        if self.samples < 2 {
            return Err(Error::InvalidArgument("need at least two samples"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    RealityLoss,
    PhThreshold,
    HThreshold,
}

/// Which side of a reality-loss point has the real spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealSide {
    Below,
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub t: f64,
    /// Multiple of the scan direction (`1` for thresholds in `t`).
    pub scale: f64,
    pub rescaled: Vec<f64>,
    pub kind: BoundaryKind,
    /// 0-based indices into the sorted energies of the two levels that
    /// merge, read off on the real side.
    pub colliding_pair: Option<(usize, usize)>,
    pub real_side: Option<RealSide>,
}

fn point_at(dimension: usize, rescaled: &[Rational], t: f64) -> Result<RescaledPoint> {
    RescaledPoint::new(dimension, rational::from_f64(t)?, rescaled.to_vec())
}

fn spectrum_at(dimension: usize, rescaled: &[Rational], t: f64, tol: f64) -> Result<EnergySpectrum> {
    energies(&point_at(dimension, rescaled, t)?.to_model(), tol)
}

/// Whether the spectrum is real at `t` for fixed rescaled couplings.
pub fn is_real_at(dimension: usize, rescaled: &[Rational], t: f64, tol: f64) -> Result<bool> {
    Ok(spectrum_at(dimension, rescaled, t, tol)?.all_real)
}

/// Adjacent energy pair with the smallest gap, among pairs in the upper
/// half of a real spectrum (including the pair straddling zero).
pub fn colliding_pair(spectrum: &EnergySpectrum) -> Option<(usize, usize)> {
    if !spectrum.all_real {
        return None;
    }
    let e: Vec<f64> = spectrum.eigenvalues.iter().map(|z: &Complex<f64>| z.re).collect();
    let start = (e.len().saturating_sub(1)) / 2;
    (start..e.len().saturating_sub(1))
        .min_by(|&i, &j| (e[i + 1] - e[i]).total_cmp(&(e[j + 1] - e[j])))
        .map(|i| (i, i + 1))
}

/// Bisects `pred` between `lo` and `hi` (where it differs) down to `tol`.
fn bisect<F>(mut lo: f64, mut hi: f64, tol: f64, pred: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<bool>,
{
    let lo_value = pred(lo)?;
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if pred(mid)? == lo_value {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn brackets(grid: &[f64], flags: &[bool]) -> Vec<(usize, f64, f64)> {
    (0..flags.len().saturating_sub(1))
        .filter(|&i| flags[i] != flags[i + 1])
        .map(|i| (i, grid[i], grid[i + 1]))
        .collect()
}

/// The reality-loss threshold `t_QH` on `(0, t_hi]`.
///
/// Returns `None` when the spectrum is real at every sample. The expected
/// pattern is a non-real spectrum below the threshold and a real one above;
/// any other sign pattern is reported with its brackets.
pub fn find_t_qh(
    dimension: usize,
    rescaled: &[Rational],
    t_hi: f64,
    opts: &ScanOptions,
) -> Result<Option<f64>> {
    opts.validate()?;
    if !(t_hi > 0.0) || !t_hi.is_finite() {
        return Err(Error::InvalidArgument("t_hi must be positive"));
    }
    RescaledPoint::new(dimension, Rational::zero(), rescaled.to_vec())?;
    let grid: Vec<f64> = (1..=opts.samples)
        .map(|i| t_hi * i as f64 / opts.samples as f64)
        .collect();
    let flags = grid
        .iter()
        .map(|&t| is_real_at(dimension, rescaled, t, opts.reality_tol))
        .collect::<Result<Vec<bool>>>()?;
    let found = brackets(&grid, &flags);
    match found.as_slice() {
        [] if flags[0] => Ok(None),
        [] => Err(Error::NoRealWindow { t_hi }),
        [(i, lo, hi)] if !flags[*i] => {
            let pred = |t: f64| is_real_at(dimension, rescaled, t, opts.reality_tol);
            let (lo, hi) = bisect(*lo, *hi, opts.bisect_tol, pred)?;
            Ok(Some(0.5 * (lo + hi)))
        }
        _ => Err(Error::NonMonotonePredicate {
            brackets: found.iter().map(|&(_, lo, hi)| (lo, hi)).collect(),
        }),
    }
}

const ROOT_WIDTH_BITS: u32 = 100;

fn root_width() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1) << ROOT_WIDTH_BITS)
}

/// Positive roots of `xi_n(t) - 1` for each coupling.
fn xi_unit_roots(rescaled: &[Rational]) -> Vec<Vec<Rational>> {
    let j = rescaled.len();
    let width = root_width();
    rescaled
        .iter()
        .map(|g| (xi_polynomial(j, g) - Poly::constant(rational::int(1))).positive_roots(&width))
        .collect()
}

/// Smallest `t > 0` with `max_n xi_n(t) = 1`: the first coupling turns
/// imaginary.
pub fn find_t_ph(rescaled: &[Rational]) -> Result<Rational> {
    if rescaled.is_empty() {
        return Err(Error::InvalidArgument("empty coupling vector"));
    }
    xi_unit_roots(rescaled)
        .into_iter()
        .filter_map(|roots| roots.into_iter().next())
        .min()
        .ok_or(Error::NoPositiveRoot)
}

/// Smallest `t > 0` with `min_n xi_n(t) = 1`: from here on every coupling
/// is imaginary (or on the verge).
pub fn find_t_h(rescaled: &[Rational]) -> Result<Rational> {
    if rescaled.is_empty() {
        return Err(Error::InvalidArgument("empty coupling vector"));
    }
    let roots = xi_unit_roots(rescaled);
    let slack = root_width() * rational::int(2);
    let mut candidates: Vec<&Rational> = roots.iter().flatten().collect();
    candidates.sort();
    let j = rescaled.len();
    let one = rational::int(1);
    candidates
        .into_iter()
        .find(|c| {
            // every coupling is at or beyond 1, allowing for the isolation width
            roots.iter().enumerate().all(|(n, own)| {
                own.iter().any(|r| (r - *c).abs() <= slack)
                    || xi_polynomial(j, &rescaled[n]).eval(c) >= one
            })
        })
        .cloned()
        .ok_or(Error::NoPositiveRoot)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thresholds {
    pub t_qh: Option<f64>,
    pub t_ph: Option<f64>,
    pub t_h: Option<f64>,
}

/// All three thresholds; `t_PH` and `t_H` are `None` when no positive root
/// exists.
pub fn thresholds(
    dimension: usize,
    rescaled: &[Rational],
    t_hi: f64,
    opts: &ScanOptions,
) -> Result<Thresholds> {
    let t_qh = find_t_qh(dimension, rescaled, t_hi, opts)?;
    let optional = |r: Result<Rational>| match r {
        Ok(t) => Ok(Some(rational::to_f64(&t))),
        Err(Error::NoPositiveRoot) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(Thresholds { t_qh, t_ph: optional(find_t_ph(rescaled))?, t_h: optional(find_t_h(rescaled))? })
}

/// One `beta` sample of the two `N = 4` boundary branches in the plane of
/// `alpha = 1 - c_2 / 4` and `beta = 1 - c_1 / 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRow {
    pub beta: f64,
    /// The lower `s`-root reaches zero.
    pub alpha_lower: f64,
    /// The two `s`-roots merge.
    pub alpha_upper: f64,
}

/// Closed-form `N = 4` boundary branches for `beta` in `(0, 1)`.
pub fn boundary_n4(beta_grid: &[f64]) -> Result<Vec<BoundaryRow>> {
    beta_grid
        .iter()
        .map(|&beta| {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::OutOfRange { value: beta, lo: 0.0, hi: 1.0 });
            }
            let alpha_lower = beta - 0.25 * beta * beta;
            let root = Float::sqrt(81.0 - 90.0 * beta + 9.0 * beta * beta);
            let alpha_upper = 18.0 * beta / ((9.0 - 3.0 * beta) + root);
            Ok(BoundaryRow { beta, alpha_lower, alpha_upper })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikeFit {
    /// Estimated quadratic coefficient `lim (alpha - beta) / beta^2`.
    pub coefficient: f64,
    pub slope: f64,
    /// Root-mean-square residual of the linear fit.
    pub residual: f64,
    pub points: usize,
}

pub const SPIKE_BETA_MAX: f64 = 0.05;
pub const SPIKE_MIN_POINTS: usize = 5;

/// Least-squares fit of `(alpha - beta) / beta^2 = c + d beta` over the
/// `(beta, alpha)` pairs with `beta <= 0.05`; `c` is the quadratic
/// coefficient of the branch at the vertex.
pub fn spike_fit(rows: &[(f64, f64)]) -> Result<SpikeFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(b, _)| *b > 0.0 && *b <= SPIKE_BETA_MAX)
        .map(|&(b, a)| (b, (a - b) / (b * b)))
        .collect();
    if pts.len() < SPIKE_MIN_POINTS {
        return Err(Error::InsufficientPoints { found: pts.len(), needed: SPIKE_MIN_POINTS });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let coefficient = my - slope * mx;
    let ss: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - coefficient - slope * p.0;
            r * r
        })
        .sum();
    Ok(SpikeFit { coefficient, slope, residual: Float::sqrt(ss / n), points: pts.len() })
}

fn scaled(direction: &[Rational], scale: f64) -> Result<Vec<Rational>> {
    let s = rational::from_f64(scale)?;
    Ok(direction.iter().map(|d| d * &s).collect())
}

/// Reality of the spectrum at `t` for couplings `scale * direction`.
pub fn reality_at_scale(
    dimension: usize,
    direction: &[Rational],
    scale: f64,
    t: f64,
    tol: f64,
) -> Result<bool> {
    is_real_at(dimension, &scaled(direction, scale)?, t, tol)
}

/// Turns precomputed reality flags on a grid of scales into refined
/// boundary points. Samples can therefore be evaluated in parallel by the
/// caller.
pub fn boundary_points_from_samples(
    dimension: usize,
    direction: &[Rational],
    scales: &[f64],
    flags: &[bool],
    t: f64,
    opts: &ScanOptions,
) -> Result<Vec<BoundaryPoint>> {
    if scales.len() != flags.len() {
        return Err(Error::LengthMismatch { expected: scales.len(), found: flags.len() });
    }
    let pred = |s: f64| reality_at_scale(dimension, direction, s, t, opts.reality_tol);
    brackets(scales, flags)
        .into_iter()
        .map(|(i, lo, hi)| {
            let (lo, hi) = bisect(lo, hi, opts.bisect_tol, pred)?;
            let (real_scale, real_side) =
                if flags[i] { (lo, RealSide::Below) } else { (hi, RealSide::Above) };
            let spectrum = spectrum_at(dimension, &scaled(direction, real_scale)?, t, opts.reality_tol)?;
            let scale = 0.5 * (lo + hi);
            Ok(BoundaryPoint {
                t,
                scale,
                rescaled: direction.iter().map(|d| rational::to_f64(d) * scale).collect(),
                kind: BoundaryKind::RealityLoss,
                colliding_pair: colliding_pair(&spectrum),
                real_side: Some(real_side),
            })
        })
        .collect()
}

/// Reality-loss points along the ray `scale * direction` at fixed `t`.
/// `scales` must be increasing.
pub fn boundary_scan(
    dimension: usize,
    direction: &[Rational],
    scales: &[f64],
    t: f64,
    opts: &ScanOptions,
) -> Result<Vec<BoundaryPoint>> {
    opts.validate()?;
    RescaledPoint::new(dimension, Rational::zero(), direction.to_vec())?;
    if scales.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument("scales must be strictly increasing"));
    }
    let flags = scales
        .iter()
        .map(|&s| reality_at_scale(dimension, direction, s, t, opts.reality_tol))
        .collect::<Result<Vec<bool>>>()?;
    boundary_points_from_samples(dimension, direction, scales, &flags, t, opts)
}
