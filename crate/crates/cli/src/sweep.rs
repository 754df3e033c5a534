//! Parallel versions of the grid-based routines.

use rayon::prelude::*;

use ptchain_core::domain::{boundary_points_from_samples, reality_at_scale, BoundaryPoint, ScanOptions};
use ptchain_core::spectrum::{curve_grid, curve_row, CurveRow};
use ptchain_core::{Rational, RescaledPoint, Result};

/// Energies along `t`, one grid point per task. Row order matches the grid.
pub fn energy_curve(
    dimension: usize,
    rescaled: &[Rational],
    t_min: f64,
    t_max: f64,
    steps: usize,
    tol: f64,
) -> Result<Vec<CurveRow>> {
    RescaledPoint::new(dimension, Rational::from_integer(0.into()), rescaled.to_vec())?;
    let grid = curve_grid(t_min, t_max, steps)?;
    Ok(grid.par_iter().map(|&t| curve_row(dimension, rescaled, t, tol)).collect())
}

/// Reality-loss points along `scale * direction`, sampling the scale grid in
/// parallel before refining each bracket.
pub fn boundary_scan(
    dimension: usize,
    direction: &[Rational],
    scales: &[f64],
    t: f64,
    opts: &ScanOptions,
) -> Result<Vec<BoundaryPoint>> {
    RescaledPoint::new(dimension, Rational::from_integer(0.into()), direction.to_vec())?;
    let flags = scales
        .par_iter()
        .map(|&s| reality_at_scale(dimension, direction, s, t, opts.reality_tol))
        .collect::<Result<Vec<bool>>>()?;
    let bracket_opts = *opts;
    boundary_points_from_samples(dimension, direction, scales, &flags, t, &bracket_opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptchain_core::rational::int;

    #[test]
    fn parallel_scan_matches_sequential() {
        let dir = [int(0), int(1)];
        let scales: Vec<f64> = (0..=40).map(|i| -0.5 + i as f64 / 40.0).collect();
        let opts = ScanOptions::default();
        let par = boundary_scan(4, &dir, &scales, 1e-3, &opts).unwrap();
        let seq = ptchain_core::domain::boundary_scan(4, &dir, &scales, 1e-3, &opts).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn parallel_curve_matches_sequential() {
        let g = [int(0), int(0)];
        let par = energy_curve(4, &g, 0.0, 0.5, 11, 1e-9).unwrap();
        let seq = ptchain_core::spectrum::energy_curve(4, &g, 0.0, 0.5, 11, 1e-9).unwrap();
        assert_eq!(par, seq);
    }
}
