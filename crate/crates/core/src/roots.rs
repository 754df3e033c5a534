//! Simultaneous polynomial root finding (Aberth-Ehrlich iteration).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};

type C64 = Complex<f64>;

pub const MAX_ITERATIONS: u32 = 1000;

/// All complex roots of the real polynomial `sum_k coeffs[k] x^k`.
///
/// Trailing zero coefficients are ignored; exact zero roots (leading zero
/// coefficients) are split off before iterating. Roots are returned sorted by
/// real part, then imaginary part.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<C64>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite polynomial coefficient"));
    }
    let end = coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |p| p + 1);
    let coeffs = &coeffs[..end];
    let zeros = coeffs.iter().position(|&c| c != 0.0).unwrap_or(0);
    let reduced: Vec<C64> = coeffs[zeros..].iter().map(|&c| C64::new(c, 0.0)).collect();
    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    roots.extend(aberth(&reduced)?);
    sort_complex(&mut roots);
    Ok(roots)
}

/// Sorts by real part, then imaginary part.
pub fn sort_complex(values: &mut [C64]) {
    values.sort_by(|a, b| match a.re.total_cmp(&b.re) {
        Ordering::Equal => a.im.total_cmp(&b.im),
        other => other,
    });
}

fn aberth(coeffs: &[C64]) -> Result<Vec<C64>> {
    let degree = match coeffs.len() {
        0 | 1 => return Ok(Vec::new()),
        n => n - 1,
    };
    if degree == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let mut z = initial_guesses(coeffs);
    let mut done = vec![false; degree];
    let tolerance = 8.0 * degree as f64 * f64::EPSILON;

    for iteration in 0..MAX_ITERATIONS {
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = eval_with_derivative(coeffs, &abs_coeffs, z[i]);
            if p.norm() <= tolerance * bound {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                return Err(Error::NonConvergence { iterations: iteration });
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { iterations: MAX_ITERATIONS })
}

/// Horner evaluation of `p`, `p'` and the rounding-error scale `sum |a_k| |z|^k`.
fn eval_with_derivative(coeffs: &[C64], abs_coeffs: &[f64], z: C64) -> (C64, C64, f64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    let mut bound = 0.0;
    let r = z.norm();
    for (c, a) in coeffs.iter().zip(abs_coeffs).rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + a;
    }
    (p, dp, bound)
}

/// Points on a circle around the root centroid, with radius set by the
/// coefficient magnitudes and a small angular offset to break symmetry.
fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let center = -coeffs[degree - 1] / (lead * degree as f64);
    let radius = (0..degree)
        .map(|k| Float::powf((coeffs[k] / lead).norm(), 1.0 / (degree - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-150);
    (0..degree)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / degree as f64 + 0.4;
            center + C64::from_polar(radius, angle)
        })
        .collect()
}
