//! Exact and numeric spectral analysis of the PT-symmetric tridiagonal
//! chain model with equidistant diagonal and up-down symmetric couplings.
//!
//! The crate is `no_std` (with `alloc`). Characteristic polynomials are
//! computed in exact rational arithmetic; floating point enters only when
//! roots are extracted.

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is how float arguments reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod domain;
pub mod error;
pub mod leading;
pub mod model;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod secular;
pub mod series;
pub mod spectrum;
pub mod verify;

pub use domain::{
    boundary_n4, boundary_scan, find_t_h, find_t_ph, find_t_qh, spike_fit, thresholds,
    BoundaryPoint, ScanOptions,
};
pub use error::{Error, Result};
pub use leading::{
    critical_shifts, epsilon_odd, omega_even, shift_functional, triangle_rows,
    LeadingOrderPolynomial,
};
pub use model::{couplings_from_rescaled, eep_couplings, ChainModel, RescaledPoint};
pub use rational::{parse_rational, Rational};
pub use secular::{char_poly, char_poly_series, reduce_to_s, SecularPolynomial};
pub use spectrum::{classify_regime, energies, energy_curve, EnergySpectrum, RegimeLabel};
pub use verify::{verify_eep_degeneracy, verify_factorization, verify_tables, Check, Report};
