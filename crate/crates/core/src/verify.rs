//! Exact checks of the leading-order factorization, the coefficient tables
//! and the degeneracy at the maximal-coupling vertex.
//!
//! The factorization check never manipulates `G` symbolically. The
//! constant coefficient at order `t^J` is affine in `G`, so it is recovered
//! from `J + 1` exact expansions at `G = 0, e_1, ..., e_J`, and a further
//! probe at `e_1 + e_2` confirms the affine structure itself.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::leading::{epsilon_odd, omega_even, pascal_like_triangle, shift_functional, triangle_rows};
use crate::model::ChainModel;
use crate::poly::Poly;
use crate::rational::{self, Rational};
use crate::secular::{base_levels, char_poly, char_poly_series, elementary_symmetric};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn compare<T: PartialEq + ToString>(name: String, expected: &T, actual: &T) -> Self {
        Check {
            name,
            passed: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// The dimension checked, or `None` for dimension-free checks.
    pub dimension: Option<usize>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn unit(j: usize, n: usize) -> Vec<Rational> {
    let mut g = vec![Rational::zero(); j];
    g[n] = Rational::one();
    g
}

/// Checks the leading-order factorization at dimension `N` against the
/// shift functional of matching parity.
pub fn verify_factorization(dimension: usize) -> Result<Report> {
    verify_factorization_with(dimension, shift_functional)
}

/// Same as [`verify_factorization`] with a caller-supplied shift
/// functional (coupling-order `G`), so alternative formulas can be tested.
pub fn verify_factorization_with<F>(dimension: usize, shift: F) -> Result<Report>
where
    F: Fn(usize, &[Rational]) -> Result<Rational>,
{
    if dimension < 4 {
        return Err(Error::DimensionTooSmall { dimension, minimum: 4 });
    }
    let j = dimension / 2;
    let e = elementary_symmetric(&base_levels(dimension));
    let signed_e = |k: usize| if k.is_multiple_of(2) { e[k].clone() } else { -e[k].clone() };

    let mut probes: Vec<(String, Vec<Rational>)> = vec![("0".into(), vec![Rational::zero(); j])];
    probes.extend((0..j).map(|n| (format!("e{}", n + 1), unit(j, n))));
    let mut sum12 = unit(j, 0);
    sum12[1] = Rational::one();
    probes.push(("e1+e2".into(), sum12));

    let mut checks = Vec::new();
    let mut constants = Vec::with_capacity(probes.len());
    for (label, g) in &probes {
        let series = char_poly_series(dimension, g, j)?;
        for k in 1..=j {
            let coeff = series.coeff(j - k);
            let lower: Vec<Rational> = (0..k).map(|m| coeff.coeff(m)).collect();
            checks.push(Check {
                name: format!("G={label}: s^{} vanishes below t^{k}", j - k),
                passed: lower.iter().all(Zero::is_zero),
                expected: "0".into(),
                actual: lower
                    .iter()
                    .find(|c| !c.is_zero())
                    .map_or_else(|| "0".into(), |c| c.to_string()),
            });
            if k < j {
                checks.push(Check::compare(
                    format!("G={label}: s^{} at t^{k}", j - k),
                    &signed_e(k),
                    &coeff.coeff(k),
                ));
            }
        }
        constants.push(series.term(0, j));
    }

    let base = &constants[0];
    checks.push(Check::compare("G=0: constant at t^J".into(), &signed_e(j), base));
    for n in 0..j {
        let expected = shift(dimension, &unit(j, n))?;
        checks.push(Check::compare(
            format!("G=e{}: constant at t^J minus G=0 value", n + 1),
            &expected,
            &(&constants[n + 1] - base),
        ));
    }
    let affine = &constants[1] + &constants[2] - base;
    checks.push(Check::compare(
        "G=e1+e2: affine in G".into(),
        &affine,
        &constants[j + 1],
    ));
    Ok(Report { dimension: Some(dimension), checks })
}

/// Published rows of the even functional, `omega / (2 (2J-1) (2J-1)!)`,
/// center-out from the innermost coupling, for `J = 2..=6`.
pub const OMEGA_ROWS: [&[i64]; 5] = [
    &[1, -1],
    &[-3, 4, -1],
    &[10, -15, 6, -1],
    &[-35, 56, -28, 8, -1],
    &[126, -210, 120, -45, 10, -1],
];

/// Published rows of the odd functional, `epsilon / (2 (2J-1) (2J)!)`,
/// center-out, for `J = 2..=6`.
pub const EPSILON_ROWS: [&[i64]; 5] = [
    &[1, -1],
    &[-2, 3, -1],
    &[5, -9, 5, -1],
    &[-14, 28, -20, 7, -1],
    &[42, -90, 75, -35, 9, -1],
];

/// Published coefficient-triangle rows for `J = 1..=5`.
pub const TRIANGLE_ROWS: [&[i64]; 5] = [&[1], &[1, 1], &[2, 3, 1], &[5, 9, 5, 1], &[14, 28, 20, 7, 1]];

/// Published rows of the Pascal-like triangle seeded with `(-1, 1)`.
pub const PASCAL_ROWS: [&[i64]; 7] = [
    &[-1, 1],
    &[-1, 0, 1],
    &[-1, -1, 1, 1],
    &[-1, -2, 0, 2, 1],
    &[-1, -3, -2, 2, 3, 1],
    &[-1, -4, -5, 0, 5, 4, 1],
    &[-1, -5, -9, -5, 5, 9, 5, 1],
];

fn row_string(row: &[BigInt]) -> String {
    let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn ints(row: &[i64]) -> Vec<BigInt> {
    row.iter().map(|&v| BigInt::from(v)).collect()
}

/// Row of a shift functional evaluated on each center-out unit vector and
/// divided by its prefactor.
fn functional_row<F>(j: usize, prefactor: BigInt, f: F) -> Result<Vec<BigInt>>
where
    F: Fn(usize, &[Rational]) -> Result<Rational>,
{
    let prefactor = Rational::from_integer(prefactor);
    (1..=j)
        .map(|k| {
            let value = f(j, &unit(j, j - k))? / &prefactor;
            if value.is_integer() {
                Ok(value.to_integer())
            } else {
                Err(Error::InvalidArgument("functional row is not integral"))
            }
        })
        .collect()
}

/// Regenerates every published table row up to `J_max` and compares.
pub fn verify_tables(j_max: usize) -> Result<Report> {
    if j_max < 2 {
        return Err(Error::InvalidArgument("table check needs J_max >= 2"));
    }
    let mut checks = Vec::new();
    for (i, want) in OMEGA_ROWS.iter().enumerate() {
        let j = i + 2;
        if j > j_max {
            break;
        }
        let pre = BigInt::from(2 * (2 * j - 1)) * rational::factorial(2 * j as u64 - 1);
        let got = functional_row(j, pre, omega_even)?;
        checks.push(Check::compare(format!("omega row J={j}"), &row_string(&ints(want)), &row_string(&got)));
    }
    for (i, want) in EPSILON_ROWS.iter().enumerate() {
        let j = i + 2;
        if j > j_max {
            break;
        }
        let pre = BigInt::from(2 * (2 * j - 1)) * rational::factorial(2 * j as u64);
        let got = functional_row(j, pre, epsilon_odd)?;
        checks.push(Check::compare(format!("epsilon row J={j}"), &row_string(&ints(want)), &row_string(&got)));
    }
    let triangle = triangle_rows(TRIANGLE_ROWS.len().min(j_max))?;
    for (i, got) in triangle.rows().iter().enumerate() {
        checks.push(Check::compare(
            format!("triangle row J={}", i + 1),
            &row_string(&ints(TRIANGLE_ROWS[i])),
            &row_string(got),
        ));
    }
    for (i, got) in pascal_like_triangle(PASCAL_ROWS.len()).iter().enumerate() {
        checks.push(Check::compare(
            format!("pascal-like row {}", i + 1),
            &row_string(&ints(PASCAL_ROWS[i])),
            &row_string(got),
        ));
    }
    Ok(Report { dimension: None, checks })
}

/// The characteristic polynomial at the maximal-coupling vertex is `E^N`
/// for every `N` in `2..=N_max`.
pub fn verify_eep_degeneracy(n_max: usize) -> Result<Report> {
    if n_max < 2 {
        return Err(Error::DimensionTooSmall { dimension: n_max, minimum: 2 });
    }
    let checks = (2..=n_max)
        .map(|n| {
            let p = char_poly(&ChainModel::eep(n)?);
            let want = Poly::monomial(Rational::one(), n);
            Ok(Check {
                name: format!("N={n}: vertex polynomial is E^{n}"),
                passed: p == want,
                expected: format!("E^{n}"),
                actual: poly_string(&p),
            })
        })
        .collect::<Result<Vec<Check>>>()?;
    Ok(Report { dimension: Some(n_max), checks })
}

fn poly_string(p: &Poly<Rational>) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({c})E^{k}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leading::epsilon_odd_flipped_sign;

    #[test]
    fn factorization_small_dimensions() {
        for n in 4..=9 {
            let r = verify_factorization(n).unwrap();
            assert!(r.passed(), "N={n}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn n4_constant_term() {
        // 9 + 36 (A - B): A is the inner coupling g_2
        let b = char_poly_series(4, &[Rational::zero(), Rational::one()], 2).unwrap();
        assert_eq!(b.term(0, 2), rational::int(45));
        let b = char_poly_series(4, &[Rational::one(), Rational::zero()], 2).unwrap();
        assert_eq!(b.term(0, 2), rational::int(-27));
    }

    #[test]
    fn flipped_sign_fails_for_odd() {
        let r = verify_factorization_with(7, |n, g| {
            if n % 2 == 1 {
                epsilon_odd_flipped_sign(n / 2, g)
            } else {
                shift_functional(n, g)
            }
        })
        .unwrap();
        assert!(!r.passed());
        assert!(r.failures().all(|c| c.name.contains("minus G=0")));
    }

    #[test]
    fn tables_reproduced() {
        let r = verify_tables(6).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 5 + 5 + 5 + 7);
    }

    #[test]
    fn eep_small() {
        let r = verify_eep_degeneracy(8).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn rejects_small_inputs() {
        assert!(verify_factorization(3).is_err());
        assert!(verify_tables(1).is_err());
        assert!(verify_eep_degeneracy(1).is_err());
    }
}
