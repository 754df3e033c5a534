use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use ptchain_core::leading::{
    epsilon_odd, next_triangle_row, omega_even, triangle_rows, LeadingOrderPolynomial,
};
use ptchain_core::model::RescaledPoint;
use ptchain_core::rational::{binomial, frac, int, to_f64};
use ptchain_core::spectrum::{classify_regime, energies, DEFAULT_TOLERANCE};
use ptchain_core::{char_poly, char_poly_series, ChainModel, Rational, SecularPolynomial};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn model(max_dim: usize) -> impl Strategy<Value = ChainModel> {
    (2..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(rational(), n / 2)
            .prop_map(move |c| ChainModel::new(n, c).unwrap())
    })
}

/// `det(E I - H)` by dense Gaussian elimination, with the couplings moved
/// into the upper band (`c_k` above, `-1` below) so entries stay rational.
fn dense_det(model: &ChainModel, e: &Rational) -> Rational {
    let n = model.dimension();
    let c = model.full_couplings();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (k, d) in model.diagonal().enumerate() {
        m[k][k] = e - int(d);
    }
    for k in 0..n - 1 {
        m[k][k + 1] = -c[k].clone();
        m[k + 1][k] = int(1);
    }
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            let f = &m[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let v = &f * &m[col][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_matches_dense_determinant(m in model(7)) {
        let p = char_poly(&m);
        prop_assert_eq!(p.degree(), Some(m.dimension()));
        for k in 0..=m.dimension() as i64 {
            let e = frac(2 * k - 3, 3);
            prop_assert_eq!(p.eval(&e), dense_det(&m, &e));
        }
    }

    #[test]
    fn characteristic_polynomial_has_definite_parity(m in model(12)) {
        let p = char_poly(&m);
        for (k, c) in p.coeffs().iter().enumerate() {
            if (m.dimension() - k) % 2 == 1 {
                prop_assert!(c.is_zero(), "E^{} coefficient {}", k, c);
            }
        }
    }

    #[test]
    fn series_is_exact_at_full_order(
        n in 2usize..=7,
        g in proptest::collection::vec(rational(), 3),
        t in rational(),
    ) {
        let j = n / 2;
        let g = &g[..j];
        let series = char_poly_series(n, g, j * j).unwrap();
        let direct = SecularPolynomial::from_model(&RescaledPoint::new(n, t.clone(), g.to_vec()).unwrap().to_model());
        prop_assert_eq!(series.eval_t(&t).coeffs().to_vec(), direct.poly().coeffs().to_vec());
    }

    #[test]
    fn root_sum_equals_first_coefficient(m in model(10)) {
        let s = energies(&m, DEFAULT_TOLERANCE).unwrap();
        let sum: f64 = s.s_roots.iter().map(|z| z.re).sum();
        let p1 = to_f64(&m.trace_bound().p1);
        let scale = s.s_roots.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
        prop_assert!((sum - p1).abs() <= 1e-9 * scale, "{} vs {}", sum, p1);
    }

    #[test]
    fn spectrum_is_symmetric(m in model(10)) {
        let s = energies(&m, DEFAULT_TOLERANCE).unwrap();
        prop_assert_eq!(s.eigenvalues.len(), m.dimension());
        for e in &s.eigenvalues {
            let scale = e.norm().max(1.0);
            let has = |w: num_complex::Complex<f64>| {
                s.eigenvalues.iter().any(|f| (f - w).norm() <= 1e-6 * scale)
            };
            prop_assert!(has(-e), "missing {}", -e);
            prop_assert!(has(e.conj()), "missing {}", e.conj());
        }
    }

    #[test]
    fn shift_functionals_are_linear(
        j in 2usize..=7,
        a in proptest::collection::vec(rational(), 7),
        b in proptest::collection::vec(rational(), 7),
    ) {
        let (a, b) = (&a[..j], &b[..j]);
        let sum: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(
            omega_even(j, a).unwrap() + omega_even(j, b).unwrap(),
            omega_even(j, &sum).unwrap()
        );
        prop_assert_eq!(
            epsilon_odd(j, a).unwrap() + epsilon_odd(j, b).unwrap(),
            epsilon_odd(j, &sum).unwrap()
        );
    }
}

#[test]
fn triangle_recurrence_and_row_sums() {
    let t = triangle_rows(12).unwrap();
    for j in 1..=12 {
        let row = t.row(j);
        for n in 1..=j as i64 {
            assert_eq!(t.get(j, 1 - n), -t.get(j, n));
        }
        let sum: BigInt = row.iter().sum();
        assert_eq!(sum, binomial(2 * j as i64 - 2, j as i64 - 1), "J={j}");
        if j < 12 {
            assert_eq!(next_triangle_row(row), t.row(j + 1));
        }
    }
}

/// Newton iteration in exact arithmetic, rounded to a fine dyadic grid
/// after each step to keep denominators small.
fn newton_root(p: &ptchain_core::poly::Poly<Rational>, start: Rational) -> Rational {
    let dp = p.derivative();
    let grid = BigInt::one() << 200u32;
    let mut x = start;
    for _ in 0..8 {
        x = &x - p.eval(&x) / dp.eval(&x);
        x = Rational::new((&x * Rational::from_integer(grid.clone())).round().to_integer(), grid.clone());
    }
    assert!((p.eval(&x) / dp.eval(&x)).abs() < Rational::new(BigInt::one(), BigInt::from(10).pow(40)));
    x
}

#[test]
fn linearization_error_is_quadratic() {
    for n in 4..=13 {
        let base = LeadingOrderPolynomial::new(n, int(0)).unwrap();
        let lin = base.linearized_roots();
        for sign in [1i64, -1] {
            let mut ratios = Vec::new();
            for e in 2..=6u32 {
                let shift = Rational::new(BigInt::from(sign), BigInt::from(10).pow(e));
                let p = LeadingOrderPolynomial::new(n, shift.clone()).unwrap().poly();
                let worst = lin
                    .iter()
                    .map(|l| {
                        let approx = l.at(&shift);
                        (newton_root(&p, approx.clone()) - approx).abs() / (&shift * &shift)
                    })
                    .max()
                    .unwrap();
                ratios.push(to_f64(&worst));
            }
            let max = ratios.iter().cloned().fold(0.0, f64::max);
            let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max.is_finite() && max <= 1.5 * min, "N={n}: {ratios:?}");
        }
    }
}

#[test]
fn leading_roots_sum_to_base_trace() {
    for n in 4..=13 {
        let p = LeadingOrderPolynomial::new(n, frac(7, 3)).unwrap();
        let roots = p.leading_roots(1e-12).unwrap();
        let sum: f64 = roots.iter().map(|z| z.re).sum();
        let want: i64 = p.base_roots().iter().sum();
        assert!((sum - want as f64).abs() < 1e-8 * want as f64, "N={n}");
    }
}

#[test]
fn regime_labels_are_ordered() {
    use ptchain_core::spectrum::RegimeLabel::*;
    assert!(Unobservable < QuasiHermitianPt);
    assert!(QuasiHermitianPt < PseudoHermitianComplex);
    assert!(PseudoHermitianComplex < Hermitian);
    let p = RescaledPoint::new(6, frac(1, 2), vec![int(0); 3]).unwrap();
    assert_eq!(classify_regime(&p, DEFAULT_TOLERANCE).unwrap(), QuasiHermitianPt);
}
