mod common;

use matstab_core::matrix::Matrix;
use matstab_core::polynomials::{char_poly, kharitonov_stable, routh_hurwitz, IntervalPoly, Poly};
use matstab_core::spectra::eigenvalues;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

/// Coefficients of `Π (z - λ_i)`, descending.
fn expand(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = c.clone();
        next.push(Complex64::new(0.0, 0.0));
        for (k, &x) in c.iter().enumerate() {
            next[k + 1] -= r * x;
        }
        c = next;
    }
    c
}

fn root_abscissa(p: &Poly) -> f64 {
    eigenvalues(&p.companion()).unwrap().abscissa()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn char_poly_matches_eigenvalues(seed in any::<u64>(), n in 1usize..=6) {
        let a = common::gaussian(n, &mut common::rng(seed));
        let lam: Vec<_> = eigenvalues(&a).unwrap().iter().copied().collect();
        let want = expand(&lam);
        let got = char_poly(&a);
        let scale = want.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for (x, y) in got.coeffs().iter().zip(&want) {
            prop_assert!((x - y).norm() <= 1e-6 * scale, "{x} vs {y}");
        }
    }

    #[test]
    fn routh_matches_roots(seed in any::<u64>(), degree in 1usize..=8) {
        let mut rng = common::rng(seed);
        // half the draws start from stable roots so both outcomes occur
        let p = if rng.random_bool(0.5) {
            char_poly(&common::hurwitz(degree, &mut rng))
        } else {
            let mut c: Vec<f64> = (0..=degree).map(|_| rng.random_range(0.1..3.0)).collect();
            c[0] = 1.0;
            Poly::new(c).unwrap()
        };
        let alpha = root_abscissa(&p);
        prop_assume!(alpha.abs() > 1e-6);
        let v = routh_hurwitz(&p).unwrap();
        prop_assume!(!v.is_unknown());
        prop_assert_eq!(v.is_proved(), alpha < 0.0, "abscissa {}", alpha);
    }

    #[test]
    fn kharitonov_boxes_are_sound(seed in any::<u64>(), degree in 1usize..=5) {
        let mut rng = common::rng(seed);
        let centre = char_poly(&common::hurwitz(degree, &mut rng));
        let width = common::log_uniform(&mut rng, 1e-3, 0.5);
        let lower: Vec<f64> = centre.coeffs().iter().map(|c| c - width * c.abs().max(0.1)).collect();
        let mut upper: Vec<f64> = centre.coeffs().iter().map(|c| c + width * c.abs().max(0.1)).collect();
        upper[0] = upper[0].max(lower[0] + 1e-9);
        let f = IntervalPoly::new(lower, upper).unwrap();
        if kharitonov_stable(&f).unwrap().is_proved() {
            for _ in 0..200 {
                let c: Vec<f64> = f.lower().iter().zip(f.upper()).map(|(l, u)| rng.random_range(*l..=*u)).collect();
                let p = Poly::new(c).unwrap();
                prop_assert!(root_abscissa(&p) < 0.0, "{:?}", p);
            }
        }
    }

    #[test]
    fn p0_coefficients_grow_with_scaling(seed in any::<u64>(), n in 2usize..=5, i in 0usize..5) {
        let mut rng = common::rng(seed);
        let a = if rng.random_bool(0.5) { common::m_matrix(n, &mut rng) } else { common::tridiagonal_p(n, &mut rng) };
        let i = i % n;
        let mut d: Vec<f64> = (0..n).map(|_| common::log_uniform(&mut rng, 0.1, 10.0)).collect();
        let before = char_poly(&a.scale_rows(&d).scale(-1.0));
        d[i] *= rng.random_range(1.0..4.0);
        let after = char_poly(&a.scale_rows(&d).scale(-1.0));
        for (x, y) in before.coeffs().iter().zip(after.coeffs()) {
            prop_assert!(*y >= x - 1e-9 * (1.0 + x.abs()), "{x} -> {y}");
        }
    }
}

#[test]
fn degenerate_box_is_the_polynomial() {
    let p = char_poly(&Matrix::diag(&[-1.0, -2.0, -3.0]));
    assert!(kharitonov_stable(&IntervalPoly::degenerate(&p)).unwrap().is_proved());
}
