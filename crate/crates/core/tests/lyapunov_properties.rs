mod common;

use matstab_core::dstability::{sample_rng, GClass};
use matstab_core::lyapunov::{
    diagonal_hyperbolicity_search, diagonal_stability_search, emi_operator, inverse_certificate, lmi_operator,
    solve_lyapunov, transpose_certificate, verify_certificate,
};
use matstab_core::matrix::Matrix;
use matstab_core::spectra::{eigenvalues, sym_eigen, Region};
use proptest::prelude::*;

fn m1(x: f64) -> Matrix {
    Matrix::from_rows(&[[x]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lyapunov_round_trip(seed in any::<u64>(), n in 1usize..=6) {
        let a = common::hurwitz(n, &mut common::rng(seed));
        let w = Matrix::identity(n).scale(-1.0);
        let h = solve_lyapunov(&a, &w).unwrap();
        prop_assert!(sym_eigen(&h).min() > 0.0);
        let r = &(&(&h * &a) + &(&a.transpose() * &h)) - &w;
        prop_assert!(r.norm_inf() <= 1e-8 * (1.0 + h.norm_inf()));
    }

    #[test]
    fn diagonal_certificates_give_both_stabilities(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = common::rng(seed);
        let a = common::m_matrix(n, &mut rng);
        let v = diagonal_stability_search(&a, &Region::HalfPlaneRight, 2000).unwrap();
        if v.is_proved() {
            for i in 0..200 {
                let d = GClass::PositiveDiagonal.sample(n, &mut sample_rng(seed, i));
                prop_assert!(eigenvalues(&(&d * &a)).unwrap().iter().all(|z| z.re > 0.0));
                prop_assert!(eigenvalues(&(&a + &d)).unwrap().iter().all(|z| z.re > 0.0));
            }
        }
    }

    #[test]
    fn certificate_transformation_laws(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = common::rng(seed);
        let a = common::m_matrix(n, &mut rng).scale(-1.0);
        let v = diagonal_stability_search(&a, &Region::HalfPlaneLeft, 2000).unwrap();
        let cert = v.certificate().unwrap();
        let t = transpose_certificate(&a, cert).unwrap();
        prop_assert!(verify_certificate(&a.transpose(), &t).unwrap() > 0.0);
        let inv = inverse_certificate(&a, cert).unwrap();
        prop_assert!(verify_certificate(&a.inverse().unwrap(), &inv).unwrap() > 0.0);
    }

    #[test]
    fn lmi_and_emi_reduce_to_classical_forms(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let (a, h) = (common::gaussian(n, &mut rng), common::spd(n, &mut rng));
        let lyap = &(&h * &a) + &(&a.transpose() * &h);
        let stein = &(&(&a.transpose() * &h) * &a) - &h;
        let lmi = lmi_operator(&m1(0.0), &m1(1.0), &a, &h).unwrap();
        let emi = emi_operator(&m1(-1.0), &m1(0.0), &m1(1.0), &a, &h).unwrap();
        prop_assert!((&lmi - &lyap).max_abs() <= 1e-12 * (1.0 + lyap.max_abs()));
        prop_assert!((&emi - &stein).max_abs() <= 1e-12 * (1.0 + stein.max_abs()));
    }

    #[test]
    fn sign_pattern_hyperbolicity(seed in any::<u64>(), n in 2usize..=5) {
        // signs s_i and a positive diagonal E with A = S·M for a diagonally
        // stable M make S·E a hyperbolic certificate
        let mut rng = common::rng(seed);
        let signs: Vec<f64> = (0..n).map(|i| if (seed >> i) & 1 == 0 { 1.0 } else { -1.0 }).collect();
        let a = common::m_matrix(n, &mut rng).scale_rows(&signs);
        let v = diagonal_hyperbolicity_search(&a, 2000).unwrap();
        if let Some(cert) = v.certificate() {
            let pattern: Vec<i8> = cert.factor.diagonal().iter().map(|&d| d.signum() as i8).collect();
            let class = GClass::SignPatternDiagonal { signs: pattern };
            for i in 0..100 {
                let d = class.sample(n, &mut sample_rng(seed, i));
                let spec = eigenvalues(&(&a + &d)).unwrap();
                prop_assert!(spec.iter().all(|z| z.re.abs() > 1e-9 * (1.0 + z.norm())), "{:?}", spec);
            }
        }
    }
}
