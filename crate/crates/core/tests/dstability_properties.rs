mod common;

use matstab_core::dstability::{
    falsify, necessary_p0plus, sufficient_suite, suite_verdict, BinOp, GClass, Mode, SuiteItem,
};
use matstab_core::lyapunov::{verify_certificate, Certificate};
use matstab_core::matrix::Matrix;
use matstab_core::special_forms::li_wang;
use matstab_core::spectra::{eigenvalues, region_stable, Region, DEFAULT_TOL};
use matstab_core::Status;
use proptest::prelude::*;
use rand::Rng;

fn member(kind: usize, n: usize, rng: &mut impl Rng) -> Matrix {
    match kind {
        0 => common::m_matrix(n, rng),
        1 => common::sdd_positive(n, rng),
        2 => common::triangular_positive(n, rng),
        _ => common::tridiagonal_p(n, rng),
    }
}

fn statuses(items: &[SuiteItem]) -> Vec<(String, Status)> {
    items.iter().map(|it| (it.criterion.clone(), it.verdict.status())).collect()
}

/// Non-search items must agree exactly; for the certificate search, a
/// certificate found on one side must transfer to the other.
fn suites_agree(
    a: &[SuiteItem],
    b: &[SuiteItem],
    mb: &Matrix,
    transfer: impl Fn(&Certificate) -> Certificate,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(statuses(&a[1..]), statuses(&b[1..]));
    if let Some(c) = a[0].verdict.certificate() {
        let t = transfer(c);
        prop_assert!(verify_certificate(mb, &t).is_ok());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sufficient_never_falsified(seed in any::<u64>(), n in 2usize..=4, kind in 0usize..4) {
        let a = member(kind, n, &mut common::rng(seed));
        let items = sufficient_suite(&a, 2000).unwrap();
        let v = suite_verdict(&items);
        prop_assert!(v.is_proved(), "{:?}", v);
        let f = falsify(&a, &GClass::PositiveDiagonal, BinOp::Multiply, &Region::HalfPlaneRight, 10_000, seed).unwrap();
        prop_assert!(!f.is_refuted(), "{:?}", f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn refutations_exclude_proofs(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = common::rng(seed);
        // positive stable, but typically not D-stable
        let m = common::gaussian(n, &mut rng);
        let alpha = eigenvalues(&m.scale(-1.0)).unwrap().abscissa();
        let a = common::shift(&m, alpha + 0.05);
        let f = falsify(&a, &GClass::PositiveDiagonal, BinOp::Multiply, &Region::HalfPlaneRight, 2000, seed).unwrap();
        let nec = necessary_p0plus(&a.scale(-1.0), Mode::Multiplicative).unwrap();
        let items = sufficient_suite(&a, 500).unwrap();
        if f.is_refuted() || nec.is_refuted() {
            prop_assert!(!suite_verdict(&items).is_proved(), "{:?}", items);
        }
        if nec.is_refuted() {
            prop_assert!(nec.witness().is_some());
        }
    }

    #[test]
    fn duan_patton_products_are_hurwitz(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        // G + Gᵀ ≺ 0 with a random skew part
        let s = common::gaussian(n, &mut rng);
        let skew = (&s - &s.transpose()).scale(0.5);
        let g = &skew - &common::spd(n, &mut rng);
        let l = common::spd(n, &mut rng);
        prop_assert!(region_stable(&(&g * &l), &Region::HalfPlaneLeft, DEFAULT_TOL).is_proved());
    }

    #[test]
    fn li_wang_equivalence(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let a = if rng.random_bool(0.5) { common::hurwitz(n, &mut rng) } else { common::gaussian(n, &mut rng) };
        let direct = region_stable(&a, &Region::HalfPlaneLeft, 1e-8);
        let lw = li_wang(&a).unwrap();
        prop_assume!(!lw.is_unknown());
        prop_assert_eq!(direct.status(), lw.status());
    }

    #[test]
    fn permutation_similarity_preserves_suite(seed in any::<u64>(), n in 2usize..=4, kind in 0usize..4) {
        let mut rng = common::rng(seed);
        let a = member(kind, n, &mut rng);
        let p = common::permutation(n, &mut rng);
        let pa = a.permute(&p);
        let (ia, ib) = (sufficient_suite(&a, 1000).unwrap(), sufficient_suite(&pa, 1000).unwrap());
        suites_agree(&ia, &ib, &pa, |c| Certificate { factor: c.factor.permute(&p), ..c.clone() })?;
        suites_agree(&ib, &ia, &a, |c| {
            let mut inv = vec![0; n];
            p.iter().enumerate().for_each(|(k, &i)| inv[i] = k);
            Certificate { factor: c.factor.permute(&inv), ..c.clone() }
        })?;
    }

    #[test]
    fn diagonal_similarity_transfers_witnesses(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = common::rng(seed);
        let e: Vec<f64> = (0..n).map(|_| common::log_uniform(&mut rng, 0.2, 5.0)).collect();
        let einv: Vec<f64> = e.iter().map(|x| 1.0 / x).collect();
        let a = common::m_matrix(n, &mut rng);
        let b = a.scale_rows(&e).scale_cols(&einv);
        let items = sufficient_suite(&a, 1000).unwrap();
        if let Some(c) = items[0].verdict.certificate() {
            // E⁻¹DE⁻¹ certifies EAE⁻¹
            let d: Vec<f64> = c.factor.diagonal().iter().zip(&einv).map(|(d, x)| d * x * x).collect();
            let moved = Certificate { factor: Matrix::diag(&d), ..c.clone() };
            prop_assert!(verify_certificate(&b, &moved).is_ok());
        }
        let m = common::gaussian(n, &mut rng);
        let alpha = eigenvalues(&m.scale(-1.0)).unwrap().abscissa();
        let u = common::shift(&m, alpha + 0.05);
        let f = falsify(&u, &GClass::PositiveDiagonal, BinOp::Multiply, &Region::HalfPlaneRight, 2000, seed).unwrap();
        if let Some(cx) = f.counterexample() {
            let ub = u.scale_rows(&e).scale_cols(&einv);
            let spec = eigenvalues(&(&cx.g * &ub)).unwrap();
            prop_assert!(spec.iter().any(|z| (z - cx.eigenvalue).norm() < 1e-8 * (1.0 + z.norm())));
        }
    }

    #[test]
    fn positive_scaling_preserves_suite(seed in any::<u64>(), n in 2usize..=4, kind in 0usize..4) {
        let mut rng = common::rng(seed);
        let a = member(kind, n, &mut rng);
        let s = common::log_uniform(&mut rng, 1e-2, 1e2);
        let sa = a.scale(s);
        let (ia, ib) = (sufficient_suite(&a, 1000).unwrap(), sufficient_suite(&sa, 1000).unwrap());
        suites_agree(&ia, &ib, &sa, Certificate::clone)?;
        suites_agree(&ib, &ia, &a, Certificate::clone)?;
    }
}
