use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectra::{eigenvalues, first_escape, sym_eigen, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

use super::certificate::{certified_margin, unit_trace, Certificate, CertificateKind};
use super::engine::{Domain, Problem};
use super::scaling::scaled_search;
use super::{definiteness_tol, region_operator, solve_lyapunov};

/// Default iteration budget of the certificate searches.
pub const DEFAULT_BUDGET: usize = 5000;

fn unit(n: usize, k: usize) -> Matrix {
    Matrix::from_fn(n, |i, j| if i == k && j == k { 1.0 } else { 0.0 })
}

fn basis(a: &Matrix, region: &Region) -> Result<Vec<Matrix>> {
    (0..a.n()).map(|k| region_operator(region, a, &unit(a.n(), k))).collect()
}

/// Margin of `diag(d)` when it clears the definiteness band.
fn accept_margin(a: &Matrix, kind: CertificateKind, region: &Region, d: &[f64]) -> Option<f64> {
    let factor = Matrix::diag(d);
    let margin = certified_margin(a, kind, region, &factor).ok()?;
    let w = region_operator(region, a, &factor).ok()?;
    (margin > definiteness_tol(&w)).then_some(margin)
}

/// Searches for a positive diagonal `D` on the unit simplex with the region
/// operator negative definite: `DA + AᵀD ≺ 0` for the left half-plane,
/// `AᵀDA - D ≺ 0` for the unit disk, the LMI/EMI operator otherwise.
///
/// Half of the budget is spent in similarity coordinates `EAE⁻¹`, where
/// widely spread certificates are as easy to reach as balanced ones.
///
/// The search is sound but not complete: failure is Unknown, never Refuted.
pub fn diagonal_stability_search(a: &Matrix, region: &Region, budget: usize) -> Result<Verdict> {
    region.validate()?;
    let kind = CertificateKind::for_region(region)?;
    if kind == CertificateKind::DiagonalHyperbolic {
        return Err(Error::InvalidArgument("use diagonal_hyperbolicity_search for the hyperbolic region".into()));
    }
    let n = a.n();
    let accept = |d: &[f64]| accept_margin(a, kind, region, d);
    // half the budget in similarity coordinates, the rest on the simplex
    let (found, scaled_best, used) = scaled_search(a, region, budget / 2, accept);
    let (found, best, iterations) = match found {
        Some(hit) => (Some(hit), scaled_best, used),
        None => {
            let problem = Problem::new(vec![basis(a, region)?], Domain::Simplex);
            let out = problem.minimize(vec![1.0 / n as f64; n], budget - used, accept);
            (out.found, out.best_value, used + out.iterations)
        }
    };
    Ok(match found {
        Some((d, margin)) => Verdict::proved_with(
            "diagonal_certificate",
            Witness::Certificate(Certificate {
                kind,
                factor: Matrix::diag(&d),
                margin,
                region: region.clone(),
                iterations,
            }),
        ),
        None => exhausted(best, iterations),
    })
}

fn exhausted(best: f64, iterations: usize) -> Verdict {
    Verdict::unknown("certificate_search_exhausted")
        .with_detail(format!("best lambda_max {best:e} after {iterations} iterations"))
}

/// Searches for a diagonal `D` (any signs, `‖D‖∞ = 1`) with `DA + AᵀD ≻ 0`,
/// which makes `A` multiplicatively D-hyperbolic. Starts from the signs of
/// the diagonal of `A`.
pub fn diagonal_hyperbolicity_search(a: &Matrix, budget: usize) -> Result<Verdict> {
    let region = Region::Hyperbolic;
    let kind = CertificateKind::DiagonalHyperbolic;
    let problem = Problem::new(vec![basis(a, &region)?], Domain::Box);
    let start = a.diagonal().iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }).collect();
    let out = problem.minimize(start, budget, |d| accept_margin(a, kind, &region, d));
    Ok(match out.found {
        Some((d, margin)) => Verdict::proved_with(
            "diagonal_hyperbolic_certificate",
            Witness::Certificate(Certificate { kind, factor: Matrix::diag(&d), margin, region, iterations: out.iterations }),
        ),
        None => exhausted(out.best_value, out.iterations),
    })
}

/// Searches for one positive diagonal `D` with `DA_i + A_iᵀD ≺ 0` for every
/// `A_i`. The certificate margin is the smallest over the family.
pub fn common_diagonal_search(as_: &[Matrix], budget: usize) -> Result<Verdict> {
    let first = as_.first().ok_or_else(|| Error::InvalidArgument("empty matrix family".into()))?;
    let n = first.n();
    if let Some(b) = as_.iter().find(|b| b.n() != n) {
        return Err(Error::DimensionMismatch { left: n, right: b.n() });
    }
    let region = Region::HalfPlaneLeft;
    let kind = CertificateKind::CommonDiagonal;
    let blocks = as_.iter().map(|a| basis(a, &region)).collect::<Result<Vec<_>>>()?;
    let problem = Problem::new(blocks, Domain::Simplex);
    let accept = |d: &[f64]| {
        as_.iter()
            .map(|a| accept_margin(a, kind, &region, d))
            .try_fold(f64::INFINITY, |m, x| x.map(|x| m.min(x)))
    };
    let out = problem.minimize(vec![1.0 / n as f64; n], budget, accept);
    Ok(match out.found {
        Some((d, margin)) => Verdict::proved_with(
            "common_diagonal_certificate",
            Witness::Certificate(Certificate { kind, factor: Matrix::diag(&d), margin, region, iterations: out.iterations }),
        ),
        None => exhausted(out.best_value, out.iterations),
    })
}

/// Hurwitz test through `HA + AᵀH = -I`: Proved with a unit-trace SPD
/// certificate, Refuted with an eigenvalue when the solution is indefinite or
/// the operator is singular.
pub fn spd_lyapunov_certificate(a: &Matrix) -> Result<Verdict> {
    let n = a.n();
    let refute = |why: &str| -> Result<Verdict> {
        let spec = eigenvalues(a)?;
        Ok(match first_escape(&spec, &Region::HalfPlaneLeft, DEFAULT_TOL) {
            Some(z) => Verdict::refuted("lyapunov_solution_indefinite", Witness::Eigenvalue { value: z }).with_detail(why.to_string()),
            None => Verdict::unknown("lyapunov_inconclusive").with_detail(why.to_string()),
        })
    };
    let h = match solve_lyapunov(a, &Matrix::identity(n).scale(-1.0)) {
        Ok(h) => h,
        Err(Error::SingularOperator(msg)) => return refute(&msg),
        Err(Error::IllConditioned { residual, bound }) => {
            return Ok(Verdict::unknown("lyapunov_ill_conditioned").with_detail(format!("residual {residual:e} > {bound:e}")))
        }
        Err(e) => return Err(e),
    };
    if sym_eigen(&h).min() <= 0.0 {
        return refute("Lyapunov solution is not positive definite");
    }
    let factor = unit_trace(&h);
    let region = Region::HalfPlaneLeft;
    let margin = certified_margin(a, CertificateKind::SPDLyapunov, &region, &factor)?;
    if margin <= 0.0 {
        return Ok(Verdict::unknown("lyapunov_inconclusive").with_detail(format!("margin {margin:e}")));
    }
    Ok(Verdict::proved_with(
        "spd_lyapunov_certificate",
        Witness::Certificate(Certificate { kind: CertificateKind::SPDLyapunov, factor, margin, region, iterations: 0 }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::verify_certificate;

    #[test]
    fn minus_identity() {
        let a = Matrix::identity(3).scale(-1.0);
        let v = diagonal_stability_search(&a, &Region::HalfPlaneLeft, DEFAULT_BUDGET).unwrap();
        let c = v.certificate().expect("certificate");
        assert!((c.margin - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(c.factor, Matrix::identity(3).scale(1.0 / 3.0));
        assert_eq!(verify_certificate(&a, c).unwrap(), c.margin);
    }

    #[test]
    fn cyclic_secant_example() {
        let a = Matrix::from_rows(&[[-1.0, 0.0, -1.0], [1.0, -1.0, 0.0], [0.0, 1.0, -1.0]]).unwrap();
        let v = diagonal_stability_search(&a, &Region::HalfPlaneLeft, DEFAULT_BUDGET).unwrap();
        assert!(v.is_proved());
    }

    #[test]
    fn schur_diagonal() {
        let a = Matrix::identity(2).scale(0.5);
        let v = diagonal_stability_search(&a, &Region::unit_disk(), DEFAULT_BUDGET).unwrap();
        let c = v.certificate().unwrap();
        assert_eq!(c.kind, CertificateKind::DiagonalStein);
        assert_eq!(c.factor, Matrix::identity(2).scale(0.5));
    }

    #[test]
    fn unstable_is_unknown() {
        let a = Matrix::diag(&[-1.0, 0.5]);
        let v = diagonal_stability_search(&a, &Region::HalfPlaneLeft, 300).unwrap();
        assert!(v.is_unknown());
    }

    #[test]
    fn hyperbolicity() {
        let v = diagonal_hyperbolicity_search(&Matrix::identity(2), 100).unwrap();
        assert_eq!(v.certificate().unwrap().factor, Matrix::identity(2));
        let v = diagonal_hyperbolicity_search(&Matrix::diag(&[1.0, -1.0]), 100).unwrap();
        assert_eq!(v.certificate().unwrap().factor, Matrix::diag(&[1.0, -1.0]));
        let rot = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(diagonal_hyperbolicity_search(&rot, 500).unwrap().is_unknown());
    }

    #[test]
    fn common_family() {
        let a = Matrix::from_rows(&[[-2.0, 1.0], [0.5, -1.0]]).unwrap();
        assert!(common_diagonal_search(&[Matrix::identity(2).scale(-1.0)], 100).unwrap().is_proved());
        let single = diagonal_stability_search(&a, &Region::HalfPlaneLeft, 1000).unwrap();
        let pair = common_diagonal_search(&[a.clone(), a.clone()], 1000).unwrap();
        assert_eq!(single.status(), pair.status());
        assert!(common_diagonal_search(&[], 10).is_err());
    }

    #[test]
    fn spd_certificate() {
        let a = Matrix::from_rows(&[[1.0, -4.0], [1.0, -2.0]]).unwrap();
        let v = spd_lyapunov_certificate(&a).unwrap();
        assert!(verify_certificate(&a, v.certificate().unwrap()).is_ok());
        assert!(spd_lyapunov_certificate(&Matrix::diag(&[1.0, -2.0])).unwrap().is_refuted());
    }
}
