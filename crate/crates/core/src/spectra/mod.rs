//! Spectra, stability regions and spectral verdicts.

mod eigen;
mod region;
mod simulate;
mod symmetric;

pub use eigen::{eigenvalues, Spectrum};
pub use region::{Membership, Region, DEFAULT_TOL};
pub use simulate::{decay_horizon, default_step, simulate_decay, Decay};
pub use symmetric::{lambda_max, sym_eigen, SymEigen};

pub use crate::verdict::{Status, Verdict, Witness};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix;

/// Membership of a single point with the absolute band `tol`.
pub fn region_membership(z: Complex64, region: &Region, tol: f64) -> Membership {
    region.membership(z, tol)
}

/// Band used for eigenvalue `z` when the base tolerance is `tol`.
pub fn point_tol(z: Complex64, tol: f64) -> f64 {
    tol * (1.0 + z.norm())
}

/// First eigenvalue not strictly inside the region, if any.
pub fn first_escape(spec: &Spectrum, region: &Region, tol: f64) -> Option<Complex64> {
    spec.iter()
        .find(|&&z| region.membership(z, point_tol(z, tol)) != Membership::Inside)
        .copied()
}

/// Proved when every eigenvalue lies strictly inside the region, Refuted with
/// the first offending eigenvalue otherwise, Unknown if the eigensolver failed.
pub fn region_stable(a: &Matrix, region: &Region, tol: f64) -> Verdict {
    match eigenvalues(a) {
        Ok(spec) => match first_escape(&spec, region, tol) {
            None => Verdict::proved("spectrum_inside_region"),
            Some(z) => Verdict::refuted("eigenvalue_outside_region", Witness::Eigenvalue { value: z }),
        },
        Err(e) => Verdict::unknown("eigensolver_failed").with_detail(e.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    /// Eigenvalues inside the region.
    pub i_plus: usize,
    /// Eigenvalues on the boundary band.
    pub i_zero: usize,
    /// Eigenvalues outside.
    pub i_minus: usize,
}

pub fn inertia(a: &Matrix, region: &Region, tol: f64) -> Result<Inertia> {
    let spec = eigenvalues(a)?;
    let mut out = Inertia { i_plus: 0, i_zero: 0, i_minus: 0 };
    for &z in spec.iter() {
        match region.membership(z, point_tol(z, tol)) {
            Membership::Inside => out.i_plus += 1,
            Membership::Boundary => out.i_zero += 1,
            Membership::Outside => out.i_minus += 1,
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: f64,
    pub radius: f64,
}

/// Row Gershgorin discs and the half-plane verdict they imply.
pub fn gershgorin(a: &Matrix) -> (Vec<Disc>, Verdict) {
    let n = a.n();
    let discs: Vec<Disc> = (0..n)
        .map(|i| Disc {
            center: a[(i, i)],
            radius: (0..n).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum(),
        })
        .collect();
    let verdict = match discs.iter().position(|d| d.center + d.radius >= 0.0) {
        None => Verdict::proved("gershgorin_left_half_plane"),
        Some(i) => Verdict::unknown("gershgorin_inconclusive")
            .with_detail(format!("disc {} reaches Re z = {}", i + 1, discs[i].center + discs[i].radius)),
    };
    (discs, verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_stable_examples() {
        assert!(region_stable(&Matrix::diag(&[-1.0, -2.0]), &Region::HalfPlaneLeft, DEFAULT_TOL).is_proved());
        assert!(region_stable(&Matrix::diag(&[0.5, -0.5]), &Region::unit_disk(), DEFAULT_TOL).is_proved());
        // trace -1, det 2: roots (-1 ± i√7)/2
        let a = Matrix::from_rows(&[[1.0, -4.0], [1.0, -2.0]]).unwrap();
        assert!(region_stable(&a, &Region::HalfPlaneLeft, DEFAULT_TOL).is_proved());
        let v = region_stable(&Matrix::diag(&[1.0, -1.0]), &Region::HalfPlaneLeft, DEFAULT_TOL);
        assert!(v.is_refuted());
        assert_eq!(v.witness(), Some(&Witness::Eigenvalue { value: Complex64::new(1.0, 0.0) }));
    }

    #[test]
    fn inertia_examples() {
        let i = inertia(&Matrix::diag(&[1.0, -1.0]), &Region::HalfPlaneRight, DEFAULT_TOL).unwrap();
        assert_eq!(i, Inertia { i_plus: 1, i_zero: 0, i_minus: 1 });
        let i = inertia(&Matrix::zeros(1), &Region::HalfPlaneLeft, DEFAULT_TOL).unwrap();
        assert_eq!(i, Inertia { i_plus: 0, i_zero: 1, i_minus: 0 });
    }

    #[test]
    fn gershgorin_examples() {
        let a = Matrix::from_rows(&[[-3.0, 1.0], [1.0, -3.0]]).unwrap();
        let (d, v) = gershgorin(&a);
        assert_eq!(d, vec![Disc { center: -3.0, radius: 1.0 }; 2]);
        assert!(v.is_proved());
        let (d, v) = gershgorin(&Matrix::diag(&[-1.0, -2.0]));
        assert!(d.iter().all(|x| x.radius == 0.0));
        assert!(v.is_proved());
        assert!(gershgorin(&Matrix::from_rows(&[[-1.0, 2.0], [0.0, -1.0]]).unwrap()).1.is_unknown());
    }
}
