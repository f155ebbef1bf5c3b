//! Stability regions in the complex plane.
//!
//! Every region is described by a signed function `f` that is negative in the
//! interior, positive outside and zero on the boundary. Membership uses a
//! deadband `|f| <= tol` for the boundary.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::symmetric::jacobi;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default boundary band; the effective band for a point `z` is
/// `DEFAULT_TOL·(1 + |z|)`.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    /// `Re z < 0`.
    HalfPlaneLeft,
    /// `Re z > 0`.
    HalfPlaneRight,
    /// `|z - center| < radius` with a real center.
    Disk { center: f64, radius: f64 },
    /// `|arg z| < theta`.
    SectorRight { theta: f64 },
    /// Complement of the closed mirrored sector `|arg(-z)| <= theta`.
    ComplementSector { theta: f64 },
    RealLine,
    PositiveRealAxis,
    NegativeRealAxis,
    /// Complex plane minus the imaginary axis.
    Hyperbolic,
    /// Complex plane minus the origin.
    PunctureOrigin,
    /// `L + M z + Mᵀ z̄ ≺ 0`.
    Lmi { l: Matrix, m: Matrix },
    /// `R11 + R12 z + R12ᵀ z̄ + R22 |z|² ≺ 0`.
    Emi { r11: Matrix, r12: Matrix, r22: Matrix },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl Region {
    pub fn unit_disk() -> Self {
        Region::Disk { center: 0.0, radius: 1.0 }
    }

    /// Checks parameter ranges and symmetry requirements.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            Region::Disk { center, radius } => {
                if !center.is_finite() || !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("disk needs a finite center and positive radius, got ({center}, {radius})"));
                }
            }
            Region::SectorRight { theta } | Region::ComplementSector { theta } => {
                if !(*theta > 0.0 && *theta < FRAC_PI_2) {
                    return bad(format!("sector angle {theta} outside (0, pi/2)"));
                }
            }
            Region::Lmi { l, m } => {
                if l.n() != m.n() {
                    return Err(Error::DimensionMismatch { left: l.n(), right: m.n() });
                }
                if !l.is_symmetric(0.0) {
                    return bad("LMI matrix L must be symmetric".into());
                }
            }
            Region::Emi { r11, r12, r22 } => {
                if r11.n() != r12.n() || r12.n() != r22.n() {
                    return Err(Error::DimensionMismatch { left: r11.n(), right: r22.n() });
                }
                if !r11.is_symmetric(0.0) || !r22.is_symmetric(0.0) {
                    return bad("EMI matrices R11 and R22 must be symmetric".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Signed defining function, negative inside. Line regions return the
    /// distance to the line (never negative); they are handled separately in
    /// [`Region::membership`].
    pub fn signed(&self, z: Complex64) -> f64 {
        match self {
            Region::HalfPlaneLeft => z.re,
            Region::HalfPlaneRight => -z.re,
            Region::Disk { center, radius } => (z - center).norm() - radius,
            Region::SectorRight { theta } => z.im.abs() * theta.cos() - z.re * theta.sin(),
            Region::ComplementSector { theta } => -(z.im.abs() * theta.cos() + z.re * theta.sin()),
            Region::RealLine | Region::PositiveRealAxis | Region::NegativeRealAxis => z.im.abs(),
            Region::Hyperbolic => -z.re.abs(),
            Region::PunctureOrigin => -z.norm(),
            Region::Lmi { l, m } => hermitian_max(&lmi_value(l, m, z)),
            Region::Emi { r11, r12, r22 } => hermitian_max(&emi_value(r11, r12, r22, z)),
        }
    }

    pub fn membership(&self, z: Complex64, tol: f64) -> Membership {
        let off_line = z.im.abs() > tol;
        match self {
            Region::RealLine => {
                if off_line {
                    Membership::Outside
                } else {
                    Membership::Inside
                }
            }
            Region::PositiveRealAxis | Region::NegativeRealAxis => {
                let re = if matches!(self, Region::PositiveRealAxis) { z.re } else { -z.re };
                if off_line || re < -tol {
                    Membership::Outside
                } else if re <= tol {
                    Membership::Boundary
                } else {
                    Membership::Inside
                }
            }
            _ => {
                let f = self.signed(z);
                if f < -tol {
                    Membership::Inside
                } else if f > tol {
                    Membership::Outside
                } else {
                    Membership::Boundary
                }
            }
        }
    }

    /// Whether the region is a bounded subset of the plane.
    pub fn is_bounded(&self) -> bool {
        match self {
            Region::Disk { .. } => true,
            Region::Emi { r22, .. } => jacobi(&mut r22.symmetric_part().as_slice().to_vec(), r22.n()).min() > 0.0,
            _ => false,
        }
    }

    /// Regions invariant under multiplication by positive scalars.
    pub fn is_cone(&self) -> bool {
        matches!(
            self,
            Region::HalfPlaneLeft
                | Region::HalfPlaneRight
                | Region::SectorRight { .. }
                | Region::ComplementSector { .. }
                | Region::RealLine
                | Region::PositiveRealAxis
                | Region::NegativeRealAxis
                | Region::Hyperbolic
                | Region::PunctureOrigin
        )
    }

    /// The same region written as an LMI or EMI region, when one exists.
    pub fn matrix_form(&self) -> Option<Region> {
        let m1 = |x: f64| Matrix::from_rows(&[[x]]).unwrap();
        match self {
            Region::HalfPlaneLeft => Some(Region::Lmi { l: m1(0.0), m: m1(1.0) }),
            Region::HalfPlaneRight => Some(Region::Lmi { l: m1(0.0), m: m1(-1.0) }),
            Region::Disk { center, radius } => Some(Region::Emi {
                r11: m1(center * center - radius * radius),
                r12: m1(-center),
                r22: m1(1.0),
            }),
            Region::SectorRight { theta } => {
                let (s, c) = theta.sin_cos();
                Some(Region::Lmi {
                    l: Matrix::zeros(2),
                    m: Matrix::from_rows(&[[-s, c], [-c, -s]]).unwrap(),
                })
            }
            Region::Lmi { .. } | Region::Emi { .. } => Some(self.clone()),
            _ => None,
        }
    }

    /// Disk as a 2×2 LMI: `[[-r, z - c], [z̄ - c, -r]] ≺ 0`.
    pub fn disk_as_lmi(center: f64, radius: f64) -> Region {
        Region::Lmi {
            l: Matrix::from_rows(&[[-radius, -center], [-center, -radius]]).unwrap(),
            m: Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap(),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::HalfPlaneLeft => write!(f, "open left half-plane"),
            Region::HalfPlaneRight => write!(f, "open right half-plane"),
            Region::Disk { center, radius } => write!(f, "disk(center {center}, radius {radius})"),
            Region::SectorRight { theta } => write!(f, "sector |arg z| < {theta}"),
            Region::ComplementSector { theta } => write!(f, "complement of sector |arg(-z)| <= {theta}"),
            Region::RealLine => write!(f, "real line"),
            Region::PositiveRealAxis => write!(f, "positive real axis"),
            Region::NegativeRealAxis => write!(f, "negative real axis"),
            Region::Hyperbolic => write!(f, "plane minus imaginary axis"),
            Region::PunctureOrigin => write!(f, "plane minus origin"),
            Region::Lmi { l, .. } => write!(f, "LMI region of order {}", l.n()),
            Region::Emi { r11, .. } => write!(f, "EMI region of order {}", r11.n()),
        }
    }
}

/// Hermitian matrix stored as real and imaginary parts.
pub(crate) struct Hermitian {
    pub re: Matrix,
    pub im: Matrix,
}

fn lmi_value(l: &Matrix, m: &Matrix, z: Complex64) -> Hermitian {
    let mt = m.transpose();
    Hermitian {
        re: Matrix::from_fn(l.n(), |i, j| l[(i, j)] + (m[(i, j)] + mt[(i, j)]) * z.re),
        im: Matrix::from_fn(l.n(), |i, j| (m[(i, j)] - mt[(i, j)]) * z.im),
    }
}

fn emi_value(r11: &Matrix, r12: &Matrix, r22: &Matrix, z: Complex64) -> Hermitian {
    let mut h = lmi_value(r11, r12, z);
    let mod2 = z.norm_sqr();
    h.re = Matrix::from_fn(r11.n(), |i, j| h.re[(i, j)] + r22[(i, j)] * mod2);
    h
}

/// Largest eigenvalue of `P + iQ` via the real embedding `[[P, -Q], [Q, P]]`.
fn hermitian_max(h: &Hermitian) -> f64 {
    let m = h.re.n();
    let big = Matrix::from_fn(2 * m, |i, j| {
        let (bi, bj) = (i / m, j / m);
        let (r, c) = (i % m, j % m);
        match (bi, bj) {
            (0, 0) | (1, 1) => h.re[(r, c)],
            (0, 1) => -h.im[(r, c)],
            _ => h.im[(r, c)],
        }
    });
    let mut data = big.symmetric_part().as_slice().to_vec();
    jacobi(&mut data, 2 * m).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basic_membership() {
        assert_eq!(Region::HalfPlaneLeft.membership(c(-1.0, 0.0), 1e-8), Membership::Inside);
        assert_ne!(Region::Hyperbolic.membership(c(0.0, 0.5), 1e-8), Membership::Inside);
        assert_eq!(Region::unit_disk().membership(c(0.0, 1.0), 1e-8), Membership::Boundary);
        assert_eq!(Region::PositiveRealAxis.membership(c(2.0, 0.0), 1e-8), Membership::Inside);
        assert_eq!(Region::PositiveRealAxis.membership(c(0.0, 0.0), 1e-8), Membership::Boundary);
        assert_eq!(Region::NegativeRealAxis.membership(c(2.0, 0.0), 1e-8), Membership::Outside);
        assert_eq!(Region::RealLine.membership(c(2.0, 0.1), 1e-8), Membership::Outside);
        assert_eq!(Region::PunctureOrigin.membership(c(0.0, 0.0), 1e-8), Membership::Boundary);
    }

    #[test]
    fn sectors() {
        let s = Region::SectorRight { theta: 0.5 };
        assert_eq!(s.membership(c(1.0, 0.2), 1e-8), Membership::Inside);
        assert_eq!(s.membership(c(1.0, 1.0), 1e-8), Membership::Outside);
        assert_eq!(s.membership(c(-1.0, 0.0), 1e-8), Membership::Outside);
        let cs = Region::ComplementSector { theta: 0.5 };
        assert_eq!(cs.membership(c(-1.0, 0.0), 1e-8), Membership::Outside);
        assert_eq!(cs.membership(c(-1.0, 1.0), 1e-8), Membership::Inside);
        assert_eq!(cs.membership(c(1.0, 0.0), 1e-8), Membership::Inside);
    }

    #[test]
    fn matrix_forms_agree_on_grid() {
        let regions = [
            Region::HalfPlaneLeft,
            Region::HalfPlaneRight,
            Region::Disk { center: -0.5, radius: 2.0 },
            Region::SectorRight { theta: 0.7 },
        ];
        for r in &regions {
            let form = r.matrix_form().unwrap();
            for a in -10..=10 {
                for b in -10..=10 {
                    let z = c(a as f64 * 0.37 + 0.011, b as f64 * 0.29 + 0.007);
                    let direct = r.signed(z) < 0.0;
                    let lmi = form.signed(z) < 0.0;
                    assert_eq!(direct, lmi, "{r} at {z}");
                }
            }
        }
        let d = Region::disk_as_lmi(1.0, 0.5);
        assert!(d.signed(c(1.2, 0.1)) < 0.0);
        assert!(d.signed(c(1.2, 0.6)) > 0.0);
    }

    #[test]
    fn validation() {
        assert!(Region::Disk { center: 0.0, radius: 0.0 }.validate().is_err());
        assert!(Region::SectorRight { theta: 2.0 }.validate().is_err());
        let l = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(Region::Lmi { l: l.clone(), m: l }.validate().is_err());
        assert!(Region::unit_disk().is_bounded());
        assert!(!Region::HalfPlaneLeft.is_bounded());
    }
}
