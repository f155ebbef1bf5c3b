use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectra::{sym_eigen, Region};

use super::region_operator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    DiagonalLyapunov,
    SPDLyapunov,
    DiagonalStein,
    DiagonalLMI,
    DiagonalEMI,
    DiagonalHyperbolic,
    CommonDiagonal,
}

impl CertificateKind {
    /// Kind produced by a diagonal search against `region`.
    pub fn for_region(region: &Region) -> Result<Self> {
        match region {
            Region::HalfPlaneLeft | Region::HalfPlaneRight => Ok(Self::DiagonalLyapunov),
            Region::Disk { .. } => Ok(Self::DiagonalStein),
            Region::Hyperbolic => Ok(Self::DiagonalHyperbolic),
            Region::Emi { .. } => Ok(Self::DiagonalEMI),
            r => match r.matrix_form() {
                Some(Region::Lmi { .. }) => Ok(Self::DiagonalLMI),
                _ => Err(Error::InvalidArgument(format!("no diagonal certificate form for {r}"))),
            },
        }
    }

    fn is_diagonal(self) -> bool {
        !matches!(self, Self::SPDLyapunov)
    }
}

/// A Lyapunov-type factor whose region operator is negative definite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub factor: Matrix,
    /// `-λ_max` of the certified operator value.
    pub margin: f64,
    pub region: Region,
    pub iterations: usize,
}

/// `-λ_max` of the region operator at `factor`, after the structural check of
/// `kind`.
pub fn certified_margin(a: &Matrix, kind: CertificateKind, region: &Region, factor: &Matrix) -> Result<f64> {
    if factor.n() != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: factor.n() });
    }
    match kind {
        CertificateKind::SPDLyapunov | CertificateKind::CommonDiagonal => {}
        k => {
            if CertificateKind::for_region(region)? != k {
                return Err(Error::InvalidCertificate(format!("{k:?} does not match region {region}")));
            }
        }
    }
    if kind.is_diagonal() && !factor.is_diagonal() {
        return Err(Error::InvalidCertificate("factor is not diagonal".into()));
    }
    match kind {
        CertificateKind::DiagonalHyperbolic => {
            if factor.diagonal().contains(&0.0) {
                return Err(Error::InvalidCertificate("zero diagonal entry".into()));
            }
        }
        CertificateKind::SPDLyapunov => {
            if !factor.is_symmetric(0.0) {
                return Err(Error::InvalidCertificate("factor is not symmetric".into()));
            }
            if sym_eigen(factor).min() <= 0.0 {
                return Err(Error::InvalidCertificate("factor is not positive definite".into()));
            }
        }
        _ => {
            if let Some(i) = factor.diagonal().iter().position(|&d| !(d > 0.0)) {
                return Err(Error::InvalidCertificate(format!("diagonal entry {} is not positive", i + 1)));
            }
        }
    }
    let w = region_operator(region, a, factor)?;
    Ok(-sym_eigen(&w).max())
}

/// Recomputes the certificate's margin for `a`; rejects structural violations
/// and nonpositive margins.
pub fn verify_certificate(a: &Matrix, cert: &Certificate) -> Result<f64> {
    let margin = certified_margin(a, cert.kind, &cert.region, &cert.factor)?;
    if margin > 0.0 {
        Ok(margin)
    } else {
        Err(Error::InvalidCertificate(format!("operator is not negative definite (margin {margin:e})")))
    }
}

/// Verifies a common certificate against every matrix; returns the smallest
/// margin.
pub fn verify_common(as_: &[Matrix], cert: &Certificate) -> Result<f64> {
    as_.iter()
        .map(|a| verify_certificate(a, cert))
        .try_fold(f64::INFINITY, |m, r| r.map(|x| m.min(x)))
}

/// Rescales a factor to unit trace.
pub(crate) fn unit_trace(h: &Matrix) -> Matrix {
    h.scale(1.0 / h.trace())
}

fn lyapunov_kind(cert: &Certificate) -> Result<()> {
    match (cert.kind, &cert.region) {
        (CertificateKind::DiagonalLyapunov | CertificateKind::SPDLyapunov, Region::HalfPlaneLeft | Region::HalfPlaneRight) => {
            Ok(())
        }
        (k, r) => Err(Error::InvalidArgument(format!("transformation laws need a half-plane Lyapunov certificate, got {k:?} on {r}"))),
    }
}

/// `H` certifies `A` ⇒ `H⁻¹` certifies `Aᵀ`: `H⁻¹(HA + AᵀH)H⁻¹ = AH⁻¹ + H⁻¹Aᵀ`.
pub fn transpose_certificate(a: &Matrix, cert: &Certificate) -> Result<Certificate> {
    lyapunov_kind(cert)?;
    let inv = cert
        .factor
        .inverse()
        .ok_or_else(|| Error::InvalidCertificate("singular factor".into()))?;
    let factor = unit_trace(&if cert.factor.is_diagonal() { Matrix::diag(&inv.diagonal()) } else { inv.symmetric_part() });
    let at = a.transpose();
    let margin = verify_certificate(&at, &Certificate { factor: factor.clone(), margin: 0.0, ..cert.clone() })?;
    Ok(Certificate { factor, margin, ..cert.clone() })
}

/// `H` certifies `A` ⇒ `H` certifies `A⁻¹`, by congruence with `A⁻¹`.
pub fn inverse_certificate(a: &Matrix, cert: &Certificate) -> Result<Certificate> {
    lyapunov_kind(cert)?;
    let ainv = a.inverse().ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
    let margin = verify_certificate(&ainv, cert)?;
    Ok(Certificate { margin, ..cert.clone() })
}
