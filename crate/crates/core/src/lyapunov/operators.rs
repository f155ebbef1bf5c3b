use crate::error::{Error, Result};
use crate::matrix::{kronecker, Matrix};
use crate::spectra::Region;

/// `L⊗H + M⊗(HA) + Mᵀ⊗(AᵀH)`.
pub fn lmi_operator(l: &Matrix, m: &Matrix, a: &Matrix, h: &Matrix) -> Result<Matrix> {
    if l.n() != m.n() {
        return Err(Error::DimensionMismatch { left: l.n(), right: m.n() });
    }
    if a.n() != h.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: h.n() });
    }
    let ha = h * a;
    let aht = ha.transpose();
    Ok(&(&kronecker(l, h) + &kronecker(m, &ha)) + &kronecker(&m.transpose(), &aht))
}

/// The LMI operator plus `R22⊗(AᵀHA)`.
pub fn emi_operator(r11: &Matrix, r12: &Matrix, r22: &Matrix, a: &Matrix, h: &Matrix) -> Result<Matrix> {
    if r22.n() != r11.n() {
        return Err(Error::DimensionMismatch { left: r11.n(), right: r22.n() });
    }
    let base = lmi_operator(r11, r12, a, h)?;
    let atha = &(&a.transpose() * h) * a;
    Ok(&base + &kronecker(r22, &atha))
}

/// Operator of the region's matrix form applied to `(A, H)`. The hyperbolic
/// region uses `-(HA + AᵀH)`, negative definite exactly when `HA + AᵀH ≻ 0`.
pub fn region_operator(region: &Region, a: &Matrix, h: &Matrix) -> Result<Matrix> {
    if let Region::Hyperbolic = region {
        if a.n() != h.n() {
            return Err(Error::DimensionMismatch { left: a.n(), right: h.n() });
        }
        return Ok((&(h * a) + &(&a.transpose() * h)).scale(-1.0));
    }
    match region.matrix_form() {
        Some(Region::Lmi { l, m }) => lmi_operator(&l, &m, a, h),
        Some(Region::Emi { r11, r12, r22 }) => emi_operator(&r11, &r12, &r22, a, h),
        _ => Err(Error::InvalidArgument(format!("{region} has no LMI or EMI form"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1(x: f64) -> Matrix {
        Matrix::from_rows(&[[x]]).unwrap()
    }

    #[test]
    fn half_plane_reduction() {
        let a = Matrix::identity(2).scale(-1.0);
        let w = lmi_operator(&m1(0.0), &m1(1.0), &a, &Matrix::identity(2)).unwrap();
        assert_eq!(w, Matrix::identity(2).scale(-2.0));
    }

    #[test]
    fn unit_disk_is_stein() {
        let a = Matrix::from_rows(&[[0.2, -0.4], [0.3, 0.1]]).unwrap();
        let h = Matrix::from_rows(&[[1.0, 0.2], [0.2, 2.0]]).unwrap();
        let w = emi_operator(&m1(-1.0), &m1(0.0), &m1(1.0), &a, &h).unwrap();
        let stein = &(&(&a.transpose() * &h) * &a) - &h;
        assert!((&w - &stein).max_abs() < 1e-15);
        let lmi = lmi_operator(&m1(-1.0), &m1(0.3), &a, &h).unwrap();
        assert_eq!(emi_operator(&m1(-1.0), &m1(0.3), &m1(0.0), &a, &h).unwrap(), lmi);
    }

    #[test]
    fn region_forms() {
        let a = Matrix::diag(&[-1.0, 0.5]);
        let h = Matrix::identity(2);
        let w = region_operator(&Region::Hyperbolic, &a, &h).unwrap();
        assert_eq!(w, Matrix::diag(&[2.0, -1.0]));
        assert!(region_operator(&Region::RealLine, &a, &h).is_err());
    }
}
