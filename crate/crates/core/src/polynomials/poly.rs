use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Real polynomial, coefficients in descending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("polynomial needs at least one coefficient".into()));
        }
        if coeffs[0] == 0.0 {
            return Err(Error::InvalidArgument("leading coefficient is zero".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Companion matrix whose characteristic polynomial is the monic version
    /// of `self`.
    pub fn companion(&self) -> Matrix {
        let n = self.degree();
        let lead = self.coeffs[0];
        Matrix::from_fn(n.max(1), |i, j| {
            if n == 0 {
                0.0
            } else if i == 0 {
                -self.coeffs[j + 1] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        })
    }
}

impl TryFrom<Vec<f64>> for Poly {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Poly::new(v)
    }
}

impl From<Poly> for Vec<f64> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

/// `det(λI - A)` by the Faddeev–LeVerrier trace recursion.
pub fn char_poly(a: &Matrix) -> Poly {
    let n = a.n();
    let mut coeffs = vec![1.0];
    let mut m = Matrix::identity(n);
    let mut c = 1.0;
    for k in 1..=n {
        if k > 1 {
            m = &(a * &m) + &Matrix::identity(n).scale(c);
        }
        c = -(a * &m).trace() / k as f64;
        coeffs.push(c);
    }
    Poly { coeffs }
}

/// Interval polynomial `Σ [lower_i, upper_i] z^{n-i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalPoly {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl IntervalPoly {
    /// Builds the box. A negative leading interval is normalized by negating
    /// every coefficient, which leaves the root sets unchanged.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::InvalidArgument("coefficient bound lists must be nonempty and equal length".into()));
        }
        if lower.iter().chain(&upper).any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient bound".into()));
        }
        if let Some(i) = (0..lower.len()).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvalidArgument(format!("lower bound exceeds upper bound at index {i}")));
        }
        if lower[0] <= 0.0 && upper[0] >= 0.0 {
            return Err(Error::InvalidArgument("leading coefficient interval contains zero".into()));
        }
        if upper[0] < 0.0 {
            let lo = upper.iter().map(|x| -x).collect();
            let hi = lower.iter().map(|x| -x).collect();
            return Ok(Self { lower: lo, upper: hi });
        }
        Ok(Self { lower, upper })
    }

    pub fn degenerate(p: &Poly) -> Self {
        Self::new(p.coeffs.clone(), p.coeffs.clone()).expect("nonzero leading coefficient")
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn degree(&self) -> usize {
        self.lower.len() - 1
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.coeffs.len() == self.lower.len()
            && p.coeffs.iter().zip(self.lower.iter().zip(&self.upper)).all(|(c, (l, u))| l <= c && c <= u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&Matrix::identity(2)).coeffs(), &[1.0, -2.0, 1.0]);
        assert_eq!(char_poly(&Matrix::diag(&[1.0, 2.0])).coeffs(), &[1.0, -3.0, 2.0]);
        let a = Matrix::from_rows(&[[0.0, 1.0], [-2.0, -3.0]]).unwrap();
        assert_eq!(char_poly(&a).coeffs(), &[1.0, 3.0, 2.0]);
    }

    #[test]
    fn companion_round_trip() {
        let p = Poly::new(vec![2.0, -2.0, -26.0, 76.0, -48.0]).unwrap();
        let c = char_poly(&p.companion());
        for (x, y) in c.coeffs().iter().zip(p.coeffs()) {
            assert!((x - y / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interval_validation() {
        assert!(IntervalPoly::new(vec![-1.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(IntervalPoly::new(vec![1.0, 2.0], vec![1.0, 1.0]).is_err());
        let neg = IntervalPoly::new(vec![-2.0, -3.0], vec![-1.0, 1.0]).unwrap();
        assert_eq!(neg.lower(), &[1.0, -1.0]);
        assert_eq!(neg.upper(), &[2.0, 3.0]);
        assert!(Poly::new(vec![0.0, 1.0]).is_err());
    }
}
