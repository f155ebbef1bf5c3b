//! Dense Kronecker solvers for the Lyapunov and Stein equations, and the
//! generalized double-sum form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::matrix::{Lu, Matrix};
use crate::spectra::{eigenvalues, sym_eigen};

/// Largest dimension handled by the `n²×n²` dense solves.
pub const KRONECKER_CAP: usize = 12;

/// Relative distance below which an eigenvalue pairing is treated as exact.
const PAIRING_TOL: f64 = 1e-10;

/// Solves `HA + AᵀH = W` for symmetric `H`.
///
/// The operator `H ↦ HA + AᵀH` has eigenvalues `λ_i + λ_j`; when one of them
/// vanishes the problem is reported as [`Error::SingularOperator`]. A solve
/// whose residual exceeds `1e-8·(‖A‖‖H‖ + ‖W‖)` gives
/// [`Error::IllConditioned`].
pub fn solve_lyapunov(a: &Matrix, w: &Matrix) -> Result<Matrix> {
    precheck(a, w, "solve_lyapunov")?;
    let spec = eigenvalues(a)?;
    let scale = 1.0 + a.norm_inf();
    if let Some((x, y)) = find_pair(spec.iter().copied().collect(), |x, y| (x + y).norm() <= PAIRING_TOL * scale) {
        return Err(Error::SingularOperator(format!("eigenvalues {x} and {y} sum to zero")));
    }
    let n = a.n();
    // Equation (i, j) picks H[i][q]·A[q][j] and A[p][i]·H[p][j].
    let k = kron_system(n, |i, j, p, q| {
        let mut c = 0.0;
        if p == i {
            c += a[(q, j)];
        }
        if q == j {
            c += a[(p, i)];
        }
        c
    });
    let h = kron_solve(n, k, w)?;
    let residual = (&(&(&h * a) + &(&a.transpose() * &h)) - w).norm_inf();
    let bound = 1e-8 * (2.0 * a.norm_inf() * h.norm_inf() + w.norm_inf());
    finish(h, residual, bound)
}

/// Solves `AᵀHA - H = W` for symmetric `H`. Singular when `λ_iλ_j = 1`.
pub fn solve_stein(a: &Matrix, w: &Matrix) -> Result<Matrix> {
    precheck(a, w, "solve_stein")?;
    let spec = eigenvalues(a)?;
    if let Some((x, y)) = find_pair(spec.iter().copied().collect(), |x, y| (x * y - 1.0).norm() <= PAIRING_TOL) {
        return Err(Error::SingularOperator(format!("eigenvalues {x} and {y} have product one")));
    }
    let n = a.n();
    let k = kron_system(n, |i, j, p, q| a[(p, i)] * a[(q, j)] - if p == i && q == j { 1.0 } else { 0.0 });
    let h = kron_solve(n, k, w)?;
    let residual = (&(&(&a.transpose() * &h) * a) - &(&h + w)).norm_inf();
    let an = a.norm_inf();
    let bound = 1e-8 * ((an * an + 1.0) * h.norm_inf() + w.norm_inf());
    finish(h, residual, bound)
}

fn precheck(a: &Matrix, w: &Matrix, op: &'static str) -> Result<()> {
    check_cap(op, a.n(), KRONECKER_CAP)?;
    if a.n() != w.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: w.n() });
    }
    if !w.is_symmetric(1e-12 * (1.0 + w.max_abs())) {
        return Err(Error::InvalidArgument("right-hand side must be symmetric".into()));
    }
    Ok(())
}

fn find_pair(ev: Vec<Complex64>, hit: impl Fn(Complex64, Complex64) -> bool) -> Option<(Complex64, Complex64)> {
    for (i, &x) in ev.iter().enumerate() {
        for &y in &ev[i..] {
            if hit(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Row-major `n²×n²` system; `coef(i, j, p, q)` is the weight of `H[p][q]` in
/// equation `(i, j)`.
fn kron_system(n: usize, coef: impl Fn(usize, usize, usize, usize) -> f64) -> Vec<f64> {
    let m = n * n;
    let mut k = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let row = (i * n + j) * m;
            for p in 0..n {
                for q in 0..n {
                    k[row + p * n + q] = coef(i, j, p, q);
                }
            }
        }
    }
    k
}

fn kron_solve(n: usize, k: Vec<f64>, w: &Matrix) -> Result<Matrix> {
    let m = n * n;
    let lu = Lu::from_data(m, k.clone());
    let mut x = lu
        .solve(w.as_slice())
        .ok_or(Error::IllConditioned { residual: f64::INFINITY, bound: 0.0 })?;
    // One step of iterative refinement.
    let r: Vec<f64> = (0..m)
        .map(|i| w.as_slice()[i] - (0..m).map(|j| k[i * m + j] * x[j]).sum::<f64>())
        .collect();
    if let Some(dx) = lu.solve(&r) {
        for (xi, di) in x.iter_mut().zip(dx) {
            *xi += di;
        }
    }
    let h = Matrix::new(n, x).map_err(|_| Error::IllConditioned { residual: f64::INFINITY, bound: 0.0 })?;
    Ok(h.symmetric_part())
}

fn finish(h: Matrix, residual: f64, bound: f64) -> Result<Matrix> {
    if residual.is_finite() && residual <= bound {
        Ok(h)
    } else {
        Err(Error::IllConditioned { residual, bound })
    }
}

/// Symmetric coefficient array of `Σ c_ij (Aᵀ)^i H A^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct GenLyapCoeffs {
    c: Matrix,
}

impl GenLyapCoeffs {
    pub fn new(c: Matrix) -> Result<Self> {
        if !c.is_symmetric(0.0) {
            return Err(Error::InvalidArgument("coefficient array must be symmetric".into()));
        }
        Ok(Self { c })
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.c
    }

    /// `f(λ) = Σ c_ij λ̄^i λ^j`, real because `c` is symmetric.
    pub fn scalar(&self, z: Complex64) -> f64 {
        let k = self.c.n();
        let pw: Vec<Complex64> = std::iter::successors(Some(Complex64::new(1.0, 0.0)), |p| Some(p * z)).take(k).collect();
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..k {
            for j in 0..k {
                s += pw[i].conj() * pw[j] * self.c[(i, j)];
            }
        }
        s.re
    }
}

impl TryFrom<Matrix> for GenLyapCoeffs {
    type Error = Error;
    fn try_from(c: Matrix) -> Result<Self> {
        Self::new(c)
    }
}

impl From<GenLyapCoeffs> for Matrix {
    fn from(g: GenLyapCoeffs) -> Self {
        g.c
    }
}

/// Evaluates `Σ c_ij (Aᵀ)^i H A^j` with cached powers of `A`.
pub fn apply_gen_lyap(c: &GenLyapCoeffs, a: &Matrix, h: &Matrix) -> Result<Matrix> {
    if a.n() != h.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: h.n() });
    }
    let k = c.c.n();
    let n = a.n();
    let mut powers = vec![Matrix::identity(n)];
    for i in 1..k {
        powers.push(&powers[i - 1] * a);
    }
    let right: Vec<Matrix> = powers.iter().map(|p| h * p).collect();
    let mut w = Matrix::zeros(n);
    for i in 0..k {
        let left = powers[i].transpose();
        for j in 0..k {
            let cij = c.c[(i, j)];
            if cij != 0.0 {
                w = &w + &(&left * &right[j]).scale(cij);
            }
        }
    }
    Ok(w)
}

/// `λ_max(W) < -tol`, with margin `-λ_max` of the symmetric part.
pub fn is_negative_definite(w: &Matrix, tol: f64) -> (bool, f64) {
    let margin = -sym_eigen(w).max();
    (margin > tol, margin)
}

/// Definiteness band used by the certificate searches.
pub fn definiteness_tol(w: &Matrix) -> f64 {
    1e-9 * (1.0 + w.norm_inf())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix, b: &Matrix, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn lyapunov_examples() {
        let i = Matrix::identity(3);
        let h = solve_lyapunov(&i.scale(-1.0), &i.scale(-2.0)).unwrap();
        assert!(close(&h, &i, 1e-12));
        let h = solve_lyapunov(&i.scale(-1.0), &i.scale(-1.0)).unwrap();
        assert!(close(&h, &i.scale(0.5), 1e-12));
    }

    #[test]
    fn lyapunov_singular_pairing() {
        let rot = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        assert!(matches!(solve_lyapunov(&rot, &Matrix::identity(2)), Err(Error::SingularOperator(_))));
        let a = Matrix::diag(&[1.0, -1.0]);
        assert!(matches!(solve_lyapunov(&a, &Matrix::identity(2)), Err(Error::SingularOperator(_))));
    }

    #[test]
    fn stein_examples() {
        let i = Matrix::identity(2);
        let h = solve_stein(&Matrix::zeros(2), &i.scale(-1.0)).unwrap();
        assert!(close(&h, &i, 1e-12));
        let h = solve_stein(&i.scale(0.5), &i.scale(-0.75)).unwrap();
        assert!(close(&h, &i, 1e-12));
        assert!(matches!(solve_stein(&i, &i), Err(Error::SingularOperator(_))));
    }

    #[test]
    fn nonsymmetric_rhs_and_cap() {
        let w = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(solve_lyapunov(&Matrix::identity(2).scale(-1.0), &w).is_err());
        let big = Matrix::identity(13);
        assert!(matches!(solve_lyapunov(&big, &big), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn gen_lyap_reductions() {
        let a = Matrix::from_rows(&[[-1.0, 2.0], [0.5, -3.0]]).unwrap();
        let h = Matrix::from_rows(&[[2.0, 0.3], [0.3, 1.0]]).unwrap();
        let c00 = GenLyapCoeffs::new(Matrix::from_rows(&[[1.0]]).unwrap()).unwrap();
        assert!(close(&apply_gen_lyap(&c00, &a, &h).unwrap(), &h, 0.0));
        let lyap = GenLyapCoeffs::new(Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()).unwrap();
        let direct = &(&h * &a) + &(&a.transpose() * &h);
        assert!(close(&apply_gen_lyap(&lyap, &a, &h).unwrap(), &direct, 1e-12));
        assert!(GenLyapCoeffs::new(Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap()).is_err());
    }

    #[test]
    fn definiteness() {
        assert_eq!(is_negative_definite(&Matrix::identity(2).scale(-1.0), 0.0), (true, 1.0));
        assert!(!is_negative_definite(&Matrix::zeros(2), 0.0).0);
        assert!(!is_negative_definite(&Matrix::identity(2), 0.0).0);
    }
}
