//! Dense real square matrices and the constructions built on them.
//!
//! Storage is row-major. Constructors reject non-finite entries; arithmetic
//! helpers panic on dimension mismatch, the fallible public products in
//! [`products`] return errors instead.

mod classify;
mod compound;
mod lu;
mod minors;
mod products;

pub use classify::{classify, square_dominant_rows, ClassReport, Flag, FlagWitness};
pub use compound::{additive_compound_2, combinations, compound};
pub use lu::Lu;
pub use minors::{minor, principal_minors, tau_minor, IndexSet, MINOR_ENUMERATION_CAP};
pub use products::{
    block_hadamard, comparison_matrix, hadamard, kronecker, sign_pattern, w_map,
};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds an `n×n` matrix from row-major data.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::Shape { expected: n * n, got: data.len() });
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: k / n, col: k % n });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Ragged { row: i, len: r.len(), expected: n });
            }
            data.extend_from_slice(r);
        }
        Self::new(n, data)
    }

    /// Builds a matrix entry by entry. The closure must return finite values.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n > 0, "dimension must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        debug_assert!(data.iter().all(|x| x.is_finite()));
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    pub fn diag(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetric_part(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)] == 0.0))
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length mismatch");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Principal submatrix on `idx` (0-based, any order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    /// Submatrix with the given rows and columns (equal counts).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "select needs a square selection");
        Self::from_fn(rows.len(), |i, j| self[(rows[i], cols[j])])
    }

    pub fn det(&self) -> f64 {
        Lu::new(self).det()
    }

    pub fn inverse(&self) -> Option<Self> {
        Lu::new(self).inverse()
    }

    /// `DA` for diagonal `D` given by its entries.
    pub fn scale_rows(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.n);
        Self::from_fn(self.n, |i, j| d[i] * self[(i, j)])
    }

    /// `AD` for diagonal `D` given by its entries.
    pub fn scale_cols(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.n);
        Self::from_fn(self.n, |i, j| self[(i, j)] * d[j])
    }

    /// `PAPᵀ` where row `i` of the result is row `perm[i]` of `A`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.submatrix(perm)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                let r = &rhs.data[k * n..(k + 1) * n];
                let o = &mut out[i * n..(i + 1) * n];
                for (o, b) in o.iter_mut().zip(r) {
                    *o += a * b;
                }
            }
        }
        Matrix { n, data: out }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr { n: self.n, rows: self.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.rows.len() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "declared n = {} but found {} rows",
                repr.n,
                repr.rows.len()
            )));
        }
        Matrix::from_rows(&repr.rows).map_err(serde::de::Error::custom)
    }
}
