//! Cyclic Jacobi eigensolver for real symmetric matrices.

use crate::matrix::Matrix;

/// Eigen-decomposition `S = V Λ Vᵀ`, eigenvalues ascending, eigenvectors in
/// the columns of `vectors` (row-major `n×n`).
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
    n: usize,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vectors[i * self.n + k]).collect()
    }

    pub fn max(&self) -> f64 {
        self.values[self.n - 1]
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Decomposes the symmetric part of `s`.
pub fn sym_eigen(s: &Matrix) -> SymEigen {
    let n = s.n();
    let mut a: Vec<f64> = s.symmetric_part().as_slice().to_vec();
    jacobi(&mut a, n)
}

/// Largest eigenvalue of the symmetric part of `s`.
pub fn lambda_max(s: &Matrix) -> f64 {
    sym_eigen(s).max()
}

pub(crate) fn jacobi(a: &mut [f64], n: usize) -> SymEigen {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x * n + x].total_cmp(&a[y * n + y]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new] = v[i * n + old];
        }
    }
    SymEigen { values, vectors, n }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let s = Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let e = sym_eigen(&s);
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 3.0).abs() < 1e-14);
        let v = e.vector(1);
        assert!((v[0].abs() - v[1].abs()).abs() < 1e-14);
    }

    #[test]
    fn reconstruction() {
        let s = Matrix::from_fn(5, |i, j| 1.0 / (1.0 + i as f64 + j as f64) + if i == j { (i as f64) - 2.0 } else { 0.0 });
        let e = sym_eigen(&s);
        let n = 5;
        let back = Matrix::from_fn(n, |i, j| (0..n).map(|k| e.vectors[i * n + k] * e.values[k] * e.vectors[j * n + k]).sum());
        assert!((&back - &s).max_abs() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}
