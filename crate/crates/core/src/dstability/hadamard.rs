//! Sampled refutation of diagonal stability through Hadamard products.
//!
//! If `DA + AᵀD ≻ 0` for a positive diagonal `D` and `S` is positive
//! semidefinite with unit diagonal, then `D(A∘S) + (A∘S)ᵀD = (DA + AᵀD)∘S`
//! is positive definite by the Schur product theorem, so `A∘S` is positive
//! stable along with each principal submatrix and is therefore a P-matrix.
//! A sampled `S` with a negative principal minor of `A∘S` refutes diagonal
//! stability.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{check_cap, Result};
use crate::matrix::{hadamard, principal_minors, tau_minor, Matrix};
use crate::verdict::{Verdict, Witness};

use super::sample_rng;

pub const HADAMARD_CAP: usize = 10;

/// Correlation matrix `S_ij = (GGᵀ)_ij / √((GGᵀ)_ii (GGᵀ)_jj)` with
/// Gaussian `G` of random rank `1..=n`.
pub fn random_correlation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let k = rng.random_range(1..=n);
        let g: Vec<Vec<f64>> = (0..n).map(|_| (0..k).map(|_| rng.sample(StandardNormal)).collect()).collect();
        let gram = Matrix::from_fn(n, |i, j| g[i].iter().zip(&g[j]).map(|(x, y)| x * y).sum());
        let d = gram.diagonal();
        if d.iter().all(|&x| x > 1e-12) {
            let s = Matrix::from_fn(n, |i, j| if i == j { 1.0 } else { gram[(i, j)] / (d[i] * d[j]).sqrt() });
            return s.symmetric_part();
        }
    }
}

/// Positive-convention test (`DA + AᵀD ≻ 0`). Refuted with the sampled `S`
/// and the failing minor; Unknown when every sample keeps `A∘S` a P-matrix.
pub fn hadamard_p_test(a: &Matrix, samples: u64, seed: u64) -> Result<Verdict> {
    let n = a.n();
    check_cap("hadamard_p_test", n, HADAMARD_CAP)?;
    if let Some(i) = (0..n).find(|&i| !(a[(i, i)] > 0.0)) {
        return Ok(Verdict::refuted("nonpositive_diagonal_entry", Witness::Entry { row: i, col: i, value: a[(i, i)] })
            .with_detail("(DA + AᵀD)_ii = 2 d_i a_ii must be positive"));
    }
    let norm = a.norm_inf();
    let hit = (0..samples).into_par_iter().find_map_first(|idx| {
        let mut rng = sample_rng(seed, idx);
        let s = random_correlation(n, &mut rng);
        let m = hadamard(a, &s).ok()?;
        let minors = principal_minors(&m, n).ok()?;
        let (set, value) = minors.into_iter().find(|(set, v)| *v < -tau_minor(norm, set.len()))?;
        Some(Witness::HadamardMinor { s, rows: set.indices().to_vec(), value })
    });
    Ok(match hit {
        Some(w) => Verdict::refuted("hadamard_product_not_p", w).with_seed(seed),
        None => Verdict::unknown("no_hadamard_counterexample")
            .with_detail(format!("{samples} correlation samples kept A∘S a P-matrix"))
            .with_seed(seed),
    })
}
