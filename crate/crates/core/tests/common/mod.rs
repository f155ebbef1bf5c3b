//! Random matrix generators shared by the property suites. Every generator
//! is driven by a seeded `ChaCha8Rng` so proptest shrinks over the seed.

#![allow(dead_code)]

use matstab_core::matrix::{classify, Matrix};
use matstab_core::spectra::eigenvalues;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(n: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(n, |_, _| rng.sample(StandardNormal))
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

pub fn shift(a: &Matrix, s: f64) -> Matrix {
    a + &Matrix::identity(a.n()).scale(s)
}

/// Spectral abscissa in `[-2, -0.05]`.
pub fn hurwitz(n: usize, rng: &mut impl Rng) -> Matrix {
    let m = gaussian(n, rng);
    let alpha = eigenvalues(&m).unwrap().abscissa();
    shift(&m, -alpha - log_uniform(rng, 0.05, 2.0))
}

/// Spectral abscissa in `[0, 1]`, exactly zero for a tenth of the draws.
pub fn not_hurwitz(n: usize, rng: &mut impl Rng) -> Matrix {
    let m = gaussian(n, rng);
    let alpha = eigenvalues(&m).unwrap().abscissa();
    let target = if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..1.0) };
    shift(&m, target - alpha)
}

/// Spectral radius in `[0.05, 0.95]`.
pub fn schur(n: usize, rng: &mut impl Rng) -> Matrix {
    let m = gaussian(n, rng);
    let rho = eigenvalues(&m).unwrap().radius();
    m.scale(rng.random_range(0.05..0.95) / rho)
}

/// Spectral radius in `[1, 2]`.
pub fn not_schur(n: usize, rng: &mut impl Rng) -> Matrix {
    let m = gaussian(n, rng);
    let rho = eigenvalues(&m).unwrap().radius();
    m.scale(rng.random_range(1.0..2.0) / rho)
}

pub fn spd(n: usize, rng: &mut impl Rng) -> Matrix {
    let g = gaussian(n, rng);
    &(&g * &g.transpose()) + &Matrix::identity(n).scale(0.1)
}

/// `sI - N` with `N >= 0` and `s > ρ(N)`.
pub fn m_matrix(n: usize, rng: &mut impl Rng) -> Matrix {
    let nn = Matrix::from_fn(n, |i, j| if i == j || rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..2.0) });
    let rho = eigenvalues(&nn).unwrap().radius();
    shift(&nn.scale(-1.0), rho * rng.random_range(1.05..2.0) + 0.05)
}

/// Positive diagonal strictly dominating each row.
pub fn sdd_positive(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut a = Matrix::from_fn(n, |i, j| if i == j { 0.0 } else { rng.random_range(-2.0..2.0) });
    for i in 0..n {
        let r: f64 = a.row(i).iter().map(|x| x.abs()).sum();
        a[(i, i)] = r * rng.random_range(1.05..2.0) + 0.05;
    }
    a
}

pub fn triangular_positive(n: usize, rng: &mut impl Rng) -> Matrix {
    let upper = rng.random_bool(0.5);
    Matrix::from_fn(n, |i, j| match (i == j, (i < j) == upper) {
        (true, _) => log_uniform(rng, 0.1, 10.0),
        (false, true) => rng.random_range(-5.0..5.0),
        _ => 0.0,
    })
}

/// Tridiagonal P-matrix by rejection.
pub fn tridiagonal_p(n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let a = Matrix::from_fn(n, |i, j| match i.abs_diff(j) {
            0 => log_uniform(rng, 0.2, 5.0),
            1 => rng.random_range(-2.0..2.0),
            _ => 0.0,
        });
        if classify(&a).unwrap().p.is_true() {
            return a;
        }
    }
}

/// Random permutation of `0..n`.
pub fn permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

/// Pairs every element of `a` with a distinct nearest element of `b`;
/// returns the largest distance relative to `1 + |z|`.
pub fn multiset_distance(a: &[num_complex::Complex64], b: &[num_complex::Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for z in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d / (1.0 + z.norm()));
    }
    worst
}
