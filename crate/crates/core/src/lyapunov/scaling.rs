//! Diagonal certificate search in similarity coordinates.
//!
//! With `E = diag(e^x)` and `D = E²`, congruence by `I⊗E⁻¹` maps the region
//! operator at `D` to `Φ(B) = L⊗I + M⊗B + Mᵀ⊗Bᵀ + R22⊗BᵀB` with
//! `B = EAE⁻¹`. Definiteness is unchanged, but `Φ` is invariant under scaling
//! `D`, so badly spread certificates no longer have a tiny margin. The
//! smoothed `λ_max(Φ)` is minimized over `x` by gradient descent with
//! backtracking; the problem is not convex in `x`, which is why this runs
//! beside the simplex engine rather than replacing it.

use crate::matrix::{kronecker, Matrix};
use crate::spectra::{sym_eigen, Region};

use super::definiteness_tol;

const SMOOTH_PERIOD: usize = 40;
const X_BOUND: f64 = 30.0;

struct Form {
    l: Matrix,
    m: Matrix,
    r22: Option<Matrix>,
}

impl Form {
    fn of(region: &Region) -> Option<Self> {
        match region.matrix_form()? {
            Region::Lmi { l, m } => Some(Self { l, m, r22: None }),
            Region::Emi { r11, r12, r22 } => Some(Self { l: r11, m: r12, r22: Some(r22) }),
            _ => None,
        }
    }

    fn operator(&self, b: &Matrix) -> Matrix {
        let n = b.n();
        let mut w = &(&kronecker(&self.l, &Matrix::identity(n)) + &kronecker(&self.m, b))
            + &kronecker(&self.m.transpose(), &b.transpose());
        if let Some(r) = &self.r22 {
            w = &w + &kronecker(r, &(&b.transpose() * b));
        }
        w
    }

    /// `∂⟨P, Φ(B)⟩/∂B` for a symmetric `P`.
    fn pullback(&self, p: &Matrix, b: &Matrix) -> Matrix {
        let n = b.n();
        let k = self.m.n();
        let block = |r: usize, c: usize| Matrix::from_fn(n, |i, j| p[(r * n + i, c * n + j)]);
        let mut g = Matrix::zeros(n);
        for r in 0..k {
            for c in 0..k {
                let pb = block(r, c);
                let pbt = pb.transpose();
                g = &(&g + &pb.scale(self.m[(r, c)])) + &pbt.scale(self.m[(c, r)]);
                if let Some(r22) = &self.r22 {
                    if r22[(r, c)] != 0.0 {
                        g = &g + &(b * &(&pb + &pbt)).scale(r22[(r, c)]);
                    }
                }
            }
        }
        g
    }
}

fn similarity(a: &Matrix, x: &[f64]) -> Matrix {
    Matrix::from_fn(a.n(), |i, j| a[(i, j)] * (x[i] - x[j]).exp())
}

/// Smoothed value, gradient in `x`, and the exact `λ_max` with its band.
fn smooth(form: &Form, a: &Matrix, x: &[f64], mu: f64) -> (f64, Vec<f64>, f64, f64) {
    let b = similarity(a, x);
    let w = form.operator(&b);
    let e = sym_eigen(&w);
    let top = e.max();
    let dim = w.n();
    let mut p = Matrix::zeros(dim);
    let mut z = 0.0;
    for (i, &lam) in e.values.iter().enumerate() {
        let wgt = ((lam - top) / mu).exp();
        z += wgt;
        if wgt < 1e-16 {
            continue;
        }
        let v = e.vector(i);
        for r in 0..dim {
            for c in 0..dim {
                p[(r, c)] += wgt * v[r] * v[c];
            }
        }
    }
    let g = form.pullback(&p.scale(1.0 / z), &b);
    // ∂b_ij/∂x_k = b_ij(δ_ik - δ_jk)
    let n = a.n();
    let grad = (0..n)
        .map(|k| (0..n).map(|j| g[(k, j)] * b[(k, j)] - g[(j, k)] * b[(j, k)]).sum())
        .collect();
    (top + mu * z.ln(), grad, top, definiteness_tol(&w))
}

/// Minimizes `λ_max(Φ(EAE⁻¹))` for up to `budget` steps and returns the first
/// `D = E²` (unit trace) accepted by `accept`, with the steps used.
pub(crate) fn scaled_search<T>(
    a: &Matrix,
    region: &Region,
    budget: usize,
    accept: impl Fn(&[f64]) -> Option<T>,
) -> (Option<(Vec<f64>, T)>, f64, usize) {
    let n = a.n();
    let Some(form) = Form::of(region) else { return (None, f64::INFINITY, 0) };
    let to_d = |x: &[f64]| {
        let d: Vec<f64> = x.iter().map(|v| (2.0 * v).exp()).collect();
        let s: f64 = d.iter().sum();
        d.into_iter().map(|v| v / s).collect::<Vec<f64>>()
    };
    let scale = 1.0 + form.operator(a).norm_inf();
    let mut mu = 0.05 * scale;
    let mut x = vec![0.0; n];
    let mut step = 1.0 / scale;
    let mut best = f64::INFINITY;
    for it in 0..budget {
        if it > 0 && it % SMOOTH_PERIOD == 0 {
            mu = (mu * 0.5).max(1e-12 * scale);
        }
        let (f, g, top, tol) = smooth(&form, a, &x, mu);
        best = best.min(top);
        if top < -tol {
            let d = to_d(&x);
            if let Some(t) = accept(&d) {
                return (Some((d, t)), best, it + 1);
            }
        }
        let gg: f64 = g.iter().map(|v| v * v).sum();
        if gg == 0.0 {
            return (None, best, it + 1);
        }
        // Armijo backtracking
        loop {
            let cand: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| (xi - step * gi).clamp(-X_BOUND, X_BOUND)).collect();
            let (fc, ..) = smooth(&form, a, &cand, mu);
            if fc <= f - 0.25 * step * gg || step < 1e-14 / scale {
                let mean = cand.iter().sum::<f64>() / n as f64;
                x = cand.iter().map(|v| v - mean).collect();
                break;
            }
            step *= 0.5;
        }
        step *= 1.5;
    }
    (None, best, budget)
}
