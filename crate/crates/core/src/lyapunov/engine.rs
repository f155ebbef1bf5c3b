//! Minimization of `max_b λ_max(Σ_k d_k W_{b,k})` over the unit simplex or
//! the box `‖d‖∞ ≤ 1`.
//!
//! Phase one is projected subgradient descent with step `μ/√k`. Phase two
//! smooths the maximum eigenvalue by log-sum-exp and runs accelerated
//! projected gradient with backtracking, halving the smoothing parameter on a
//! fixed schedule. Every iterate with a negative value is offered to an
//! acceptance callback, which does the exact verification.

use crate::matrix::Matrix;
use crate::spectra::{sym_eigen, SymEigen};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Domain {
    Simplex,
    Box,
}

pub(crate) struct Problem {
    dim: usize,
    /// `blocks[b][k]`, symmetric, all blocks of one order each.
    blocks: Vec<Vec<Matrix>>,
    domain: Domain,
    /// `1 / max ‖W_{b,k}‖∞`.
    mu: f64,
    /// `Σ_k max_b ‖W_{b,k}‖_F²`, a Lipschitz bound for the smoothed gradient
    /// up to the factor `1/μ`.
    lip: f64,
}

pub(crate) struct Outcome<T> {
    pub found: Option<(Vec<f64>, T)>,
    pub best_value: f64,
    pub iterations: usize,
}

const SMOOTH_PERIOD: usize = 60;

impl Problem {
    pub fn new(blocks: Vec<Vec<Matrix>>, domain: Domain) -> Self {
        let dim = blocks.first().map_or(0, |b| b.len());
        let max_norm = blocks.iter().flatten().map(|w| w.norm_inf()).fold(0.0, f64::max);
        let lip = (0..dim)
            .map(|k| blocks.iter().map(|b| b[k].norm_fro().powi(2)).fold(0.0, f64::max))
            .sum();
        Self { dim, blocks, domain, mu: if max_norm > 0.0 { 1.0 / max_norm } else { 0.0 }, lip }
    }

    fn assemble(&self, b: usize, d: &[f64]) -> Matrix {
        let ws = &self.blocks[b];
        let mut acc = Matrix::zeros(ws[0].n());
        for (w, &dk) in ws.iter().zip(d) {
            if dk != 0.0 {
                acc = &acc + &w.scale(dk);
            }
        }
        acc
    }

    /// Value, a subgradient, and the definiteness band at `d`.
    fn eval(&self, d: &[f64]) -> (f64, Vec<f64>, f64) {
        let mut best = (f64::NEG_INFINITY, Vec::new(), 0.0);
        for b in 0..self.blocks.len() {
            let w = self.assemble(b, d);
            let e = sym_eigen(&w);
            if e.max() > best.0 {
                let v = e.vector(e.values.len() - 1);
                let g = (0..self.dim).map(|k| quad(&self.blocks[b][k], &v)).collect();
                best = (e.max(), g, tol_of(&w));
            }
        }
        best
    }

    /// Log-sum-exp smoothing `f_μ`, its gradient, the exact maximum and the
    /// band of the maximizing block.
    fn smooth(&self, d: &[f64], mu: f64) -> (f64, Vec<f64>, f64, f64) {
        let decomps: Vec<(Matrix, SymEigen)> = (0..self.blocks.len())
            .map(|b| {
                let w = self.assemble(b, d);
                let e = sym_eigen(&w);
                (w, e)
            })
            .collect();
        let (top_b, fmax) = decomps
            .iter()
            .enumerate()
            .map(|(b, (_, e))| (b, e.max()))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let mut z = 0.0;
        let mut grad = vec![0.0; self.dim];
        for (b, (_, e)) in decomps.iter().enumerate() {
            let m = e.values.len();
            let mut proj = vec![0.0; m * m];
            let mut any = false;
            for (i, &lam) in e.values.iter().enumerate() {
                let wgt = ((lam - fmax) / mu).exp();
                z += wgt;
                if wgt < 1e-16 {
                    continue;
                }
                any = true;
                let v = e.vector(i);
                for r in 0..m {
                    for c in 0..m {
                        proj[r * m + c] += wgt * v[r] * v[c];
                    }
                }
            }
            if any {
                for (k, gk) in grad.iter_mut().enumerate() {
                    *gk += self.blocks[b][k].as_slice().iter().zip(&proj).map(|(x, y)| x * y).sum::<f64>();
                }
            }
        }
        for g in &mut grad {
            *g /= z;
        }
        (fmax + mu * z.ln(), grad, fmax, tol_of(&decomps[top_b].0))
    }

    fn project(&self, d: &mut [f64]) {
        match self.domain {
            Domain::Box => d.iter_mut().for_each(|x| *x = x.clamp(-1.0, 1.0)),
            Domain::Simplex => project_simplex(d),
        }
    }

    /// Candidates offered to the acceptance test once `d` has a negative
    /// value: `d` itself when structurally admissible, otherwise convex
    /// mixes with the barycenter (simplex) or the rescaled point (box).
    fn candidates(&self, d: &[f64], fd: f64) -> Vec<Vec<f64>> {
        match self.domain {
            Domain::Box => {
                let m = d.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
                if m > 0.0 {
                    vec![d.iter().map(|x| x / m).collect()]
                } else {
                    Vec::new()
                }
            }
            Domain::Simplex => {
                let n = self.dim as f64;
                let mut out = Vec::new();
                if d.iter().all(|&x| x > 0.0) {
                    out.push(d.to_vec());
                }
                let u = vec![1.0 / n; self.dim];
                let fu = self.eval(&u).0;
                let mut t = if fu <= fd { 0.5 } else { (0.5 * -fd / (fu - fd)).min(0.5) };
                for _ in 0..40 {
                    out.push(d.iter().map(|x| (1.0 - t) * x + t / n).collect());
                    t *= 0.5;
                }
                out
            }
        }
    }

    pub fn minimize<T>(&self, start: Vec<f64>, budget: usize, accept: impl Fn(&[f64]) -> Option<T>) -> Outcome<T> {
        let mut iterations = 0;
        let mut d = start;
        self.project(&mut d);
        let (f0, _, _) = self.eval(&d);
        let mut best = (f0, d.clone());
        if self.dim == 0 || self.mu == 0.0 {
            return Outcome { found: None, best_value: f0, iterations };
        }
        let try_accept = |d: &[f64], f: f64, tol: f64| -> Option<(Vec<f64>, T)> {
            if f >= -tol {
                return None;
            }
            self.candidates(d, f).into_iter().find_map(|c| accept(&c).map(|t| (c, t)))
        };

        let phase1 = (budget / 4).max(budget.min(50));
        for k in 1..=phase1 {
            iterations = k;
            let (f, g, tol) = self.eval(&d);
            if f < best.0 {
                best = (f, d.clone());
            }
            if let Some(hit) = try_accept(&d, f, tol) {
                return Outcome { found: Some(hit), best_value: f, iterations };
            }
            let step = self.mu / (k as f64).sqrt();
            for (x, gk) in d.iter_mut().zip(&g) {
                *x -= step * gk;
            }
            self.project(&mut d);
        }
        if iterations >= budget {
            return Outcome { found: None, best_value: best.0, iterations };
        }

        let scale = 1.0 / self.mu;
        let mut mu = 0.1 * (best.0.abs() + 1e-3 * scale);
        let mut x = best.1.clone();
        let mut y = x.clone();
        let mut t = 1.0f64;
        let mut lip = self.lip / mu * 1e-2;
        let mut prev = f64::INFINITY;
        for it in 0..budget - iterations {
            iterations += 1;
            if it > 0 && it % SMOOTH_PERIOD == 0 {
                mu = (mu * 0.5).max(1e-13 * scale);
                lip = lip.max(self.lip / mu * 1e-4);
                y = x.clone();
                t = 1.0;
                prev = f64::INFINITY;
            }
            let (fy, gy, _, _) = self.smooth(&y, mu);
            let (x_new, fx_mu, fx, tol) = loop {
                let mut cand: Vec<f64> = y.iter().zip(&gy).map(|(yi, gi)| yi - gi / lip).collect();
                self.project(&mut cand);
                let (fc, _, fmax, tol) = self.smooth(&cand, mu);
                let diff: Vec<f64> = cand.iter().zip(&y).map(|(a, b)| a - b).collect();
                let lin: f64 = diff.iter().zip(&gy).map(|(a, b)| a * b).sum();
                let sq: f64 = diff.iter().map(|a| a * a).sum();
                if fc <= fy + lin + 0.5 * lip * sq + 1e-15 * fy.abs() || lip > 1e30 {
                    break (cand, fc, fmax, tol);
                }
                lip *= 2.0;
            };
            if fx < best.0 {
                best = (fx, x_new.clone());
            }
            if let Some(hit) = try_accept(&x_new, fx, tol) {
                return Outcome { found: Some(hit), best_value: fx, iterations };
            }
            if fx_mu > prev {
                // adaptive restart
                t = 1.0;
                y = x_new.clone();
            } else {
                let t_new = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
                y = x_new.iter().zip(&x).map(|(a, b)| a + (t - 1.0) / t_new * (a - b)).collect();
                self.project(&mut y);
                t = t_new;
            }
            prev = fx_mu;
            x = x_new;
            lip *= 0.9;
        }
        Outcome { found: None, best_value: best.0, iterations }
    }
}

fn quad(w: &Matrix, v: &[f64]) -> f64 {
    let wv = w.mat_vec(v);
    wv.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn tol_of(w: &Matrix) -> f64 {
    super::definiteness_tol(w)
}

/// Euclidean projection onto `{d ≥ 0, Σ d = 1}` by sorting.
pub(crate) fn project_simplex(d: &mut [f64]) {
    let mut u: Vec<f64> = d.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cum += uj;
        let t = (cum - 1.0) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    for x in d.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}
