use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::verdict::{Verdict, Witness};

/// Cyclic negative feedback: diagonal `-α`, subdiagonal `β_1..β_{n-1}`,
/// corner `a_{1n} = -β_n`, zeros elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicForm {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl CyclicForm {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch { left: alpha.len(), right: beta.len() });
        }
        if alpha.iter().chain(&beta).any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidArgument("cyclic form needs positive alpha and beta".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.n();
        let mut a = Matrix::diag(&self.alpha.iter().map(|x| -x).collect::<Vec<_>>());
        for i in 0..n - 1 {
            a[(i + 1, i)] = self.beta[i];
        }
        a[(0, n - 1)] -= self.beta[n - 1];
        a
    }

    /// `β_1⋯β_n / α_1⋯α_n`, computed in logs.
    pub fn gain(&self) -> f64 {
        let l: f64 = self.beta.iter().map(|b| b.ln()).sum::<f64>() - self.alpha.iter().map(|a| a.ln()).sum::<f64>();
        l.exp()
    }
}

/// Matches the cyclic pattern with entries off the pattern below
/// `1e-12·(1 + max|a_ij|)`. Needs `n >= 2`.
pub fn detect_cyclic(a: &Matrix) -> Option<CyclicForm> {
    let n = a.n();
    if n < 2 {
        return None;
    }
    let tol = 1e-12 * (1.0 + a.max_abs());
    let on_pattern = |i: usize, j: usize| i == j || i == j + 1 || (i == 0 && j == n - 1);
    for i in 0..n {
        for j in 0..n {
            if !on_pattern(i, j) && a[(i, j)].abs() > tol {
                return None;
            }
        }
    }
    let alpha: Vec<f64> = (0..n).map(|i| -a[(i, i)]).collect();
    let mut beta: Vec<f64> = (0..n - 1).map(|i| a[(i + 1, i)]).collect();
    beta.push(-a[(0, n - 1)]);
    CyclicForm::new(alpha, beta).ok()
}

/// `sec(π/n)^n`; infinite for `n = 2`.
pub fn secant_bound(n: usize) -> f64 {
    if n == 2 {
        f64::INFINITY
    } else {
        (PI / n as f64).cos().powi(n as i32).recip()
    }
}

/// Relative gap the gain must keep below the bound to count as Proved; the
/// boundary itself is not diagonally stable.
pub const SECANT_RTOL: f64 = 1e-12;

/// The cyclic form is diagonally stable exactly when its gain is below
/// `sec(π/n)^n`.
pub fn secant_criterion(f: &CyclicForm) -> Result<Verdict> {
    let n = f.n();
    if n < 2 {
        return Err(Error::InvalidArgument("secant criterion needs n >= 2".into()));
    }
    let (value, threshold) = (f.gain(), secant_bound(n));
    let w = Witness::Bound { value, threshold };
    Ok(if value < threshold * (1.0 - SECANT_RTOL) {
        Verdict::proved_with("secant_criterion", w)
    } else {
        Verdict::refuted("secant_criterion_violated", w)
    })
}

/// Single-circuit criterion. Rows are first divided by `|a_ii|`; the
/// off-diagonal graph must then be one directed cycle through all indices,
/// with circuit gain `γ`. Diagonally stable iff `|γ|·Φ < 1`, where
/// `Φ = cos(π/n)^n` for `γ < 0` and `Φ = 1` otherwise.
pub fn single_circuit_criterion(a: &Matrix) -> Result<Verdict> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidArgument("single circuit needs n >= 2".into()));
    }
    if let Some(i) = (0..n).find(|&i| !(a[(i, i)] < 0.0)) {
        return Err(Error::Precondition(format!("a_{i}{i} = {} is not negative", a[(i, i)])));
    }
    let scale: Vec<f64> = (0..n).map(|i| 1.0 / a[(i, i)].abs()).collect();
    let b = a.scale_rows(&scale);
    let mut succ = vec![usize::MAX; n];
    for (i, s) in succ.iter_mut().enumerate() {
        let mut targets = (0..n).filter(|&j| j != i && b[(i, j)] != 0.0);
        match (targets.next(), targets.next()) {
            (Some(j), None) => *s = j,
            _ => return Err(Error::Precondition(format!("row {i} does not have exactly one off-diagonal entry"))),
        }
    }
    let mut seen = vec![false; n];
    let (mut i, mut gamma) = (0, 1.0);
    for _ in 0..n {
        if seen[i] {
            return Err(Error::Precondition("graph is not a single circuit through all nodes".into()));
        }
        seen[i] = true;
        gamma *= b[(i, succ[i])];
        i = succ[i];
    }
    if i != 0 {
        return Err(Error::Precondition("graph is not a single circuit through all nodes".into()));
    }
    let phi = if gamma < 0.0 { (PI / n as f64).cos().powi(n as i32) } else { 1.0 };
    let w = Witness::Bound { value: gamma.abs() * phi, threshold: 1.0 };
    Ok(if gamma.abs() * phi < 1.0 {
        Verdict::proved_with("single_circuit_criterion", w)
    } else {
        Verdict::refuted("single_circuit_criterion_violated", w)
    })
}
