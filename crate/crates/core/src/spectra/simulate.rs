//! Fixed-step integration of `ẋ = Mx` from the canonical basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyapunov::solve_lyapunov;
use crate::matrix::Matrix;

use super::eigenvalues;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decay {
    /// `max_i ‖x_i(T)‖ / ‖x_i(0)‖`; infinite when the trajectory overflowed.
    pub ratio: f64,
    pub diverged: bool,
    pub steps: usize,
}

const OVERFLOW: f64 = 1e150;

/// Integrates with the classical fourth-order Runge–Kutta scheme. For a
/// linear system one step is the degree-4 Taylor polynomial of `e^{hM}`,
/// which is applied to all basis vectors at once.
pub fn simulate_decay(m: &Matrix, horizon: f64, step: f64) -> Result<Decay> {
    if !(step > 0.0) || !(horizon >= step) || !horizon.is_finite() {
        return Err(Error::InvalidArgument(format!("need 0 < h <= T, got h = {step}, T = {horizon}")));
    }
    let n = m.n();
    let steps = (horizon / step).round().max(1.0) as usize;
    let h = horizon / steps as f64;
    let hm = m.scale(h);
    let hm2 = &hm * &hm;
    let hm3 = &hm2 * &hm;
    let hm4 = &hm3 * &hm;
    let i = Matrix::identity(n);
    let p = &(&(&(&i + &hm) + &hm2.scale(0.5)) + &hm3.scale(1.0 / 6.0)) + &hm4.scale(1.0 / 24.0);
    let mut x = Matrix::identity(n);
    for _ in 0..steps {
        x = &p * &x;
        let big = x.as_slice().iter().any(|v| !v.is_finite() || v.abs() > OVERFLOW);
        if big {
            return Ok(Decay { ratio: f64::INFINITY, diverged: true, steps });
        }
    }
    let ratio = (0..n)
        .map(|j| (0..n).map(|r| x[(r, j)].powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    Ok(Decay { ratio, diverged: false, steps })
}

/// A step size well inside the fourth-order Runge–Kutta stability interval.
pub fn default_step(m: &Matrix) -> f64 {
    let scale = m.norm_inf().max(eigenvalues(m).map(|s| s.radius()).unwrap_or(0.0));
    (0.25 / scale.max(1e-12)).min(0.05)
}

/// Horizon after which every trajectory of a Hurwitz `A` has norm at most
/// `target` times its initial norm. With `HA + AᵀH = -I`,
/// `‖x(t)‖² ≤ cond(H)·e^{-t/λ_max(H)}‖x(0)‖²`, and `λ_max(H) ≥ 1/(2|α|)`
/// ties the rate to the spectral abscissa `α`.
pub fn decay_horizon(a: &Matrix, target: f64) -> Result<f64> {
    let spec = eigenvalues(a)?;
    let alpha = spec.abscissa();
    if alpha >= 0.0 {
        return Err(Error::Precondition(format!("spectral abscissa {alpha} is not negative")));
    }
    let h = solve_lyapunov(a, &Matrix::identity(a.n()).scale(-1.0))?;
    let e = super::sym_eigen(&h);
    if e.min() <= 0.0 {
        return Err(Error::Precondition("Lyapunov solution is not positive definite".into()));
    }
    let cond = e.max() / e.min();
    Ok(e.max() * (2.0 * (1.0 / target).ln() + cond.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_of_minus_identity() {
        let d = simulate_decay(&Matrix::identity(3).scale(-1.0), 20.0, 0.01).unwrap();
        assert!(d.ratio <= (-20.0f64).exp() + 1e-9);
        assert!(!d.diverged);
    }

    #[test]
    fn zero_matrix_keeps_norm() {
        let d = simulate_decay(&Matrix::zeros(2), 5.0, 0.1).unwrap();
        assert_eq!(d.ratio, 1.0);
    }

    #[test]
    fn unstable_overflows() {
        let d = simulate_decay(&Matrix::identity(2).scale(50.0), 20.0, 0.001).unwrap();
        assert!(d.diverged && d.ratio.is_infinite());
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(simulate_decay(&Matrix::zeros(1), 1.0, 0.0).is_err());
        assert!(simulate_decay(&Matrix::zeros(1), 0.01, 0.1).is_err());
    }

    #[test]
    fn horizon_for_diagonal() {
        // H = I/2, cond 1: T = 0.5·2·ln(1/target)
        let t = decay_horizon(&Matrix::identity(2).scale(-1.0), 1e-6).unwrap();
        assert!((t - (1e6f64).ln()).abs() < 1e-9);
        assert!(decay_horizon(&Matrix::identity(2), 1e-6).is_err());
    }
}
