use crate::error::{Error, Result};
use crate::matrix::{minor, Matrix};
use crate::spectra::eigenvalues;
use crate::verdict::{Verdict, Witness};

/// Smallest `ε` of the sweep.
pub const EPS_MIN: f64 = 1e-6;
/// Imaginary parts below `IMAG_RTOL·max|λ|` count as real.
pub const IMAG_RTOL: f64 = 1e-8;
/// Eigenvalues closer than `GAP_RTOL·(λmax - λmin)` count as repeated.
pub const GAP_RTOL: f64 = 1e-6;

/// Looks for `D = diag(1, ε, ε², …)` making the spectrum of `DA` real,
/// positive and simple, for `A` with positive leading principal minors.
///
/// Such a `D` exists for small `ε` but no bound on `ε` is known in advance,
/// so the sweep runs `budget` log-spaced values from 1 down to [`EPS_MIN`] and
/// reports Unknown if none works.
pub fn fisher_fuller_stabilize(a: &Matrix, budget: usize) -> Result<Verdict> {
    let n = a.n();
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        let m = minor(a, &idx, &idx);
        if !(m > 0.0) {
            return Err(Error::Precondition(format!("leading principal minor of order {k} is {m:e}")));
        }
    }
    let steps = budget.max(2);
    for s in 0..steps {
        let eps = EPS_MIN.powf(s as f64 / (steps - 1) as f64);
        let d: Vec<f64> = (0..n).map(|i| eps.powi(i as i32)).collect();
        let da = a.scale_rows(&d);
        if real_positive_simple(&da)? {
            return Ok(Verdict::proved_with("fisher_fuller_scaling", Witness::Scaling { diagonal: d })
                .with_detail(format!("epsilon = {eps:e}")));
        }
    }
    Ok(Verdict::unknown("fisher_fuller_sweep_exhausted").with_detail(format!("{steps} values of epsilon tried")))
}

/// Whether the spectrum is real, positive and simple under the tolerances
/// above.
pub fn real_positive_simple(m: &Matrix) -> Result<bool> {
    let spec = eigenvalues(m)?;
    let scale = spec.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if spec.iter().any(|z| z.im.abs() >= IMAG_RTOL * scale || !(z.re > 0.0)) {
        return Ok(false);
    }
    let mut re: Vec<f64> = spec.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    let spread = re[re.len() - 1] - re[0];
    Ok(re.windows(2).all(|w| w[1] - w[0] > GAP_RTOL * spread))
}
