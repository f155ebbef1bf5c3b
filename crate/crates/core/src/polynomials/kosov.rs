//! Interval D-stability through a coefficient box.
//!
//! For a P0 matrix every coefficient of `det(λI + DA)` is a sum of principal
//! minors of `DA`, hence nondecreasing in each `d_ii`. The characteristic
//! polynomials at the two corners of `Θ` therefore bound every member of the
//! family and the four Kharitonov polynomials of that box decide it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{classify, Matrix};
use crate::verdict::{Status, Verdict};

use super::{char_poly, kharitonov_stable, routh_hurwitz, IntervalPoly, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KosovMode {
    /// `DA` for `D ∈ Θ`.
    Multiplicative,
    /// `A + D` for `D ∈ Θ`.
    Additive,
}

/// Polynomial whose Hurwitz stability is positive stability of `DA`
/// (or `A + D`).
fn family_member(a: &Matrix, d: &[f64], mode: KosovMode) -> Poly {
    let m = match mode {
        KosovMode::Multiplicative => a.scale_rows(d),
        KosovMode::Additive => a + &Matrix::diag(d),
    };
    char_poly(&m.scale(-1.0))
}

/// Sufficient test for positive stability of every `DA` (or `A + D`) with
/// `d_min <= D <= d_max`. Proved means the whole interval family is positive
/// stable. A failing box gives Unknown, except for a degenerate box where the
/// single polynomial decides exactly.
pub fn kosov_interval_dstability(a: &Matrix, d_min: &[f64], d_max: &[f64], mode: KosovMode) -> Result<Verdict> {
    let n = a.n();
    if d_min.len() != n || d_max.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: d_min.len().min(d_max.len()) });
    }
    if (0..n).any(|i| !(d_min[i] > 0.0) || !(d_min[i] <= d_max[i]) || !d_max[i].is_finite()) {
        return Err(Error::InvalidArgument("need 0 < d_min <= d_max < inf componentwise".into()));
    }
    let report = classify(a)?;
    if !report.p0.is_true() {
        return Err(Error::Precondition("matrix is not P0".into()));
    }
    let f_min = family_member(a, d_min, mode);
    if d_min == d_max {
        return routh_hurwitz(&f_min).map(|v| relabel(v, "kosov_degenerate_box"));
    }
    let f_max = family_member(a, d_max, mode);
    let lower: Vec<f64> = f_min.coeffs().iter().zip(f_max.coeffs()).map(|(x, y)| x.min(*y)).collect();
    let upper: Vec<f64> = f_min.coeffs().iter().zip(f_max.coeffs()).map(|(x, y)| x.max(*y)).collect();
    let v = kharitonov_stable(&IntervalPoly::new(lower, upper)?)?;
    Ok(match v.status() {
        Status::Proved => Verdict::proved("kosov_interval"),
        _ => Verdict::unknown("kosov_box_inconclusive").with_detail(format!("{}: {}", v.reason(), v.detail().unwrap_or(""))),
    })
}

fn relabel(v: Verdict, reason: &str) -> Verdict {
    let mut out = match (v.status(), v.witness()) {
        (Status::Proved, _) => Verdict::proved(reason),
        (Status::Refuted, Some(w)) => Verdict::refuted(reason, w.clone()),
        _ => Verdict::unknown(reason),
    };
    if let Some(d) = v.detail() {
        out = out.with_detail(d);
    }
    out
}
