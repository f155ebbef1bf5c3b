use rayon::prelude::*;

use crate::error::{check_cap, Result};
use crate::matrix::Matrix;
use crate::spectra::{eigenvalues, point_tol, Membership, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

use super::Counterexample;

pub const VERTEX_CAP: usize = 16;

/// Checks `ρ(DA) < 1` over every `D = diag(±1)`. Only `d_1 = 1` is
/// enumerated since `ρ(-DA) = ρ(DA)`.
///
/// Refuted means `A` is not Schur D-stable; Proved only means vertex stable.
pub fn vertex_schur_check(a: &Matrix) -> Result<Verdict> {
    let n = a.n();
    check_cap("vertex_schur_check", n, VERTEX_CAP)?;
    let region = Region::unit_disk();
    let count = 1u64 << n.saturating_sub(1);
    let vertex = |mask: u64| -> Vec<f64> {
        (0..n).map(|i| if i > 0 && mask & (1 << (i - 1)) != 0 { -1.0 } else { 1.0 }).collect()
    };
    let found = (0..count).into_par_iter().find_map_first(|mask| {
        let d = vertex(mask);
        let realized = a.scale_rows(&d);
        let spec = eigenvalues(&realized).ok()?;
        let z = spec.iter().copied().find(|&z| region.membership(z, point_tol(z, DEFAULT_TOL)) == Membership::Outside)?;
        Some(Counterexample { g: Matrix::diag(&d), realized, eigenvalue: z, sample: mask })
    });
    if let Some(cx) = found {
        return Ok(Verdict::refuted("vertex_outside_unit_disk", Witness::Counterexample(cx)));
    }
    let boundary = (0..count).into_par_iter().find_first(|&mask| {
        let realized = a.scale_rows(&vertex(mask));
        eigenvalues(&realized).map_or(true, |s| {
            s.iter().any(|&z| region.membership(z, point_tol(z, DEFAULT_TOL)) != Membership::Inside)
        })
    });
    Ok(match boundary {
        Some(mask) => Verdict::unknown("vertex_on_unit_circle").with_detail(format!("sign vector {:?}", vertex(mask))),
        None => Verdict::proved("vertex_stable").with_detail(format!("{count} sign vectors checked")),
    })
}
