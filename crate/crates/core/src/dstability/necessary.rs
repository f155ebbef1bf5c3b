use crate::error::{check_cap, Result};
use crate::matrix::{classify, Flag, FlagWitness, Matrix, MINOR_ENUMERATION_CAP};
use crate::spectra::{eigenvalues, first_escape, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

use super::Mode;

/// Necessary conditions for D-stability of a Hurwitz-convention `A`.
///
/// Multiplicative: `-A ∈ P0⁺` and `A` Hurwitz (take `D = I`).
/// Additive: `-A ∈ P0` and no eigenvalue of `A` in the open right half-plane
/// (let `D → 0`). The order sums may vanish here, e.g. `A = 0` is additively
/// D-stable, so `P0⁺` is not required.
///
/// Passing is reported as Unknown with reason `necessary_conditions_passed`.
pub fn necessary_p0plus(a: &Matrix, mode: Mode) -> Result<Verdict> {
    check_cap("necessary_p0plus", a.n(), MINOR_ENUMERATION_CAP)?;
    let report = classify(&a.scale(-1.0))?;
    let (flag, name) = match mode {
        Mode::Multiplicative => (&report.p0_plus, "P0+"),
        Mode::Additive => (&report.p0, "P0"),
    };
    if let Some(v) = refutation(flag, name) {
        return Ok(v);
    }
    let spec = eigenvalues(a)?;
    let escaped = match mode {
        Mode::Multiplicative => first_escape(&spec, &Region::HalfPlaneLeft, DEFAULT_TOL),
        Mode::Additive => spec.iter().copied().find(|z| z.re > DEFAULT_TOL * (1.0 + z.norm())),
    };
    if let Some(z) = escaped {
        return Ok(Verdict::refuted("not_hurwitz", Witness::Eigenvalue { value: z })
            .with_detail("the identity scaling is already unstable"));
    }
    Ok(Verdict::unknown("necessary_conditions_passed").with_detail(format!("-A is {name} and the spectrum passes")))
}

fn refutation(flag: &Flag, name: &str) -> Option<Verdict> {
    if !flag.is_false() {
        return None;
    }
    let witness = match flag.witness.clone()? {
        FlagWitness::Minor { rows, cols, value } => Witness::Minor { rows, cols, value },
        FlagWitness::OrderSum { order, value } => Witness::OrderSum { order, value },
        FlagWitness::Entry { row, col, value } => Witness::Entry { row, col, value },
        other => return Some(Verdict::unknown("necessary_conditions_undecided").with_detail(format!("{other:?}"))),
    };
    Some(Verdict::refuted(format!("negation_not_{}", name.to_lowercase().replace('+', "_plus")), witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = necessary_p0plus(&Matrix::identity(3).scale(-1.0), Mode::Multiplicative).unwrap();
        assert_eq!(v.reason(), "necessary_conditions_passed");
        // -A = [[-1, 4], [-1, 2]] has the negative 1×1 minor -1
        let a = Matrix::from_rows(&[[1.0, -4.0], [1.0, -2.0]]).unwrap();
        let v = necessary_p0plus(&a, Mode::Multiplicative).unwrap();
        assert!(v.is_refuted());
        assert_eq!(v.witness(), Some(&Witness::Minor { rows: vec![0], cols: vec![0], value: -1.0 }));
    }

    #[test]
    fn nilpotent_order_sum() {
        // -A ∈ P0 with every order sum zero
        let a = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(necessary_p0plus(&a, Mode::Multiplicative).unwrap().is_refuted());
        assert!(necessary_p0plus(&Matrix::zeros(2), Mode::Additive).unwrap().is_unknown());
    }

    #[test]
    fn p_matrix_but_unstable() {
        // -A = 0.1 I + cyclic permutation: every principal minor is positive,
        // yet 0.1 + e^{2πi/3} has negative real part
        let a = Matrix::from_rows(&[[-0.1, 0.0, -1.0], [-1.0, -0.1, 0.0], [0.0, -1.0, -0.1]]).unwrap();
        let v = necessary_p0plus(&a, Mode::Multiplicative).unwrap();
        assert_eq!(v.reason(), "not_hurwitz");
    }
}
