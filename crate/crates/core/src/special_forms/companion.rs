//! Second-order systems `ẍ = Aẋ + Bx` through the companion matrix
//! `C = [[A, B], [I, 0]]` and the block Hadamard classes
//! `𝒢₁ = {[[D, I], [I, I]]}` and `𝒢₂ = {[[I, D], [I, I]]}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dstability::{analyze_d_stability, escape, sample_rng, Convention, Counterexample, GClass};
use crate::error::{Error, Result};
use crate::matrix::{block_hadamard, classify, compound, Matrix};
use crate::spectra::{eigenvalues, sym_eigen, Region};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompanionPair {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

pub fn build_companion(a: &Matrix, b: &Matrix) -> Result<CompanionPair> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.n() });
    }
    let c = Matrix::from_fn(2 * n, |r, col| match (r < n, col < n) {
        (true, true) => a[(r, col)],
        (true, false) => b[(r, col - n)],
        (false, true) => f64::from(r - n == col),
        (false, false) => 0.0,
    });
    Ok(CompanionPair { a: a.clone(), b: b.clone(), c })
}

/// `[[X, Y], [I, I]]`-shaped class member with `n×n` blocks.
fn two_by_two(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.n();
    Matrix::from_fn(2 * n, |r, c| match (r < n, c < n) {
        (true, true) => x[(r, c)],
        (true, false) => y[(r, c - n)],
        _ => f64::from(r % n == c % n),
    })
}

fn premises(a: &Matrix, b: &Matrix) -> Result<Option<String>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.n() });
    }
    if let Some(i) = (0..n).find(|&i| !(a[(i, i)] < 0.0)) {
        return Ok(Some(format!("a_{i}{i} is not negative")));
    }
    if !(b.is_diagonal() && b.diagonal().iter().all(|&x| x < 0.0)) {
        return Ok(Some("B is not negative diagonal".into()));
    }
    if !classify(a)?.ndd.is_true() {
        return Ok(Some("A is not negative diagonally dominant".into()));
    }
    Ok(None)
}

/// `C` is Hurwitz when `a_ii < 0`, `B` is negative diagonal and `A` is NDD.
pub fn criterion1(a: &Matrix, b: &Matrix) -> Result<Verdict> {
    Ok(match premises(a, b)? {
        None => Verdict::proved("criterion1"),
        Some(why) => Verdict::unknown("premise_not_met").with_detail(why),
    })
}

/// Under the same premises `C` is multiplicative D-stable: `DC` is similar
/// to a companion matrix that again satisfies them.
pub fn theorem1_dstable(a: &Matrix, b: &Matrix) -> Result<Verdict> {
    Ok(match premises(a, b)? {
        None => Verdict::proved("theorem1_companion_d_stable"),
        Some(why) => Verdict::unknown("premise_not_met").with_detail(why),
    })
}

/// Samples positive diagonal `D`, forms `G(D)⋄C` and returns the first
/// member whose spectrum leaves the left half-plane.
fn sample_block_class(
    c: &Matrix,
    n: usize,
    member: impl Fn(&Matrix) -> Matrix + Sync,
    samples: u64,
    seed: u64,
) -> Option<Counterexample> {
    (0..samples).into_par_iter().find_map_first(|i| {
        let d = GClass::PositiveDiagonal.sample(n, &mut sample_rng(seed, i));
        let g = member(&d);
        let realized = block_hadamard(&g, c, n).ok()?;
        let z = escape(&realized, &Region::HalfPlaneLeft)?;
        Some(Counterexample { g, realized, eigenvalue: z, sample: i })
    })
}

/// `C = [[A, bI], [I, 0]]` with `b < 0` and `a_ii < 0` is `(𝒢₁, ⋄)`-stable
/// exactly when `A` is D-stable, so the D-stability analysis of `A` decides.
/// A refutation is transferred to a `𝒢₁` member: if `DA` has an eigenvalue
/// `λ` with `Re λ > 0`, the roots of `μ² - λμ - b` sum to `λ`.
pub fn g1_equivalence(a: &Matrix, b: f64, samples: u64, seed: u64, budget: usize) -> Result<Verdict> {
    if !(b < 0.0) {
        return Err(Error::InvalidArgument(format!("b = {b} must be negative")));
    }
    let n = a.n();
    if let Some(i) = (0..n).find(|&i| !(a[(i, i)] < 0.0)) {
        return Err(Error::Precondition(format!("a_{i}{i} = {} is not negative", a[(i, i)])));
    }
    let pair = build_companion(a, &Matrix::identity(n).scale(b))?;
    let member = |d: &Matrix| two_by_two(d, &Matrix::identity(n));
    let analysis = analyze_d_stability(a, Convention::Hurwitz, samples, seed, budget)?;
    let v = analysis.summary;
    if !v.is_refuted() {
        let detail = format!("D-stability of A: {}", v.reason());
        return Ok(match v.status() {
            crate::verdict::Status::Proved => Verdict::proved("g1_equivalence"),
            _ => Verdict::unknown("g1_equivalence"),
        }
        .with_detail(detail));
    }
    let transferred = analysis.falsify.counterexample().and_then(|cx| {
        let g = member(&cx.g);
        let realized = block_hadamard(&g, &pair.c, n).ok()?;
        let z = escape(&realized, &Region::HalfPlaneLeft)?;
        Some(Counterexample { g, realized, eigenvalue: z, sample: cx.sample })
    });
    let cx = transferred.or_else(|| sample_block_class(&pair.c, n, member, samples, seed));
    Ok(match cx {
        Some(cx) => Verdict::refuted("g1_equivalence", Witness::Counterexample(cx)).with_seed(seed),
        None => {
            let w = v.witness().cloned().expect("refutations carry witnesses");
            Verdict::refuted("g1_equivalence", w).with_detail(format!("A is not D-stable: {}", v.reason()))
        }
    })
}

/// Sufficient conditions for D-negativity (`DB` has real negative spectrum
/// for all positive diagonal `D`), each with its reason.
fn d_negative(b: &Matrix) -> Result<Option<&'static str>> {
    let n = b.n();
    let tol = 1e-12 * (1.0 + b.max_abs());
    if b.is_symmetric(tol) && sym_eigen(&b.symmetric_part()).max() < 0.0 {
        return Ok(Some("symmetric_negative_definite"));
    }
    let neg = b.scale(-1.0);
    if n <= 6 && (1..=n).all(|k| compound(&neg, k).is_ok_and(|m| m.as_slice().iter().all(|&x| x > 0.0))) {
        return Ok(Some("negation_strictly_totally_positive"));
    }
    let tridiagonal = (0..n).all(|i| (0..n).all(|j| i.abs_diff(j) <= 1 || b[(i, j)] == 0.0));
    let sign_symmetric = (0..n.saturating_sub(1)).all(|i| b[(i, i + 1)] * b[(i + 1, i)] >= 0.0);
    if tridiagonal && sign_symmetric && classify(&neg)?.p.is_true() {
        return Ok(Some("sign_symmetric_tridiagonal_negation_p"));
    }
    Ok(None)
}

/// `C = [[aI, B], [I, 0]]` with `a < 0`, `b_ii < 0`: D-negativity of `B`
/// makes `C` `(𝒢₂, ⋄)`-stable. Sampling `𝒢₂` can refute; an observed failure
/// of D-negativity alone only leaves the verdict Unknown.
pub fn g2_sufficient(b: &Matrix, a: f64, samples: u64, seed: u64) -> Result<Verdict> {
    if !(a < 0.0) {
        return Err(Error::InvalidArgument(format!("a = {a} must be negative")));
    }
    let n = b.n();
    if let Some(i) = (0..n).find(|&i| !(b[(i, i)] < 0.0)) {
        return Err(Error::Precondition(format!("b_{i}{i} = {} is not negative", b[(i, i)])));
    }
    if let Some(reason) = d_negative(b)? {
        return Ok(Verdict::proved("g2_d_negative").with_detail(reason));
    }
    let pair = build_companion(&Matrix::identity(n).scale(a), b)?;
    let member = |d: &Matrix| two_by_two(&Matrix::identity(n), d);
    if let Some(cx) = sample_block_class(&pair.c, n, member, samples, seed) {
        return Ok(Verdict::refuted("g2_counterexample", Witness::Counterexample(cx)).with_seed(seed));
    }
    let violation = (0..samples).into_par_iter().find_first(|&i| {
        let d = GClass::PositiveDiagonal.sample(n, &mut sample_rng(seed, i));
        eigenvalues(&(&d * b)).is_ok_and(|s| s.iter().any(|z| z.im.abs() > 1e-9 * (1.0 + z.norm()) || z.re >= 0.0))
    });
    let detail = match violation {
        Some(i) => format!("D-negativity fails at sample {i}; companion members stayed stable"),
        None => format!("D-negativity not established; {samples} samples stayed stable"),
    };
    Ok(Verdict::unknown("g2_undecided").with_detail(detail).with_seed(seed))
}
