//! Class predicates with witnesses for every negative answer.

use serde::{Deserialize, Serialize};

use super::{
    combinations, comparison_matrix, minor, principal_minors, tau_minor, IndexSet, Lu, Matrix,
    MINOR_ENUMERATION_CAP,
};
use crate::error::{check_cap, Result};

/// Cap for the predicates quantified over all pairs of index sets.
pub const PAIRWISE_MINOR_CAP: usize = 8;

/// Why a flag came out false (or could not be decided).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlagWitness {
    Entry { row: usize, col: usize, value: f64 },
    Minor { rows: Vec<usize>, cols: Vec<usize>, value: f64 },
    MinorProduct { rows: Vec<usize>, cols: Vec<usize>, value: f64 },
    OrderSum { order: usize, value: f64 },
    Row { row: usize, excess: f64 },
    Commutator { norm: f64 },
    Implied { by: String },
    Capped { cap: usize },
}

impl std::fmt::Display for FlagWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Entry { row, col, value } => write!(f, "entry ({row}, {col}) = {value:e}"),
            Self::Minor { rows, cols, value } => write!(f, "minor {rows:?}x{cols:?} = {value:e}"),
            Self::MinorProduct { rows, cols, value } => {
                write!(f, "minor product {rows:?}x{cols:?} = {value:e}")
            }
            Self::OrderSum { order, value } => write!(f, "order-{order} minor sum = {value:e}"),
            Self::Row { row, excess } => write!(f, "row {row} off-diagonal excess {excess:e}"),
            Self::Commutator { norm } => write!(f, "commutator norm {norm:e}"),
            Self::Implied { by } => write!(f, "implied by {by}"),
            Self::Capped { cap } => write!(f, "dimension above cap {cap}"),
        }
    }
}

/// A tri-state flag: `Some(true)`, `Some(false)` with a witness, or `None`
/// when the dimension cap prevented a decision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Flag {
    pub value: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<FlagWitness>,
}

impl Flag {
    fn yes() -> Self {
        Self { value: Some(true), witness: None }
    }
    fn no(w: FlagWitness) -> Self {
        Self { value: Some(false), witness: Some(w) }
    }
    fn unknown(cap: usize) -> Self {
        Self { value: None, witness: Some(FlagWitness::Capped { cap }) }
    }
    fn from_check(r: std::result::Result<(), FlagWitness>) -> Self {
        match r {
            Ok(()) => Self::yes(),
            Err(w) => Self::no(w),
        }
    }
    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }
    pub fn is_false(&self) -> bool {
        self.value == Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub z: Flag,
    pub metzler: Flag,
    pub p: Flag,
    pub p0: Flag,
    pub p0_plus: Flag,
    pub m_matrix: Flag,
    pub hicksian: Flag,
    pub strict_row_dd: Flag,
    pub strict_col_dd: Flag,
    pub ndd: Flag,
    pub pdd: Flag,
    pub tridiagonal: Flag,
    pub normal: Flag,
    pub sign_symmetric: Flag,
    pub h_matrix: Flag,
    pub h_plus: Flag,
    /// Positive weights `m` with `m_i|a_ii| > Σ_{j≠i} m_j|a_ij|`, present when
    /// the comparison matrix is an M-matrix.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dominance_weights: Option<Vec<f64>>,
}

/// Evaluates every class predicate. Predicates that need all principal minors
/// are left undecided beyond `n = 14`, except for Z-matrices where the
/// M-matrix test only needs leading minors.
pub fn classify(a: &Matrix) -> Result<ClassReport> {
    let n = a.n();
    let norm = a.norm_inf();

    let z = Flag::from_check(off_diagonal_check(a, |x| x <= 0.0));
    let metzler = Flag::from_check(off_diagonal_check(a, |x| x >= 0.0));
    let tridiagonal = Flag::from_check(first_entry(a, |i, j, x| i.abs_diff(j) > 1 && x != 0.0));
    let strict_row_dd = Flag::from_check(row_dominance(a));
    let strict_col_dd = Flag::from_check(row_dominance(&a.transpose()));
    let normal = normality(a);

    let (p, p0, p0_plus, hicksian) = if n <= MINOR_ENUMERATION_CAP {
        minor_flags(a, norm)?
    } else {
        let cap = MINOR_ENUMERATION_CAP;
        (Flag::unknown(cap), Flag::unknown(cap), Flag::unknown(cap), Flag::unknown(cap))
    };

    let m_matrix = if z.is_false() {
        Flag::no(z.witness.clone().unwrap())
    } else if n <= MINOR_ENUMERATION_CAP {
        if p.is_true() {
            Flag::yes()
        } else {
            p.clone()
        }
    } else {
        Flag::from_check(leading_minor_check(a))
    };
    // beyond the cap an M-matrix certifies the minor-based flags it implies
    let (p, p0, p0_plus) = if m_matrix.is_true() && p.value.is_none() {
        let implied = Flag { value: Some(true), witness: Some(FlagWitness::Implied { by: "m_matrix".into() }) };
        (implied.clone(), implied.clone(), implied)
    } else {
        (p, p0, p0_plus)
    };

    let cmp = comparison_matrix(a);
    let h_matrix = if n <= MINOR_ENUMERATION_CAP {
        let (cp, _, _, _) = minor_flags(&cmp, norm)?;
        cp
    } else {
        Flag::from_check(leading_minor_check(&cmp))
    };
    let dominance_weights = if h_matrix.is_true() { dominance_weights(&cmp) } else { None };
    let diag_sign = |pred: fn(f64) -> bool| first_entry(a, move |i, j, x| i == j && !pred(x));
    let restrict = |base: &Flag, pred: fn(f64) -> bool| {
        if !base.is_true() {
            base.clone()
        } else {
            Flag::from_check(diag_sign(pred))
        }
    };
    let ndd = restrict(&h_matrix, |x| x < 0.0);
    let pdd = restrict(&h_matrix, |x| x > 0.0);
    let h_plus = restrict(&h_matrix, |x| x >= 0.0);

    let sign_symmetric = if n <= PAIRWISE_MINOR_CAP {
        Flag::from_check(sign_symmetry(a, norm))
    } else {
        Flag::unknown(PAIRWISE_MINOR_CAP)
    };

    Ok(ClassReport {
        z,
        metzler,
        p,
        p0,
        p0_plus,
        m_matrix,
        hicksian,
        strict_row_dd,
        strict_col_dd,
        ndd,
        pdd,
        tridiagonal,
        normal,
        sign_symmetric,
        h_matrix,
        h_plus,
        dominance_weights,
    })
}

fn first_entry(
    a: &Matrix,
    bad: impl Fn(usize, usize, f64) -> bool,
) -> std::result::Result<(), FlagWitness> {
    for i in 0..a.n() {
        for j in 0..a.n() {
            let x = a[(i, j)];
            if bad(i, j, x) {
                return Err(FlagWitness::Entry { row: i, col: j, value: x });
            }
        }
    }
    Ok(())
}

fn off_diagonal_check(a: &Matrix, ok: impl Fn(f64) -> bool) -> std::result::Result<(), FlagWitness> {
    first_entry(a, |i, j, x| i != j && !ok(x))
}

fn row_dominance(a: &Matrix) -> std::result::Result<(), FlagWitness> {
    for i in 0..a.n() {
        let off: f64 = (0..a.n()).filter(|&j| j != i).map(|j| a[(i, j)].abs()).sum();
        let excess = a[(i, i)].abs() - off;
        if excess <= 0.0 {
            return Err(FlagWitness::Row { row: i, excess });
        }
    }
    Ok(())
}

fn normality(a: &Matrix) -> Flag {
    let at = a.transpose();
    let c = &(a * &at) - &(&at * a);
    let norm = c.norm_fro();
    let scale = a.norm_fro();
    if norm <= 1e-10 * (1.0 + scale * scale) {
        Flag::yes()
    } else {
        Flag::no(FlagWitness::Commutator { norm })
    }
}

/// P, P0, P0⁺ and Hicksian flags from a single enumeration.
fn minor_flags(a: &Matrix, norm: f64) -> Result<(Flag, Flag, Flag, Flag)> {
    let n = a.n();
    let minors = principal_minors(a, n)?;
    let mut p = Flag::yes();
    let mut p0 = Flag::yes();
    let mut hicksian = Flag::yes();
    let mut sums = vec![0.0; n + 1];
    for (set, v) in &minors {
        let k = set.len();
        let tau = tau_minor(norm, k);
        sums[k] += v;
        let w = || FlagWitness::Minor { rows: set.indices().to_vec(), cols: set.indices().to_vec(), value: *v };
        if p.is_true() && *v <= tau {
            p = Flag::no(w());
        }
        if p0.is_true() && *v < -tau {
            p0 = Flag::no(w());
        }
        // minors of -A of order k are (-1)^k times those of A
        let neg = if k % 2 == 0 { *v } else { -*v };
        if hicksian.is_true() && neg <= tau {
            hicksian = Flag::no(w());
        }
    }
    let p0_plus = if p0.is_false() {
        p0.clone()
    } else {
        let bad = (1..=n).find(|&k| sums[k] <= tau_minor(norm, k));
        match bad {
            Some(k) => Flag::no(FlagWitness::OrderSum { order: k, value: sums[k] }),
            None => Flag::yes(),
        }
    };
    Ok((p, p0, p0_plus, hicksian))
}

/// Leading-minor positivity, which decides the M-matrix property of a Z-matrix.
fn leading_minor_check(a: &Matrix) -> std::result::Result<(), FlagWitness> {
    let norm = a.norm_inf();
    for k in 1..=a.n() {
        let idx: Vec<usize> = (0..k).collect();
        let v = Lu::new(&a.submatrix(&idx)).det();
        if v <= tau_minor(norm, k) {
            return Err(FlagWitness::Minor { rows: idx.clone(), cols: idx, value: v });
        }
    }
    Ok(())
}

/// Solves `M x = 1`; for a nonsingular M-matrix the solution is positive and
/// is a dominance weight vector.
fn dominance_weights(cmp: &Matrix) -> Option<Vec<f64>> {
    let x = Lu::new(cmp).solve(&vec![1.0; cmp.n()])?;
    if x.iter().all(|&v| v > 0.0) && cmp.mat_vec(&x).iter().all(|&v| v > 0.0) {
        Some(x)
    } else {
        None
    }
}

fn sign_symmetry(a: &Matrix, norm: f64) -> std::result::Result<(), FlagWitness> {
    let n = a.n();
    for k in 1..=n {
        let tau = tau_minor(norm, k);
        let sets = combinations(n, k);
        for (x, alpha) in sets.iter().enumerate() {
            for beta in &sets[x + 1..] {
                let v = minor(a, alpha, beta) * minor(a, beta, alpha);
                if v < -tau * tau {
                    return Err(FlagWitness::MinorProduct { rows: alpha.clone(), cols: beta.clone(), value: v });
                }
            }
        }
    }
    Ok(())
}

/// Strict row square dominance over every order of minors: for each index set
/// `α`, `A(α|α)² > Σ_{β≠α} A(α|β)²`. Limited to `n <= 8`.
pub fn square_dominant_rows(a: &Matrix) -> Result<std::result::Result<(), (IndexSet, f64)>> {
    let n = a.n();
    check_cap("square_dominant_rows", n, PAIRWISE_MINOR_CAP)?;
    for k in 1..=n {
        let sets = combinations(n, k);
        for alpha in &sets {
            let diag = minor(a, alpha, alpha).powi(2);
            let off: f64 = sets.iter().filter(|b| *b != alpha).map(|b| minor(a, alpha, b).powi(2)).sum();
            if diag <= off {
                return Ok(Err((IndexSet::new(alpha.clone(), n)?, diag - off)));
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_flags() {
        let r = classify(&Matrix::identity(3)).unwrap();
        for f in [&r.p, &r.p0, &r.p0_plus, &r.m_matrix, &r.normal, &r.strict_row_dd, &r.z, &r.metzler] {
            assert!(f.is_true());
        }
        assert!(r.hicksian.is_false());
        assert!(r.pdd.is_true() && r.ndd.is_false());
        assert_eq!(r.dominance_weights.as_deref(), Some(&[1.0, 1.0, 1.0][..]));
    }

    #[test]
    fn nilpotent_is_p0_not_p0_plus() {
        let r = classify(&m(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap();
        assert!(r.p0.is_true());
        assert!(r.p.is_false());
        assert_eq!(r.p0_plus.witness, Some(FlagWitness::OrderSum { order: 1, value: 0.0 }));
    }

    #[test]
    fn tridiagonal_m_matrix() {
        let a = m(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        // minors 2, 2 and 4 - 1 = 3
        let ms = principal_minors(&a, 2).unwrap();
        assert_eq!(ms.iter().map(|x| x.1).collect::<Vec<_>>(), vec![2.0, 2.0, 3.0]);
        let r = classify(&a).unwrap();
        assert!(r.m_matrix.is_true() && r.z.is_true() && r.p.is_true());
    }

    #[test]
    fn ndd_via_weights() {
        // not row dominant, but generalized dominant with weights
        let a = m(&[&[-1.0, 3.0], &[0.1, -1.0]]);
        let r = classify(&a).unwrap();
        assert!(r.strict_row_dd.is_false());
        assert!(r.ndd.is_true());
        let w = r.dominance_weights.unwrap();
        for i in 0..2 {
            let off: f64 = (0..2).filter(|&j| j != i).map(|j| w[j] * a[(i, j)].abs()).sum();
            assert!(w[i] * a[(i, i)].abs() > off);
        }
    }

    #[test]
    fn hicksian_and_sign_symmetry() {
        let a = m(&[&[-2.0, 1.0], &[1.0, -2.0]]);
        let r = classify(&a).unwrap();
        assert!(r.hicksian.is_true());
        assert!(r.sign_symmetric.is_true());
        let b = m(&[&[1.0, -4.0], &[1.0, -2.0]]);
        let r = classify(&b).unwrap();
        assert!(matches!(r.sign_symmetric.witness, Some(FlagWitness::MinorProduct { .. })));
    }

    #[test]
    fn large_z_matrix_uses_leading_minors() {
        let a = Matrix::from_fn(16, |i, j| if i == j { 3.0 } else if i.abs_diff(j) == 1 { -1.0 } else { 0.0 });
        let r = classify(&a).unwrap();
        assert!(r.m_matrix.is_true());
        assert!(r.p.is_true());
        assert!(r.sign_symmetric.value.is_none());
        let b = Matrix::from_fn(15, |i, j| if i == j { 1.0 } else { 0.5 });
        let r = classify(&b).unwrap();
        assert!(r.p.value.is_none() && r.m_matrix.is_false());
    }

    #[test]
    fn square_dominance() {
        assert!(square_dominant_rows(&Matrix::diag(&[2.0, -3.0, 1.0])).unwrap().is_ok());
        let a = m(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(square_dominant_rows(&a).unwrap().is_err());
        assert!(square_dominant_rows(&Matrix::identity(9)).is_err());
    }
}
