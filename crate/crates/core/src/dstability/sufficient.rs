use petgraph::algo::{is_cyclic_directed, is_cyclic_undirected};
use petgraph::graph::{DiGraph, UnGraph};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lyapunov::diagonal_stability_search;
use crate::matrix::{classify, w_map, Flag, Matrix};
use crate::spectra::{region_stable, Region, DEFAULT_TOL};
use crate::verdict::Verdict;

/// One sufficient criterion and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub criterion: String,
    pub verdict: Verdict,
}

/// Sufficient conditions for multiplicative D-stability of a matrix in the
/// positive-stability convention (`DA` positive stable for all positive
/// diagonal `D`). Each item is Proved when its class membership is
/// established and Unknown otherwise; none of them refutes.
pub fn sufficient_suite(a: &Matrix, budget: usize) -> Result<Vec<SuiteItem>> {
    let report = classify(a)?;
    let positive_diag = a.diagonal().iter().all(|&x| x > 0.0);
    let mut items = Vec::new();
    let mut push = |criterion: &str, verdict: Verdict| items.push(SuiteItem { criterion: criterion.into(), verdict });

    push("diagonal_stability", diagonal_stability_search(a, &Region::HalfPlaneRight, budget)?);
    push("m_matrix", from_flag(&report.m_matrix, "m_matrix"));

    let dd = report.strict_row_dd.is_true() || report.strict_col_dd.is_true();
    push(
        "strict_diagonal_dominance",
        premise(dd && positive_diag, "strict_diagonal_dominance", "not strictly diagonally dominant with positive diagonal"),
    );

    push(
        "triangular_positive_diagonal",
        premise(
            acyclic(a) && positive_diag,
            "triangular_positive_diagonal",
            "not permutation-similar to a triangular matrix with positive diagonal",
        ),
    );

    let tridiagonal = if path_forest(a) { &report.p } else { &report.tridiagonal };
    push("tridiagonal_p_matrix", both(tridiagonal, &report.p, "tridiagonal_p_matrix"));
    push("sign_symmetric_p_matrix", both(&report.sign_symmetric, &report.p, "sign_symmetric_p_matrix"));
    push("kosov_w_map", kosov_w(a));
    Ok(items)
}

/// First Proved item, else Unknown.
pub fn suite_verdict(items: &[SuiteItem]) -> Verdict {
    match items.iter().find(|it| it.verdict.is_proved()) {
        Some(it) => it.verdict.clone(),
        None => Verdict::unknown("no_sufficient_condition_met"),
    }
}

/// Permutation-similar to a triangular matrix: the off-diagonal digraph has
/// no cycle.
fn acyclic(a: &Matrix) -> bool {
    let n = a.n();
    let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
    let v: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i && a[(i, j)] != 0.0) {
            g.add_edge(v[i], v[j], ());
        }
    }
    !is_cyclic_directed(&g)
}

/// Permutation-similar to a tridiagonal matrix: the symmetrized graph is a
/// disjoint union of paths.
fn path_forest(a: &Matrix) -> bool {
    let n = a.n();
    let mut g = UnGraph::<(), ()>::with_capacity(n, 0);
    let v: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for i in 0..n {
        for j in (i + 1..n).filter(|&j| a[(i, j)] != 0.0 || a[(j, i)] != 0.0) {
            g.add_edge(v[i], v[j], ());
        }
    }
    v.iter().all(|&x| g.neighbors(x).count() <= 2) && !is_cyclic_undirected(&g)
}

fn premise(holds: bool, reason: &str, why: &str) -> Verdict {
    if holds {
        Verdict::proved(reason)
    } else {
        Verdict::unknown("premise_not_met").with_detail(why.to_string())
    }
}

fn from_flag(flag: &Flag, reason: &str) -> Verdict {
    match flag.value {
        Some(true) => Verdict::proved(reason),
        Some(false) => with_witness(Verdict::unknown("premise_not_met"), flag),
        None => with_witness(Verdict::unknown("premise_undecided"), flag),
    }
}

fn with_witness(v: Verdict, flag: &Flag) -> Verdict {
    match &flag.witness {
        Some(w) => v.with_detail(w.to_string()),
        None => v,
    }
}

fn both(a: &Flag, b: &Flag, reason: &str) -> Verdict {
    if a.is_true() {
        from_flag(b, reason)
    } else {
        from_flag(a, reason)
    }
}

/// With `B = -A` Hurwitz-convention: `B` is diagonally stable when `B^W` or
/// `(B⁻¹)^W` is Hurwitz, where `W` keeps the diagonal and takes absolute
/// values elsewhere.
fn kosov_w(a: &Matrix) -> Verdict {
    let b = a.scale(-1.0);
    if region_stable(&w_map(&b), &Region::HalfPlaneLeft, DEFAULT_TOL).is_proved() {
        return Verdict::proved("kosov_w_map");
    }
    match b.inverse() {
        Some(inv) if region_stable(&w_map(&inv), &Region::HalfPlaneLeft, DEFAULT_TOL).is_proved() => {
            Verdict::proved("kosov_w_map_inverse")
        }
        _ => Verdict::unknown("premise_not_met").with_detail("neither W-image is Hurwitz"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proved(items: &[SuiteItem]) -> Vec<&str> {
        items.iter().filter(|i| i.verdict.is_proved()).map(|i| i.criterion.as_str()).collect()
    }

    #[test]
    fn identity_fires_structural_items() {
        let items = sufficient_suite(&Matrix::identity(3), 200).unwrap();
        let p = proved(&items);
        for c in ["m_matrix", "strict_diagonal_dominance", "triangular_positive_diagonal", "diagonal_stability"] {
            assert!(p.contains(&c), "{c} missing from {p:?}");
        }
    }

    #[test]
    fn permuted_structures() {
        let tri = Matrix::from_rows(&[[2.0, 0.0, 0.0], [5.0, 1.0, 0.0], [-3.0, 4.0, 3.0]]).unwrap();
        let path = Matrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]).unwrap();
        let p = [2, 0, 1];
        assert!(acyclic(&tri.permute(&p)) && path_forest(&path.permute(&p)));
        let cyc = Matrix::from_rows(&[[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]]).unwrap();
        assert!(!acyclic(&cyc) && !path_forest(&cyc));
        let star = Matrix::from_rows(&[[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 0.0, 0.0], [1.0, 0.0, 1.0, 0.0], [1.0, 0.0, 0.0, 1.0]]);
        assert!(!path_forest(&star.unwrap()));
    }

    #[test]
    fn tridiagonal_p() {
        let a = Matrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]).unwrap();
        let items = sufficient_suite(&a, 200).unwrap();
        assert!(proved(&items).contains(&"tridiagonal_p_matrix"));
        assert!(suite_verdict(&items).is_proved());
    }

    #[test]
    fn non_d_stable_has_no_item() {
        // positive-convention analogue of the classical non-D-stable example
        let a = Matrix::from_rows(&[[-1.0, 4.0], [-1.0, 2.0]]).unwrap();
        let items = sufficient_suite(&a, 500).unwrap();
        assert!(proved(&items).is_empty());
        assert!(suite_verdict(&items).is_unknown());
    }

    #[test]
    fn dense_spd_certified() {
        let a = Matrix::from_rows(&[[4.0, 1.0, 0.5], [1.0, 3.0, 1.0], [0.5, 1.0, 2.0]]).unwrap();
        let items = sufficient_suite(&a, 2000).unwrap();
        let cert = items[0].verdict.certificate().expect("certificate");
        assert!(crate::lyapunov::verify_certificate(&a, cert).unwrap() > 0.0);
    }
}
