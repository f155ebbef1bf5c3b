use num_complex::Complex64;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lyapunov::{certified_margin, diagonal_stability_search, Certificate, CertificateKind};
use crate::matrix::{additive_compound_2, tau_minor, Matrix};
use crate::spectra::{eigenvalues, point_tol, Membership, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

/// A diagonal block of the block-triangular form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalBlock {
    pub indices: Vec<usize>,
    pub matrix: Matrix,
}

/// Strongly connected components of the off-diagonal graph (`i → j` when
/// `a_ij ≠ 0`), ordered so that the permuted matrix is block upper
/// triangular.
pub fn arcak_decompose(a: &Matrix) -> Vec<DiagonalBlock> {
    let n = a.n();
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)] != 0.0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    // tarjan_scc lists components sinks first
    let mut sccs = tarjan_scc(&g);
    sccs.reverse();
    sccs.into_iter()
        .map(|c| {
            let mut indices: Vec<usize> = c.into_iter().map(|v| g[v]).collect();
            indices.sort_unstable();
            let matrix = a.submatrix(&indices);
            DiagonalBlock { indices, matrix }
        })
        .collect()
}

/// Diagonal stability (Hurwitz convention) block by block. The block factors
/// are glued with geometric weights and the result is re-verified on `A`.
pub fn arcak_diagonal_stability(a: &Matrix, budget: usize) -> Result<Verdict> {
    let blocks = arcak_decompose(a);
    let region = Region::HalfPlaneLeft;
    let mut factors = Vec::with_capacity(blocks.len());
    let mut iterations = 0;
    for b in &blocks {
        let v = diagonal_stability_search(&b.matrix, &region, budget)?;
        match v.certificate() {
            Some(c) => {
                iterations += c.iterations;
                factors.push(c.factor.diagonal());
            }
            None => {
                return Ok(Verdict::unknown("block_uncertified").with_detail(format!("block {:?}: {}", b.indices, v.reason())));
            }
        }
    }
    let n = a.n();
    let kind = CertificateKind::DiagonalLyapunov;
    for exp in (0..=8).flat_map(|k| [k, -k]) {
        let r = 10f64.powi(exp);
        let mut d = vec![0.0; n];
        for (k, (b, f)) in blocks.iter().zip(&factors).enumerate() {
            let t = r.powi(k as i32);
            b.indices.iter().zip(f).for_each(|(&i, &x)| d[i] = t * x);
        }
        let s: f64 = d.iter().sum();
        let factor = Matrix::diag(&d.iter().map(|x| x / s).collect::<Vec<_>>());
        let margin = certified_margin(a, kind, &region, &factor)?;
        if margin > 0.0 {
            let cert = Certificate { kind, factor, margin, region, iterations };
            return Ok(Verdict::proved_with("block_certificates", Witness::Certificate(cert))
                .with_detail(format!("{} blocks", blocks.len())));
        }
    }
    Ok(Verdict::unknown("block_gluing_failed").with_detail("every block is certified but no weighting verified"))
}

/// Tridiagonal with nonnegative off-diagonal entries, nonpositive corners
/// `a_1n`, `a_n1` and zeros elsewhere; for `n <= 2` every matrix qualifies.
/// Equivalent to `A^[2]` being Metzler.
pub fn str1_sign_structure(a: &Matrix) -> bool {
    let n = a.n();
    let ok = n <= 2
        || (0..n).all(|i| {
            (0..n).all(|j| {
                let x = a[(i, j)];
                if i == j {
                    true
                } else if (i == 0 && j == n - 1) || (i == n - 1 && j == 0) {
                    x <= 0.0
                } else if i.abs_diff(j) == 1 {
                    x >= 0.0
                } else {
                    x == 0.0
                }
            })
        });
    debug_assert!(
        n < 2 || ok == is_metzler(&additive_compound_2(a).expect("n >= 2")),
        "sign structure disagrees with the second additive compound"
    );
    ok
}

fn is_metzler(m: &Matrix) -> bool {
    (0..m.n()).all(|i| (0..m.n()).all(|j| i == j || m[(i, j)] >= 0.0))
}

/// `A` is Hurwitz iff `A^[2]` is Hurwitz and `(-1)ⁿ det A > 0`. Unknown when
/// either test lands in its tolerance band.
pub fn li_wang(a: &Matrix) -> Result<Verdict> {
    let n = a.n();
    let signed_det = if n.is_multiple_of(2) { a.det() } else { -a.det() };
    let band = tau_minor(a.norm_inf(), n);
    if n >= 2 {
        let spec = eigenvalues(&additive_compound_2(a)?)?;
        let mut boundary: Option<Complex64> = None;
        for z in spec.iter().copied() {
            let m = Region::HalfPlaneLeft.membership(z, point_tol(z, DEFAULT_TOL));
            if m == Membership::Outside {
                return Ok(Verdict::refuted("compound_not_hurwitz", Witness::Eigenvalue { value: z })
                    .with_detail("eigenvalue of the second additive compound"));
            }
            if m == Membership::Boundary {
                boundary = Some(z);
            }
        }
        if let Some(z) = boundary {
            return Ok(Verdict::unknown("compound_on_boundary").with_detail(format!("eigenvalue {z}")));
        }
    }
    if signed_det < -band {
        return Ok(Verdict::refuted("determinant_sign", Witness::Bound { value: signed_det, threshold: 0.0 }));
    }
    if signed_det <= band {
        return Ok(Verdict::unknown("determinant_near_zero").with_detail(format!("(-1)^n det A = {signed_det:e}")));
    }
    Ok(Verdict::proved("li_wang"))
}
