use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Result};
use crate::matrix::{combinations, IndexSet, Matrix, MINOR_ENUMERATION_CAP};
use crate::spectra::Region;
use crate::verdict::{Verdict, Witness};

use super::{falsify, necessary_p0plus, sufficient_suite, suite_verdict, BinOp, Convention, GClass, Mode, SuiteItem};

/// Outcome of [`analyze_d_stability`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub convention: Convention,
    pub necessary: Verdict,
    pub falsify: Verdict,
    /// Skipped (`None`) once a refutation is known.
    pub sufficient: Option<Vec<SuiteItem>>,
    pub summary: Verdict,
}

/// Multiplicative D-stability of `a` in the given convention: necessary
/// conditions, then sampling, then the sufficient suite. Certificates are
/// reported for `a` itself in its own convention.
pub fn analyze_d_stability(a: &Matrix, convention: Convention, samples: u64, seed: u64, budget: usize) -> Result<Analysis> {
    let hurwitz = convention.to_hurwitz(a);
    let necessary = if a.n() <= MINOR_ENUMERATION_CAP {
        necessary_p0plus(&hurwitz, Mode::Multiplicative)?
    } else {
        Verdict::unknown("necessary_capped").with_detail(format!("n > {MINOR_ENUMERATION_CAP}"))
    };
    let sampled = falsify(a, &GClass::PositiveDiagonal, BinOp::Multiply, &convention.region(), samples, seed)?;
    let (sufficient, summary) = if necessary.is_refuted() {
        (None, necessary.clone())
    } else if sampled.is_refuted() {
        (None, sampled.clone())
    } else {
        let mut items = sufficient_suite(&hurwitz.scale(-1.0), budget)?;
        if convention == Convention::Hurwitz {
            items.iter_mut().for_each(|it| relabel_certificate(&mut it.verdict));
        }
        let v = suite_verdict(&items);
        (Some(items), v)
    };
    Ok(Analysis { convention, necessary, falsify: sampled, sufficient, summary })
}

/// A right-half-plane diagonal certificate of `-A` has the same operator
/// `DA + AᵀD` as a left-half-plane certificate of `A`.
fn relabel_certificate(v: &mut Verdict) {
    if let Some(cert) = v.certificate() {
        let mut cert = cert.clone();
        if cert.region == Region::HalfPlaneRight {
            cert.region = Region::HalfPlaneLeft;
            *v = v.clone().with_witness(Witness::Certificate(cert));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TotalScan {
    pub entries: Vec<(IndexSet, Verdict)>,
    pub overall: Verdict,
}

pub const TOTAL_SCAN_CAP: usize = 10;

/// Runs [`analyze_d_stability`] on every principal submatrix of order at most
/// `depth`. Any refuted submatrix refutes total D-stability; all proved with
/// `depth = n` proves it.
pub fn total_stability_scan(
    a: &Matrix,
    depth: usize,
    convention: Convention,
    samples: u64,
    seed: u64,
    budget: usize,
) -> Result<TotalScan> {
    let n = a.n();
    check_cap("total_stability_scan", n, TOTAL_SCAN_CAP)?;
    let depth = depth.min(n);
    let mut entries = Vec::new();
    for k in 1..=depth {
        for idx in combinations(n, k) {
            let sub = a.submatrix(&idx);
            let verdict = analyze_d_stability(&sub, convention, samples, seed, budget)?.summary;
            entries.push((IndexSet::new(idx, n)?, verdict));
        }
    }
    let overall = if let Some((set, v)) = entries.iter().find(|(_, v)| v.is_refuted()) {
        v.clone().with_detail(format!("principal submatrix {}", set.one_based()))
    } else if entries.iter().all(|(_, v)| v.is_proved()) {
        if depth == n {
            Verdict::proved("totally_d_stable")
        } else {
            Verdict::unknown("scan_depth_limited").with_detail(format!("all submatrices of order <= {depth} proved"))
        }
    } else {
        Verdict::unknown("some_submatrix_undecided")
    };
    Ok(TotalScan { entries, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::verify_certificate;

    #[test]
    fn minus_identity() {
        let a = Matrix::identity(3).scale(-1.0);
        let r = analyze_d_stability(&a, Convention::Hurwitz, 500, 1, 500).unwrap();
        assert!(r.summary.is_proved());
        let items = r.sufficient.unwrap();
        let cert = items[0].verdict.certificate().unwrap();
        assert!(verify_certificate(&a, cert).unwrap() > 0.0);
    }

    #[test]
    fn classical_example_refuted() {
        let a = Matrix::from_rows(&[[1.0, -4.0], [1.0, -2.0]]).unwrap();
        let r = analyze_d_stability(&a, Convention::Hurwitz, 2000, 1, 500).unwrap();
        assert!(r.summary.is_refuted());
        assert!(r.falsify.is_refuted());
        assert!(r.sufficient.is_none());
        let p = analyze_d_stability(&a.scale(-1.0), Convention::Positive, 2000, 1, 500).unwrap();
        assert_eq!(p.summary, r.summary);
    }

    #[test]
    fn total_scan() {
        let m = Matrix::from_rows(&[[2.0, -1.0, 0.0], [-0.5, 2.0, -1.0], [0.0, -1.0, 3.0]]).unwrap();
        let t = total_stability_scan(&m, 3, Convention::Positive, 300, 2, 500).unwrap();
        assert_eq!(t.entries.len(), 7);
        assert!(t.overall.is_proved());
        // a_11 < 0: the 1×1 block is not positive stable
        let bad = Matrix::from_rows(&[[-1.0, 0.0], [0.0, 1.0]]).unwrap();
        let t = total_stability_scan(&bad, 1, Convention::Positive, 100, 2, 100).unwrap();
        assert!(t.overall.is_refuted());
    }
}
