//! Randomized search for a class member that pushes the spectrum out of the
//! region.
//!
//! Sample `i` draws from its own ChaCha8 stream `(seed, i)`, so samples are
//! independent of scheduling and the reported witness is the one with the
//! smallest index, whatever the number of worker threads.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::spectra::{eigenvalues, point_tol, Membership, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

use super::{apply_op, BinOp, GClass};

/// A class member `g`, the analysed matrix `realized = g ∘ A`, and an
/// eigenvalue of `realized` outside the region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub g: Matrix,
    pub realized: Matrix,
    pub eigenvalue: Complex64,
    /// Index of the sample (or enumerated vertex) that produced `g`.
    pub sample: u64,
}

/// The RNG of sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Growth factors tried on each sample of an unbounded class when the region
/// is bounded.
const GROWTH: [f64; 7] = [1.0, 1e2, 1e4, 1e6, 1e8, 1e10, 1e12];

/// First eigenvalue of `m` strictly outside `region` (beyond the band).
pub fn escape(m: &Matrix, region: &Region) -> Option<Complex64> {
    let spec = eigenvalues(m).ok()?;
    let z = spec.iter().find(|&&z| region.membership(z, point_tol(z, DEFAULT_TOL)) == Membership::Outside).copied();
    z
}

/// Samples `samples` members of `class`, looking for `σ(G∘A) ⊄ region`.
///
/// Refuted carries the replayable [`Counterexample`]; otherwise the verdict is
/// Unknown. A bounded region paired with an unbounded class is probed along
/// growing multiples of each sample, because no stable matrix can survive
/// arbitrarily large members unless `G∘A` stays spectrally bounded.
pub fn falsify(a: &Matrix, class: &GClass, op: BinOp, region: &Region, samples: u64, seed: u64) -> Result<Verdict> {
    let n = a.n();
    class.validate(n)?;
    region.validate()?;
    apply_op(op, &Matrix::identity(n), a)?;
    let probe = region.is_bounded() && !class.is_bounded();
    let growth: &[f64] = if probe { &GROWTH } else { &GROWTH[..1] };
    let hit = (0..samples).into_par_iter().find_map_first(|i| {
        let mut rng = sample_rng(seed, i);
        let g0 = class.sample(n, &mut rng);
        debug_assert!(class.contains(&g0, 1e-9), "sampler left the class");
        growth.iter().find_map(|&t| {
            let g = if t == 1.0 { g0.clone() } else { class.grow(&g0, t) };
            let realized = apply_op(op, &g, a).ok()?;
            let z = escape(&realized, region)?;
            Some((Counterexample { g, realized, eigenvalue: z, sample: i }, t))
        })
    });
    Ok(match hit {
        Some((cx, t)) => {
            let v = if t > 1.0 {
                Verdict::refuted("unbounded_class_in_bounded_region", Witness::Counterexample(cx))
                    .with_detail(format!("sample grown by {t:e} leaves the bounded region"))
            } else {
                Verdict::refuted("falsified_by_sample", Witness::Counterexample(cx))
            };
            v.with_seed(seed)
        }
        None => Verdict::unknown("no_counterexample_found")
            .with_detail(format!("{samples} samples of {class} under {op} stayed inside {region}"))
            .with_seed(seed),
    })
}

/// Recomputes `g ∘ A` and its spectrum, returning the eigenvalue nearest the
/// recorded one.
pub fn replay(a: &Matrix, op: BinOp, cx: &Counterexample) -> Result<Complex64> {
    let realized = apply_op(op, &cx.g, a)?;
    let spec = eigenvalues(&realized)?;
    Ok(spec
        .iter()
        .copied()
        .min_by(|x, y| (x - cx.eigenvalue).norm().total_cmp(&(y - cx.eigenvalue).norm()))
        .expect("nonempty spectrum"))
}
