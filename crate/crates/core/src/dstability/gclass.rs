//! Matrix classes `𝒢`, their samplers, and the binary operations `∘`.

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{block_hadamard, hadamard, Matrix};

/// Magnitude range of log-uniform diagonal samples.
pub const LOG_RANGE: (f64, f64) = (1e-3, 1e3);
/// Entry range of the rank-k positive factors.
pub const RANK_FACTOR_RANGE: (f64, f64) = (0.1, 10.0);
/// Upper end used for an interval coordinate with no finite maximum, as a
/// multiple of its minimum.
const OPEN_INTERVAL_SPAN: f64 = 1e6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GClass {
    PositiveDiagonal,
    NegativeDiagonal,
    /// Real diagonal with `|d_ii| < 1`.
    DiagonalNormLt1,
    /// Diagonal with entries `±1`.
    VertexDiagonal,
    /// Positive diagonal, constant on each block of the partition.
    AlphaScalar { partition: Vec<Vec<usize>> },
    /// Block diagonal with a symmetric positive definite block per part.
    AlphaBlockSpd { partition: Vec<Vec<usize>> },
    Spd,
    /// Positive diagonal with `d[order[0]] >= d[order[1]] >= ...`.
    OrderedDiagonal { order: Vec<usize> },
    /// `d_min <= d_ii <= d_max`; a missing `d_max` entry is unbounded.
    IntervalDiagonal { d_min: Vec<f64>, d_max: Vec<Option<f64>> },
    /// Diagonal with `sign(d_ii) = signs[i]`, where `signs[i] ∈ {-1, 0, 1}`.
    SignPatternDiagonal { signs: Vec<i8> },
    /// Sum of `k` outer products of entrywise positive vectors.
    EntrywisePositiveRank { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BinOp {
    Multiply,
    Add,
    Hadamard,
    BlockHadamard { block: usize },
}

impl GClass {
    /// Structural validity for dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        match self {
            GClass::AlphaScalar { partition } | GClass::AlphaBlockSpd { partition } => {
                let mut seen = vec![false; n];
                for block in partition {
                    if block.is_empty() {
                        return bad("empty partition block".into());
                    }
                    for &i in block {
                        if i >= n || seen[i] {
                            return bad(format!("partition index {i} repeated or out of range"));
                        }
                        seen[i] = true;
                    }
                }
                if seen.iter().any(|s| !s) {
                    return bad("partition does not cover all indices".into());
                }
            }
            GClass::OrderedDiagonal { order } => {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return bad("order must be a permutation of 0..n".into());
                }
            }
            GClass::IntervalDiagonal { d_min, d_max } => {
                if d_min.len() != n || d_max.len() != n {
                    return Err(Error::DimensionMismatch { left: n, right: d_min.len().min(d_max.len()) });
                }
                let ok = |i: usize| {
                    d_min[i] > 0.0 && d_min[i].is_finite() && d_max[i].is_none_or(|m| m.is_finite() && d_min[i] < m)
                };
                if !(0..n).all(ok) {
                    return bad("interval bounds need 0 < d_min < d_max".into());
                }
            }
            GClass::SignPatternDiagonal { signs } => {
                if signs.len() != n {
                    return Err(Error::DimensionMismatch { left: n, right: signs.len() });
                }
                if signs.iter().any(|s| !(-1..=1).contains(s)) {
                    return bad("signs must be -1, 0 or 1".into());
                }
            }
            GClass::EntrywisePositiveRank { k }
                if (*k == 0 || *k > n) => {
                    return bad(format!("rank {k} outside 1..={n}"));
                }
            _ => {}
        }
        Ok(())
    }

    /// Whether the class is a bounded subset of matrix space.
    pub fn is_bounded(&self) -> bool {
        match self {
            GClass::DiagonalNormLt1 | GClass::VertexDiagonal => true,
            GClass::IntervalDiagonal { d_max, .. } => d_max.iter().all(Option::is_some),
            GClass::SignPatternDiagonal { signs } => signs.iter().all(|&s| s == 0),
            _ => false,
        }
    }

    /// Draws a member of the class. The caller validates the class first.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Matrix {
        let logu = |rng: &mut R, (lo, hi): (f64, f64)| log_uniform(rng, lo, hi);
        match self {
            GClass::PositiveDiagonal => Matrix::diag(&(0..n).map(|_| logu(rng, LOG_RANGE)).collect::<Vec<_>>()),
            GClass::NegativeDiagonal => Matrix::diag(&(0..n).map(|_| -logu(rng, LOG_RANGE)).collect::<Vec<_>>()),
            GClass::DiagonalNormLt1 => {
                Matrix::diag(&(0..n).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<_>>())
            }
            GClass::VertexDiagonal => {
                Matrix::diag(&(0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect::<Vec<_>>())
            }
            GClass::AlphaScalar { partition } => {
                let mut d = vec![0.0; n];
                for block in partition {
                    let s = logu(rng, LOG_RANGE);
                    block.iter().for_each(|&i| d[i] = s);
                }
                Matrix::diag(&d)
            }
            GClass::AlphaBlockSpd { partition } => {
                let mut g = Matrix::zeros(n);
                for block in partition {
                    let b = random_spd(block.len(), rng);
                    for (r, &i) in block.iter().enumerate() {
                        for (c, &j) in block.iter().enumerate() {
                            g[(i, j)] = b[(r, c)];
                        }
                    }
                }
                g
            }
            GClass::Spd => random_spd(n, rng),
            GClass::OrderedDiagonal { order } => {
                let mut v: Vec<f64> = (0..n).map(|_| logu(rng, LOG_RANGE)).collect();
                v.sort_by(|a, b| b.total_cmp(a));
                let mut d = vec![0.0; n];
                for (rank, &i) in order.iter().enumerate() {
                    d[i] = v[rank];
                }
                Matrix::diag(&d)
            }
            GClass::IntervalDiagonal { d_min, d_max } => Matrix::diag(
                &(0..n)
                    .map(|i| {
                        let hi = d_max[i].unwrap_or(d_min[i] * OPEN_INTERVAL_SPAN);
                        logu(rng, (d_min[i], hi))
                    })
                    .collect::<Vec<_>>(),
            ),
            GClass::SignPatternDiagonal { signs } => {
                Matrix::diag(&signs.iter().map(|&s| s as f64 * logu(rng, LOG_RANGE)).collect::<Vec<_>>())
            }
            GClass::EntrywisePositiveRank { k } => {
                let mut g = Matrix::zeros(n);
                for _ in 0..*k {
                    let u: Vec<f64> = (0..n).map(|_| logu(rng, RANK_FACTOR_RANGE)).collect();
                    let v: Vec<f64> = (0..n).map(|_| logu(rng, RANK_FACTOR_RANGE)).collect();
                    g = &g + &Matrix::from_fn(n, |i, j| u[i] * v[j]);
                }
                g
            }
        }
    }

    /// Membership test used to assert sampler output.
    pub fn contains(&self, g: &Matrix, tol: f64) -> bool {
        let n = g.n();
        let d = g.diagonal();
        let diag = g.is_diagonal();
        match self {
            GClass::PositiveDiagonal => diag && d.iter().all(|&x| x > 0.0),
            GClass::NegativeDiagonal => diag && d.iter().all(|&x| x < 0.0),
            GClass::DiagonalNormLt1 => diag && d.iter().all(|&x| x.abs() < 1.0),
            GClass::VertexDiagonal => diag && d.iter().all(|&x| x.abs() == 1.0),
            GClass::AlphaScalar { partition } => {
                diag && d.iter().all(|&x| x > 0.0) && partition.iter().all(|b| b.iter().all(|&i| d[i] == d[b[0]]))
            }
            GClass::AlphaBlockSpd { partition } => {
                let mut block_of = vec![0; n];
                for (p, b) in partition.iter().enumerate() {
                    b.iter().for_each(|&i| block_of[i] = p);
                }
                let zero_outside = (0..n).all(|i| (0..n).all(|j| block_of[i] == block_of[j] || g[(i, j)] == 0.0));
                zero_outside && is_spd(g, tol)
            }
            GClass::Spd => is_spd(g, tol),
            GClass::OrderedDiagonal { order } => {
                diag && d.iter().all(|&x| x > 0.0) && order.windows(2).all(|w| d[w[0]] >= d[w[1]])
            }
            GClass::IntervalDiagonal { d_min, d_max } => {
                diag && (0..n).all(|i| d[i] >= d_min[i] && d_max[i].is_none_or(|m| d[i] <= m))
            }
            GClass::SignPatternDiagonal { signs } => {
                diag && d.iter().zip(signs).all(|(&x, &s)| (x.signum() as i8 == s && x != 0.0) || (s == 0 && x == 0.0))
            }
            GClass::EntrywisePositiveRank { .. } => g.as_slice().iter().all(|&x| x > 0.0),
        }
    }

    /// Replaces the unbounded coordinates of `g` by `t` times their value,
    /// keeping `g` in the class. Used to probe unbounded classes.
    pub(crate) fn grow(&self, g: &Matrix, t: f64) -> Matrix {
        match self {
            GClass::IntervalDiagonal { d_max, .. } => {
                let d: Vec<f64> = g.diagonal().iter().zip(d_max).map(|(&x, m)| if m.is_some() { x } else { x * t }).collect();
                Matrix::diag(&d)
            }
            _ => g.scale(t),
        }
    }
}

fn is_spd(g: &Matrix, tol: f64) -> bool {
    g.is_symmetric(tol * (1.0 + g.max_abs())) && crate::spectra::sym_eigen(g).min() > 0.0
}

pub(crate) fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// `QᵀΛQ` with `Q` orthogonal from a Gaussian matrix and log-uniform `Λ`.
pub(crate) fn random_spd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let q = random_orthogonal(n, rng);
    let lam: Vec<f64> = (0..n).map(|_| log_uniform(rng, LOG_RANGE.0, LOG_RANGE.1)).collect();
    (&(&q.transpose() * &Matrix::diag(&lam)) * &q).symmetric_part()
}

/// Orthogonal factor of a Gaussian matrix by modified Gram–Schmidt.
pub(crate) fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect()).collect();
        let mut ok = true;
        for j in 0..n {
            for k in 0..j {
                let dot: f64 = (0..n).map(|i| cols[j][i] * cols[k][i]).sum();
                for i in 0..n {
                    cols[j][i] -= dot * cols[k][i];
                }
            }
            let norm: f64 = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|x| *x /= norm);
        }
        if ok {
            return Matrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

/// `G ∘ A` for the chosen operation.
pub fn apply_op(op: BinOp, g: &Matrix, a: &Matrix) -> Result<Matrix> {
    if g.n() != a.n() {
        return Err(Error::DimensionMismatch { left: g.n(), right: a.n() });
    }
    match op {
        BinOp::Multiply => Ok(g * a),
        BinOp::Add => Ok(g + a),
        BinOp::Hadamard => hadamard(g, a),
        BinOp::BlockHadamard { block } => block_hadamard(g, a, block),
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GClass::PositiveDiagonal => write!(f, "positive diagonal"),
            GClass::NegativeDiagonal => write!(f, "negative diagonal"),
            GClass::DiagonalNormLt1 => write!(f, "diagonal with |d| < 1"),
            GClass::VertexDiagonal => write!(f, "diagonal with entries ±1"),
            GClass::AlphaScalar { .. } => write!(f, "alpha-scalar positive diagonal"),
            GClass::AlphaBlockSpd { .. } => write!(f, "alpha-block SPD"),
            GClass::Spd => write!(f, "symmetric positive definite"),
            GClass::OrderedDiagonal { .. } => write!(f, "ordered positive diagonal"),
            GClass::IntervalDiagonal { .. } => write!(f, "interval diagonal"),
            GClass::SignPatternDiagonal { .. } => write!(f, "sign-pattern diagonal"),
            GClass::EntrywisePositiveRank { k } => write!(f, "entrywise positive rank-{k}"),
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinOp::Multiply => write!(f, "multiply"),
            BinOp::Add => write!(f, "add"),
            BinOp::Hadamard => write!(f, "hadamard"),
            BinOp::BlockHadamard { block } => write!(f, "block hadamard ({block})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_classes(n: usize) -> Vec<GClass> {
        vec![
            GClass::PositiveDiagonal,
            GClass::NegativeDiagonal,
            GClass::DiagonalNormLt1,
            GClass::VertexDiagonal,
            GClass::AlphaScalar { partition: vec![vec![0, 2], vec![1]] },
            GClass::AlphaBlockSpd { partition: vec![vec![0, 1], vec![2]] },
            GClass::Spd,
            GClass::OrderedDiagonal { order: vec![2, 0, 1] },
            GClass::IntervalDiagonal { d_min: vec![1.0; n], d_max: vec![Some(2.0), None, Some(3.0)] },
            GClass::SignPatternDiagonal { signs: vec![1, 0, -1] },
            GClass::EntrywisePositiveRank { k: 2 },
        ]
    }

    #[test]
    fn samples_belong_to_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for class in all_classes(3) {
            class.validate(3).unwrap();
            for _ in 0..50 {
                let g = class.sample(3, &mut rng);
                assert!(class.contains(&g, 1e-12), "{class}: {g:?}");
            }
        }
    }

    #[test]
    fn vertex_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let g = GClass::VertexDiagonal.sample(2, &mut rng);
            assert!(g.diagonal().iter().all(|x| x.abs() == 1.0));
        }
    }

    #[test]
    fn validation() {
        assert!(GClass::AlphaScalar { partition: vec![vec![0], vec![0, 1]] }.validate(2).is_err());
        assert!(GClass::AlphaScalar { partition: vec![vec![0]] }.validate(2).is_err());
        assert!(GClass::IntervalDiagonal { d_min: vec![2.0], d_max: vec![Some(1.0)] }.validate(1).is_err());
        assert!(GClass::EntrywisePositiveRank { k: 3 }.validate(2).is_err());
        assert!(GClass::OrderedDiagonal { order: vec![0, 0] }.validate(2).is_err());
    }

    #[test]
    fn boundedness() {
        assert!(GClass::VertexDiagonal.is_bounded());
        assert!(!GClass::PositiveDiagonal.is_bounded());
        assert!(!GClass::IntervalDiagonal { d_min: vec![1.0], d_max: vec![None] }.is_bounded());
        assert!(GClass::IntervalDiagonal { d_min: vec![1.0], d_max: vec![Some(2.0)] }.is_bounded());
    }

    #[test]
    fn op_identities() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(apply_op(BinOp::Multiply, &Matrix::identity(2), &a).unwrap(), a);
        assert_eq!(apply_op(BinOp::Add, &Matrix::zeros(2), &a).unwrap(), a);
        assert_eq!(apply_op(BinOp::Hadamard, &Matrix::ones(2), &a).unwrap(), a);
        assert!(apply_op(BinOp::BlockHadamard { block: 3 }, &Matrix::ones(2), &a).is_err());
    }
}
