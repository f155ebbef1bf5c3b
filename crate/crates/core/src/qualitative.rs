//! m-sign patterns: classes of matrices whose entries fall in the same cells
//! of the partition `(-∞,-1), {-1}, (-1,0), {0}, (0,1), {1}, (1,∞)`, and
//! Monte-Carlo tests of whether a pattern requires or allows stability.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dstability::{apply_op, escape, sample_rng, BinOp, GClass};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectra::{eigenvalues, point_tol, Membership, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

/// Smallest magnitude drawn inside an open cell touching zero.
pub const CELL_FLOOR: f64 = 1e-3;
/// Largest magnitude drawn inside an unbounded cell.
pub const CELL_CAP: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cell {
    /// `(-∞, -1)`
    R1,
    /// `{-1}`
    R2,
    /// `(-1, 0)`
    R3,
    /// `{0}`
    R4,
    /// `(0, 1)`
    R5,
    /// `{1}`
    R6,
    /// `(1, ∞)`
    R7,
}

impl Cell {
    pub fn of(x: f64) -> Cell {
        match x {
            x if x < -1.0 => Cell::R1,
            -1.0 => Cell::R2,
            x if x < 0.0 => Cell::R3,
            0.0 => Cell::R4,
            x if x < 1.0 => Cell::R5,
            1.0 => Cell::R6,
            _ => Cell::R7,
        }
    }

    /// Singletons exactly, open cells log-uniform in magnitude.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        let (sign, lo, hi) = match self {
            Cell::R2 => return -1.0,
            Cell::R4 => return 0.0,
            Cell::R6 => return 1.0,
            Cell::R1 => (-1.0, 1.0, CELL_CAP),
            Cell::R3 => (-1.0, CELL_FLOOR, 1.0),
            Cell::R5 => (1.0, CELL_FLOOR, 1.0),
            Cell::R7 => (1.0, 1.0, CELL_CAP),
        };
        loop {
            let x = sign * rng.random_range(lo.ln()..hi.ln()).exp();
            // the interval ends round onto the neighbouring singleton
            if Cell::of(x) == self {
                return x;
            }
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPattern {
    n: usize,
    cells: Vec<Cell>,
}

impl MPattern {
    pub fn new(n: usize, cells: Vec<Cell>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::Shape { expected: n * n, got: cells.len() });
        }
        Ok(Self { n, cells })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Cell) -> Self {
        let cells = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        a.n() == self.n && a.as_slice().iter().zip(&self.cells).all(|(&x, &c)| Cell::of(x) == c)
    }
}

impl Index<(usize, usize)> for MPattern {
    type Output = Cell;

    fn index(&self, (i, j): (usize, usize)) -> &Cell {
        &self.cells[i * self.n + j]
    }
}

pub fn m_pattern_of(a: &Matrix) -> MPattern {
    MPattern::from_fn(a.n(), |i, j| Cell::of(a[(i, j)]))
}

pub fn sample_from<R: Rng + ?Sized>(p: &MPattern, rng: &mut R) -> Matrix {
    Matrix::from_fn(p.n, |i, j| p[(i, j)].sample(rng))
}

/// Samples pattern members `A` and class members `G`; refutes when `A` or
/// `G∘A` has an eigenvalue outside `region`. Never proves.
pub fn requires_stability_mc(
    p: &MPattern,
    region: &Region,
    class: &GClass,
    op: BinOp,
    samples: u64,
    seed: u64,
) -> Result<Verdict> {
    region.validate()?;
    class.validate(p.n)?;
    let found = (0..samples).into_par_iter().find_map_first(|i| {
        let mut rng = sample_rng(seed, i);
        let a = sample_from(p, &mut rng);
        if let Some(z) = escape(&a, region) {
            return Some((a, None, z));
        }
        let g = class.sample(p.n, &mut rng);
        let z = escape(&apply_op(op, &g, &a).ok()?, region)?;
        Some((a, Some(g), z))
    });
    Ok(match found {
        Some((matrix, g, z)) => {
            let reason = if g.is_some() { "class_member_escapes" } else { "pattern_member_unstable" };
            Verdict::refuted(reason, Witness::PatternMember { matrix, g, eigenvalue: Some(z) })
        }
        None => Verdict::unknown("no_counterexample_found").with_detail(format!("{samples} pattern samples")),
    }
    .with_seed(seed))
}

/// Proves that the pattern allows stability once a sampled member has its
/// whole spectrum strictly inside `region`. Never refutes.
pub fn allows_stability_mc(p: &MPattern, region: &Region, samples: u64, seed: u64) -> Result<Verdict> {
    region.validate()?;
    let found = (0..samples).into_par_iter().find_map_first(|i| {
        let a = sample_from(p, &mut sample_rng(seed, i));
        let spec = eigenvalues(&a).ok()?;
        let inside = spec.iter().all(|&z| region.membership(z, point_tol(z, DEFAULT_TOL)) == Membership::Inside);
        inside.then_some(a)
    });
    Ok(match found {
        Some(matrix) => Verdict::proved_with("stable_member_found", Witness::PatternMember { matrix, g: None, eigenvalue: None }),
        None => Verdict::unknown("no_stable_member_found").with_detail(format!("{samples} pattern samples")),
    }
    .with_seed(seed))
}

/// Region-relative tagging: each entry, as a real point, lies inside, on the
/// boundary of, or outside `region`. Descriptive only.
pub fn region_pattern_of(a: &Matrix, region: &Region) -> Vec<Vec<Membership>> {
    a.to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    let z = Complex64::new(x, 0.0);
                    region.membership(z, point_tol(z, DEFAULT_TOL))
                })
                .collect()
        })
        .collect()
}
