//! `F(d) = det [[A, D], [-D, A]] = |det(A + iD)|²` as an exact polynomial in
//! the diagonal of `D`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Result};
use crate::matrix::Matrix;
use crate::spectra::{eigenvalues, first_escape, Region, DEFAULT_TOL};
use crate::verdict::{Verdict, Witness};

/// Dimension cap of the expansion (the `2n×2n` determinant is expanded over
/// all `2^{2n}` column subsets).
pub const JOHNSON_TESI_CAP: usize = 4;

/// Coefficients below `-COEFF_RTOL·max|c|` count as negative.
pub const COEFF_RTOL: f64 = 1e-10;

/// Real polynomial in `d_1..d_n`, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u8]) -> f64 {
        self.terms.get(exponents).copied().unwrap_or(0.0)
    }

    fn add_term(&mut self, e: Vec<u8>, c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.retain(|_, v| *v != 0.0);
        }
    }

    /// `self += c · d_var · other` (`var = None` for a constant factor).
    fn add_scaled(&mut self, other: &MultiPoly, c: f64, var: Option<usize>) {
        for (e, &v) in &other.terms {
            let mut e = e.clone();
            if let Some(k) = var {
                e[k] += 1;
            }
            self.add_term(e, c * v);
        }
    }

    pub fn eval(&self, d: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(d).map(|(&k, &x)| x.powi(k as i32)).product::<f64>())
            .sum()
    }
}

/// Entry of the block matrix: `c` or `c·d_var`.
#[derive(Clone, Copy)]
struct Entry {
    c: f64,
    var: Option<usize>,
}

fn block_entry(a: &Matrix, r: usize, col: usize) -> Entry {
    let n = a.n();
    let (bi, i) = (r / n, r % n);
    let (bj, j) = (col / n, col % n);
    match (bi, bj) {
        (0, 0) | (1, 1) => Entry { c: a[(i, j)], var: None },
        (0, 1) if i == j => Entry { c: 1.0, var: Some(i) },
        (1, 0) if i == j => Entry { c: -1.0, var: Some(i) },
        _ => Entry { c: 0.0, var: None },
    }
}

/// Expands `det [[A, D], [-D, A]]` row by row over subsets of used columns.
pub fn johnson_tesi_poly(a: &Matrix) -> Result<MultiPoly> {
    let n = a.n();
    check_cap("johnson_tesi_poly", n, JOHNSON_TESI_CAP)?;
    let m = 2 * n;
    let mut dp: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    dp.insert(0, MultiPoly::constant(n, 1.0));
    for r in 0..m {
        let mut next: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (&mask, poly) in &dp {
            for col in 0..m {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let e = block_entry(a, r, col);
                if e.c == 0.0 {
                    continue;
                }
                // inversions against the columns already taken by earlier rows
                let later = (mask >> (col + 1)).count_ones();
                let sign = if later % 2 == 0 { 1.0 } else { -1.0 };
                next.entry(mask | (1 << col))
                    .or_insert_with(|| MultiPoly::zero(n))
                    .add_scaled(poly, sign * e.c, e.var);
            }
        }
        dp = next;
    }
    Ok(dp.remove(&((1u32 << m) - 1)).unwrap_or_else(|| MultiPoly::zero(n)))
}

/// Hurwitz-convention sufficient test: `A` Hurwitz, `det A ≠ 0` and every
/// coefficient of `F` nonnegative make `F` positive on the positive orthant,
/// hence `A ± iD` nonsingular and `A` D-stable.
pub fn johnson_tesi_sufficient(a: &Matrix) -> Result<Verdict> {
    check_cap("johnson_tesi_sufficient", a.n(), JOHNSON_TESI_CAP)?;
    if let Some(z) = first_escape(&eigenvalues(a)?, &Region::HalfPlaneLeft, DEFAULT_TOL) {
        return Ok(Verdict::refuted("not_hurwitz", Witness::Eigenvalue { value: z }));
    }
    let f = johnson_tesi_poly(a)?;
    let scale = f.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    let worst = f.terms().min_by(|x, y| x.1.total_cmp(&y.1));
    let constant = f.coeff(&vec![0; a.n()]);
    match worst {
        Some((e, c)) if c < -COEFF_RTOL * scale => Ok(Verdict::unknown("negative_coefficient")
            .with_detail(format!("coefficient {c:e} at exponents {e:?}"))),
        _ if constant <= COEFF_RTOL * scale => Ok(Verdict::unknown("singular_matrix")),
        _ => Ok(Verdict::proved("johnson_tesi_coefficients")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_expansion() {
        let f = johnson_tesi_poly(&Matrix::from_rows(&[[3.0]]).unwrap()).unwrap();
        assert_eq!(f.coeff(&[0]), 9.0);
        assert_eq!(f.coeff(&[2]), 1.0);
        assert_eq!(f.terms().count(), 2);
    }

    #[test]
    fn classical_example() {
        // |det(A + iD)|² = (2 - d1 d2)² + (d2 - 2 d1)²
        let a = Matrix::from_rows(&[[1.0, -4.0], [1.0, -2.0]]).unwrap();
        let f = johnson_tesi_poly(&a).unwrap();
        assert_eq!(f.coeff(&[1, 1]), -8.0);
        assert_eq!(f.coeff(&[2, 2]), 1.0);
        assert_eq!(f.coeff(&[2, 0]), 4.0);
        assert_eq!(f.coeff(&[0, 2]), 1.0);
        assert_eq!(f.coeff(&[0, 0]), 4.0);
        assert!(johnson_tesi_sufficient(&a).unwrap().is_unknown());
    }

    #[test]
    fn matches_numeric_determinant() {
        let a = Matrix::from_rows(&[[-1.0, 0.3, 2.0], [0.5, -2.0, 0.1], [-0.7, 0.2, -1.5]]).unwrap();
        let f = johnson_tesi_poly(&a).unwrap();
        for d in [[0.3, 1.7, 2.2], [5.0, 0.01, 1.0]] {
            let big = Matrix::from_fn(6, |r, c| {
                let e = block_entry(&a, r, c);
                e.c * e.var.map_or(1.0, |k| d[k])
            });
            assert!((f.eval(&d) - big.det()).abs() < 1e-9 * (1.0 + big.det().abs()));
        }
    }

    #[test]
    fn sufficient_examples() {
        assert!(johnson_tesi_sufficient(&Matrix::identity(2).scale(-1.0)).unwrap().is_proved());
        assert!(johnson_tesi_sufficient(&Matrix::from_rows(&[[-2.0]]).unwrap()).unwrap().is_proved());
        assert!(johnson_tesi_sufficient(&Matrix::identity(2)).unwrap().is_refuted());
        assert!(johnson_tesi_poly(&Matrix::zeros(5)).is_err());
    }
}
