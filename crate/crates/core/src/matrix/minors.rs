use serde::{Deserialize, Serialize};

use super::{Lu, Matrix};
use crate::error::{check_cap, Error, Result};

/// Largest dimension for which all principal minors are enumerated.
pub const MINOR_ENUMERATION_CAP: usize = 14;

/// A nonempty, strictly increasing set of 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument("index set must be nonempty".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("index set must be strictly increasing".into()));
        }
        if indices[indices.len() - 1] >= n {
            return Err(Error::InvalidArgument(format!("index set {indices:?} exceeds n = {n}")));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based rendering such as `{1,3}`.
    pub fn one_based(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        let n = v.iter().max().map_or(0, |m| m + 1);
        Self::new(v, n)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

/// Zero-test tolerance for an order-`k` minor of a matrix with the given
/// infinity norm.
pub fn tau_minor(norm_inf: f64, k: usize) -> f64 {
    1e-10 * (1.0 + norm_inf.powi(k as i32))
}

/// Minor with the given row and column index lists.
pub fn minor(a: &Matrix, rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    match k {
        0 => 1.0,
        1 => a[(rows[0], cols[0])],
        2 => a[(rows[0], cols[0])] * a[(rows[1], cols[1])] - a[(rows[0], cols[1])] * a[(rows[1], cols[0])],
        _ => {
            let mut data = Vec::with_capacity(k * k);
            for &r in rows {
                for &c in cols {
                    data.push(a[(r, c)]);
                }
            }
            Lu::from_data(k, data).det()
        }
    }
}

/// All principal minors of order at most `max_order`, ordered by size then
/// lexicographically.
pub fn principal_minors(a: &Matrix, max_order: usize) -> Result<Vec<(IndexSet, f64)>> {
    let n = a.n();
    check_cap("principal_minors", n, MINOR_ENUMERATION_CAP)?;
    let mut out = Vec::new();
    for k in 1..=max_order.min(n) {
        for set in super::combinations(n, k) {
            let v = minor(a, &set, &set);
            out.push((IndexSet(set), v));
        }
    }
    Ok(out)
}
