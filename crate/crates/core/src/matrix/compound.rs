use super::{minor, Matrix};
use crate::error::{Error, Result};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The `j`-th compound matrix: all `j×j` minors, rows and columns indexed by
/// index sets in lexicographic order.
pub fn compound(a: &Matrix, j: usize) -> Result<Matrix> {
    let n = a.n();
    if j == 0 || j > n {
        return Err(Error::InvalidArgument(format!("compound order {j} outside 1..={n}")));
    }
    let sets = combinations(n, j);
    Ok(Matrix::from_fn(sets.len(), |r, c| minor(a, &sets[r], &sets[c])))
}

/// Second additive compound `A^[2]`.
pub fn additive_compound_2(a: &Matrix) -> Result<Matrix> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidArgument("additive compound needs n >= 2".into()));
    }
    let pairs = combinations(n, 2);
    let delta = |p: usize, q: usize| if p == q { 1.0 } else { 0.0 };
    Ok(Matrix::from_fn(pairs.len(), |r, c| {
        let (i, j) = (pairs[r][0], pairs[r][1]);
        let (k, l) = (pairs[c][0], pairs[c][1]);
        // |a_ik δ_il; a_jk δ_jl| + |δ_ik a_il; δ_jk a_jl|
        a[(i, k)] * delta(j, l) - delta(i, l) * a[(j, k)] + delta(i, k) * a[(j, l)]
            - a[(i, l)] * delta(j, k)
    }))
}
