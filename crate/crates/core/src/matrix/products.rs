use super::Matrix;
use crate::error::{Error, Result};

/// Entrywise product.
pub fn hadamard(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    same_dim(a, b)?;
    Ok(Matrix::from_fn(a.n(), |i, j| a[(i, j)] * b[(i, j)]))
}

/// Kronecker product; block `(i, j)` of the result is `a_ij·B`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.n(), b.n());
    Matrix::from_fn(n * m, |r, c| a[(r / m, c / m)] * b[(r % m, c % m)])
}

/// Block Hadamard product: both matrices are cut into `block×block` tiles and
/// tile `(I, J)` of the result is the ordinary product `H_IJ·G_IJ`.
pub fn block_hadamard(h: &Matrix, g: &Matrix, block: usize) -> Result<Matrix> {
    same_dim(h, g)?;
    let n = h.n();
    if block == 0 || !n.is_multiple_of(block) {
        return Err(Error::InvalidArgument(format!(
            "block size {block} does not divide dimension {n}"
        )));
    }
    Ok(Matrix::from_fn(n, |r, c| {
        let (bi, bj) = (r / block * block, c / block * block);
        let (i, j) = (r % block, c % block);
        (0..block).map(|k| h[(bi + i, bj + k)] * g[(bi + k, bj + j)]).sum()
    }))
}

/// `|a_ii|` on the diagonal, `-|a_ij|` off it.
pub fn comparison_matrix(a: &Matrix) -> Matrix {
    Matrix::from_fn(a.n(), |i, j| if i == j { a[(i, j)].abs() } else { -a[(i, j)].abs() })
}

/// Keeps the diagonal and replaces off-diagonal entries by their absolute values.
pub fn w_map(a: &Matrix) -> Matrix {
    Matrix::from_fn(a.n(), |i, j| if i == j { a[(i, j)] } else { a[(i, j)].abs() })
}

pub fn sign_pattern(a: &Matrix) -> Matrix {
    a.map(|x| {
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            0.0
        }
    })
}

fn same_dim(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.n() != b.n() {
        Err(Error::DimensionMismatch { left: a.n(), right: b.n() })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hadamard_examples() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(hadamard(&a, &Matrix::ones(2)).unwrap(), a);
        let i = Matrix::identity(3);
        assert_eq!(hadamard(&i, &i).unwrap(), i);
        let b = m(&[&[2.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(hadamard(&a, &b).unwrap(), m(&[&[2.0, 0.0], &[0.0, 8.0]]));
        assert!(hadamard(&a, &i).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let b = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let k = kronecker(&Matrix::identity(2), &b);
        for r in 0..4 {
            for c in 0..4 {
                let want = if r / 2 == c / 2 { b[(r % 2, c % 2)] } else { 0.0 };
                assert_eq!(k[(r, c)], want);
            }
        }
        let s = Matrix::from_rows(&[[2.5]]).unwrap();
        assert_eq!(kronecker(&s, &b), b.scale(2.5));
    }

    #[test]
    fn block_hadamard_reduces_to_hadamard() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = m(&[&[5.0, -1.0], &[0.5, 2.0]]);
        assert_eq!(block_hadamard(&a, &b, 1).unwrap(), hadamard(&a, &b).unwrap());
        assert!(block_hadamard(&Matrix::identity(3), &Matrix::identity(3), 2).is_err());
    }

    #[test]
    fn block_hadamard_identity_blocks() {
        // every block of H is I₂ so every block of the result is the block of G
        let h = Matrix::from_fn(4, |i, j| if i % 2 == j % 2 { 1.0 } else { 0.0 });
        let g = Matrix::from_fn(4, |i, j| (i * 4 + j) as f64 - 3.0);
        assert_eq!(block_hadamard(&h, &g, 2).unwrap(), g);
    }

    #[test]
    fn block_hadamard_companion() {
        // G1 = [[D, I], [I, I]] against C = [[A, B], [I, 0]] gives [[DA, B], [I, 0]]
        let d = [3.0, 0.5];
        let a = m(&[&[-1.0, 2.0], &[0.5, -3.0]]);
        let bm = m(&[&[-2.0, 0.0], &[1.0, -1.0]]);
        let g1 = Matrix::from_fn(4, |i, j| match (i < 2, j < 2) {
            (true, true) => if i == j { d[i] } else { 0.0 },
            _ => if i % 2 == j % 2 { 1.0 } else { 0.0 },
        });
        let c = Matrix::from_fn(4, |i, j| match (i < 2, j < 2) {
            (true, true) => a[(i, j)],
            (true, false) => bm[(i, j - 2)],
            (false, true) => if i - 2 == j { 1.0 } else { 0.0 },
            (false, false) => 0.0,
        });
        let out = block_hadamard(&g1, &c, 2).unwrap();
        let da = a.scale_rows(&d);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(out[(i, j)], da[(i, j)]);
                assert_eq!(out[(i, j + 2)], bm[(i, j)]);
                assert_eq!(out[(i + 2, j)], if i == j { 1.0 } else { 0.0 });
                assert_eq!(out[(i + 2, j + 2)], 0.0);
            }
        }
    }

    #[test]
    fn comparison_and_w_map() {
        let a = m(&[&[-1.0, 2.0], &[3.0, -4.0]]);
        assert_eq!(comparison_matrix(&a), m(&[&[1.0, -2.0], &[-3.0, 4.0]]));
        assert_eq!(comparison_matrix(&Matrix::identity(3)), Matrix::identity(3));
        let z = m(&[&[2.0, -1.0], &[0.0, 3.0]]);
        assert_eq!(comparison_matrix(&z), z);

        let b = m(&[&[-1.0, 2.0], &[-3.0, -4.0]]);
        assert_eq!(w_map(&b), m(&[&[-1.0, 2.0], &[3.0, -4.0]]));
        let metzler = m(&[&[-5.0, 1.0], &[0.0, 2.0]]);
        assert_eq!(w_map(&metzler), metzler);
        assert_eq!(w_map(&b).scale(-1.0), comparison_matrix(&b));
    }

    #[test]
    fn sign_pattern_examples() {
        let i = Matrix::identity(3);
        assert_eq!(sign_pattern(&i), i);
        let a = m(&[&[-0.2, 0.0], &[7.0, -3.0]]);
        assert_eq!(sign_pattern(&a.scale(-1.0)), sign_pattern(&a).scale(-1.0));
        let s = sign_pattern(&a);
        assert_eq!(sign_pattern(&s), s);
    }
}
