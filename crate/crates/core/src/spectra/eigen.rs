//! Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
//! Hessenberg form, then the implicit double-shift QR iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Eigenvalues of a real square matrix, sorted by real part then imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.eigenvalues.iter()
    }

    /// Largest real part.
    pub fn abscissa(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest modulus.
    pub fn radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn eigenvalues(a: &Matrix) -> Result<Spectrum> {
    let n = a.n();
    let mut h: Vec<f64> = a.as_slice().to_vec();
    balance(&mut h, n);
    hessenberg(&mut h, n);
    let mut w = hqr(&mut h, n)?;
    w.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(Spectrum { eigenvalues: w })
}

fn balance(a: &mut [f64], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i * n + j] *= g;
                    }
                    for j in 0..n {
                        a[j * n + i] *= f;
                    }
                }
            }
        }
    }
}

fn hessenberg(a: &mut [f64], n: usize) {
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let alpha_sq: f64 = (k + 1..n).map(|i| a[i * n + k].powi(2)).sum();
        let norm = alpha_sq.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vnorm_sq: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        // left: rows k+1.. ← (I - 2vvᵀ/vᵀv) rows
        for j in k..n {
            let s: f64 = (k + 1..n).map(|i| v[i] * a[i * n + j]).sum::<f64>() * 2.0 / vnorm_sq;
            for i in k + 1..n {
                a[i * n + j] -= s * v[i];
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let s: f64 = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum::<f64>() * 2.0 / vnorm_sq;
            for j in k + 1..n {
                a[i * n + j] -= s * v[j];
            }
        }
        a[(k + 1) * n + k] = alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
        }
    }
}

fn hqr(a: &mut [f64], n: usize) -> Result<Vec<Complex64>> {
    let cap = 100 * n.max(1);
    let at = |a: &[f64], i: usize, j: usize| a[i * n + j];
    let mut wr = vec![Complex64::new(0.0, 0.0); n];
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i * n + j].abs();
        }
    }
    let mut total = 0usize;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l > 0 {
                let mut s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() <= eps * s {
                    a[l * n + l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = at(a, nu, nu);
            if l == nu {
                wr[nu] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = at(a, nu - 1, nu - 1);
            let mut w = at(a, nu, nu - 1) * at(a, nu - 1, nu);
            if l == nu - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    wr[nu - 1] = Complex64::new(x + z, 0.0);
                    wr[nu] = wr[nu - 1];
                    if z != 0.0 {
                        wr[nu] = Complex64::new(x - w / z, 0.0);
                    }
                } else {
                    wr[nu] = Complex64::new(x + p, -z);
                    wr[nu - 1] = wr[nu].conj();
                }
                nn -= 2;
                break;
            }
            if total >= cap {
                return Err(Error::NoConvergence(cap));
            }
            if its > 0 && its % 10 == 0 {
                t += x;
                for i in 0..=nu {
                    a[i * n + i] -= x;
                }
                let s = at(a, nu, nu - 1).abs() + at(a, nu - 1, nu - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;
            let mut m = nu - 2;
            let mut z;
            loop {
                z = at(a, m, m);
                r = x - z;
                let s = y - z;
                p = (r * s - w) / at(a, m + 1, m) + at(a, m, m + 1);
                q = at(a, m + 1, m + 1) - z - r - s;
                r = at(a, m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nu - 1 {
                a[(i + 2) * n + i] = 0.0;
                if i != m {
                    a[(i + 2) * n + i - 1] = 0.0;
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = at(a, k, k - 1);
                    q = at(a, k + 1, k - 1);
                    r = 0.0;
                    if k + 1 != nu {
                        r = at(a, k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k * n + k - 1] = -a[k * n + k - 1];
                        }
                    } else {
                        a[k * n + k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        p = a[k * n + j] + q * a[(k + 1) * n + j];
                        if k + 1 != nu {
                            p += r * a[(k + 2) * n + j];
                            a[(k + 2) * n + j] -= p * z;
                        }
                        a[(k + 1) * n + j] -= p * y;
                        a[k * n + j] -= p * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for i in l..=mmin {
                        p = x * a[i * n + k] + y * a[i * n + k + 1];
                        if k + 1 != nu {
                            p += z * a[i * n + k + 2];
                            a[i * n + k + 2] -= p * r;
                        }
                        a[i * n + k + 1] -= p * q;
                        a[i * n + k] -= p;
                    }
                }
                k += 1;
            }
            if l + 1 >= nu {
                break;
            }
        }
    }
    if wr.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence(cap));
    }
    Ok(wr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn diagonal_and_rotation() {
        let s = eigenvalues(&Matrix::diag(&[-1.0, -2.0])).unwrap();
        assert!(close(s.eigenvalues[0], Complex64::new(-2.0, 0.0), 1e-14));
        assert!(close(s.eigenvalues[1], Complex64::new(-1.0, 0.0), 1e-14));
        let r = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        let s = eigenvalues(&r).unwrap();
        assert!(close(s.eigenvalues[0], Complex64::new(0.0, -1.0), 1e-14));
        assert!(close(s.eigenvalues[1], Complex64::new(0.0, 1.0), 1e-14));
    }

    #[test]
    fn companion_roots() {
        // (λ-1)(λ-2)(λ-3)(λ+4) = λ⁴ - 2λ³ - 13λ² + 38λ - 24
        let c = [-2.0, -13.0, 38.0, -24.0];
        let a = Matrix::from_fn(4, |i, j| if i == 0 { -c[j] } else if i == j + 1 { 1.0 } else { 0.0 });
        let s = eigenvalues(&a).unwrap();
        let want = [-4.0, 1.0, 2.0, 3.0];
        for (z, w) in s.iter().zip(want) {
            assert!(close(*z, Complex64::new(w, 0.0), 1e-9), "{z} vs {w}");
        }
    }

    #[test]
    fn triangular_read_off() {
        let a = Matrix::from_rows(&[[1.0, 5.0, -2.0], [0.0, -3.0, 7.0], [0.0, 0.0, 0.5]]).unwrap();
        let s = eigenvalues(&a).unwrap();
        let re: Vec<f64> = s.iter().map(|z| z.re).collect();
        assert!((re[0] + 3.0).abs() < 1e-12 && (re[1] - 0.5).abs() < 1e-12 && (re[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_and_zero() {
        let s = eigenvalues(&Matrix::from_rows(&[[4.5]]).unwrap()).unwrap();
        assert_eq!(s.eigenvalues, vec![Complex64::new(4.5, 0.0)]);
        let s = eigenvalues(&Matrix::zeros(5)).unwrap();
        assert!(s.iter().all(|z| z.norm() == 0.0));
    }
}
