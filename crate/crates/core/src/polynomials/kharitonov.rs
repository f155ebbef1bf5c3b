use crate::error::Result;
use crate::verdict::{Status, Verdict, Witness};

use super::{routh_hurwitz, IntervalPoly, Poly};

/// Endpoint choice for the coefficient of `z^p` in each of the four
/// polynomials, `true` meaning the upper bound. With `k = ⌊p/2⌋`:
/// the first takes the upper bound when `k` is even, the second the opposite;
/// the third and fourth split by the parity of `p` as well.
fn picks_upper(which: usize, p: usize) -> bool {
    let k_even = (p / 2).is_multiple_of(2);
    let p_even = p.is_multiple_of(2);
    match which {
        0 => k_even,
        1 => !k_even,
        2 => if p_even { !k_even } else { k_even },
        _ => if p_even { k_even } else { !k_even },
    }
}

/// The four Kharitonov polynomials of the box.
pub fn kharitonov_polys(f: &IntervalPoly) -> [Poly; 4] {
    let n = f.degree();
    let build = |which: usize| {
        let coeffs = (0..=n)
            .map(|i| {
                let power = n - i;
                if picks_upper(which, power) {
                    f.upper()[i]
                } else {
                    f.lower()[i]
                }
            })
            .collect();
        Poly::new(coeffs).expect("leading interval excludes zero")
    };
    [build(0), build(1), build(2), build(3)]
}

/// Proved iff all four Kharitonov polynomials are Hurwitz stable; Refuted with
/// the first failing one.
pub fn kharitonov_stable(f: &IntervalPoly) -> Result<Verdict> {
    let polys = kharitonov_polys(f);
    let mut unknown = None;
    for (i, p) in polys.iter().enumerate() {
        let v = routh_hurwitz(p)?;
        match v.status() {
            Status::Proved => {}
            Status::Refuted => {
                return Ok(Verdict::refuted(
                    "kharitonov_polynomial_unstable",
                    Witness::Polynomial { label: format!("k{}", i + 1), coefficients: p.coeffs().to_vec() },
                )
                .with_detail(v.detail().unwrap_or("").to_string()));
            }
            Status::Unknown => {
                unknown.get_or_insert(format!("k{}: {}", i + 1, v.reason()));
            }
        }
    }
    Ok(match unknown {
        None => Verdict::proved("kharitonov"),
        Some(d) => Verdict::unknown("kharitonov_inconclusive").with_detail(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_box_gives_same_polynomial() {
        let p = Poly::new(vec![1.0, 3.0, 3.0, 1.0]).unwrap();
        for k in kharitonov_polys(&IntervalPoly::degenerate(&p)) {
            assert_eq!(k, p);
        }
    }

    #[test]
    fn degree_four_table() {
        // Ascending coefficients c0..c4 with the classical sign sequences
        // K1 = (-,-,+,+,-), K2 = (+,+,-,-,+), K3 = (+,-,-,+,+), K4 = (-,+,+,-,-)
        // where '+' is the upper bound; our order is (K2, K1, K4, K3).
        let lo = [1.0, 2.0, 3.0, 4.0, 5.0];
        let hi = [1.5, 2.5, 3.5, 4.5, 5.5];
        let f = IntervalPoly::new(lo.to_vec(), hi.to_vec()).unwrap();
        let seq = |s: &str| -> Vec<f64> {
            // s lists ascending powers; convert to descending coefficients
            let asc: Vec<f64> = s.chars().enumerate().map(|(p, ch)| if ch == '+' { hi[4 - p] } else { lo[4 - p] }).collect();
            asc.into_iter().rev().collect()
        };
        let ks = kharitonov_polys(&f);
        assert_eq!(ks[0].coeffs(), seq("++--+").as_slice());
        assert_eq!(ks[1].coeffs(), seq("--++-").as_slice());
        assert_eq!(ks[2].coeffs(), seq("-++--").as_slice());
        assert_eq!(ks[3].coeffs(), seq("+--++").as_slice());
        for k in &ks {
            assert!(f.contains(k));
        }
    }

    #[test]
    fn first_order_box() {
        let f = IntervalPoly::new(vec![1.0, 1.0], vec![1.0, 2.0]).unwrap();
        assert!(kharitonov_stable(&f).unwrap().is_proved());
    }

    #[test]
    fn box_touching_instability() {
        let f = IntervalPoly::new(vec![1.0, -1.0, 1.0], vec![1.0, 1.0, 1.0]).unwrap();
        let v = kharitonov_stable(&f).unwrap();
        assert!(v.is_refuted());
        match v.witness() {
            Some(Witness::Polynomial { coefficients, .. }) => assert!(coefficients[1] <= 0.0),
            w => panic!("unexpected witness {w:?}"),
        }
    }
}
