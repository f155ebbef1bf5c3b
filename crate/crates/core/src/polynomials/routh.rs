use crate::error::{Error, Result};
use crate::verdict::{Verdict, Witness};

use super::Poly;

/// Relative size of the perturbation substituted for a vanishing pivot.
pub const ROUTH_EPS: f64 = 1e-12;

enum Table {
    Changes(usize),
    ZeroRow,
}

/// Hurwitz stability of `p` from its Routh table.
///
/// A nonpositive coefficient (after making the leading one positive) already
/// excludes stability. A vanishing first-column pivot is replaced by `+ε` and
/// by `-ε`; if the two tables disagree, or a whole row vanishes, the verdict is
/// Unknown.
pub fn routh_hurwitz(p: &Poly) -> Result<Verdict> {
    let c = p.coeffs();
    if c.len() < 2 {
        return Err(Error::InvalidArgument("Routh test needs degree >= 1".into()));
    }
    if c[0] == 0.0 {
        return Err(Error::InvalidArgument("zero leading coefficient".into()));
    }
    let sign = c[0].signum();
    let c: Vec<f64> = c.iter().map(|x| x * sign).collect();
    let witness = || Witness::Polynomial { label: "input".into(), coefficients: c.clone() };
    if let Some(i) = c.iter().position(|&x| x <= 0.0) {
        return Ok(Verdict::refuted("routh_nonpositive_coefficient", witness())
            .with_detail(format!("coefficient {i} is {}", c[i])));
    }
    let scale = c.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    let plus = table(&c, ROUTH_EPS * scale);
    let minus = table(&c, -ROUTH_EPS * scale);
    Ok(match (plus, minus) {
        (Table::Changes(0), Table::Changes(0)) => Verdict::proved("routh_hurwitz"),
        (Table::Changes(a), Table::Changes(b)) if a == b => {
            Verdict::refuted("routh_sign_changes", witness()).with_detail(format!("{a} roots with Re >= 0"))
        }
        (Table::ZeroRow, _) | (_, Table::ZeroRow) => {
            Verdict::unknown("routh_singular_row").with_detail("a full row of the table vanished")
        }
        (Table::Changes(a), Table::Changes(b)) => Verdict::unknown("routh_epsilon_disagreement")
            .with_detail(format!("+eps gives {a} sign changes, -eps gives {b}")),
    })
}

fn table(c: &[f64], eps: f64) -> Table {
    let n = c.len() - 1;
    let width = n / 2 + 1;
    let mut prev: Vec<f64> = (0..width).map(|j| c.get(2 * j).copied().unwrap_or(0.0)).collect();
    let mut cur: Vec<f64> = (0..width).map(|j| c.get(2 * j + 1).copied().unwrap_or(0.0)).collect();
    let mut first = vec![prev[0]];
    let tiny = eps.abs();
    for _ in 0..n {
        let row_scale = cur.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
        if row_scale <= tiny {
            return Table::ZeroRow;
        }
        if cur[0].abs() <= tiny {
            cur[0] = eps;
        }
        first.push(cur[0]);
        let next: Vec<f64> = (0..width)
            .map(|j| {
                let a = prev.get(j + 1).copied().unwrap_or(0.0);
                let b = cur.get(j + 1).copied().unwrap_or(0.0);
                (cur[0] * a - prev[0] * b) / cur[0]
            })
            .collect();
        prev = cur;
        cur = next;
        if first.len() == n + 1 {
            break;
        }
    }
    let changes = first.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    Table::Changes(changes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(c: &[f64]) -> Verdict {
        routh_hurwitz(&Poly::new(c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(verdict(&[1.0, 1.0]).is_proved());
        // roots (-1 ± i√3)/2
        assert!(verdict(&[1.0, 1.0, 1.0]).is_proved());
        assert!(verdict(&[1.0, 0.0, -1.0]).is_refuted());
        assert!(verdict(&[-1.0, -3.0, -2.0]).is_proved());
        assert!(routh_hurwitz(&Poly::new(vec![2.0]).unwrap()).is_err());
    }

    #[test]
    fn cubic_threshold() {
        // λ³ + aλ² + bλ + c is stable iff a, b, c > 0 and ab > c
        assert!(verdict(&[1.0, 2.0, 3.0, 5.0]).is_proved());
        let v = verdict(&[1.0, 1.0, 1.0, 2.0]);
        assert!(v.is_refuted());
        assert_eq!(v.detail(), Some("2 roots with Re >= 0"));
    }

    #[test]
    fn imaginary_pair_is_not_proved() {
        // (λ + 1)(λ² + 1): a full zero row appears
        let v = verdict(&[1.0, 1.0, 1.0, 1.0]);
        assert!(!v.is_proved());
        // zero pivot with nonzero row: λ⁴ + λ³ + 2λ² + 2λ + 3
        let v = verdict(&[1.0, 1.0, 2.0, 2.0, 3.0]);
        assert!(v.is_refuted());
    }
}
