//! Exact Gaussian elimination over ℚ(t).

use super::frac::QFrac;
use crate::error::{Error, Result};

/// Solves `A x = b` for a consistent system with a unique solution.
///
/// Rows may outnumber unknowns; redundant rows are checked for consistency.
pub fn solve(mut a: Vec<Vec<QFrac>>, mut b: Vec<QFrac>) -> Result<Vec<QFrac>> {
    let n = a.first().map_or(0, |r| r.len());
    let m = a.len();
    if b.len() != m {
        return Err(Error::Dimension { expected: m, got: b.len() });
    }
    let mut row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        // prefer the simplest pivot to keep intermediate fractions small
        let piv = (row..m)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num().len() + a[r][col].den().len());
        let Some(p) = piv else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip()?;
        for c in col..n {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..m {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                if !a[row][c].is_zero() {
                    let v = &a[r][c] - &(&f * &a[row][c]);
                    a[r][c] = v;
                }
            }
            b[r] = &b[r] - &(&f * &b[row]);
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < n {
        return Err(Error::Linear("underdetermined"));
    }
    if b[row..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Linear("inconsistent"));
    }
    Ok(b[..n].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let q = QFrac::q();
        let one = QFrac::one();
        // x + q y = 1 + q^2, q x - y = 0  =>  x = 1/q... check by substitution
        let a = vec![vec![one.clone(), q.clone()], vec![q.clone(), -&one]];
        let b = vec![&one + &(&q * &q), QFrac::zero()];
        let x = solve(a.clone(), b.clone()).unwrap();
        for (row, rhs) in a.iter().zip(&b) {
            let lhs = &(&row[0] * &x[0]) + &(&row[1] * &x[1]);
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn detects_inconsistency() {
        let one = QFrac::one();
        let a = vec![vec![one.clone()], vec![one.clone()]];
        let b = vec![one.clone(), QFrac::zero()];
        assert!(solve(a, b).is_err());
    }
}
