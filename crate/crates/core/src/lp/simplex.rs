//! Dense tableau simplex with Bland's rule.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Optimum of `max 1.y` subject to `A y <= 1`, `y >= 0`, where row `r` of `A`
/// is the 0/1 indicator of `rows[r]`, together with the dual `x` solving
/// `min 1.x` subject to `A^T x >= 1`, `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PackingSolution<S> {
    pub value: S,
    /// Primal packing weights, one per column.
    pub y: Vec<S>,
    /// Dual covering weights, one per row.
    pub x: Vec<S>,
    pub pivots: usize,
}

/// Solves the packing LP whose rows are the given column-index sets.
pub fn solve_packing<S: Scalar>(rows: &[Vec<usize>], cols: usize, max_pivots: usize) -> Result<PackingSolution<S>> {
    let m = rows.len();
    let width = cols + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<S>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut line = vec![S::zero(); width];
            for &c in row {
                line[c] = S::one();
            }
            line[cols + r] = S::one();
            line[rhs] = S::one();
            line
        })
        .collect();
    let mut obj = vec![S::zero(); width];
    for o in obj.iter_mut().take(cols) {
        *o = -S::one();
    }
    let mut basis: Vec<usize> = (cols..cols + m).collect();
    let mut pivots = 0;
    while let Some(enter) = (0..rhs).find(|&j| obj[j] < S::zero()) {
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if t[r][enter] > S::zero() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let a = t[r][rhs].clone() * t[l][enter].clone();
                        let b = t[l][rhs].clone() * t[r][enter].clone();
                        a < b || (a == b && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(l) = leave else {
            return Err(Error::Lp("unbounded packing LP".into()));
        };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::ExplosionGuard { what: "simplex pivots", estimate: pivots as u128, limit: max_pivots as u128 });
        }
        let p = t[l][enter].clone();
        for v in t[l].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = t[l].clone();
        for (r, line) in t.iter_mut().enumerate() {
            if r != l && !line[enter].is_zero() {
                let f = line[enter].clone();
                for (v, pv) in line.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v = v.clone() - f.clone() * pv.clone();
                    }
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, pv) in obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        basis[l] = enter;
    }
    let mut y = vec![S::zero(); cols];
    for (r, &b) in basis.iter().enumerate() {
        if b < cols {
            y[b] = t[r][rhs].clone();
        }
    }
    let x = (0..m).map(|r| obj[cols + r].clone()).collect();
    Ok(PackingSolution { value: obj[rhs].clone(), y, x, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn edges_of_triangle() {
        // Rows are the edges of a triangle: packing value 3/2.
        let rows = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        let s = solve_packing::<Rational>(&rows, 3, 100).unwrap();
        assert_eq!(s.value, ratio(3, 2));
        assert_eq!(s.x.iter().fold(ratio(0, 1), |a, b| a + b), ratio(3, 2));
    }

    #[test]
    fn single_row() {
        let s = solve_packing::<Rational>(&[vec![0, 1, 2]], 3, 10).unwrap();
        assert_eq!(s.value, ratio(1, 1));
        assert_eq!(s.x, vec![ratio(1, 1)]);
    }

    #[test]
    fn pivot_guard() {
        let rows = vec![vec![0], vec![1], vec![2]];
        assert!(matches!(solve_packing::<Rational>(&rows, 3, 1), Err(Error::ExplosionGuard { .. })));
    }
}
