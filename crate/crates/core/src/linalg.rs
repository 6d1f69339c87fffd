//! Exact Gaussian elimination over the rationals for overdetermined systems.

use num_traits::Zero;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// Full column rank and every equation satisfied exactly.
    Unique(Vec<Rational>),
    RankDeficient { rank: usize },
    /// Full rank, but some equation is violated; `row` indexes the input.
    Inconsistent { row: usize, residual: Rational },
}

/// Solves `matrix * x = rhs` where `matrix` has at least as many rows as
/// columns. Row operations use partial pivoting on the first nonzero entry;
/// the returned solution is then substituted back into every original row.
pub fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Solve {
    assert_eq!(matrix.len(), rhs.len(), "one right-hand side per row");
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");

    let mut rows: Vec<(Vec<Rational>, Rational)> = matrix.iter().cloned().zip(rhs.iter().cloned()).collect();
    let mut rank = 0;
    let mut pivot_cols = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot = rows[rank].0[col].clone();
        let (head, tail) = rows.split_at_mut(rank + 1);
        let (prow, prhs) = &head[rank];
        for (row, value) in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for c in col..cols {
                let delta = &factor * &prow[c];
                row[c] -= delta;
            }
            *value -= &factor * prhs;
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rank < cols {
        return Solve::RankDeficient { rank };
    }

    let mut x = vec![Rational::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate().rev() {
        let (row, value) = &rows[r];
        let mut acc = value.clone();
        for c in (col + 1)..cols {
            acc -= &row[c] * &x[c];
        }
        x[col] = acc / &row[col];
    }

    for (i, (row, value)) in matrix.iter().zip(rhs).enumerate() {
        let lhs: Rational = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        let residual = lhs - value;
        if !residual.is_zero() {
            return Solve::Inconsistent { row: i, residual };
        }
    }
    Solve::Unique(x)
}
