//! Exact Gauss–Jordan elimination over any field of exact scalars.

use num_traits::Num;

/// Reduces `m` in place to reduced row-echelon form over its first `ncols`
/// columns; returns the pivot columns.
pub fn rref<T: Clone + Num>(m: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let d = m[row][c].clone() * f.clone();
                    m[r][c] = m[r][c].clone() - d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn nullspace<T: Clone + Num>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![T::zero(); ncols];
            x[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = T::zero() - a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Solves `A X = B` (B given by columns) with free unknowns set to zero.
/// `None` when the system is inconsistent.
pub fn solve<T: Clone + Num>(a: &[Vec<T>], b_cols: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend(b_cols.iter().map(|c| c[r].clone()));
            v
        })
        .collect();
    let pivots = rref(&mut aug, n);
    for row in aug.iter().skip(pivots.len()) {
        if row[n..].iter().any(|v| !v.is_zero()) {
            return None;
        }
    }
    Some(
        (0..b_cols.len())
            .map(|k| {
                let mut x = vec![T::zero(); n];
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = aug[r][n + k].clone();
                }
                x
            })
            .collect(),
    )
}
