//! Gauss-Jordan elimination over `Q(q)`.

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Outcome of [`rf_solve`]: the rank of the coefficient matrix, a basis of
/// its nullspace, and one particular solution when the system is consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    pub solution: Option<Vec<RatFunc>>,
    pub nullspace: Vec<Vec<RatFunc>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.solution.is_some() && self.nullspace.is_empty()
    }
}

/// Solves `matrix · x = rhs` exactly. Pivots are the first nonzero entry in
/// each column, so the result is deterministic for a given input.
pub fn rf_solve(matrix: &[Vec<RatFunc>], rhs: &[RatFunc]) -> Result<LinearSolution> {
    let rows = matrix.len();
    if rhs.len() != rows {
        return Err(Error::ShapeMismatch(format!(
            "{rows} equations but {} right-hand sides",
            rhs.len()
        )));
    }
    let cols = matrix.first().map_or(0, Vec::len);
    if let Some(bad) = matrix.iter().position(|r| r.len() != cols) {
        return Err(Error::ShapeMismatch(format!(
            "row {bad} has {} entries, expected {cols}",
            matrix[bad].len()
        )));
    }

    // Augmented rows; column `cols` is the right-hand side.
    let mut a: Vec<Vec<RatFunc>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv()?;
        let support: Vec<usize> = (c..=cols).filter(|&j| !a[r][j].is_zero()).collect();
        for &j in &support {
            a[r][j] = &a[r][j] * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] = &row[j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let rank = pivots.len();

    let consistent = a[rank..].iter().all(|row| row[cols].is_zero());
    let solution = consistent.then(|| {
        let mut x = vec![RatFunc::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = a[i][cols].clone();
        }
        x
    });

    let mut nullspace = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![RatFunc::zero(); cols];
        v[free] = RatFunc::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -&a[i][free];
        }
        nullspace.push(v);
    }

    Ok(LinearSolution {
        rank,
        solution,
        nullspace,
    })
}
