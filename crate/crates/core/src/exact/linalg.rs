//! Rank, nullspace and hyperplane spans over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Hyperplane, RVector, Rational};
use crate::error::ExactError;

fn common_dim(rows: &[RVector]) -> Result<usize, ExactError> {
    let dim = rows.first().map_or(0, RVector::dim);
    for r in rows {
        if r.dim() != dim {
            return Err(ExactError::DimensionMismatch {
                expected: dim,
                found: r.dim(),
            });
        }
    }
    Ok(dim)
}

/// Rank of the row span, by fraction-free (Bareiss) elimination on the
/// denominator-cleared rows.
pub fn rank(rows: &[RVector]) -> Result<usize, ExactError> {
    let dim = common_dim(rows)?;
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(RVector::cleared).collect();
    Ok(bareiss_rank(&mut m, dim))
}

pub(crate) fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss).
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                m[r][c] = (&m[k][k] * &m[r][c] - &m[r][k] * &m[k][c]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("nonzero pivot");
        for x in &mut m[row][col..cols] {
            *x = &*x * &inv;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, p) in line[col..cols].iter_mut().zip(&pivot[col..cols]) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

/// Basis of `{x : row . x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m[r][f];
            }
            v
        })
        .collect()
}

/// Affine rank of a point set: rank of the differences to the first point.
pub fn affine_rank(points: &[RVector]) -> Result<usize, ExactError> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let diffs = points[1..]
        .iter()
        .map(|p| p.sub(first))
        .collect::<Result<Vec<_>, _>>()?;
    rank(&diffs)
}

/// The hyperplane spanned by `dim` affinely independent points, in canonical form.
pub fn hyperplane_through(points: &[RVector], dim: usize) -> Result<Hyperplane, ExactError> {
    if points.len() != dim {
        return Err(ExactError::DimensionMismatch {
            expected: dim,
            found: points.len(),
        });
    }
    for p in points {
        if p.dim() != dim {
            return Err(ExactError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    // rows (p, -1) . (u, t) = 0
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r = p.coords().to_vec();
            r.push(-Rational::one());
            r
        })
        .collect();
    let basis = nullspace(&rows, dim + 1);
    if basis.len() != 1 {
        return Err(ExactError::DegenerateSpan);
    }
    let v = &basis[0];
    let normal = RVector::new(v[..dim].to_vec());
    if normal.is_zero() {
        return Err(ExactError::DegenerateSpan);
    }
    Hyperplane::new(normal, v[dim].clone())
}
