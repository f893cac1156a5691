//! Small exact linear algebra helpers: determinants, kernels, products.
//!
//! Everything works on dense row-major `Vec<Vec<Scalar>>` over a single field.
//! Pivoting picks the first nonzero entry; arithmetic is exact so this is a
//! determinism choice, not a stability one.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(m.len());
    for row in m {
        if row.len() != v.len() {
            return Err(Error::DimensionMismatch);
        }
        let mut acc = row[0].checked_mul(&v[0])?;
        for (a, b) in row.iter().zip(v.iter()).skip(1) {
            acc = acc.checked_add(&a.checked_mul(b)?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch);
    }
    let mut acc = a[0].checked_mul(&b[0])?;
    for (x, y) in a.iter().zip(b.iter()).skip(1) {
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Ok(acc)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        if row.len() != k {
            return Err(Error::DimensionMismatch);
        }
        let mut new_row = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = row[0].checked_mul(&b[0][j])?;
            for i in 1..k {
                acc = acc.checked_add(&row[i].checked_mul(&b[i][j])?)?;
            }
            new_row.push(acc);
        }
        out.push(new_row);
    }
    Ok(out)
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

/// Determinant of a square matrix by exact Gaussian elimination.
pub fn det(m: &Matrix, field: &FieldDescriptor) -> Result<Scalar> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch);
        }
    }
    let mut a: Matrix = m.clone();
    let mut result = field.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Ok(field.zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            result = result.neg_val();
        }
        let p = a[col][col].clone();
        result = result.checked_mul(&p)?;
        let pinv = p.checked_inv()?;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].checked_mul(&pinv)?;
            for c in col..n {
                let sub = factor.checked_mul(&a[col][c])?;
                a[r][c] = a[r][c].checked_sub(&sub)?;
            }
        }
    }
    Ok(result)
}

/// Basis of the null space of the linear map given by `rows` (each row one
/// equation in `ncols` unknowns).
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, field: &FieldDescriptor) -> Result<Vec<Vec<Scalar>>> {
    let mut a: Matrix = rows.to_vec();
    for row in &a {
        if row.len() != ncols {
            return Err(Error::DimensionMismatch);
        }
    }
    let nrows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        let pinv = a[r][c].checked_inv()?;
        for j in c..ncols {
            a[r][j] = a[r][j].checked_mul(&pinv)?;
        }
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..ncols {
                    let sub = f.checked_mul(&a[r][j])?;
                    a[i][j] = a[i][j].checked_sub(&sub)?;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v: Vec<Scalar> = (0..ncols).map(|_| field.zero()).collect();
        v[free] = field.one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = a[ri][free].neg_val();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Rank of the matrix, by the same elimination.
pub fn rank(rows: &[Vec<Scalar>], ncols: usize, field: &FieldDescriptor) -> Result<usize> {
    let basis = kernel(rows, ncols, field)?;
    Ok(ncols - basis.len())
}
