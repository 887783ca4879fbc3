//! Dense generalized symmetric eigensolver used as an oracle.
//!
//! `W = LLᵀ` by Cholesky, then the symmetric matrix `L⁻¹AL⁻ᵀ` is diagonalized.
//! Linear algebra kernels come from nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::sparse::CsrMatrix;
use crate::{Error, Result};

pub const DENSE_LIMIT: usize = 2000;

pub fn to_dense(m: &CsrMatrix) -> DMatrix<f64> {
    let n = m.dim();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let (cols, vals) = m.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            d[(i, j)] = v;
        }
    }
    d
}

fn reduce(a: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<(DMatrix<f64>, nalgebra::SymmetricEigen<f64, nalgebra::Dyn>)> {
    let n = a.nrows();
    if a.ncols() != n || w.nrows() != n || w.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.nrows() });
    }
    if n > DENSE_LIMIT {
        return Err(Error::OutOfRange(format!("dense oracle limited to n ≤ {DENSE_LIMIT}, got {n}")));
    }
    let chol = w.clone().cholesky().ok_or(Error::NotSpd)?;
    let l = chol.l();
    let y = l.solve_lower_triangular(a).ok_or(Error::NotSpd)?;
    let c = l.solve_lower_triangular(&y.transpose()).ok_or(Error::NotSpd)?;
    let c = 0.5 * (&c + c.transpose());
    Ok((l, c.symmetric_eigen()))
}

/// Full generalized spectrum of `A x = μ W x`, ascending.
pub fn dense_oracle(a: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<Vec<f64>> {
    let (_, eig) = reduce(a, w)?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|x, y| x.total_cmp(y));
    Ok(v)
}

/// Smallest eigenvalue and a `W`-normalized eigenvector.
pub fn dense_smallest(a: &DMatrix<f64>, w: &DMatrix<f64>) -> Result<(f64, Vec<f64>)> {
    let (l, eig) = reduce(a, w)?;
    let (k, &mu) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .ok_or_else(|| Error::OutOfRange("empty pencil".into()))?;
    let z: DVector<f64> = eig.eigenvectors.column(k).into_owned();
    let mut x = l.transpose().solve_upper_triangular(&z).ok_or(Error::NotSpd)?;
    let mut mu = mu;
    // Two inverse-iteration steps at a shift just below μ sharpen the vector
    // beyond what the reduced eigensolve delivers.
    let sigma = mu - 1e-10 * mu.abs().max(1.0);
    let lu = (a - w * sigma).lu();
    for _ in 0..2 {
        match lu.solve(&(w * &x)) {
            Some(y) if y.iter().all(|v| v.is_finite()) => {
                let nw = y.dot(&(w * &y));
                x = y / nw.sqrt();
                mu = x.dot(&(a * &x));
            }
            _ => break,
        }
    }
    Ok((mu, x.iter().copied().collect()))
}
