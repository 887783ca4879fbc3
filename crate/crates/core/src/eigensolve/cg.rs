//! Jacobi-preconditioned conjugate gradients.

use crate::sparse::{dot, norm2, CsrMatrix};
use crate::{Error, Result};

pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
    fn diagonal(&self) -> Vec<f64>;
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        CsrMatrix::dim(self)
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.mul_vec_into(x, y)
    }
    fn diagonal(&self) -> Vec<f64> {
        CsrMatrix::diagonal(self)
    }
}

/// `A − σW`, applied without forming the difference.
pub struct ShiftedPencil<'a> {
    pub a: &'a CsrMatrix,
    pub w: &'a CsrMatrix,
    pub sigma: f64,
}

impl LinearOperator for ShiftedPencil<'_> {
    fn dim(&self) -> usize {
        self.a.dim()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.a.mul_vec_into(x, y);
        let mut t = vec![0.0; x.len()];
        self.w.mul_vec_into(x, &mut t);
        for (yi, ti) in y.iter_mut().zip(&t) {
            *yi -= self.sigma * ti;
        }
    }
    fn diagonal(&self) -> Vec<f64> {
        self.a.diagonal().iter().zip(self.w.diagonal()).map(|(a, w)| a - self.sigma * w).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Final ‖b − Sx‖ / ‖b‖.
    pub relative_residual: f64,
}

#[derive(Debug, Clone)]
pub enum CgBreakdown {
    /// A direction `p` with `pᵀSp ≤ 0` was met: the operator is not positive definite.
    NegativeCurvature(Vec<f64>),
    /// Iteration cap reached; `x` is the last iterate.
    NoConvergence { x: Vec<f64>, iterations: usize, relative_residual: f64 },
}

pub fn pcg<S: LinearOperator>(
    s: &S,
    b: &[f64],
    x0: Option<&[f64]>,
    rel_tol: f64,
    max_iter: usize,
) -> std::result::Result<CgOutcome, CgBreakdown> {
    let n = s.dim();
    let diag = s.diagonal();
    if let Some(i) = diag.iter().position(|&d| !(d > 0.0)) {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        return Err(CgBreakdown::NegativeCurvature(e));
    }
    let bnorm = norm2(b);
    if bnorm == 0.0 {
        return Ok(CgOutcome { x: vec![0.0; n], iterations: 0, relative_residual: 0.0 });
    }
    let mut x = x0.map_or_else(|| vec![0.0; n], |v| v.to_vec());
    let mut r = vec![0.0; n];
    s.apply(&x, &mut r);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut sp = vec![0.0; n];
    let target = rel_tol * bnorm;
    let mut it = 0;
    let mut rnorm = norm2(&r);
    while rnorm > target {
        if it >= max_iter {
            return Err(CgBreakdown::NoConvergence { x, iterations: it, relative_residual: rnorm / bnorm });
        }
        s.apply(&p, &mut sp);
        let curv = dot(&p, &sp);
        if !(curv > 0.0) {
            return Err(CgBreakdown::NegativeCurvature(p));
        }
        let alpha = rz / curv;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * sp[i];
        }
        it += 1;
        // Periodic true-residual refresh keeps rounding drift in check.
        if it % 50 == 0 {
            s.apply(&x, &mut r);
            for (ri, bi) in r.iter_mut().zip(b) {
                *ri = bi - *ri;
            }
        }
        rnorm = norm2(&r);
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Ok(CgOutcome { x, iterations: it, relative_residual: rnorm / bnorm })
}

/// Solves `S x = b` for symmetric positive-definite `S` with
/// `‖Sx − b‖ ≤ tol·‖b‖`.
pub fn solve_spd(s: &CsrMatrix, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    if b.len() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), got: b.len() });
    }
    let max_iter = 10 * s.dim() + 100;
    match pcg(s, b, None, tol, max_iter) {
        Ok(o) => Ok(o.x),
        Err(CgBreakdown::NegativeCurvature(_)) => Err(Error::NotSpd),
        Err(CgBreakdown::NoConvergence { iterations, relative_residual, .. }) => {
            Err(Error::NoConvergence { iterations, residual: relative_residual })
        }
    }
}
