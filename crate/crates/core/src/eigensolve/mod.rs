//! Smallest eigenpair of the symmetric pencil `A x = μ W x` with `W` positive
//! definite and `A` symmetric (possibly indefinite).

mod cg;
mod dense;

use serde::{Deserialize, Serialize};

pub use cg::{pcg, solve_spd, CgBreakdown, CgOutcome, LinearOperator, ShiftedPencil};
pub use dense::{dense_oracle, dense_smallest, to_dense, DENSE_LIMIT};

use crate::sparse::{dot, norm2, CsrMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum EigMethod {
    /// Dense for small pencils, shift-invert otherwise.
    #[default]
    Auto,
    ShiftInvert,
    Dense,
}

/// Size up to which [`EigMethod::Auto`] uses the dense solver.
pub const AUTO_DENSE_MAX: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigOptions {
    /// Bound on `‖Ax − μWx‖₂` for `W`-normalized `x`.
    pub tol: f64,
    /// Outer iteration cap; `None` means `10·n`.
    pub max_iter: Option<usize>,
    pub method: EigMethod,
}

impl Default for EigOptions {
    fn default() -> Self {
        EigOptions { tol: 1e-10, max_iter: None, method: EigMethod::Auto }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigResult {
    pub mu: f64,
    /// Eigenvector, `W`-normalized, first significant entry positive.
    pub coeffs: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub method: EigMethod,
}

pub fn smallest_eigenpair(a: &CsrMatrix, w: &CsrMatrix, tol: f64, max_iter: usize) -> Result<EigResult> {
    smallest_eigenpair_with(a, w, &EigOptions { tol, max_iter: Some(max_iter), method: EigMethod::Auto })
}

pub fn smallest_eigenpair_with(a: &CsrMatrix, w: &CsrMatrix, opts: &EigOptions) -> Result<EigResult> {
    let n = a.dim();
    if w.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.dim() });
    }
    if n == 0 {
        return Err(Error::OutOfRange("empty pencil".into()));
    }
    let max_iter = opts.max_iter.unwrap_or(10 * n);
    let dense = match opts.method {
        EigMethod::Dense => true,
        EigMethod::ShiftInvert => false,
        EigMethod::Auto => n <= AUTO_DENSE_MAX,
    };
    if dense {
        let (mu, mut x) = dense_smallest(&to_dense(a), &to_dense(w))?;
        normalize(w, &mut x)?;
        let residual = residual_norm(a, w, &x, mu);
        return Ok(EigResult { mu, coeffs: x, residual, iterations: 0, method: EigMethod::Dense });
    }
    shift_invert(a, w, opts.tol, max_iter)
}

fn normalize(w: &CsrMatrix, x: &mut [f64]) -> Result<()> {
    let nw = w.quad_form(x);
    if !(nw > 0.0) {
        return Err(Error::NotSpd);
    }
    let s = 1.0 / nw.sqrt();
    let big = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = x.iter().find(|v| v.abs() > 1e-12 * big).map_or(1.0, |v| v.signum());
    for v in x.iter_mut() {
        *v *= s * sign;
    }
    Ok(())
}

fn residual_vec(a: &CsrMatrix, w: &CsrMatrix, x: &[f64], mu: f64) -> Vec<f64> {
    let ax = a.mul_vec(x);
    let wx = w.mul_vec(x);
    ax.iter().zip(&wx).map(|(p, q)| p - mu * q).collect()
}

fn residual_norm(a: &CsrMatrix, w: &CsrMatrix, x: &[f64], mu: f64) -> f64 {
    norm2(&residual_vec(a, w, x, mu))
}

fn rq(a: &CsrMatrix, w: &CsrMatrix, x: &[f64]) -> f64 {
    a.quad_form(x) / w.quad_form(x)
}

const MAX_STALLS: usize = 30;

/// Inverse iteration on `A − σW` with `σ` kept strictly below the smallest
/// eigenvalue. Each solve is a PCG run; negative curvature means `σ` went too
/// high and triggers a backoff.
fn shift_invert(a: &CsrMatrix, w: &CsrMatrix, tol: f64, max_iter: usize) -> Result<EigResult> {
    let n = a.dim();
    let wd = w.diagonal();
    if wd.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::NotSpd);
    }
    let mut x = vec![1.0; n];
    normalize(w, &mut x)?;
    let mut mu = rq(a, w, &x);
    let scale = a.diagonal().iter().zip(&wd).fold(0.0f64, |m, (a, w)| m.max((a / w).abs()));
    let floor_gap = 1e-3 * mu.abs().max(1e-6 * scale).max(1e-12);
    let mut sigma = mu - mu.abs().max(1e-2 * scale).max(1.0);
    let mut res = residual_norm(a, w, &x, mu);
    let inner_max = 10 * n + 100;
    let mut it = 0;
    let mut stalls = 0;
    while res > tol {
        if it >= max_iter {
            return Err(Error::NoConvergence { iterations: it, residual: res });
        }
        it += 1;
        let gap = (mu - sigma).max(floor_gap);
        let b = w.mul_vec(&x);
        let bn = norm2(&b);
        let inner_tol = (0.05 * tol.max(0.1 * res) / (gap * bn)).clamp(1e-15, 1e-4);
        let y0: Vec<f64> = x.iter().map(|v| v / gap).collect();
        let op = ShiftedPencil { a, w, sigma };
        match pcg(&op, &b, Some(&y0), inner_tol, inner_max) {
            Err(CgBreakdown::NegativeCurvature(p)) => {
                let pw = w.quad_form(&p);
                let low = if pw > 0.0 { rq(a, w, &p).min(sigma) } else { sigma };
                sigma = low - 2.0 * gap;
            }
            // A stalled solve usually means σ sits too close to the spectrum
            // for the conditioning of the pencil; move it away and retry.
            Err(CgBreakdown::NoConvergence { iterations, relative_residual, .. }) if !(relative_residual < 1e-2) => {
                stalls += 1;
                if stalls > MAX_STALLS {
                    return Err(Error::NoConvergence { iterations, residual: relative_residual });
                }
                sigma = sigma.min(mu) - 4.0 * gap;
            }
            // An inexact solve is still a useful inverse-iteration step; the
            // outer residual decides convergence.
            Err(CgBreakdown::NoConvergence { x: y, .. }) | Ok(CgOutcome { x: y, .. }) => {
                let mut y = y;
                normalize(w, &mut y)?;
                let mu_new = rq(a, w, &y);
                x = y;
                mu = mu_new;
                let r = residual_vec(a, w, &x, mu);
                res = norm2(&r);
                if mu <= sigma {
                    // An undetected indefinite solve; restart from below.
                    sigma = mu - 2.0 * gap;
                    continue;
                }
                let eta = r.iter().zip(&wd).map(|(r, d)| r * r / d).sum::<f64>().sqrt();
                let candidate = mu - (2.0 * eta).max(floor_gap);
                if candidate > sigma {
                    sigma = candidate;
                }
            }
        }
    }
    // Final Rayleigh quotient is consistent with the returned vector.
    debug_assert!((dot(&x, &w.mul_vec(&x)) - 1.0).abs() < 1e-8);
    Ok(EigResult { mu, coeffs: x, residual: res, iterations: it, method: EigMethod::ShiftInvert })
}
