//! First Dirichlet eigenvalue of a geodesic cap of S^{N−1} through the
//! axisymmetric Sturm–Liouville problem
//! `−((sin φ)^{N−2} Φ′)′ = λ (sin φ)^{N−2} Φ`, `Φ′(0) = 0`, `Φ(φ₀) = 0`.

use serde::{Deserialize, Serialize};

use crate::assembly::gauss_legendre_unit;
use crate::sparse::CsrMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapEigenResult {
    pub lambda1: f64,
    /// Φ on `PROFILE_POINTS` uniform angles from 0 to φ₀; max 1, last entry 0.
    pub profile: Vec<f64>,
    pub tol_achieved: f64,
}

pub const PROFILE_POINTS: usize = 257;
const START_ELEMENTS: usize = 32;
const MAX_ELEMENTS: usize = 1 << 17;

/// Tridiagonal P1 pencil on `n` equal elements; unknowns at nodes `0..n`
/// (the node at φ₀ is eliminated).
struct Tridiagonal {
    k_diag: Vec<f64>,
    k_off: Vec<f64>,
    m_diag: Vec<f64>,
    m_off: Vec<f64>,
}

fn weight(n_dim: usize, phi: f64) -> f64 {
    phi.sin().powi(n_dim as i32 - 2)
}

fn build(n_dim: usize, phi0: f64, n: usize) -> Tridiagonal {
    let h = phi0 / n as f64;
    let (gx, gw) = gauss_legendre_unit(4);
    let mut t =
        Tridiagonal { k_diag: vec![0.0; n], k_off: vec![0.0; n - 1], m_diag: vec![0.0; n], m_off: vec![0.0; n - 1] };
    for e in 0..n {
        let (mut kp, mut m00, mut m01, mut m11) = (0.0, 0.0, 0.0, 0.0);
        for (x, w) in gx.iter().zip(&gw) {
            let p = weight(n_dim, (e as f64 + x) * h) * w;
            kp += p;
            m00 += p * (1.0 - x) * (1.0 - x);
            m01 += p * (1.0 - x) * x;
            m11 += p * x * x;
        }
        let (kp, m00, m01, m11) = (kp / h, m00 * h, m01 * h, m11 * h);
        t.k_diag[e] += kp;
        t.m_diag[e] += m00;
        if e + 1 < n {
            t.k_diag[e + 1] += kp;
            t.k_off[e] -= kp;
            t.m_diag[e + 1] += m11;
            t.m_off[e] += m01;
        }
    }
    t
}

impl Tridiagonal {
    /// Number of eigenvalues below `sigma` (Sylvester inertia of `K − σM`).
    fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut d_prev = 0.0;
        for i in 0..self.k_diag.len() {
            let a = self.k_diag[i] - sigma * self.m_diag[i];
            let d = if i == 0 {
                a
            } else {
                let b = self.k_off[i - 1] - sigma * self.m_off[i - 1];
                a - b * b / d_prev
            };
            let d = if d == 0.0 { -f64::MIN_POSITIVE } else { d };
            if d < 0.0 {
                count += 1;
            }
            d_prev = d;
        }
        count
    }

    fn rayleigh(&self, v: &[f64]) -> f64 {
        let quad = |diag: &[f64], off: &[f64]| {
            let mut s: f64 = diag.iter().zip(v).map(|(d, x)| d * x * x).sum();
            for i in 0..off.len() {
                s += 2.0 * off[i] * v[i] * v[i + 1];
            }
            s
        };
        quad(&self.k_diag, &self.k_off) / quad(&self.m_diag, &self.m_off)
    }

    fn smallest(&self) -> f64 {
        let n = self.k_diag.len();
        let trial: Vec<f64> = (0..n).map(|i| 1.0 - (i as f64 / n as f64).powi(2)).collect();
        let mut hi = self.rayleigh(&trial);
        let mut lo = 0.0;
        while self.count_below(lo) > 0 {
            lo = -2.0 * lo.abs() - 1.0;
        }
        while (hi - lo) > 1e-15 * hi.abs().max(1.0) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Inverse iteration with a Thomas solve of `(K − σM) y = M x`.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.k_diag.len();
        let sigma = lambda * (1.0 - 1e-9) - 1e-12;
        let a: Vec<f64> = (0..n).map(|i| self.k_diag[i] - sigma * self.m_diag[i]).collect();
        let b: Vec<f64> = (0..n.saturating_sub(1)).map(|i| self.k_off[i] - sigma * self.m_off[i]).collect();
        let mut x = vec![1.0; n];
        for _ in 0..4 {
            let mut rhs: Vec<f64> = (0..n).map(|i| self.m_diag[i] * x[i]).collect();
            for i in 0..n - 1 {
                rhs[i] += self.m_off[i] * x[i + 1];
                rhs[i + 1] += self.m_off[i] * x[i];
            }
            let mut c = vec![0.0; n];
            let mut d = vec![0.0; n];
            let mut piv = a[0];
            c[0] = if n > 1 { b[0] / piv } else { 0.0 };
            d[0] = rhs[0] / piv;
            for i in 1..n {
                piv = a[i] - b[i - 1] * c[i - 1];
                if i + 1 < n {
                    c[i] = b[i] / piv;
                }
                d[i] = (rhs[i] - b[i - 1] * d[i - 1]) / piv;
            }
            for i in (0..n - 1).rev() {
                d[i] -= c[i] * d[i + 1];
            }
            let big = d.iter().fold(0.0f64, |m, v| if v.abs() > m.abs() { *v } else { m });
            x = d.iter().map(|v| v / big).collect();
        }
        x
    }
}

/// Stiffness and mass of the cap problem on `n` elements, as sparse matrices.
pub fn cap_pencil(n_dim: usize, phi0: f64, n: usize) -> Result<(CsrMatrix, CsrMatrix)> {
    check(n_dim, phi0)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("need at least 2 elements, got {n}")));
    }
    let t = build(n_dim, phi0, n);
    let mut kt = Vec::new();
    let mut mt = Vec::new();
    for i in 0..n {
        kt.push((i, i, t.k_diag[i]));
        mt.push((i, i, t.m_diag[i]));
        if i + 1 < n {
            for (a, b) in [(i, i + 1), (i + 1, i)] {
                kt.push((a, b, t.k_off[i]));
                mt.push((a, b, t.m_off[i]));
            }
        }
    }
    Ok((CsrMatrix::from_triplets(n, &kt), CsrMatrix::from_triplets(n, &mt)))
}

/// Smallest eigenvalue of the P1 pencil on `n` elements.
pub fn cap_fe_lambda1(n_dim: usize, phi0: f64, n: usize) -> Result<f64> {
    check(n_dim, phi0)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("need at least 2 elements, got {n}")));
    }
    Ok(build(n_dim, phi0, n).smallest())
}

fn check(n_dim: usize, phi0: f64) -> Result<()> {
    if n_dim < 3 {
        return Err(Error::OutOfRange(format!("cap problems need N ≥ 3, got {n_dim}")));
    }
    if !(phi0 > 0.0 && phi0 < std::f64::consts::PI) {
        return Err(Error::OutOfRange(format!("cap half-angle {phi0} outside (0, π)")));
    }
    Ok(())
}

/// Element count doubles until successive Richardson values `(4λ₂ₙ − λₙ)/3`
/// agree to `tol`.
pub fn cap_lambda1(n_dim: usize, phi0: f64, tol: f64) -> Result<CapEigenResult> {
    check(n_dim, phi0)?;
    if !(tol > 0.0) {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tol}")));
    }
    let mut n = START_ELEMENTS;
    let mut coarse = build(n_dim, phi0, n).smallest();
    let mut prev_extrap = f64::NAN;
    loop {
        let fine_t = build(n_dim, phi0, 2 * n);
        let fine = fine_t.smallest();
        let extrap = (4.0 * fine - coarse) / 3.0;
        let change = (extrap - prev_extrap).abs();
        if change <= tol {
            let v = fine_t.eigenvector(fine);
            return Ok(CapEigenResult { lambda1: extrap, profile: resample(&v, 2 * n), tol_achieved: change });
        }
        n *= 2;
        if 2 * n > MAX_ELEMENTS {
            return Err(Error::NoConvergence { iterations: n, residual: change });
        }
        coarse = fine;
        prev_extrap = extrap;
    }
}

fn resample(v: &[f64], n: usize) -> Vec<f64> {
    let nodal = |i: usize| if i >= n { 0.0 } else { v[i] };
    let mut out: Vec<f64> = (0..PROFILE_POINTS)
        .map(|k| {
            let x = k as f64 * n as f64 / (PROFILE_POINTS - 1) as f64;
            let i = (x.floor() as usize).min(n - 1);
            let f = x - i as f64;
            (1.0 - f) * nodal(i) + f * nodal(i + 1)
        })
        .collect();
    let big = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sign = if out[0] < 0.0 { -1.0 } else { 1.0 };
    for x in out.iter_mut() {
        *x *= sign / big;
    }
    out
}
