use serde::{Deserialize, Serialize};

use super::HardyResult;
use crate::assembly::gauss_legendre_unit;
use crate::geometry::{point_triangle_distance, signed_area, Mesh, Point};
use crate::{Error, Result};

const ANGULAR_PANELS: usize = 256;
const ANGULAR_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialReduction {
    pub radii: Vec<f64>,
    /// `ψ(r) = ∫₀^{θ₀} u(r, θ) Φ(θ) dθ`.
    pub psi: Vec<f64>,
    /// `∫ ψ²/r dr` (trapezoidal on the grid).
    pub int_psi2_over_r: f64,
    /// `∫ |ψ′|² r dr` (difference quotients on the grid).
    pub int_dpsi2_r: f64,
    /// `∫ ψ² r dr`.
    pub int_psi2_r: f64,
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty() || radii[0] < 0.0 || radii.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::OutOfRange("radii must be non-negative and strictly increasing".into()));
    }
    Ok(())
}

/// Reduction of an arbitrary function on the sector `0 < θ < theta0`.
pub fn radial_reduction_fn(
    theta0: f64,
    u: &dyn Fn(Point) -> f64,
    phi: &dyn Fn(f64) -> f64,
    radii: &[f64],
) -> Result<RadialReduction> {
    check_radii(radii)?;
    let (gx, gw) = gauss_legendre_unit(ANGULAR_POINTS);
    let h = theta0 / ANGULAR_PANELS as f64;
    let psi: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let mut s = 0.0;
            for p in 0..ANGULAR_PANELS {
                for (x, w) in gx.iter().zip(&gw) {
                    let t = (p as f64 + x) * h;
                    s += w * h * u([r * t.cos(), r * t.sin()]) * phi(t);
                }
            }
            s
        })
        .collect();
    Ok(functionals(radii.to_vec(), psi))
}

fn functionals(radii: Vec<f64>, psi: Vec<f64>) -> RadialReduction {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for i in 0..radii.len().saturating_sub(1) {
        let (r0, r1) = (radii[i], radii[i + 1]);
        let dr = r1 - r0;
        let f = |r: f64, p: f64| if r > 0.0 { p * p / r } else { 0.0 };
        a += 0.5 * dr * (f(r0, psi[i]) + f(r1, psi[i + 1]));
        let d = (psi[i + 1] - psi[i]) / dr;
        b += dr * d * d * 0.5 * (r0 + r1);
        c += 0.5 * dr * (psi[i] * psi[i] * r0 + psi[i + 1] * psi[i + 1] * r1);
    }
    RadialReduction { radii, psi, int_psi2_over_r: a, int_dpsi2_r: b, int_psi2_r: c }
}

/// Values of a P1 function at arbitrary points; triangles are pre-filtered by
/// their radial extent for each query radius.
struct Evaluator<'a> {
    mesh: &'a Mesh,
    nodal: Vec<f64>,
    r_range: Vec<(f64, f64)>,
}

impl<'a> Evaluator<'a> {
    fn new(mesh: &'a Mesh, nodal: Vec<f64>) -> Self {
        let r_range = (0..mesh.num_triangles())
            .map(|t| {
                let c = mesh.corners(t);
                let lo = point_triangle_distance([0.0, 0.0], c);
                let hi = c.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
                (lo, hi)
            })
            .collect();
        Evaluator { mesh, nodal, r_range }
    }

    fn candidates(&self, r: f64) -> Vec<usize> {
        let eps = 1e-12 * r.max(f64::MIN_POSITIVE);
        (0..self.r_range.len()).filter(|&t| self.r_range[t].0 <= r + eps && self.r_range[t].1 >= r - eps).collect()
    }

    fn value(&self, cands: &[usize], p: Point) -> f64 {
        for &t in cands {
            let c = self.mesh.corners(t);
            let area = signed_area(c[0], c[1], c[2]);
            let l = [
                signed_area(p, c[1], c[2]) / area,
                signed_area(c[0], p, c[2]) / area,
                signed_area(c[0], c[1], p) / area,
            ];
            if l.iter().all(|&x| x >= -1e-10) {
                let tri = self.mesh.triangles[t];
                return l[0] * self.nodal[tri[0]] + l[1] * self.nodal[tri[1]] + l[2] * self.nodal[tri[2]];
            }
        }
        // Outside the discrete domain (between a chord and its arc): u_h = 0.
        0.0
    }
}

/// `ψ` for the discrete minimizer of a sector-type result.
pub fn radial_reduction(
    result: &HardyResult,
    phi: &(dyn Fn(f64) -> f64 + Sync),
    radii: &[f64],
) -> Result<RadialReduction> {
    if !result.domain.is_sector_type() {
        return Err(Error::DomainNotSector);
    }
    check_radii(radii)?;
    let theta0 = result.domain.aperture().ok_or(Error::DomainNotSector)?;
    let ev = Evaluator::new(&result.mesh, result.pencil.dof_map.expand(&result.eig.coeffs));
    let (gx, gw) = gauss_legendre_unit(ANGULAR_POINTS);
    let h = theta0 / ANGULAR_PANELS as f64;
    let psi: Vec<f64> = result.discretization.execution.map(radii, |&r| {
        let cands = ev.candidates(r);
        let mut s = 0.0;
        for p in 0..ANGULAR_PANELS {
            for (x, w) in gx.iter().zip(&gw) {
                let t = (p as f64 + x) * h;
                s += w * h * ev.value(&cands, [r * t.cos(), r * t.sin()]) * phi(t);
            }
        }
        s
    });
    Ok(functionals(radii.to_vec(), psi))
}
