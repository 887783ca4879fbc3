//! Both sides of the Emden–Fowler identities for separated functions
//! `u(x) = |x|^{(2−N)/2} w(−ln|x|) g(x/|x|)` on a cone.
//!
//! The angular factor depends on one angle: the polar angle θ ∈ (0, θ₀) when
//! N = 2, the angle φ from the cap axis when N ≥ 3.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::profile::Profile;
use super::{ConeSpec, Sigma};
use crate::assembly::gauss_legendre_unit;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfCheck {
    /// `∫_C |∇u|²` evaluated in `(r, angle)` coordinates.
    pub lhs1: f64,
    /// `(N−2)²/4 ∬|Tu|² + ∬|∇_{s,σ}Tu|²` on the cylinder.
    pub rhs1: f64,
    /// `∫_C |x|⁻² u²`.
    pub lhs2: f64,
    /// `∬ |Tu|²`.
    pub rhs2: f64,
}

const GAUSS_POINTS: usize = 8;
const RADIAL_PANELS: usize = 256;
const ANGULAR_PANELS: usize = 64;

/// `|S^{k}|`, the area of the unit k-sphere.
fn sphere_area(k: usize) -> f64 {
    // |S^0| = 2, |S^1| = 2π, |S^k| = 2π/(k−1)·|S^{k−2}|.
    match k {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (k - 1) as f64 * sphere_area(k - 2),
    }
}

/// At least `min_panels` panels, each inside one interval between breakpoints.
fn panels(a: f64, b: f64, breaks: &[f64], min_panels: usize) -> Vec<(f64, f64)> {
    let mut knots = vec![a];
    knots.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    knots.push(b);
    let per = min_panels.div_ceil(knots.len() - 1).max(1);
    let mut out = Vec::new();
    for w in knots.windows(2) {
        for i in 0..per {
            let lo = w[0] + (w[1] - w[0]) * i as f64 / per as f64;
            let hi = w[0] + (w[1] - w[0]) * (i + 1) as f64 / per as f64;
            out.push((lo, hi));
        }
    }
    out
}

/// Quadrature nodes `(x, weight)` over `[a, b]`, panel-wise Gauss–Legendre.
fn nodes(a: f64, b: f64, breaks: &[f64], min_panels: usize) -> Vec<(f64, f64)> {
    gauss_on(&panels(a, b, breaks, min_panels))
}

fn gauss_on(panels: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let (gx, gw) = gauss_legendre_unit(GAUSS_POINTS);
    let mut out = Vec::new();
    for &(lo, hi) in panels {
        for (x, w) in gx.iter().zip(&gw) {
            out.push((lo + (hi - lo) * x, (hi - lo) * w));
        }
    }
    out
}

fn angular_setup(cone: &ConeSpec) -> (f64, Box<dyn Fn(f64) -> f64>) {
    let n = cone.n;
    match cone.sigma {
        Sigma::Arc { theta0 } => (theta0, Box::new(|_| 1.0)),
        Sigma::FullSphere if n == 2 => (2.0 * PI, Box::new(|_| 1.0)),
        Sigma::FullSphere => (PI, Box::new(move |t: f64| sphere_area(n - 2) * t.sin().powi(n as i32 - 2))),
        Sigma::Cap { phi0 } => (phi0, Box::new(move |t: f64| sphere_area(n - 2) * t.sin().powi(n as i32 - 2))),
    }
}

pub fn emden_fowler_check(cone: &ConeSpec, w: &dyn Profile, g: &dyn Profile) -> Result<EfCheck> {
    cone.validate()?;
    let (s0, s1) = w.support();
    if !(s0 >= 0.0 && s1 > s0 && s1.is_finite()) {
        return Err(Error::QuadratureFailure(format!("radial profile support ({s0}, {s1}) must lie in [0, ∞)")));
    }
    let (t_max, density) = angular_setup(cone);
    let (g0, g1) = g.support();
    if g0 < 0.0 || g1 > t_max + 1e-12 {
        return Err(Error::QuadratureFailure("angular profile support exceeds the cone".into()));
    }
    let a = (2.0 - cone.n as f64) / 2.0;

    // Angular nodes shared by both sides.
    let ang = nodes(g0, g1, &g.breakpoints(), ANGULAR_PANELS);

    // Cylinder side, in s.
    let s_panels = panels(s0, s1, &w.breakpoints(), RADIAL_PANELS);
    let s_nodes = gauss_on(&s_panels);
    let (mut w0, mut w1) = (0.0, 0.0);
    for &(s, ws) in &s_nodes {
        w0 += ws * w.value(s).powi(2);
        w1 += ws * w.derivative(s).powi(2);
    }
    let (mut ag, mut adg) = (0.0, 0.0);
    for &(t, wt) in &ang {
        let rho = density(t);
        ag += wt * rho * g.value(t).powi(2);
        adg += wt * rho * g.derivative(t).powi(2);
    }
    let rhs2 = w0 * ag;
    let rhs1 = a * a * w0 * ag + w1 * ag + w0 * adg;

    // Physical side, in r ∈ (e^{−s1}, e^{−s0}), 2-D tensor quadrature with
    // |∇u|² = u_r² + u_t²/r² and volume r^{N−1} ρ(t) dr dt.
    // Panels are the images of the s-panels, so they are geometric in r.
    let r_panels: Vec<(f64, f64)> = s_panels.iter().map(|&(lo, hi)| ((-hi).exp(), (-lo).exp())).collect();
    let r_nodes = gauss_on(&r_panels);
    let mut lhs1 = 0.0;
    let mut lhs2 = 0.0;
    for &(r, wr) in &r_nodes {
        let s = -r.ln();
        let (ws, dws) = (w.value(s), w.derivative(s));
        let ra = r.powf(a);
        // u = r^a w(−ln r) g(t)
        let radial = ra / r * (a * ws - dws);
        let vol_r = r.powi(cone.n as i32 - 1);
        let mut grad = 0.0;
        let mut mass = 0.0;
        for &(t, wt) in &ang {
            let rho = density(t) * wt;
            let (gv, dg) = (g.value(t), g.derivative(t));
            let ur = radial * gv;
            let ut = ra * ws * dg;
            grad += rho * (ur * ur + ut * ut / (r * r));
            let u = ra * ws * gv;
            mass += rho * u * u / (r * r);
        }
        lhs1 += wr * vol_r * grad;
        lhs2 += wr * vol_r * mass;
    }
    let out = EfCheck { lhs1, rhs1, lhs2, rhs2 };
    if [lhs1, rhs1, lhs2, rhs2].iter().any(|v| !v.is_finite()) {
        return Err(Error::QuadratureFailure("non-finite integral".into()));
    }
    Ok(out)
}
