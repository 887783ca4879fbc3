//! Mesh generation for the built-in domain families and midpoint refinement.
//!
//! Sector-type domains get a structured polar mesh: rings of `m + 1` vertices
//! at fixed angles, quads split along one diagonal, and a fan of triangles
//! joining the innermost ring to the origin. Grading places rings at
//! `R·q^k`, `k = 0..=layers`, with extra uniform rings wherever the radial
//! gap would exceed the target size. Polygons are ear-clipped, refined to the
//! target size, then graded by repeatedly splitting the origin fan at ratio `q`.

use std::collections::HashMap;
use std::f64::consts::SQRT_2;

use super::domain::{DomainKind, DomainSpec};
use super::mesh::{Grading, Mesh};
use super::{norm, polygon, Point, GRADING_FLOOR};
use crate::{Error, Result};

/// Angular intervals used for a sector of aperture `theta0` so that chords at
/// radius `r_ref` stay below `h/√2`.
pub fn sector_angular_divisions(theta0: f64, r_ref: f64, h: f64) -> usize {
    ((theta0 * r_ref * SQRT_2 / h).ceil() as usize).max(2)
}

pub fn generate_mesh(domain: &DomainSpec, target_h: f64, grading: Grading) -> Result<Mesh> {
    domain.validate()?;
    if !(target_h.is_finite() && target_h > 0.0) {
        return Err(Error::InvalidDomain(format!("target_h must be positive, got {target_h}")));
    }
    if grading.layers > 0 && !(grading.q > 0.0 && grading.q < 1.0) {
        return Err(Error::InvalidDomain(format!("grading ratio q = {} outside (0, 1)", grading.q)));
    }
    match &domain.kind {
        DomainKind::Sector { theta0, radius } => sector_mesh(*theta0, *radius, target_h, grading),
        DomainKind::HalfDisk { radius } => sector_mesh(std::f64::consts::PI, *radius, target_h, grading),
        DomainKind::AnnularSector { theta0, alpha, beta } => annular_mesh(*theta0, *alpha, *beta, target_h, grading),
        DomainKind::Polygon { vertices } => polygon_mesh(vertices, target_h, grading),
    }
}

fn check_floor(innermost: f64, scale: f64) -> Result<()> {
    let limit = GRADING_FLOOR * scale;
    if innermost < limit {
        return Err(Error::GradingTooAggressive { innermost, limit });
    }
    Ok(())
}

/// Structured rings; `radii` descending, all positive. `inner_dirichlet`
/// flags the innermost ring (annular case); otherwise a fan closes at 0.
fn ring_mesh(theta0: f64, radii: &[f64], m: usize, inner_dirichlet: bool, grading: Grading) -> Result<Mesh> {
    let nr = radii.len();
    let stride = m + 1;
    let mut vertices = Vec::with_capacity(nr * stride + 1);
    let mut boundary = Vec::with_capacity(nr * stride + 1);
    let angles: Vec<f64> = (0..=m).map(|j| theta0 * j as f64 / m as f64).collect();
    for (k, &r) in radii.iter().enumerate() {
        for (j, &th) in angles.iter().enumerate() {
            // Exact endpoints on the first ray.
            let p = if j == 0 { [r, 0.0] } else { [r * th.cos(), r * th.sin()] };
            vertices.push(p);
            boundary.push(k == 0 || j == 0 || j == m || (inner_dirichlet && k == nr - 1));
        }
    }
    let at = |k: usize, j: usize| k * stride + j;
    let mut triangles = Vec::with_capacity(2 * m * nr);
    for k in 0..nr - 1 {
        for j in 0..m {
            let (d, a, b, c) = (at(k + 1, j), at(k, j), at(k, j + 1), at(k + 1, j + 1));
            triangles.push([d, a, b]);
            triangles.push([d, b, c]);
        }
    }
    if !inner_dirichlet {
        let o = vertices.len();
        vertices.push([0.0, 0.0]);
        boundary.push(true);
        for j in 0..m {
            triangles.push([o, at(nr - 1, j), at(nr - 1, j + 1)]);
        }
    }
    Mesh::new(vertices, triangles, boundary, grading)
}

fn uniform_between(outer: f64, inner: f64, max_gap: f64, out: &mut Vec<f64>) {
    let n = ((outer - inner) / max_gap).ceil().max(1.0) as usize;
    for i in 1..n {
        out.push(outer - (outer - inner) * i as f64 / n as f64);
    }
}

fn sector_mesh(theta0: f64, radius: f64, h: f64, grading: Grading) -> Result<Mesh> {
    let m = sector_angular_divisions(theta0, radius, h);
    let gap = h / SQRT_2;
    let mut radii = vec![radius];
    if grading.layers == 0 {
        uniform_between(radius, 0.0, gap, &mut radii);
    } else {
        let innermost = radius * grading.q.powi(grading.layers as i32);
        check_floor(innermost, radius)?;
        let mut prev = radius;
        for k in 1..=grading.layers {
            let next = radius * grading.q.powi(k as i32);
            uniform_between(prev, next, gap, &mut radii);
            radii.push(next);
            prev = next;
        }
    }
    ring_mesh(theta0, &radii, m, false, grading)
}

fn annular_mesh(theta0: f64, alpha: f64, beta: f64, h: f64, grading: Grading) -> Result<Mesh> {
    let m = sector_angular_divisions(theta0, alpha, h);
    let log_ratio = (beta / alpha).ln();
    let layers = if grading.layers > 0 {
        grading.layers
    } else {
        if !(grading.q > 0.0 && grading.q < 1.0) {
            return Err(Error::InvalidDomain(format!("grading ratio q = {} outside (0, 1)", grading.q)));
        }
        (log_ratio / (1.0 / grading.q).ln()).ceil().max(1.0) as usize
    };
    let q = (-log_ratio / layers as f64).exp();
    let mut radii: Vec<f64> = (0..=layers).map(|k| beta * q.powi(k as i32)).collect();
    // Inner chords must stay outside |x| = alpha for the mesh to be inscribed.
    let half = 0.5 * theta0 / m as f64;
    radii[layers] = alpha / half.cos();
    if radii[layers] >= radii[layers - 1] {
        return Err(Error::InvalidDomain("annulus too thin for the angular resolution".into()));
    }
    ring_mesh(theta0, &radii, m, true, Grading { q, layers })
}

fn polygon_mesh(vertices: &[Point], h: f64, grading: Grading) -> Result<Mesh> {
    let v = polygon::normalized(vertices);
    let tris = polygon::triangulate(&v);
    let boundary = vec![true; v.len()];
    let mut mesh = Mesh::new(v, tris, boundary, Grading::ungraded())?;
    let max_diam = |m: &Mesh| (0..m.num_triangles()).map(|t| m.diameter_of(t)).fold(0.0, f64::max);
    while max_diam(&mesh) > h {
        mesh = refine_mesh(&mesh)?;
    }
    mesh.grading = Grading::ungraded();
    if grading.layers > 0 {
        let o = mesh.origin_vertex.expect("normalized polygon has the origin as a vertex");
        let nearest = mesh
            .triangles
            .iter()
            .filter(|t| t.contains(&o))
            .flat_map(|t| t.iter().filter(|&&i| i != o).map(|&i| norm(mesh.vertices[i])))
            .fold(f64::INFINITY, f64::min);
        let scale = mesh.vertices.iter().map(|&p| norm(p)).fold(0.0, f64::max);
        check_floor(nearest * grading.q.powi(grading.layers as i32), scale)?;
        for _ in 0..grading.layers {
            mesh = split_origin_fan(&mesh, grading.q)?;
        }
    }
    mesh.grading = grading;
    Ok(mesh)
}

/// Replaces every origin triangle `(0, a, b)` by `(0, qa, qb)` plus the two
/// halves of the trapezoid `(qa, a, b, qb)`. Points `qa` are shared between
/// neighbouring fan triangles, so the result stays conforming.
fn split_origin_fan(mesh: &Mesh, q: f64) -> Result<Mesh> {
    let o = mesh.origin_vertex.ok_or_else(|| Error::InvariantViolation("no origin vertex to grade".into()))?;
    let counts = mesh.edge_counts();
    let mut vertices = mesh.vertices.clone();
    let mut boundary = mesh.boundary.clone();
    let mut inner: HashMap<usize, usize> = HashMap::new();
    let mut inner_of = |a: usize, vertices: &mut Vec<Point>, boundary: &mut Vec<bool>| -> usize {
        *inner.entry(a).or_insert_with(|| {
            let p = vertices[a];
            vertices.push([q * p[0], q * p[1]]);
            boundary.push(counts[&(a.min(o), a.max(o))] == 1);
            vertices.len() - 1
        })
    };
    let mut triangles = Vec::with_capacity(mesh.triangles.len() + 8);
    for t in &mesh.triangles {
        match t.iter().position(|&i| i == o) {
            None => triangles.push(*t),
            Some(k) => {
                let (a, b) = (t[(k + 1) % 3], t[(k + 2) % 3]);
                let pa = inner_of(a, &mut vertices, &mut boundary);
                let pb = inner_of(b, &mut vertices, &mut boundary);
                triangles.push([o, pa, pb]);
                triangles.push([pa, a, b]);
                triangles.push([pa, b, pb]);
            }
        }
    }
    let mut g = mesh.grading;
    g.layers += 1;
    Mesh::new(vertices, triangles, boundary, g)
}

/// Uniform quadrisection through edge midpoints. New vertices are appended in
/// first-encounter order, so `V' = V + E` and old indices are unchanged.
pub fn refine_mesh(mesh: &Mesh) -> Result<Mesh> {
    let counts = mesh.edge_counts();
    let mut vertices = mesh.vertices.clone();
    let mut boundary = mesh.boundary.clone();
    let mut mid: HashMap<(usize, usize), usize> = HashMap::with_capacity(counts.len());
    let mut triangles = Vec::with_capacity(4 * mesh.triangles.len());
    for t in &mesh.triangles {
        let mut m = [0usize; 3];
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            m[k] = *mid.entry(key).or_insert_with(|| {
                let (pa, pb) = (vertices[a], vertices[b]);
                vertices.push([0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])]);
                boundary.push(counts[&key] == 1);
                vertices.len() - 1
            });
        }
        // m[0] on (t0,t1), m[1] on (t1,t2), m[2] on (t2,t0)
        triangles.push([t[0], m[0], m[2]]);
        triangles.push([m[0], t[1], m[1]]);
        triangles.push([m[2], m[1], t[2]]);
        triangles.push([m[0], m[1], m[2]]);
    }
    let mut g = mesh.grading;
    g.layers += 1;
    let out = Mesh { vertices, triangles, boundary, origin_vertex: mesh.origin_vertex, grading: g };
    out.validate()?;
    Ok(out)
}
