use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{norm, point_segment_distance, signed_area, Point};
use crate::{Error, Result};

/// Geometric grading toward the origin: ring radii shrink by `q` per layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grading {
    pub q: f64,
    pub layers: usize,
}

impl Grading {
    pub fn new(q: f64, layers: usize) -> Self {
        Grading { q, layers }
    }

    /// No grading layers; midpoint refinement of an origin fan still halves
    /// radii, hence `q = 1/2`.
    pub fn ungraded() -> Self {
        Grading { q: 0.5, layers: 0 }
    }
}

/// Conforming P1 triangulation. Immutable once built; all constructors
/// validate the invariants below.
///
/// * every triangle is counter-clockwise with positive area;
/// * an edge is shared by at most two triangles;
/// * every vertex on a boundary edge is flagged Dirichlet, as is the origin;
/// * the origin is either a vertex or lies outside every triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary: Vec<bool>,
    pub origin_vertex: Option<usize>,
    pub grading: Grading,
}

impl Mesh {
    /// Builds and validates a mesh. `origin_vertex` is detected as the vertex
    /// located exactly at 0.
    pub fn new(
        vertices: Vec<Point>,
        triangles: Vec<[usize; 3]>,
        boundary: Vec<bool>,
        grading: Grading,
    ) -> Result<Self> {
        let origin_vertex = vertices.iter().position(|v| v[0] == 0.0 && v[1] == 0.0);
        let mesh = Mesh { vertices, triangles, boundary, origin_vertex, grading };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn corners(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        signed_area(a, b, c)
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.area(t)).sum()
    }

    pub fn diameter_of(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        super::dist(a, b).max(super::dist(b, c)).max(super::dist(c, a))
    }

    /// Edge → number of incident triangles, keyed by sorted vertex pair.
    pub fn edge_counts(&self) -> HashMap<(usize, usize), u32> {
        let mut counts = HashMap::with_capacity(3 * self.triangles.len() / 2 + 1);
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn num_edges(&self) -> usize {
        self.edge_counts().len()
    }

    /// Vertices lying on an edge that belongs to a single triangle.
    pub fn topological_boundary(&self) -> Vec<bool> {
        let mut on = vec![false; self.vertices.len()];
        for ((a, b), c) in self.edge_counts() {
            if c == 1 {
                on[a] = true;
                on[b] = true;
            }
        }
        on
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvariantViolation(m));
        let nv = self.vertices.len();
        if self.boundary.len() != nv {
            return bad(format!("{} boundary flags for {nv} vertices", self.boundary.len()));
        }
        if let Some(o) = self.origin_vertex {
            if o >= nv || self.vertices[o] != [0.0, 0.0] {
                return bad("origin vertex index does not point at 0".into());
            }
            if !self.boundary[o] {
                return bad("origin vertex must be Dirichlet".into());
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= nv) {
                return bad(format!("triangle {t} references a missing vertex"));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return bad(format!("triangle {t} repeats a vertex"));
            }
            let a = self.area(t);
            if !(a > 0.0) {
                return bad(format!("triangle {t} has non-positive area {a:e}"));
            }
        }
        let counts = self.edge_counts();
        if let Some(((a, b), c)) = counts.iter().find(|(_, &c)| c > 2) {
            return bad(format!("edge ({a}, {b}) shared by {c} triangles"));
        }
        for ((a, b), c) in &counts {
            if *c == 1 && !(self.boundary[*a] && self.boundary[*b]) {
                return bad(format!("boundary edge ({a}, {b}) has an unflagged vertex"));
            }
        }
        if let Some(o) = self.origin_vertex {
            let scale = self.vertices.iter().map(|&v| norm(v)).fold(0.0, f64::max);
            for (t, tri) in self.triangles.iter().enumerate() {
                if tri.contains(&o) {
                    continue;
                }
                let c = self.corners(t);
                let on_edge = (0..3).any(|k| point_segment_distance([0.0, 0.0], c[k], c[(k + 1) % 3]) <= 1e-15 * scale);
                if on_edge {
                    return bad(format!("origin lies on an edge of triangle {t}"));
                }
            }
        } else {
            for t in 0..self.triangles.len() {
                let c = self.corners(t);
                let inside = (0..3).all(|k| signed_area(c[k], c[(k + 1) % 3], [0.0, 0.0]) >= 0.0);
                if inside {
                    return bad(format!("origin lies in triangle {t} but is not a vertex"));
                }
            }
        }
        Ok(())
    }

    /// Uniformly scaled copy (used for dilation checks).
    pub fn scaled(&self, s: f64) -> Mesh {
        let mut m = self.clone();
        m.vertices.iter_mut().for_each(|v| {
            v[0] *= s;
            v[1] *= s;
        });
        m
    }

    pub fn num_interior(&self) -> usize {
        self.boundary.iter().filter(|&&b| !b).count()
    }
}
