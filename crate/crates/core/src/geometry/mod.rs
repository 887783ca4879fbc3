//! Planar domains with the origin on the boundary and their graded
//! triangulations.

mod domain;
mod generate;
mod mesh;
mod polygon;

pub use domain::{DomainClass, DomainKind, DomainSpec};
pub use generate::{generate_mesh, refine_mesh, sector_angular_divisions};
pub use mesh::{Grading, Mesh};

pub type Point = [f64; 2];

/// Relative tolerance for geometric coincidence tests.
pub const POSITION_TOL: f64 = 1e-12;
/// Smallest admissible innermost grading radius, relative to the domain size.
pub const GRADING_FLOOR: f64 = 1e-14;

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(crate) fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Signed area, positive for counter-clockwise vertices.
pub fn signed_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * cross(sub(b, a), sub(c, a))
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1]])
}

/// Distance from `p` to a closed counter-clockwise triangle (0 if inside).
pub fn point_triangle_distance(p: Point, t: [Point; 3]) -> f64 {
    let inside = (0..3).all(|k| signed_area(t[k], t[(k + 1) % 3], p) >= 0.0);
    if inside {
        return 0.0;
    }
    (0..3).map(|k| point_segment_distance(p, t[k], t[(k + 1) % 3])).fold(f64::INFINITY, f64::min)
}
