//! Simple-polygon utilities: validation, orientation, ear clipping.

use std::f64::consts::PI;

use super::{cross, norm, point_segment_distance, signed_area as tri_area, sub, Point, POSITION_TOL};
use crate::{Error, Result};

pub(crate) fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>()
}

fn scale(v: &[Point]) -> f64 {
    v.iter().map(|&p| norm(p)).fold(0.0, f64::max).max(f64::MIN_POSITIVE)
}

fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(sub(b, a), sub(c, a));
    let d2 = cross(sub(b, a), sub(d, a));
    let d3 = cross(sub(d, c), sub(a, c));
    let d4 = cross(sub(d, c), sub(b, c));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: Point, q: Point, r: Point, d: f64| d == 0.0 && point_segment_distance(r, p, q) == 0.0;
    on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4)
}

pub(crate) fn validate(v: &[Point]) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidDomain(m.to_string()));
    let n = v.len();
    if n < 3 {
        return bad("polygon needs at least 3 vertices");
    }
    if v.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return bad("non-finite polygon vertex");
    }
    let tol = POSITION_TOL * scale(v);
    if signed_area(v).abs() <= tol * tol {
        return bad("degenerate polygon");
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return bad("polygon is not simple");
            }
        }
    }
    let on_boundary = (0..n).any(|i| point_segment_distance([0.0, 0.0], v[i], v[(i + 1) % n]) <= tol);
    if !on_boundary {
        return bad("origin must be a vertex or lie on an edge");
    }
    Ok(())
}

/// Counter-clockwise copy of the polygon with the origin inserted as a vertex
/// (if it lies on an edge) and rotated to index 0.
pub(crate) fn normalized(v: &[Point]) -> Vec<Point> {
    let mut v: Vec<Point> = v.to_vec();
    if signed_area(&v) < 0.0 {
        v.reverse();
    }
    let tol = POSITION_TOL * scale(&v);
    let n = v.len();
    let origin_at = v.iter().position(|&p| norm(p) <= tol);
    let start = match origin_at {
        Some(i) => {
            v[i] = [0.0, 0.0];
            i
        }
        None => {
            let e = (0..n)
                .find(|&i| point_segment_distance([0.0, 0.0], v[i], v[(i + 1) % n]) <= tol)
                .expect("validated polygon has the origin on an edge");
            v.insert(e + 1, [0.0, 0.0]);
            e + 1
        }
    };
    v.rotate_left(start);
    v
}

/// Angular extent of the vertices as seen from the origin, measured across
/// the polygon interior.
pub(crate) fn angular_span(v: &[Point]) -> f64 {
    let v = normalized(v);
    // Neighbours of the origin bound the interior angle at 0 (ccw polygon:
    // interior lies to the left, i.e. from the next vertex to the previous one).
    let a = v[1];
    let b = v[v.len() - 1];
    let start = a[1].atan2(a[0]);
    let mut span: f64 = 0.0;
    for p in v.iter().skip(1) {
        let mut d = p[1].atan2(p[0]) - start;
        while d < -1e-15 {
            d += 2.0 * PI;
        }
        span = span.max(d);
    }
    let mut interior = b[1].atan2(b[0]) - start;
    while interior < -1e-15 {
        interior += 2.0 * PI;
    }
    span.max(interior)
}

/// Ear-clipping triangulation of a counter-clockwise simple polygon.
pub(crate) fn triangulate(v: &[Point]) -> Vec<[usize; 3]> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    let mut tris = Vec::with_capacity(v.len().saturating_sub(2));
    let eps = POSITION_TOL * scale(v);
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, ic, inx) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (v[ip], v[ic], v[inx]);
            if tri_area(a, b, c) <= eps * eps {
                continue;
            }
            let contains_other = idx.iter().any(|&j| {
                if j == ip || j == ic || j == inx {
                    return false;
                }
                let p = v[j];
                tri_area(a, b, p) >= 0.0 && tri_area(b, c, p) >= 0.0 && tri_area(c, a, p) >= 0.0
            });
            if contains_other {
                continue;
            }
            tris.push([ip, ic, inx]);
            idx.remove(k);
            clipped = true;
            break;
        }
        if !clipped {
            // Only collinear remnants are left.
            break;
        }
    }
    if idx.len() == 3 && tri_area(v[idx[0]], v[idx[1]], v[idx[2]]) > 0.0 {
        tris.push([idx[0], idx[1], idx[2]]);
    }
    tris
}
