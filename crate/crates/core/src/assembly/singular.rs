//! Integration of integrands carrying the `|x|⁻²` weight over mesh triangles.
//!
//! Triangles with a vertex at the origin are peeled geometrically: at each
//! level the corner at 0 is halved and the three remaining quadrisection
//! children are integrated, so the cells approach 0 self-similarly. Every other
//! cell is quadrisected until its distance to the origin is at least
//! `separation` times its diameter, then the rule is applied.

use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureRule;
use crate::geometry::{point_triangle_distance, signed_area, Point};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularQuadrature {
    /// Geometric levels used on triangles touching the origin.
    pub origin_levels: usize,
    /// Required ratio dist(0, cell) / diam(cell) before the rule is applied.
    pub separation: f64,
    /// Cap on the quadrisection depth for near-origin cells.
    pub max_depth: usize,
}

impl Default for SingularQuadrature {
    fn default() -> Self {
        SingularQuadrature { origin_levels: 12, separation: 2.0, max_depth: 6 }
    }
}

impl SingularQuadrature {
    /// A strictly finer configuration, used to estimate the quadrature error
    /// of `self` by comparison.
    pub fn refined(&self) -> Self {
        SingularQuadrature {
            origin_levels: self.origin_levels + 6,
            separation: 2.0 * self.separation,
            max_depth: self.max_depth + 2,
        }
    }
}

/// A point of a cell together with its barycentric coordinates in the parent
/// triangle.
#[derive(Debug, Clone, Copy)]
struct Node {
    p: Point,
    l: [f64; 3],
}

fn mid(a: Node, b: Node) -> Node {
    Node {
        p: [0.5 * (a.p[0] + b.p[0]), 0.5 * (a.p[1] + b.p[1])],
        l: [0.5 * (a.l[0] + b.l[0]), 0.5 * (a.l[1] + b.l[1]), 0.5 * (a.l[2] + b.l[2])],
    }
}

fn diam(c: &[Node; 3]) -> f64 {
    let d = |a: Node, b: Node| (a.p[0] - b.p[0]).hypot(a.p[1] - b.p[1]);
    d(c[0], c[1]).max(d(c[1], c[2])).max(d(c[2], c[0]))
}

/// Calls `visit(x, λ, w)` for every quadrature point `x` (with barycentric
/// coordinates `λ` in the parent triangle and weight `w` including the cell
/// area). `origin_corner` names the local vertex sitting at 0, if any.
/// Returns the number of cells used.
pub fn visit_points<F>(
    corners: [Point; 3],
    origin_corner: Option<usize>,
    rule: &QuadratureRule,
    cfg: &SingularQuadrature,
    visit: &mut F,
) -> Result<usize>
where
    F: FnMut(Point, [f64; 3], f64),
{
    let nodes = [
        Node { p: corners[0], l: [1.0, 0.0, 0.0] },
        Node { p: corners[1], l: [0.0, 1.0, 0.0] },
        Node { p: corners[2], l: [0.0, 0.0, 1.0] },
    ];
    let mut cells = 0;
    match origin_corner {
        None => adaptive(nodes, 0, rule, cfg, visit, &mut cells)?,
        Some(k) => {
            let o = nodes[k];
            let (mut a, mut b) = (nodes[(k + 1) % 3], nodes[(k + 2) % 3]);
            for _ in 0..cfg.origin_levels {
                let (a2, b2, ab) = (mid(o, a), mid(o, b), mid(a, b));
                adaptive([a2, a, ab], 0, rule, cfg, visit, &mut cells)?;
                adaptive([ab, b, b2], 0, rule, cfg, visit, &mut cells)?;
                adaptive([a2, ab, b2], 0, rule, cfg, visit, &mut cells)?;
                a = a2;
                b = b2;
            }
            apply_rule([o, a, b], rule, visit, &mut cells)?;
        }
    }
    Ok(cells)
}

fn adaptive<F>(
    c: [Node; 3],
    depth: usize,
    rule: &QuadratureRule,
    cfg: &SingularQuadrature,
    visit: &mut F,
    cells: &mut usize,
) -> Result<()>
where
    F: FnMut(Point, [f64; 3], f64),
{
    let d = point_triangle_distance([0.0, 0.0], [c[0].p, c[1].p, c[2].p]);
    // The margin keeps exact ties (common on structured meshes) on the
    // subdividing side, so the decision does not depend on rounding under dilation.
    if d >= cfg.separation * diam(&c) * (1.0 + 1e-9) || depth >= cfg.max_depth {
        if d == 0.0 {
            return Err(Error::QuadratureNodeAtOrigin);
        }
        return apply_rule(c, rule, visit, cells);
    }
    let (m01, m12, m20) = (mid(c[0], c[1]), mid(c[1], c[2]), mid(c[2], c[0]));
    for child in [[c[0], m01, m20], [m01, c[1], m12], [m20, m12, c[2]], [m01, m12, m20]] {
        adaptive(child, depth + 1, rule, cfg, visit, cells)?;
    }
    Ok(())
}

fn apply_rule<F>(c: [Node; 3], rule: &QuadratureRule, visit: &mut F, cells: &mut usize) -> Result<()>
where
    F: FnMut(Point, [f64; 3], f64),
{
    let area = signed_area(c[0].p, c[1].p, c[2].p).abs();
    for (b, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = [
            b[0] * c[0].p[0] + b[1] * c[1].p[0] + b[2] * c[2].p[0],
            b[0] * c[0].p[1] + b[1] * c[1].p[1] + b[2] * c[2].p[1],
        ];
        if x[0] == 0.0 && x[1] == 0.0 {
            return Err(Error::QuadratureNodeAtOrigin);
        }
        let mut l = [0.0; 3];
        for (i, li) in l.iter_mut().enumerate() {
            *li = b[0] * c[0].l[i] + b[1] * c[1].l[i] + b[2] * c[2].l[i];
        }
        visit(x, l, w * area);
    }
    *cells += 1;
    Ok(())
}
