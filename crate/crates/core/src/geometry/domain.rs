use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{dist, norm, point_segment_distance, polygon, Point};
use crate::{Error, Result};

/// Parametric description of a planar domain. Serialized as a flat JSON
/// object tagged by `kind`, e.g. `{"kind": "Sector", "theta0": 1.5707963, "R": 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(flatten)]
    pub kind: DomainKind,
    #[serde(default = "default_true")]
    pub origin_on_boundary: bool,
}

fn default_true() -> bool {
    true
}

/// Angles are measured counter-clockwise from the positive x-axis; every
/// sector-type domain occupies the angular range `(0, theta0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DomainKind {
    Sector {
        theta0: f64,
        #[serde(rename = "R")]
        radius: f64,
    },
    /// The upper half-disk `{|x| < R, y > 0}`.
    HalfDisk {
        #[serde(rename = "R")]
        radius: f64,
    },
    /// `{alpha < |x| < beta, 0 < arg x < theta0}`. The origin lies on the
    /// boundary of the cone this set is cut from, not on the set itself.
    AnnularSector {
        theta0: f64,
        alpha: f64,
        beta: f64,
    },
    Polygon {
        vertices: Vec<Point>,
    },
}

/// Coarse regularity class at the origin, carried in reports so that users
/// can judge which statements apply to a given run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainClass {
    /// Straight boundary through 0 (aperture π): smooth at the origin.
    FlatAtOrigin,
    /// Corner of aperture ≠ π at the origin (a finite cone).
    CornerAtOrigin,
    /// Origin outside the closure; the set is a piece of a cone.
    ConeAnnulus,
    /// General polygon with 0 as a vertex or on an edge.
    Polygonal,
}

impl DomainSpec {
    pub fn new(kind: DomainKind) -> Self {
        DomainSpec { kind, origin_on_boundary: true }
    }

    pub fn sector(theta0: f64, radius: f64) -> Self {
        Self::new(DomainKind::Sector { theta0, radius })
    }

    pub fn half_disk(radius: f64) -> Self {
        Self::new(DomainKind::HalfDisk { radius })
    }

    pub fn annular_sector(theta0: f64, alpha: f64, beta: f64) -> Self {
        Self::new(DomainKind::AnnularSector { theta0, alpha, beta })
    }

    pub fn polygon(vertices: Vec<Point>) -> Self {
        Self::new(DomainKind::Polygon { vertices })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDomain(m));
        if !self.origin_on_boundary {
            return bad("origin_on_boundary must be true".into());
        }
        let aperture_ok = |t: f64| t.is_finite() && t > 0.0 && t <= 2.0 * PI + 1e-15;
        match &self.kind {
            DomainKind::Sector { theta0, radius } => {
                if !aperture_ok(*theta0) {
                    return bad(format!("aperture {theta0} outside (0, 2π]"));
                }
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("radius {radius} must be positive"));
                }
            }
            DomainKind::HalfDisk { radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("radius {radius} must be positive"));
                }
            }
            DomainKind::AnnularSector { theta0, alpha, beta } => {
                if !aperture_ok(*theta0) {
                    return bad(format!("aperture {theta0} outside (0, 2π]"));
                }
                if !(alpha.is_finite() && beta.is_finite() && *alpha > 0.0 && alpha < beta) {
                    return bad(format!("radii must satisfy 0 < alpha < beta, got {alpha}, {beta}"));
                }
            }
            DomainKind::Polygon { vertices } => polygon::validate(vertices)?,
        }
        Ok(())
    }

    /// Angular aperture for sector-type domains.
    pub fn aperture(&self) -> Option<f64> {
        match &self.kind {
            DomainKind::Sector { theta0, .. } | DomainKind::AnnularSector { theta0, .. } => Some(*theta0),
            DomainKind::HalfDisk { .. } => Some(PI),
            DomainKind::Polygon { .. } => None,
        }
    }

    /// Outer radius for sector-type domains, largest vertex norm for polygons.
    pub fn outer_radius(&self) -> f64 {
        match &self.kind {
            DomainKind::Sector { radius, .. } | DomainKind::HalfDisk { radius } => *radius,
            DomainKind::AnnularSector { beta, .. } => *beta,
            DomainKind::Polygon { vertices } => vertices.iter().map(|&v| norm(v)).fold(0.0, f64::max),
        }
    }

    pub fn is_sector_type(&self) -> bool {
        !matches!(self.kind, DomainKind::Polygon { .. })
    }

    pub fn class(&self) -> DomainClass {
        match &self.kind {
            DomainKind::HalfDisk { .. } => DomainClass::FlatAtOrigin,
            DomainKind::Sector { theta0, .. } if (theta0 - PI).abs() < 1e-14 => DomainClass::FlatAtOrigin,
            DomainKind::Sector { .. } => DomainClass::CornerAtOrigin,
            DomainKind::AnnularSector { .. } => DomainClass::ConeAnnulus,
            DomainKind::Polygon { .. } => DomainClass::Polygonal,
        }
    }

    pub fn diameter(&self) -> f64 {
        match &self.kind {
            DomainKind::HalfDisk { radius } => 2.0 * radius,
            DomainKind::Sector { theta0, radius } => {
                if *theta0 >= PI {
                    2.0 * radius
                } else {
                    radius.max(2.0 * radius * (0.5 * theta0).sin())
                }
            }
            DomainKind::AnnularSector { theta0, alpha, beta } => {
                if *theta0 >= PI {
                    2.0 * beta
                } else {
                    let chord = 2.0 * beta * (0.5 * theta0).sin();
                    let cross_corner = (alpha * alpha + beta * beta - 2.0 * alpha * beta * theta0.cos()).sqrt();
                    chord.max(cross_corner).max(beta - alpha)
                }
            }
            DomainKind::Polygon { vertices } => {
                let mut d: f64 = 0.0;
                for (i, &a) in vertices.iter().enumerate() {
                    for &b in &vertices[i + 1..] {
                        d = d.max(dist(a, b));
                    }
                }
                d
            }
        }
    }

    /// Exact area of the continuous domain.
    pub fn area(&self) -> f64 {
        match &self.kind {
            DomainKind::Sector { theta0, radius } => 0.5 * theta0 * radius * radius,
            DomainKind::HalfDisk { radius } => 0.5 * PI * radius * radius,
            DomainKind::AnnularSector { theta0, alpha, beta } => 0.5 * theta0 * (beta * beta - alpha * alpha),
            DomainKind::Polygon { vertices } => polygon::signed_area(vertices).abs(),
        }
    }

    /// Whether the domain lies in a closed half-plane whose boundary line
    /// passes through the origin.
    pub fn is_half_plane_contained(&self) -> bool {
        match &self.kind {
            DomainKind::HalfDisk { .. } => true,
            DomainKind::Sector { theta0, .. } | DomainKind::AnnularSector { theta0, .. } => *theta0 <= PI + 1e-14,
            DomainKind::Polygon { vertices } => polygon::angular_span(vertices) <= PI + 1e-12,
        }
    }

    /// The same domain dilated by `s > 0`.
    pub fn scaled(&self, s: f64) -> DomainSpec {
        let kind = match &self.kind {
            DomainKind::Sector { theta0, radius } => DomainKind::Sector { theta0: *theta0, radius: radius * s },
            DomainKind::HalfDisk { radius } => DomainKind::HalfDisk { radius: radius * s },
            DomainKind::AnnularSector { theta0, alpha, beta } => {
                DomainKind::AnnularSector { theta0: *theta0, alpha: alpha * s, beta: beta * s }
            }
            DomainKind::Polygon { vertices } => {
                DomainKind::Polygon { vertices: vertices.iter().map(|v| [v[0] * s, v[1] * s]).collect() }
            }
        };
        DomainSpec { kind, origin_on_boundary: self.origin_on_boundary }
    }

    /// Distance from `p` to the boundary of the continuous domain (sector
    /// types and polygons).
    pub fn boundary_distance(&self, p: Point) -> f64 {
        let r = norm(p);
        let ray = |theta: f64, r0: f64, r1: f64| {
            point_segment_distance(p, [r0 * theta.cos(), r0 * theta.sin()], [r1 * theta.cos(), r1 * theta.sin()])
        };
        let arc = |rad: f64, theta0: f64| {
            let mut th = p[1].atan2(p[0]);
            if th < 0.0 {
                th += 2.0 * PI;
            }
            if r > 0.0 && th <= theta0 + 1e-15 {
                (r - rad).abs()
            } else {
                dist(p, [rad, 0.0]).min(dist(p, [rad * theta0.cos(), rad * theta0.sin()]))
            }
        };
        match &self.kind {
            DomainKind::Sector { theta0, radius } => {
                ray(0.0, 0.0, *radius).min(ray(*theta0, 0.0, *radius)).min(arc(*radius, *theta0))
            }
            DomainKind::HalfDisk { radius } => ray(0.0, 0.0, *radius).min(ray(PI, 0.0, *radius)).min(arc(*radius, PI)),
            DomainKind::AnnularSector { theta0, alpha, beta } => ray(0.0, *alpha, *beta)
                .min(ray(*theta0, *alpha, *beta))
                .min(arc(*alpha, *theta0))
                .min(arc(*beta, *theta0)),
            DomainKind::Polygon { vertices } => (0..vertices.len())
                .map(|i| point_segment_distance(p, vertices[i], vertices[(i + 1) % vertices.len()]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}
