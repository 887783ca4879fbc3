use serde::{Deserialize, Serialize};

use super::{Discretization, HardyResult};
use crate::assembly::{singular_mass_points, DofMap};
use crate::geometry::Mesh;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationProfile {
    pub radii: Vec<f64>,
    /// `m(r) = ∫_{B_r ∩ Ω} |x|⁻²u² / ∫_Ω |x|⁻²u²` at each radius.
    pub mass_fraction: Vec<f64>,
    pub level: usize,
}

pub fn concentration_profile(result: &HardyResult, radii: &[f64]) -> Result<ConcentrationProfile> {
    concentration_profile_of(
        &result.mesh,
        &result.pencil.dof_map,
        &result.eig.coeffs,
        radii,
        result.mesh_level,
        &result.discretization,
    )
}

/// Mass fractions from the same element quadrature that builds `W`; points
/// are sorted by radius and accumulated, so `m` is monotone by construction.
pub fn concentration_profile_of(
    mesh: &Mesh,
    dofs: &DofMap,
    coeffs: &[f64],
    radii: &[f64],
    level: usize,
    disc: &Discretization,
) -> Result<ConcentrationProfile> {
    let mut pts = singular_mass_points(mesh, dofs, coeffs, &disc.rule(), &disc.singular, disc.execution)?;
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cum = Vec::with_capacity(pts.len());
    let mut s = 0.0;
    for &(_, m) in &pts {
        s += m;
        cum.push(s);
    }
    let total = s;
    let mass_fraction = radii
        .iter()
        .map(|&r| {
            let k = pts.partition_point(|p| p.0 <= r);
            if k == 0 || total == 0.0 {
                0.0
            } else if k == pts.len() {
                1.0
            } else {
                cum[k - 1] / total
            }
        })
        .collect();
    Ok(ConcentrationProfile { radii: radii.to_vec(), mass_fraction, level })
}
