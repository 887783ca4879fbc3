//! μ_λ(Ω) on meshed domains, λ* brackets, attainment certificates and the
//! diagnostics used as evidence for concentration and remainder terms.

mod concentration;
mod phi_delta;
mod radial;
mod remainder;
mod scan;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use concentration::{concentration_profile, concentration_profile_of, ConcentrationProfile};
pub use phi_delta::{phi_delta_integral, PhiDelta};
pub use radial::{radial_reduction, radial_reduction_fn, RadialReduction};
pub use remainder::{verify_remainder, verify_remainder_with, RemainderReport};
pub use scan::{scan_lambda, scan_lambda_with, LambdaStarResult, ScanSample};

use crate::assembly::{assemble_pencil_with, singular_mass, AssembledPencil, QuadratureRule, SingularQuadrature};
use crate::cone1d::mu_plus;
use crate::eigensolve::{smallest_eigenpair_with, EigOptions, EigResult};
use crate::geometry::{generate_mesh, refine_mesh, sector_angular_divisions, DomainKind, DomainSpec, Grading, Mesh};
use crate::{Error, Execution, Result};

pub const MAX_LEVEL: usize = 6;

/// Mesh, quadrature and solver settings shared by every computation here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Discretization {
    /// Element size away from the origin at level 0.
    pub target_h: f64,
    /// Grading depth in `ln(R/r)`: rings reach `R·e^{−log_depth}`.
    pub log_depth: f64,
    /// Ring ratio; unset means `e^{−θ₀/m}` (log-polar cells of aspect ≈ 1)
    /// for sector-type domains and 0.5 for polygons.
    pub grading_ratio: Option<f64>,
    /// Points per direction of the collapsed Gauss rule for `W`.
    pub rule_points: usize,
    pub singular: SingularQuadrature,
    pub eig: EigOptions,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for Discretization {
    fn default() -> Self {
        Discretization {
            target_h: 0.28,
            log_depth: 25.0,
            grading_ratio: None,
            rule_points: 5,
            singular: SingularQuadrature::default(),
            eig: EigOptions::default(),
            execution: Execution::default(),
        }
    }
}

impl Discretization {
    pub fn rule(&self) -> QuadratureRule {
        QuadratureRule::collapsed_gauss(self.rule_points)
    }

    /// Grading used for the level-0 mesh of `domain`.
    pub fn grading_for(&self, domain: &DomainSpec) -> Grading {
        let layers_for = |q: f64| (self.log_depth / (1.0 / q).ln()).ceil().max(1.0) as usize;
        match &domain.kind {
            DomainKind::Sector { theta0, radius } => {
                let q = self.grading_ratio.unwrap_or_else(|| {
                    (-theta0 / sector_angular_divisions(*theta0, *radius, self.target_h) as f64).exp()
                });
                Grading::new(q, layers_for(q))
            }
            DomainKind::HalfDisk { radius } => {
                let q = self
                    .grading_ratio
                    .unwrap_or_else(|| (-PI / sector_angular_divisions(PI, *radius, self.target_h) as f64).exp());
                Grading::new(q, layers_for(q))
            }
            DomainKind::AnnularSector { theta0, alpha, .. } => {
                let q = self.grading_ratio.unwrap_or_else(|| {
                    (-theta0 / sector_angular_divisions(*theta0, *alpha, self.target_h) as f64).exp()
                });
                Grading::new(q, 0)
            }
            DomainKind::Polygon { .. } => {
                let q = self.grading_ratio.unwrap_or(0.5);
                Grading::new(q, layers_for(q))
            }
        }
    }

    pub fn mesh(&self, domain: &DomainSpec, level: usize) -> Result<Mesh> {
        if level > MAX_LEVEL {
            return Err(Error::OutOfRange(format!("mesh level {level} above {MAX_LEVEL}")));
        }
        let mut mesh = generate_mesh(domain, self.target_h, self.grading_for(domain))?;
        for _ in 0..level {
            mesh = refine_mesh(&mesh)?;
        }
        Ok(mesh)
    }

    pub fn assemble(&self, mesh: &Mesh) -> Result<AssembledPencil> {
        assemble_pencil_with(mesh, &self.rule(), &self.singular, self.execution)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// `mu_h + quadrature_tol < μ⁺`: the discrete value is an upper bound,
    /// so the infimum lies strictly below μ⁺ and is attained.
    AttainedCertified,
    Inconclusive,
}

/// Certificate for an upper bound `mu_h` with quadrature uncertainty `tol`
/// in dimension `n`.
pub fn certificate_for(mu_h: f64, tol: f64, n: usize) -> Certificate {
    if mu_h + tol < mu_plus(n) {
        Certificate::AttainedCertified
    } else {
        Certificate::Inconclusive
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyResult {
    pub domain: DomainSpec,
    pub lambda: f64,
    pub mu_h: f64,
    pub mesh_level: usize,
    pub eig: EigResult,
    pub quadrature_tol: f64,
    pub num_dofs: usize,
    pub num_triangles: usize,
    pub discretization: Discretization,
    #[serde(skip)]
    pub mesh: Mesh,
    #[serde(skip)]
    pub pencil: AssembledPencil,
}

impl HardyResult {
    pub fn dimension(&self) -> usize {
        2
    }
}

pub fn compute_mu(domain: &DomainSpec, lambda: f64, level: usize) -> Result<HardyResult> {
    compute_mu_with(domain, lambda, level, &Discretization::default())
}

pub fn compute_mu_with(domain: &DomainSpec, lambda: f64, level: usize, disc: &Discretization) -> Result<HardyResult> {
    if !lambda.is_finite() {
        return Err(Error::OutOfRange(format!("λ must be finite, got {lambda}")));
    }
    let mesh = disc.mesh(domain, level)?;
    let pencil = disc.assemble(&mesh)?;
    if pencil.dim() == 0 {
        return Err(Error::InvalidDomain("mesh has no interior vertices".into()));
    }
    solve_on(domain, lambda, level, disc, mesh, pencil)
}

pub(crate) fn solve_on(
    domain: &DomainSpec,
    lambda: f64,
    level: usize,
    disc: &Discretization,
    mesh: Mesh,
    pencil: AssembledPencil,
) -> Result<HardyResult> {
    let a = pencil.shifted_stiffness(lambda);
    let eig = smallest_eigenpair_with(&a, &pencil.w, &disc.eig)?;
    let quadrature_tol = quadrature_tolerance(&mesh, &pencil, &eig, disc)?;
    Ok(HardyResult {
        domain: domain.clone(),
        lambda,
        mu_h: eig.mu,
        mesh_level: level,
        num_dofs: pencil.dim(),
        num_triangles: mesh.num_triangles(),
        eig,
        quadrature_tol,
        discretization: *disc,
        mesh,
        pencil,
    })
}

/// Uncertainty of `mu_h` from the `W` quadrature: the eigenvector's singular
/// mass is recomputed with a deeper subdivision and a higher-order rule, and
/// ten times the induced relative change of the quotient is reported.
fn quadrature_tolerance(mesh: &Mesh, pencil: &AssembledPencil, eig: &EigResult, disc: &Discretization) -> Result<f64> {
    let base = pencil.w.quad_form(&eig.coeffs);
    let fine = singular_mass(
        mesh,
        &pencil.dof_map,
        &eig.coeffs,
        &QuadratureRule::collapsed_gauss(disc.rule_points + 2),
        &disc.singular.refined(),
        disc.execution,
    )?;
    let rel = ((fine - base) / fine).abs();
    Ok((10.0 * eig.mu.abs() * rel).max(f64::EPSILON * eig.mu.abs()))
}

pub fn certify_attained(result: &HardyResult) -> Certificate {
    certificate_for(result.mu_h, result.quadrature_tol, result.dimension())
}
