use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{compute_mu_with, Discretization};
use crate::cone1d::{bessel_disc_lambda1, mu_plus};
use crate::geometry::DomainSpec;
use crate::lcg::Lcg;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderReport {
    pub domain: DomainSpec,
    pub level: usize,
    pub samples: usize,
    pub seed: u64,
    /// Hardy constant subtracted in `q(u) = (uᵀKu − μ·uᵀWu)/uᵀMu`: π²/θ₀² for
    /// sector-type domains, μ⁺ for polygons.
    pub mu_subtracted: f64,
    /// Smallest `q` over the random samples.
    pub min_q: f64,
    /// `q` of the discrete minimizer at λ = 0.
    pub q_minimizer: f64,
    /// `λ₁(𝔻)/diam(Ω)²`.
    pub floor_diameter: f64,
    /// `λ₁(𝔻)/R²` from the cone version, for sector-type domains.
    pub floor_cone: Option<f64>,
}

impl RemainderReport {
    /// The floor the sweep is compared against.
    pub fn floor(&self) -> f64 {
        self.floor_cone.unwrap_or(self.floor_diameter)
    }
}

pub fn verify_remainder(domain: &DomainSpec, sample_count: usize, seed: u64) -> Result<RemainderReport> {
    verify_remainder_with(domain, sample_count, seed, 0, &Discretization::default())
}

/// Sweeps `sample_count` random FE functions with coefficients i.i.d. uniform
/// in `[−1, 1]` drawn from [`Lcg`], in degree-of-freedom order.
pub fn verify_remainder_with(
    domain: &DomainSpec,
    sample_count: usize,
    seed: u64,
    level: usize,
    disc: &Discretization,
) -> Result<RemainderReport> {
    domain.validate()?;
    if !domain.is_half_plane_contained() {
        return Err(Error::DomainNotHalfPlane);
    }
    if sample_count == 0 {
        return Err(Error::OutOfRange("need at least one sample".into()));
    }
    let mu = match domain.aperture() {
        Some(theta0) => PI * PI / (theta0 * theta0),
        None => mu_plus(2),
    };
    let disc_lambda = bessel_disc_lambda1(1e-13);
    let floor_diameter = disc_lambda / domain.diameter().powi(2);
    let floor_cone = domain.is_sector_type().then(|| disc_lambda / domain.outer_radius().powi(2));

    let result = compute_mu_with(domain, 0.0, level, disc)?;
    let p = &result.pencil;
    let q = |u: &[f64]| (p.k.quad_form(u) - mu * p.w.quad_form(u)) / p.m.quad_form(u);

    let mut rng = Lcg::new(seed);
    let vectors: Vec<Vec<f64>> = (0..sample_count).map(|_| rng.fill_symmetric(p.dim())).collect();
    let values = disc.execution.map(&vectors, |u| q(u));
    let min_q = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(RemainderReport {
        domain: domain.clone(),
        level,
        samples: sample_count,
        seed,
        mu_subtracted: mu,
        min_q,
        q_minimizer: q(&result.eig.coeffs),
        floor_diameter,
        floor_cone,
    })
}
