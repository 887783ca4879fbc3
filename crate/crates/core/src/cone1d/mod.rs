//! Cones over arcs and spherical caps: first eigenvalues of the cross-section,
//! cone Hardy constants, the disk constant `j₀,₁²`, and numerical checks of the
//! Emden–Fowler identities.

mod bessel;
mod cap;
mod emden_fowler;
mod profile;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use bessel::{bessel_disc_lambda1, bessel_j0_first_zero};
pub use cap::{cap_fe_lambda1, cap_lambda1, cap_pencil, CapEigenResult, PROFILE_POINTS};
pub use emden_fowler::{emden_fowler_check, EfCheck};
pub use profile::{CosineSeries, Profile, SampledProfile, SineSeries};

use crate::lcg::Lcg;
use crate::{Error, Result};

/// Cylinder length used by the Emden–Fowler checks unless told otherwise.
pub const EF_DEFAULT_DEPTH: f64 = 20.0;

/// Cross-section of a cone in ℝ^N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Sigma {
    /// Arc of aperture θ₀ on S¹ (N = 2).
    Arc {
        theta0: f64,
    },
    /// Geodesic cap of polar half-angle φ₀ (N ≥ 3).
    Cap {
        phi0: f64,
    },
    FullSphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    #[serde(rename = "N")]
    pub n: usize,
    pub sigma: Sigma,
}

impl ConeSpec {
    pub fn arc(theta0: f64) -> Self {
        ConeSpec { n: 2, sigma: Sigma::Arc { theta0 } }
    }

    pub fn cap(n: usize, phi0: f64) -> Self {
        ConeSpec { n, sigma: Sigma::Cap { phi0 } }
    }

    pub fn full(n: usize) -> Self {
        ConeSpec { n, sigma: Sigma::FullSphere }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::OutOfRange(format!("dimension must be ≥ 2, got {}", self.n)));
        }
        match self.sigma {
            Sigma::Arc { theta0 } => {
                if self.n != 2 {
                    return Err(Error::OutOfRange("arcs are cross-sections only for N = 2".into()));
                }
                check_aperture(theta0)
            }
            Sigma::Cap { phi0 } => {
                if self.n < 3 {
                    return Err(Error::OutOfRange("caps are cross-sections only for N ≥ 3".into()));
                }
                if !(phi0 > 0.0 && phi0 < PI) {
                    return Err(Error::OutOfRange(format!("cap half-angle {phi0} outside (0, π)")));
                }
                Ok(())
            }
            Sigma::FullSphere => Ok(()),
        }
    }

    /// λ₁(Σ); caps are solved to `tol`.
    pub fn lambda1(&self, tol: f64) -> Result<f64> {
        self.validate()?;
        match self.sigma {
            Sigma::Arc { theta0 } => arc_lambda1(theta0),
            Sigma::Cap { phi0 } => Ok(cap_lambda1(self.n, phi0, tol)?.lambda1),
            Sigma::FullSphere => Ok(0.0),
        }
    }

    pub fn record(&self, tol: f64) -> Result<ConeRecord> {
        let lambda1 = self.lambda1(tol)?;
        Ok(ConeRecord { n: self.n, spec: *self, lambda1, mu0: cone_hardy_constant(self.n, lambda1) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeRecord {
    #[serde(rename = "N")]
    pub n: usize,
    pub spec: ConeSpec,
    pub lambda1: f64,
    pub mu0: f64,
}

fn check_aperture(theta0: f64) -> Result<()> {
    if !(theta0 > 0.0 && theta0 <= 2.0 * PI) {
        return Err(Error::OutOfRange(format!("aperture {theta0} outside (0, 2π]")));
    }
    Ok(())
}

/// First Dirichlet eigenvalue of an interval of length θ₀: `π²/θ₀²`.
pub fn arc_lambda1(theta0: f64) -> Result<f64> {
    check_aperture(theta0)?;
    Ok(PI * PI / (theta0 * theta0))
}

/// Hardy constant of the cone over Σ: `(N−2)²/4 + λ₁(Σ)`.
pub fn cone_hardy_constant(n: usize, lambda1_sigma: f64) -> f64 {
    let a = n as f64 - 2.0;
    a * a / 4.0 + lambda1_sigma
}

/// Half-space Hardy constant `N²/4`.
pub fn mu_plus(n: usize) -> f64 {
    let n = n as f64;
    n * n / 4.0
}

/// Emden–Fowler checks for `count` seeded pairs. Radial factors are random
/// sine series on `(0, depth)`, every other one resampled as a spline; angular
/// factors are random sine series on arcs and cosine series on caps.
pub fn emden_fowler_seeded(cone: &ConeSpec, count: usize, seed: u64, depth: f64) -> Result<Vec<EfCheck>> {
    cone.validate()?;
    let mut rng = Lcg::new(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let w = SineSeries::random(0.0, depth, 4, &mut rng);
        let g: Box<dyn Profile> = match cone.sigma {
            Sigma::Arc { theta0 } => Box::new(SineSeries::random(0.0, theta0, 3, &mut rng)),
            Sigma::Cap { phi0 } => Box::new(CosineSeries::random(phi0, 3, &mut rng)),
            Sigma::FullSphere if cone.n == 2 => Box::new(SineSeries::random(0.0, 2.0 * PI, 3, &mut rng)),
            Sigma::FullSphere => Box::new(CosineSeries::random(PI, 3, &mut rng)),
        };
        let check = if i % 2 == 1 {
            let sampled = SampledProfile::from_fn(0.0, depth, 401, |s| w.value(s))?;
            emden_fowler_check(cone, &sampled, g.as_ref())?
        } else {
            emden_fowler_check(cone, &w, g.as_ref())?
        };
        out.push(check);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(ConeSpec::arc(1.0).validate().is_ok());
        assert!(ConeSpec { n: 3, sigma: Sigma::Arc { theta0: 1.0 } }.validate().is_err());
        assert!(ConeSpec::cap(2, 1.0).validate().is_err());
        assert!(ConeSpec::full(5).validate().is_ok());
        assert!(ConeSpec::arc(7.0).validate().is_err());
    }

    #[test]
    fn record_json_shape() {
        let r = ConeSpec::arc(PI).record(1e-8).unwrap();
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v["N"], 2);
        assert_eq!(v["mu0"], 1.0);
        assert_eq!(v["spec"]["sigma"]["kind"], "Arc");
    }
}
