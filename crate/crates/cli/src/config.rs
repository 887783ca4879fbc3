use std::path::{Path, PathBuf};

use hardy_core::analysis::{Discretization, MAX_LEVEL};
use hardy_core::cone1d::{ConeSpec, EF_DEFAULT_DEPTH};
use hardy_core::geometry::DomainSpec;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// μ_λ on a planar domain at every level up to `level`.
    Mu,
    /// Bracket for λ* by k-section on the attainment certificate.
    Scan,
    /// Hardy constant of a cone from its cross-section.
    Cone,
    /// First Dirichlet eigenvalue of a spherical cap.
    Cap,
    Remainder,
    EfCheck,
    PhiDelta,
    /// Writes the mesh (and optionally the matrices) without solving.
    Mesh,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Mu => "mu",
            Command::Scan => "scan",
            Command::Cone => "cone",
            Command::Cap => "cap",
            Command::Remainder => "remainder",
            Command::EfCheck => "ef-check",
            Command::PhiDelta => "phi-delta",
            Command::Mesh => "mesh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Bracket width at which the λ-scan stops.
    pub bisect: f64,
    /// Target accuracy of cap eigenvalues.
    pub cap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { bisect: 1e-3, cap: 1e-10 }
    }
}

/// One run of the tool. Fields that a command does not use are ignored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default = "default_range")]
    pub lambda_range: (f64, f64),
    /// Finest mesh level.
    #[serde(default)]
    pub level: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Arc aperture (N = 2 cones).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Cap half-angle (N ≥ 3 cones).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Cylinder length for `ef-check`.
    #[serde(default = "default_depth")]
    pub depth: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub discretization: Discretization,
    /// Also write `K`, `M`, `W` in coordinate format (`mesh` command).
    #[serde(default)]
    pub export_matrices: bool,
    /// Where artifacts go. Not echoed into results: it does not influence
    /// any number, and leaving it out keeps records comparable across runs.
    #[serde(default = "default_out", skip_serializing)]
    pub output_dir: PathBuf,
}

fn default_range() -> (f64, f64) {
    (-50.0, 50.0)
}

fn default_depth() -> f64 {
    EF_DEFAULT_DEPTH
}

fn default_samples() -> usize {
    1000
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

/// Command-line values that replace the corresponding config fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub lambda: Option<f64>,
    pub level: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(l) = o.lambda {
            self.lambda = l;
        }
        if let Some(l) = o.level {
            self.level = l;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(p) = &o.out {
            self.output_dir = p.clone();
        }
    }

    pub fn domain(&self) -> Result<&DomainSpec, CliError> {
        self.domain.as_ref().ok_or_else(|| invalid(format!("{} needs a domain", self.command.name())))
    }

    /// Cross-section from `theta` (arc, N = 2), `phi0` (cap) or neither
    /// (full sphere).
    pub fn cone(&self) -> Result<ConeSpec, CliError> {
        let spec = match (self.theta, self.phi0) {
            (Some(_), Some(_)) => return Err(invalid("give either theta or phi0, not both".into())),
            (Some(t), None) => ConeSpec { n: self.n.unwrap_or(2), ..ConeSpec::arc(t) },
            (None, Some(p)) => ConeSpec::cap(self.n.ok_or_else(|| invalid("caps need N".into()))?, p),
            (None, None) => ConeSpec::full(self.n.ok_or_else(|| invalid("cone needs N".into()))?),
        };
        spec.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(spec)
    }

    /// Checks every precondition of the selected command before any compute.
    pub fn validate(&self) -> Result<(), CliError> {
        self.validate_discretization()?;
        match self.command {
            Command::Mu | Command::Mesh => {
                self.checked_domain()?;
                self.check_level()?;
                if !self.lambda.is_finite() {
                    return Err(invalid(format!("lambda must be finite, got {}", self.lambda)));
                }
            }
            Command::Scan => {
                self.checked_domain()?;
                self.check_level()?;
                let (lo, hi) = self.lambda_range;
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(invalid(format!("lambda_range [{lo}, {hi}] must be finite and increasing")));
                }
                positive("tolerances.bisect", self.tolerances.bisect)?;
            }
            Command::Cone => {
                self.cone()?;
                positive("tolerances.cap", self.tolerances.cap)?;
            }
            Command::Cap => {
                let n = self.n.ok_or_else(|| invalid("cap needs N".into()))?;
                if n < 3 {
                    return Err(invalid(format!("caps live on S^(N-1) with N ≥ 3, got N = {n}")));
                }
                if self.phi0.is_none() || self.theta.is_some() {
                    return Err(invalid("cap needs phi0 and no theta".into()));
                }
                self.cone()?;
                positive("tolerances.cap", self.tolerances.cap)?;
            }
            Command::Remainder => {
                let d = self.checked_domain()?;
                self.check_level()?;
                if !d.is_half_plane_contained() {
                    return Err(invalid("remainder needs a domain inside a half-plane through 0".into()));
                }
                self.check_samples()?;
            }
            Command::EfCheck => {
                self.cone()?;
                self.check_samples()?;
                positive("depth", self.depth)?;
            }
            Command::PhiDelta => {
                let r = self.radius.ok_or_else(|| invalid("phi-delta needs radius".into()))?;
                let d = self.delta.ok_or_else(|| invalid("phi-delta needs delta".into()))?;
                if !(r > 0.0 && r < 1.0) {
                    return Err(invalid(format!("radius {r} outside (0, 1)")));
                }
                if !(d > 0.5 && d < 1.0) {
                    return Err(invalid(format!("delta {d} outside (1/2, 1)")));
                }
            }
        }
        Ok(())
    }

    fn checked_domain(&self) -> Result<&DomainSpec, CliError> {
        let d = self.domain()?;
        d.validate().map_err(|e| invalid(e.to_string()))?;
        Ok(d)
    }

    fn check_level(&self) -> Result<(), CliError> {
        if self.level > MAX_LEVEL {
            return Err(invalid(format!("level {} above {MAX_LEVEL}", self.level)));
        }
        Ok(())
    }

    fn check_samples(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(invalid("samples must be positive".into()));
        }
        Ok(())
    }

    fn validate_discretization(&self) -> Result<(), CliError> {
        let d = &self.discretization;
        positive("discretization.target_h", d.target_h)?;
        if !(d.log_depth >= 0.0 && d.log_depth.is_finite()) {
            return Err(invalid(format!("discretization.log_depth must be ≥ 0, got {}", d.log_depth)));
        }
        if let Some(q) = d.grading_ratio {
            if !(q > 0.0 && q < 1.0) {
                return Err(invalid(format!("discretization.grading_ratio {q} outside (0, 1)")));
            }
        }
        if d.rule_points == 0 {
            return Err(invalid("discretization.rule_points must be positive".into()));
        }
        positive("discretization.eig.tol", d.eig.tol)
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn invalid(msg: String) -> CliError {
    CliError::Config(msg)
}
