//! Maps a validated [`RunConfig`] to core calls and writes the artifacts.
//!
//! Every `result.json` has the shape `{"config": …, "result": …}`, or
//! `{"config": …, "error": {"kind", "message"}}` after a numerical failure.
//! Nothing time- or machine-dependent is recorded, so equal configs give
//! byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hardy_core::analysis::{
    certify_attained, compute_mu_with, concentration_profile, phi_delta_integral, scan_lambda_with,
    verify_remainder_with, Certificate, ConcentrationProfile,
};
use hardy_core::cone1d::{cap_lambda1, emden_fowler_seeded, mu_plus, EfCheck};
use hardy_core::eigensolve::EigMethod;
use hardy_core::geometry::{DomainClass, DomainKind, DomainSpec, Grading, Mesh};
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::mesh_io::save_mesh;
use crate::svg::{line_plot, Series};
use crate::CliError;

/// Points in the `m(r)` profile written by `mu`.
const PROFILE_RADII: usize = 41;

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    config: &'a RunConfig,
    result: T,
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    config: &'a RunConfig,
    error: ErrorBody,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub mu_h: f64,
    pub quadrature_tol: f64,
    pub certificate: Certificate,
    pub num_dofs: usize,
    pub num_triangles: usize,
    pub eig_method: EigMethod,
    pub eig_iterations: usize,
    pub eig_residual: f64,
}

#[derive(Serialize)]
struct MuReport<'a> {
    domain: &'a DomainSpec,
    domain_class: DomainClass,
    lambda: f64,
    mu_plus: f64,
    levels: Vec<LevelSummary>,
    /// `m(r)` of the minimizer on the finest level.
    concentration: ConcentrationProfile,
}

#[derive(Serialize)]
struct MeshReport {
    num_vertices: usize,
    num_triangles: usize,
    num_interior: usize,
    mesh_area: f64,
    domain_area: f64,
    grading: Grading,
}

#[derive(Serialize)]
struct EfReport {
    worst_rel_1: f64,
    worst_rel_2: f64,
    checks: Vec<EfCheck>,
}

#[derive(Serialize)]
struct CapReport {
    #[serde(rename = "N")]
    n: usize,
    phi0: f64,
    lambda1: f64,
    tol_achieved: f64,
    /// Normalized first eigenfunction on an even grid of `[0, phi0]`.
    profile: Vec<f64>,
}

/// Runs `config` and returns the written artifact paths.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    config.validate()?;
    let mut out = Out::create(&config.output_dir)?;
    let disc = config.discretization;
    match config.command {
        Command::Mu => {
            let domain = config.domain()?;
            let mut levels = Vec::new();
            let mut finest = None;
            for level in 0..=config.level {
                let r = compute_mu_with(domain, config.lambda, level, &disc)?;
                levels.push(LevelSummary {
                    level,
                    mu_h: r.mu_h,
                    quadrature_tol: r.quadrature_tol,
                    certificate: certify_attained(&r),
                    num_dofs: r.num_dofs,
                    num_triangles: r.num_triangles,
                    eig_method: r.eig.method,
                    eig_iterations: r.eig.iterations,
                    eig_residual: r.eig.residual,
                });
                finest = Some(r);
            }
            let finest = finest.expect("level range is never empty");
            let concentration = concentration_profile(&finest, &profile_radii(domain))?;
            let pts =
                concentration.radii.iter().zip(&concentration.mass_fraction).map(|(r, m)| (r.log10(), *m)).collect();
            out.text(
                "plot.svg",
                &line_plot(
                    "concentration of the minimizer",
                    "log10 r",
                    "m(r)",
                    &[Series::new(format!("level {}", config.level), pts)],
                ),
            )?;
            out.mesh(&finest.mesh)?;
            out.record(
                config,
                MuReport {
                    domain,
                    domain_class: domain.class(),
                    lambda: config.lambda,
                    mu_plus: mu_plus(2),
                    levels,
                    concentration,
                },
            )?;
        }
        Command::Scan => {
            let domain = config.domain()?;
            let r = scan_lambda_with(domain, config.lambda_range, config.level, config.tolerances.bisect, &disc)?;
            out.text("result.csv", &r.to_csv())?;
            let (lo, hi) = config.lambda_range;
            let curve = r.samples.iter().map(|s| (s.lambda, s.mu_h)).collect();
            let plot = line_plot(
                "discrete Hardy constant",
                "lambda",
                "mu_h",
                &[Series::new("mu_h", curve), Series::new("mu+", vec![(lo, mu_plus(2)), (hi, mu_plus(2))])],
            );
            out.text("plot.svg", &plot)?;
            out.record(config, r)?;
        }
        Command::Cone => {
            out.record(config, config.cone()?.record(config.tolerances.cap)?)?;
        }
        Command::Cap => {
            let (n, phi0) = (config.n.expect("validated"), config.phi0.expect("validated"));
            let r = cap_lambda1(n, phi0, config.tolerances.cap)?;
            let step = phi0 / (r.profile.len() - 1) as f64;
            let pts: Vec<(f64, f64)> = r.profile.iter().enumerate().map(|(i, &v)| (i as f64 * step, v)).collect();
            let mut csv = String::from("phi,profile\n");
            for (x, v) in &pts {
                writeln!(csv, "{x},{v}").unwrap();
            }
            out.text("result.csv", &csv)?;
            out.text(
                "plot.svg",
                &line_plot("first cap eigenfunction", "phi", "f(phi)", &[Series::new(format!("N = {n}"), pts)]),
            )?;
            out.record(
                config,
                CapReport { n, phi0, lambda1: r.lambda1, tol_achieved: r.tol_achieved, profile: r.profile },
            )?;
        }
        Command::Remainder => {
            let r = verify_remainder_with(config.domain()?, config.samples, config.seed, config.level, &disc)?;
            out.record(config, r)?;
        }
        Command::EfCheck => {
            let checks = emden_fowler_seeded(&config.cone()?, config.samples, config.seed, config.depth)?;
            let rel = |l: f64, r: f64| (l - r).abs() / r.abs().max(f64::MIN_POSITIVE);
            let worst_rel_1 = checks.iter().map(|c| rel(c.lhs1, c.rhs1)).fold(0.0, f64::max);
            let worst_rel_2 = checks.iter().map(|c| rel(c.lhs2, c.rhs2)).fold(0.0, f64::max);
            let mut csv = String::from("lhs1,rhs1,lhs2,rhs2\n");
            for c in &checks {
                writeln!(csv, "{},{},{},{}", c.lhs1, c.rhs1, c.lhs2, c.rhs2).unwrap();
            }
            out.text("result.csv", &csv)?;
            out.record(config, EfReport { worst_rel_1, worst_rel_2, checks })?;
        }
        Command::PhiDelta => {
            let r = phi_delta_integral(config.radius.expect("validated"), config.delta.expect("validated"))?;
            out.record(config, r)?;
        }
        Command::Mesh => {
            let domain = config.domain()?;
            let mesh = disc.mesh(domain, config.level)?;
            out.mesh(&mesh)?;
            if config.export_matrices {
                let p = disc.assemble(&mesh)?;
                out.text("K.coo", &p.k.to_coo_text())?;
                out.text("M.coo", &p.m.to_coo_text())?;
                out.text("W.coo", &p.w.to_coo_text())?;
            }
            out.record(
                config,
                MeshReport {
                    num_vertices: mesh.num_vertices(),
                    num_triangles: mesh.num_triangles(),
                    num_interior: mesh.num_interior(),
                    mesh_area: mesh.total_area(),
                    domain_area: domain.area(),
                    grading: mesh.grading,
                },
            )?;
        }
    }
    Ok(out.written)
}

/// Runs `config` and maps the outcome to an exit status. Numerical failures
/// leave a JSON error record in the output directory; every failure is
/// reported on stderr.
pub fn execute(config: &RunConfig) -> i32 {
    match run(config) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            let code = e.exit_code();
            if code == crate::EXIT_NUMERICAL {
                let rec = ErrorRecord { config, error: ErrorBody { kind: e.kind(), message: e.to_string() } };
                let path = config.output_dir.join("result.json");
                if let Err(w) = std::fs::write(&path, to_json(&rec)) {
                    eprintln!("error: could not write {}: {w}", path.display());
                }
            }
            code
        }
    }
}

/// Geometric radii for `m(r)`: from the inner radius (annuli) or a tiny
/// fraction of the outer radius up to the outer radius.
fn profile_radii(domain: &DomainSpec) -> Vec<f64> {
    let outer = domain.outer_radius();
    let inner = match domain.kind {
        DomainKind::AnnularSector { alpha, .. } => alpha,
        _ => 1e-6 * outer,
    };
    let last = (PROFILE_RADII - 1) as f64;
    (0..PROFILE_RADII).map(|k| inner * (outer / inner).powf(k as f64 / last)).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

struct Out {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Out {
    fn create(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Out { dir: dir.to_path_buf(), written: Vec::new() })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn text(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let p = self.path(name);
        std::fs::write(&p, body).map_err(|e| CliError::io(&p, e))?;
        self.written.push(p);
        Ok(())
    }

    fn mesh(&mut self, mesh: &Mesh) -> Result<(), CliError> {
        let p = self.path("mesh.txt");
        save_mesh(mesh, &p)?;
        self.written.push(p);
        Ok(())
    }

    fn record<T: Serialize>(&mut self, config: &RunConfig, result: T) -> Result<(), CliError> {
        self.text("result.json", &to_json(&Record { config, result }))
    }
}
