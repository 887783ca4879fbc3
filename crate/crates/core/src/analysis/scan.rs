use serde::{Deserialize, Serialize};

use super::{certificate_for, solve_on, Certificate, Discretization};
use crate::geometry::DomainSpec;
use crate::{Error, Result};

/// Interior points per k-section round. Fixed, so the sample set does not
/// depend on the thread count.
const SECTIONS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub lambda: f64,
    pub mu_h: f64,
    pub quadrature_tol: f64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaStarResult {
    pub domain: DomainSpec,
    pub level: usize,
    /// Predicate false at `bracket.0` (numerical evidence only) and true at
    /// `bracket.1` (certified).
    pub bracket: (f64, f64),
    /// Every evaluated λ, sorted.
    pub samples: Vec<ScanSample>,
    /// Certificate at the upper edge.
    pub certificate: Certificate,
    /// Set when the predicate already holds at the lower end of the range;
    /// the bracket then collapses to that point.
    pub true_at_range_start: bool,
}

impl LambdaStarResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("lambda,mu_h,certificate\n");
        for p in &self.samples {
            s.push_str(&format!("{},{},{:?}\n", p.lambda, p.mu_h, p.certificate));
        }
        s
    }
}

pub fn scan_lambda(domain: &DomainSpec, range: (f64, f64), level: usize, bisect_tol: f64) -> Result<LambdaStarResult> {
    scan_lambda_with(domain, range, level, bisect_tol, &Discretization::default())
}

/// k-section on the predicate `mu_h(λ) + quadrature_tol < μ⁺` over `range`.
/// The mesh and pencil are built once; each λ only needs a new eigensolve.
pub fn scan_lambda_with(
    domain: &DomainSpec,
    range: (f64, f64),
    level: usize,
    bisect_tol: f64,
    disc: &Discretization,
) -> Result<LambdaStarResult> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::OutOfRange(format!("λ range ({lo}, {hi}) must be finite and increasing")));
    }
    if !(bisect_tol > 0.0) {
        return Err(Error::OutOfRange(format!("bisection tolerance must be positive, got {bisect_tol}")));
    }
    let mesh = disc.mesh(domain, level)?;
    let pencil = disc.assemble(&mesh)?;
    if pencil.dim() == 0 {
        return Err(Error::InvalidDomain("mesh has no interior vertices".into()));
    }
    // Inner solves stay sequential; the λ values are the parallel axis.
    let inner = Discretization { execution: crate::Execution::Sequential, ..*disc };
    let evaluate = |lambdas: &[f64]| -> Result<Vec<ScanSample>> {
        disc.execution
            .map(lambdas, |&l| {
                let r = solve_on(domain, l, level, &inner, mesh.clone(), pencil.clone())?;
                Ok(ScanSample {
                    lambda: l,
                    mu_h: r.mu_h,
                    quadrature_tol: r.quadrature_tol,
                    certificate: certificate_for(r.mu_h, r.quadrature_tol, 2),
                })
            })
            .into_iter()
            .collect()
    };
    let holds = |s: &ScanSample| s.certificate == Certificate::AttainedCertified;

    let mut samples = evaluate(&[lo, hi])?;
    if !holds(&samples[1]) {
        return Err(Error::PredicateNeverTrue { lo, hi });
    }
    let finish = |mut samples: Vec<ScanSample>, bracket: (f64, f64), at_start: bool| {
        samples.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        LambdaStarResult {
            domain: domain.clone(),
            level,
            bracket,
            samples,
            certificate: Certificate::AttainedCertified,
            true_at_range_start: at_start,
        }
    };
    if holds(&samples[0]) {
        return Ok(finish(samples, (lo, lo), true));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > bisect_tol {
        let pts: Vec<f64> = (1..=SECTIONS).map(|i| a + (b - a) * i as f64 / (SECTIONS + 1) as f64).collect();
        let new = evaluate(&pts)?;
        let first_true = new.iter().position(holds);
        let (na, nb) = match first_true {
            Some(0) => (a, pts[0]),
            Some(k) => (pts[k - 1], pts[k]),
            None => (pts[SECTIONS - 1], b),
        };
        samples.extend(new);
        if na <= a && nb >= b {
            break;
        }
        a = na;
        b = nb;
    }
    Ok(finish(samples, (a, b), false))
}
