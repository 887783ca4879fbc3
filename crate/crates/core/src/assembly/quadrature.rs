//! Quadrature on triangles in barycentric form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Nodes are barycentric triples, weights sum to 1 (the reference measure is
/// normalized, so `∫_T f ≈ |T| Σ wᵢ f(xᵢ)`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// Total polynomial degree integrated exactly.
    pub degree: usize,
}

impl QuadratureRule {
    /// Three interior points, degree 2.
    pub fn strang_fix3() -> Self {
        let (a, b) = (2.0 / 3.0, 1.0 / 6.0);
        QuadratureRule { nodes: vec![[a, b, b], [b, a, b], [b, b, a]], weights: vec![1.0 / 3.0; 3], degree: 2 }
    }

    /// Six-point rule, degree 4.
    pub fn dunavant4() -> Self {
        let (a1, w1) = (0.445948490915965, 0.223381589678011);
        let (a2, w2) = (0.091576213509771, 0.109951743655322);
        let (b1, b2) = (1.0 - 2.0 * a1, 1.0 - 2.0 * a2);
        QuadratureRule {
            nodes: vec![[b1, a1, a1], [a1, b1, a1], [a1, a1, b1], [b2, a2, a2], [a2, b2, a2], [a2, a2, b2]],
            weights: vec![w1, w1, w1, w2, w2, w2],
            degree: 4,
        }
    }

    /// Conical (Duffy-collapsed) product of `n`-point Gauss–Legendre rules;
    /// `n²` interior points, degree `2n − 2`.
    pub fn collapsed_gauss(n: usize) -> Self {
        let (x, w) = gauss_legendre_unit(n);
        let mut nodes = Vec::with_capacity(n * n);
        let mut weights = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (u, v) = (x[i], x[j]);
                nodes.push([u, (1.0 - u) * v, (1.0 - u) * (1.0 - v)]);
                weights.push(2.0 * w[i] * w[j] * (1.0 - u));
            }
        }
        QuadratureRule { nodes, weights, degree: 2 * n - 2 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidRule(m.to_string()));
        if self.nodes.is_empty() || self.nodes.len() != self.weights.len() {
            return bad("node/weight count mismatch");
        }
        if self.weights.iter().any(|&w| !(w > 0.0)) {
            return bad("weights must be positive");
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return bad("weights must sum to 1");
        }
        for n in &self.nodes {
            if (n.iter().sum::<f64>() - 1.0).abs() > 1e-12 || n.iter().any(|&l| l < 0.0) {
                return bad("nodes must be barycentric triples inside the triangle");
            }
            if n.iter().any(|&l| l > 1.0 - 1e-14) {
                return bad("no node may sit at a vertex");
            }
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on [0, 1] (Newton on the three-term
/// recurrence).
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[n - 1 - i] = 0.5 * (1.0 + z);
        w[n - 1 - i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}
