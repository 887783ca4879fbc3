//! One-dimensional profiles with derivatives, used as radial (`w`) and
//! angular (`g`) factors.

use crate::lcg::Lcg;
use crate::{Error, Result};

pub trait Profile: Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Closed interval the profile lives on.
    fn support(&self) -> (f64, f64);
    /// Points where the profile may lose smoothness (sorted, inside the support).
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Natural cubic spline through uniformly spaced samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    a: f64,
    b: f64,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl SampledProfile {
    pub fn new(a: f64, b: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 2 || !(b > a) || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::OutOfRange("sampled profile needs ≥ 2 finite samples on a < b".into()));
        }
        let h = (b - a) / (n - 1) as f64;
        let mut second = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm for the interior second derivatives.
            let m = n - 2;
            let mut c = vec![0.0; m];
            let mut d = vec![0.0; m];
            for i in 0..m {
                let rhs = 6.0 * (values[i + 2] - 2.0 * values[i + 1] + values[i]) / (h * h);
                let piv = if i == 0 { 4.0 } else { 4.0 - c[i - 1] };
                c[i] = 1.0 / piv;
                d[i] = if i == 0 { rhs / piv } else { (rhs - d[i - 1]) / piv };
            }
            for i in (0..m).rev() {
                second[i + 1] = if i + 1 < m { d[i] - c[i] * second[i + 2] } else { d[i] };
            }
        }
        Ok(SampledProfile { a, b, values, second })
    }

    pub fn from_fn(a: f64, b: f64, samples: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = (b - a) / (samples.max(2) - 1) as f64;
        Self::new(a, b, (0..samples.max(2)).map(|i| f(a + h * i as f64)).collect())
    }

    pub fn samples(&self) -> &[f64] {
        &self.values
    }

    fn locate(&self, x: f64) -> (usize, f64, f64) {
        let n = self.values.len();
        let h = (self.b - self.a) / (n - 1) as f64;
        let t = ((x - self.a) / h).clamp(0.0, (n - 1) as f64);
        let i = (t.floor() as usize).min(n - 2);
        (i, t - i as f64, h)
    }
}

impl Profile for SampledProfile {
    fn value(&self, x: f64) -> f64 {
        let (i, t, h) = self.locate(x);
        let (y0, y1, m0, m1) = (self.values[i], self.values[i + 1], self.second[i], self.second[i + 1]);
        let u = 1.0 - t;
        u * y0 + t * y1 + h * h / 6.0 * ((u * u * u - u) * m0 + (t * t * t - t) * m1)
    }

    fn derivative(&self, x: f64) -> f64 {
        let (i, t, h) = self.locate(x);
        let (y0, y1, m0, m1) = (self.values[i], self.values[i + 1], self.second[i], self.second[i + 1]);
        let u = 1.0 - t;
        (y1 - y0) / h + h / 6.0 * (-(3.0 * u * u - 1.0) * m0 + (3.0 * t * t - 1.0) * m1)
    }

    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let n = self.values.len();
        let h = (self.b - self.a) / (n - 1) as f64;
        (1..n - 1).map(|i| self.a + h * i as f64).collect()
    }
}

/// `Σ c_k sin(kπ(x−a)/L)` on `[a, a+L]`; vanishes at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct SineSeries {
    pub a: f64,
    pub length: f64,
    pub coeffs: Vec<f64>,
}

impl Profile for SineSeries {
    fn value(&self, x: f64) -> f64 {
        let z = std::f64::consts::PI * (x - self.a) / self.length;
        self.coeffs.iter().enumerate().map(|(k, c)| c * ((k + 1) as f64 * z).sin()).sum()
    }
    fn derivative(&self, x: f64) -> f64 {
        let s = std::f64::consts::PI / self.length;
        let z = s * (x - self.a);
        self.coeffs.iter().enumerate().map(|(k, c)| c * (k + 1) as f64 * s * ((k + 1) as f64 * z).cos()).sum()
    }
    fn support(&self) -> (f64, f64) {
        (self.a, self.a + self.length)
    }
}

/// `Σ c_k cos((k−½)πx/L)` on `[0, L]`: zero slope at 0, zero value at `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    pub length: f64,
    pub coeffs: Vec<f64>,
}

impl Profile for CosineSeries {
    fn value(&self, x: f64) -> f64 {
        let z = std::f64::consts::PI * x / self.length;
        self.coeffs.iter().enumerate().map(|(k, c)| c * ((k as f64 + 0.5) * z).cos()).sum()
    }
    fn derivative(&self, x: f64) -> f64 {
        let s = std::f64::consts::PI / self.length;
        self.coeffs.iter().enumerate().map(|(k, c)| -c * (k as f64 + 0.5) * s * ((k as f64 + 0.5) * s * x).sin()).sum()
    }
    fn support(&self) -> (f64, f64) {
        (0.0, self.length)
    }
}

impl SineSeries {
    pub fn random(a: f64, length: f64, terms: usize, rng: &mut Lcg) -> Self {
        SineSeries { a, length, coeffs: rng.fill_symmetric(terms) }
    }
}

impl CosineSeries {
    pub fn random(length: f64, terms: usize, rng: &mut Lcg) -> Self {
        CosineSeries { length, coeffs: rng.fill_symmetric(terms) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spline_reproduces_linear_data() {
        let p = SampledProfile::new(0.0, 2.0, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert!((p.value(0.7) - 2.4).abs() < 1e-14);
        assert!((p.derivative(1.3) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn spline_converges_on_smooth_data() {
        let p = SampledProfile::from_fn(0.0, 3.0, 301, |x| (2.0 * x).sin()).unwrap();
        for x in [0.4, 1.11, 2.5] {
            assert!((p.value(x) - (2.0 * x).sin()).abs() < 1e-6);
            assert!((p.derivative(x) - 2.0 * (2.0 * x).cos()).abs() < 1e-3);
        }
    }

    #[test]
    fn cosine_series_boundary_behaviour() {
        let c = CosineSeries { length: 1.3, coeffs: vec![0.3, -0.7, 0.2] };
        assert!(c.value(1.3).abs() < 1e-14);
        assert!(c.derivative(0.0).abs() < 1e-14);
    }
}
