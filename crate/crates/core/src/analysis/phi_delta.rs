use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiDelta {
    pub radius: f64,
    pub delta: f64,
    pub numeric: f64,
    pub closed_form: f64,
}

/// `∫_{𝔻_R} |z|⁻² |ln|z||^{−2δ} dz` by quadrature and in closed form.
///
/// With `t = −ln r` the integral is `2π ∫_L^∞ t^{−2δ} dt`, `L = −ln R`; the
/// half-line is mapped by `t = L + exp(π/2·sinh x)` and summed with the
/// trapezoidal rule, halving the step until the sum settles.
pub fn phi_delta_integral(radius: f64, delta: f64) -> Result<PhiDelta> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::OutOfRange(format!("radius {radius} outside (0, 1)")));
    }
    if !(delta > 0.5 && delta < 1.0) {
        return Err(Error::OutOfRange(format!("δ = {delta} outside (1/2, 1)")));
    }
    let l = -radius.ln();
    let closed_form = 2.0 * PI * l.powf(1.0 - 2.0 * delta) / (2.0 * delta - 1.0);

    // Integrand in x, evaluated in logs so huge t do not overflow.
    let f = |x: f64| -> f64 {
        let ln_y = FRAC_PI_2 * x.sinh();
        let ln_t = if ln_y > 0.0 { ln_y + (l * (-ln_y).exp()).ln_1p() } else { (l + ln_y.exp()).ln() };
        FRAC_PI_2 * x.cosh() * (ln_y - 2.0 * delta * ln_t).exp()
    };
    let sum_with = |h: f64| -> f64 {
        let mut s = f(0.0);
        for dir in [1.0, -1.0] {
            let mut k = 1;
            loop {
                let v = f(dir * h * k as f64);
                s += v;
                if v < 1e-18 * s || k as f64 * h > 60.0 {
                    break;
                }
                k += 1;
            }
        }
        h * s
    };
    let mut h = 0.5;
    let mut prev = sum_with(h);
    loop {
        h *= 0.5;
        let cur = sum_with(h);
        if (cur - prev).abs() <= 1e-13 * cur.abs() || h < 1e-4 {
            return Ok(PhiDelta { radius, delta, numeric: 2.0 * PI * cur, closed_form });
        }
        prev = cur;
    }
}
