//! First zero of J₀ by bisection on its power series.

/// Sign of `J₀(x)` decided from partial sums of
/// `Σ (−1)^k (x²/4)^k / (k!)²`. Once the terms decrease the series is
/// alternating with monotone terms, so the remainder is bounded by the next
/// term. Returns `None` when the bound cannot separate the sum from zero.
fn j0_sign(x: f64) -> Option<f64> {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut abs_sum = 1.0f64;
    for k in 1..200usize {
        let next = -term * q / (k * k) as f64;
        if next.abs() < term.abs() && next.abs() < 1e-17 {
            let bound = next.abs() + 2.0 * f64::EPSILON * k as f64 * abs_sum;
            return (sum.abs() > bound).then(|| sum.signum());
        }
        term = next;
        sum += term;
        abs_sum += term.abs();
    }
    None
}

/// `j₀,₁` to within `tol`.
pub fn bessel_j0_first_zero(tol: f64) -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    let tol = tol.max(4.0 * f64::EPSILON);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match j0_sign(mid) {
            Some(s) if s > 0.0 => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    0.5 * (lo + hi)
}

/// `λ₁(𝔻) = j₀,₁²`, the first Dirichlet eigenvalue of the unit disk, to within `tol`.
pub fn bessel_disc_lambda1(tol: f64) -> f64 {
    // d(j²) = 2j·dj with j < 3.
    let j = bessel_j0_first_zero(tol / 6.0);
    j * j
}
