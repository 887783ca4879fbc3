use std::f64::consts::PI;

use hardy_core::analysis::*;
use hardy_core::assembly::rayleigh_quotient;
use hardy_core::geometry::DomainSpec;
use hardy_core::Error;

const J01_SQ: f64 = 5.783185962946784;

fn coarse() -> Discretization {
    Discretization { target_h: 0.5, log_depth: 12.0, ..Discretization::default() }
}

fn annulus() -> DomainSpec {
    DomainSpec::annular_sector(4.0 * PI / 3.0, 1.0, 400.0)
}

fn annulus_exact() -> f64 {
    9.0 / 16.0 + PI * PI / 400f64.ln().powi(2)
}

#[test]
fn half_disk_value_is_consistent_upper_bound() {
    let r = compute_mu(&DomainSpec::half_disk(1.0), 0.0, 0).unwrap();
    assert!(r.mu_h > 1.0 && r.mu_h < 1.04, "{}", r.mu_h);
    assert!(r.quadrature_tol < 1e-6, "{}", r.quadrature_tol);
    let rq = rayleigh_quotient(&r.pencil, &r.eig.coeffs, 0.0).unwrap();
    assert!((rq - r.mu_h).abs() <= 10.0 * r.discretization.eig.tol);
    assert_eq!(certify_attained(&r), Certificate::Inconclusive);
}

#[test]
fn annular_sector_matches_closed_form_and_is_certified() {
    let r = compute_mu(&annulus(), 0.0, 0).unwrap();
    let exact = annulus_exact();
    assert!(r.mu_h >= exact - 1e-6);
    assert!((r.mu_h - exact) / exact < 0.02, "{}", r.mu_h);
    assert_eq!(certify_attained(&r), Certificate::AttainedCertified);
}

#[test]
fn quarter_disk_above_strip_infimum() {
    let r = compute_mu(&DomainSpec::sector(PI / 2.0, 1.0), 0.0, 0).unwrap();
    assert!(r.mu_h >= 4.0 - 1e-6 && r.mu_h < 4.0 * 1.05, "{}", r.mu_h);
}

#[test]
fn dilation_invariance() {
    let s = 3.7;
    let base = compute_mu_with(&DomainSpec::sector(PI / 2.0, 1.0), 0.0, 0, &coarse()).unwrap();
    let disc = Discretization { target_h: coarse().target_h * s, ..coarse() };
    let scaled = compute_mu_with(&DomainSpec::sector(PI / 2.0, s), 0.0, 0, &disc).unwrap();
    assert!((base.mu_h - scaled.mu_h).abs() <= 1e-12 * base.mu_h, "{} {}", base.mu_h, scaled.mu_h);
}

#[test]
fn refinement_lowers_value() {
    let d = DomainSpec::half_disk(1.0);
    let a = compute_mu_with(&d, 0.0, 0, &coarse()).unwrap();
    let b = compute_mu_with(&d, 0.0, 1, &coarse()).unwrap();
    assert!(b.mu_h <= a.mu_h + 1e-6);
}

#[test]
fn lambda_scan_half_disk() {
    let r = scan_lambda_with(&DomainSpec::half_disk(1.0), (-5.0, 10.0), 0, 0.05, &coarse()).unwrap();
    let (lo, hi) = r.bracket;
    assert!(lo <= hi && hi - lo <= 0.05);
    assert!(lo >= J01_SQ / 4.0 - 0.01);
    // The sin θ·f(r) reduction puts λ* at λ₁(𝔻) on the half-disk; discrete
    // values sit above it.
    assert!(hi >= J01_SQ - 0.01);
    assert!(r.samples.windows(2).all(|w| w[0].lambda < w[1].lambda && w[1].mu_h <= w[0].mu_h));
    assert!(!r.true_at_range_start);
    let csv = r.to_csv();
    assert!(csv.starts_with("lambda,mu_h,certificate\n"));
    assert_eq!(csv.lines().count(), r.samples.len() + 1);
}

#[test]
fn lambda_scan_annulus_crosses_below_zero() {
    // uᵀMu/uᵀWu is of order β², so λ* sits just below zero.
    let r = scan_lambda_with(&annulus(), (-50.0, 50.0), 0, 1e-6, &coarse()).unwrap();
    assert!(r.bracket.1 < 0.0 && r.bracket.1 - r.bracket.0 <= 1e-6, "{:?}", r.bracket);
    assert_eq!(r.certificate, Certificate::AttainedCertified);
}

#[test]
fn lambda_scan_reports_empty_range() {
    let e = scan_lambda_with(&DomainSpec::half_disk(1.0), (-5.0, 0.0), 0, 0.1, &coarse()).unwrap_err();
    assert_eq!(e, Error::PredicateNeverTrue { lo: -5.0, hi: 0.0 });
    assert!(scan_lambda(&DomainSpec::half_disk(1.0), (1.0, 1.0), 0, 0.1).is_err());
}

#[test]
fn concentration_profile_properties() {
    let r = compute_mu_with(&DomainSpec::half_disk(1.0), 0.0, 0, &coarse()).unwrap();
    let radii: Vec<f64> = (0..=40).map(|k| (-12.0 + 0.3 * k as f64).exp()).collect();
    let p = concentration_profile(&r, &radii).unwrap();
    assert!(p.mass_fraction.windows(2).all(|w| w[1] >= w[0]));
    assert!((p.mass_fraction.last().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn concentration_of_support_away_from_origin() {
    let r = compute_mu_with(&annulus(), 0.0, 0, &coarse()).unwrap();
    let ones = vec![1.0; r.pencil.dim()];
    let p =
        concentration_profile_of(&r.mesh, &r.pencil.dof_map, &ones, &[0.5, 0.99, 400.0], 0, &r.discretization).unwrap();
    assert_eq!(&p.mass_fraction[..2], &[0.0, 0.0]);
    assert_eq!(p.mass_fraction[2], 1.0);
}

#[test]
fn remainder_sweeps() {
    let rep = verify_remainder_with(&DomainSpec::half_disk(1.0), 40, 1, 0, &coarse()).unwrap();
    assert_eq!(rep.mu_subtracted, 1.0);
    assert!((rep.floor() - J01_SQ).abs() < 1e-12);
    assert!((rep.floor_diameter - J01_SQ / 4.0).abs() < 1e-12);
    assert!(rep.min_q >= rep.floor() - 1e-4);
    assert!(rep.q_minimizer >= rep.floor() - 1e-4);

    let quarter = verify_remainder_with(&DomainSpec::sector(PI / 2.0, 1.0), 40, 2, 0, &coarse()).unwrap();
    assert_eq!(quarter.mu_subtracted, 4.0);
    assert!(quarter.min_q >= J01_SQ - 1e-4);
    assert!(quarter.q_minimizer >= J01_SQ - 1e-4);

    assert_eq!(verify_remainder(&annulus(), 10, 1).unwrap_err(), Error::DomainNotHalfPlane);
}

#[test]
fn remainder_is_reproducible() {
    let a = verify_remainder_with(&DomainSpec::half_disk(1.0), 10, 99, 0, &coarse()).unwrap();
    let b = verify_remainder_with(&DomainSpec::half_disk(1.0), 10, 99, 0, &coarse()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn phi_delta_closed_forms() {
    let e = phi_delta_integral(1.0 / std::f64::consts::E, 0.75).unwrap();
    assert!((e.closed_form - 4.0 * PI).abs() < 1e-12);
    let p = phi_delta_integral(0.3, 0.75).unwrap();
    assert!((p.closed_form - 4.0 * PI / 0.3f64.ln().abs().sqrt()).abs() < 1e-12);
    assert!((p.closed_form - 11.452).abs() < 1e-3);
    for r in [0.3, 1.0 / std::f64::consts::E] {
        for d in [0.6, 0.75, 0.9] {
            let v = phi_delta_integral(r, d).unwrap();
            assert!((v.numeric - v.closed_form).abs() <= 1e-6 * v.closed_form, "{v:?}");
        }
    }
    assert!(phi_delta_integral(1.0, 0.7).is_err());
    assert!(phi_delta_integral(0.5, 0.5).is_err());
    assert!(phi_delta_integral(0.5, 1.0).is_err());
}

#[test]
fn phi_delta_near_critical_exponent() {
    let gaps: Vec<f64> = [0.51, 0.505, 0.501]
        .iter()
        .map(|&d| {
            let v = phi_delta_integral(0.3, d).unwrap();
            ((2.0 * d - 1.0) * v.numeric - 2.0 * PI).abs()
        })
        .collect();
    assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
}

#[test]
fn radial_reduction_closed_form() {
    let theta0 = 2.0;
    let u = |p: [f64; 2]| {
        let r = p[0].hypot(p[1]);
        (PI * r).sin() * (PI * p[1].atan2(p[0]) / theta0).sin()
    };
    let phi = |t: f64| (PI * t / theta0).sin();
    let radii: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
    let red = radial_reduction_fn(theta0, &u, &phi, &radii).unwrap();
    for (r, psi) in radii.iter().zip(&red.psi) {
        assert!((psi - theta0 / 2.0 * (PI * r).sin()).abs() < 1e-12);
    }
    let zero = radial_reduction_fn(theta0, &|_| 0.0, &phi, &radii).unwrap();
    assert!(zero.psi.iter().all(|&v| v == 0.0));
    assert_eq!(zero.int_psi2_over_r, 0.0);
}

#[test]
fn radial_reduction_of_interpolant_converges() {
    let f = |p: [f64; 2]| (PI * p[0].hypot(p[1])).sin() * p[1].atan2(p[0]).sin();
    let radii: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
    let err = |level: usize| {
        let mut r = compute_mu(&DomainSpec::half_disk(1.0), 0.0, level).unwrap();
        r.eig.coeffs = r.pencil.dof_map.interpolate(&r.mesh, f);
        let red = radial_reduction(&r, &|t: f64| t.sin(), &radii).unwrap();
        radii.iter().zip(&red.psi).map(|(rr, psi)| (psi - PI / 2.0 * (PI * rr).sin()).abs()).fold(0.0, f64::max)
    };
    let (e0, e1) = (err(0), err(1));
    assert!(e1 < 2e-2 && e1 < 0.4 * e0, "{e0} {e1}");
}

#[test]
fn radial_reduction_of_minimizer() {
    let r = compute_mu_with(&DomainSpec::half_disk(1.0), 0.0, 0, &coarse()).unwrap();
    let radii: Vec<f64> = (0..=60).map(|k| (-12.0 + 0.2 * k as f64).exp()).collect();
    let red = radial_reduction(&r, &|t: f64| t.sin(), &radii).unwrap();
    assert!(red.psi.iter().all(|v| v.is_finite() && *v >= 0.0));
    assert!(red.int_psi2_over_r.is_finite() && red.int_psi2_over_r > 0.0);
    assert!(red.int_dpsi2_r.is_finite() && red.int_psi2_r.is_finite());
}

#[test]
fn radial_reduction_requires_sector() {
    let poly = DomainSpec::polygon(vec![[-1.0, 0.0], [1.0, 0.0], [1.0, 1.0], [-1.0, 1.0]]);
    let r =
        compute_mu_with(&poly, 0.0, 0, &Discretization { target_h: 0.5, log_depth: 8.0, ..Discretization::default() })
            .unwrap();
    assert!(r.mu_h > 0.0);
    assert_eq!(radial_reduction(&r, &|t: f64| t.sin(), &[0.1, 0.2]).unwrap_err(), Error::DomainNotSector);
}
