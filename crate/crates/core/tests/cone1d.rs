use std::f64::consts::PI;

use hardy_core::cone1d::*;
use hardy_core::eigensolve::{dense_oracle, to_dense};
use nalgebra::DMatrix;
use proptest::prelude::*;

const J01: f64 = 2.404825557695773;

#[test]
fn arc_closed_form() {
    for (theta, want) in [(PI, 1.0), (2.0 * PI, 0.25), (PI / 2.0, 4.0), (1.5 * PI, 4.0 / 9.0)] {
        assert!((arc_lambda1(theta).unwrap() - want).abs() <= 1e-12);
    }
    assert!(arc_lambda1(0.0).is_err());
    assert!(arc_lambda1(2.0 * PI + 1e-9).is_err());
}

proptest! {
    #[test]
    fn arc_scaling_identity(theta in 1e-3f64..(2.0 * PI)) {
        let l = arc_lambda1(theta).unwrap();
        prop_assert!((l * theta * theta - PI * PI).abs() <= 1e-12);
    }

    #[test]
    fn hemisphere_constant_is_half_space_constant(n in 2usize..40) {
        prop_assert_eq!(cone_hardy_constant(n, (n - 1) as f64), mu_plus(n));
    }
}

#[test]
fn hemisphere_eigenvalues() {
    for n in 3..=6 {
        let r = cap_lambda1(n, PI / 2.0, 1e-9).unwrap();
        assert!((r.lambda1 - (n - 1) as f64).abs() <= 1e-6, "N={n}: {}", r.lambda1);
        assert!(r.tol_achieved <= 1e-9);
    }
}

#[test]
fn constants() {
    assert_eq!(mu_plus(2), 1.0);
    assert_eq!(mu_plus(3), 2.25);
    assert_eq!(mu_plus(4), 4.0);
    assert_eq!(cone_hardy_constant(3, 2.0), 2.25);
    assert_eq!(cone_hardy_constant(3, 0.0), 0.25);
    let l = arc_lambda1(1.3).unwrap();
    assert_eq!(cone_hardy_constant(2, l), l);
}

#[test]
fn small_cap_approaches_flat_disk() {
    let phi0 = 0.05;
    let r = cap_lambda1(3, phi0, 1e-6).unwrap();
    let flat = J01 * J01 / (phi0 * phi0);
    assert!((r.lambda1 - flat).abs() / flat < 0.05);
}

#[test]
fn cap_eigenvalue_strictly_decreasing_in_aperture() {
    for n in 3..=5 {
        let vals: Vec<f64> = (1..=10).map(|k| cap_lambda1(n, 0.28 * k as f64, 1e-8).unwrap().lambda1).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "N={n}: {vals:?}");
    }
}

#[test]
fn cap_pencil_matches_dense_oracle() {
    for (n, phi0) in [(3, 0.7), (4, PI / 2.0), (6, 2.5)] {
        let (k, m) = cap_pencil(n, phi0, 80).unwrap();
        let dense = dense_oracle(&to_dense(&k), &to_dense(&m)).unwrap()[0];
        let bisect = cap_fe_lambda1(n, phi0, 80).unwrap();
        assert!((dense - bisect).abs() <= 1e-10 * dense, "{dense} vs {bisect}");
    }
}

#[test]
fn cap_full_sphere_limit() {
    // As φ₀ → π the cap fills the sphere and λ₁ → 0.
    let r = cap_lambda1(3, 3.1, 1e-8).unwrap();
    assert!(r.lambda1 > 0.0 && r.lambda1 < 0.3);
}

#[test]
fn bessel_constant() {
    let l = bessel_disc_lambda1(1e-10);
    assert!((l - 5.7831859629).abs() <= 1e-9, "{l}");
    let j = l.sqrt();
    assert!(j > 2.404 && j < 2.405);
}

/// P1 radial eigenvalue of the unit disk: `−(r f′)′ = λ r f`, `f(1) = 0`.
fn radial_disk_fe(nodes: usize) -> f64 {
    let n = nodes - 1;
    let h = 1.0 / n as f64;
    let mut k = DMatrix::zeros(n, n);
    let mut m = DMatrix::zeros(n, n);
    for e in 0..n {
        let (r0, r1) = (e as f64 * h, (e + 1) as f64 * h);
        let kk = (r0 + r1) / 2.0 / h;
        // ∫ r φ_i φ_j exactly for linear r.
        let m00 = h * (3.0 * r0 + r1) / 12.0;
        let m01 = h * (r0 + r1) / 12.0;
        let m11 = h * (r0 + 3.0 * r1) / 12.0;
        let idx = [e, e + 1];
        let km = [[kk, -kk], [-kk, kk]];
        let mm = [[m00, m01], [m01, m11]];
        for a in 0..2 {
            for b in 0..2 {
                if idx[a] < n && idx[b] < n {
                    k[(idx[a], idx[b])] += km[a][b];
                    m[(idx[a], idx[b])] += mm[a][b];
                }
            }
        }
    }
    dense_oracle(&k, &m).unwrap()[0]
}

#[test]
fn bessel_constant_matches_radial_fe() {
    let fe = radial_disk_fe(200);
    assert!((fe - bessel_disc_lambda1(1e-12)).abs() <= 1e-4, "{fe}");
}

#[test]
fn ef_zero_profile() {
    let zero = SineSeries { a: 0.0, length: 20.0, coeffs: vec![0.0] };
    let g = SineSeries { a: 0.0, length: 1.0, coeffs: vec![1.0] };
    let c = emden_fowler_check(&ConeSpec::arc(1.0), &zero, &g).unwrap();
    assert_eq!((c.lhs1, c.rhs1, c.lhs2, c.rhs2), (0.0, 0.0, 0.0, 0.0));
}

#[test]
fn ef_separable_closed_form() {
    let s = EF_DEFAULT_DEPTH;
    for theta0 in [PI / 2.0, PI, 4.0 * PI / 3.0] {
        let w = SineSeries { a: 0.0, length: s, coeffs: vec![1.0] };
        let g = SineSeries { a: 0.0, length: theta0, coeffs: vec![1.0] };
        let c = emden_fowler_check(&ConeSpec::arc(theta0), &w, &g).unwrap();
        assert!((c.lhs1 - c.rhs1).abs() <= 1e-6 * c.lhs1);
        assert!((c.lhs2 - c.rhs2).abs() <= 1e-6 * c.lhs2);
        // Both factors integrate to half their interval length.
        assert!((c.rhs2 - s * theta0 / 4.0).abs() <= 1e-10 * c.rhs2);
        let want = PI * PI / (theta0 * theta0) + PI * PI / (s * s);
        assert!((c.lhs1 / c.lhs2 - want).abs() <= 1e-6 * want);
    }
}

#[test]
fn ef_hemisphere_ratio_bounded_below() {
    let cap = cap_lambda1(3, PI / 2.0, 1e-8).unwrap();
    let g = SampledProfile::new(0.0, PI / 2.0, cap.profile.clone()).unwrap();
    let w = SineSeries { a: 0.0, length: EF_DEFAULT_DEPTH, coeffs: vec![1.0] };
    let c = emden_fowler_check(&ConeSpec::cap(3, PI / 2.0), &w, &g).unwrap();
    assert!(c.lhs1 / c.lhs2 >= 2.25 - 1e-4);
    assert!((c.lhs1 - c.rhs1).abs() <= 1e-6 * c.lhs1.max(1.0));
}

#[test]
fn ef_seeded_pairs_agree() {
    for cone in [ConeSpec::arc(1.1), ConeSpec::arc(2.0 * PI), ConeSpec::cap(3, 1.2), ConeSpec::full(3)] {
        for c in emden_fowler_seeded(&cone, 6, 17, EF_DEFAULT_DEPTH).unwrap() {
            assert!((c.lhs1 - c.rhs1).abs() <= 1e-6 * c.lhs1.max(1.0), "{cone:?} {c:?}");
            assert!((c.lhs2 - c.rhs2).abs() <= 1e-6 * c.lhs2.max(1.0), "{cone:?} {c:?}");
        }
    }
}

#[test]
fn ef_rejects_profile_outside_cone() {
    let w = SineSeries { a: 0.0, length: 5.0, coeffs: vec![1.0] };
    let g = SineSeries { a: 0.0, length: 2.0, coeffs: vec![1.0] };
    assert!(emden_fowler_check(&ConeSpec::arc(1.0), &w, &g).is_err());
}
