use std::f64::consts::PI;

use hardy_core::assembly::*;
use hardy_core::geometry::*;
use hardy_core::lcg::Lcg;
use hardy_core::sparse::CsrMatrix;
use hardy_core::Execution;

fn graded_half_disk(h: f64, depth: f64) -> Mesh {
    let m = sector_angular_divisions(PI, 1.0, h);
    let q = (-PI / m as f64).exp();
    let layers = (depth / (1.0 / q).ln()).ceil() as usize;
    generate_mesh(&DomainSpec::half_disk(1.0), h, Grading::new(q, layers)).unwrap()
}

/// ∫ over edge `a→b` of `f`, composite Gauss–Legendre.
fn edge_integral(a: Point, b: Point, f: &dyn Fn(Point) -> f64) -> f64 {
    let (gx, gw) = gauss_legendre_unit(16);
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    let pieces = 16;
    let mut s = 0.0;
    for p in 0..pieces {
        for (x, w) in gx.iter().zip(&gw) {
            let t = (p as f64 + x) / pieces as f64;
            s += w / pieces as f64 * f([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    s * len
}

/// Exact-to-rounding `∫_T u²/|x|²` for affine `u = c + g·x`, via the
/// divergence theorem on each homogeneous part:
/// degree-d parts integrate to `1/(d+2) ∮ f (x·n)`, and the constant part uses
/// `div(x ln|x| / |x|²) = |x|⁻²`.
fn exact_singular_triangle(t: [Point; 3], c: f64, g: [f64; 2]) -> f64 {
    let mut total = 0.0;
    for e in 0..3 {
        let (a, b) = (t[e], t[(e + 1) % 3]);
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let n = [(b[1] - a[1]) / len, -(b[0] - a[0]) / len];
        let xn = a[0] * n[0] + a[1] * n[1];
        if xn.abs() < 1e-300 {
            continue;
        }
        total += xn
            * edge_integral(a, b, &|x| {
                let r2 = x[0] * x[0] + x[1] * x[1];
                let gx = g[0] * x[0] + g[1] * x[1];
                c * c * 0.5 * r2.ln() / r2 + 2.0 * c * gx / r2 + 0.5 * gx * gx / r2
            });
    }
    total
}

fn affine_coeffs(t: [Point; 3], v: [f64; 3]) -> (f64, [f64; 2]) {
    let det = (t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]);
    let gx = ((v[1] - v[0]) * (t[2][1] - t[0][1]) - (v[2] - v[0]) * (t[1][1] - t[0][1])) / det;
    let gy = ((t[1][0] - t[0][0]) * (v[2] - v[0]) - (t[2][0] - t[0][0]) * (v[1] - v[0])) / det;
    (v[0] - gx * t[0][0] - gy * t[0][1], [gx, gy])
}

fn exact_singular_mass(mesh: &Mesh, nodal: &[f64]) -> f64 {
    (0..mesh.num_triangles())
        .map(|t| {
            let tri = mesh.triangles[t];
            let c = mesh.corners(t);
            let (c0, g) = affine_coeffs(c, [nodal[tri[0]], nodal[tri[1]], nodal[tri[2]]]);
            exact_singular_triangle(c, c0, g)
        })
        .sum()
}

#[test]
fn boundary_oracle_reproduces_known_integral() {
    // ∫ over the triangle (1,0),(2,0),(1,1) of |x|⁻² by 1-D Gauss in x.
    let t = [[1.0, 0.0], [2.0, 0.0], [1.0, 1.0]];
    let (gx, gw) = gauss_legendre_unit(30);
    let mut want = 0.0;
    for (x, w) in gx.iter().zip(&gw) {
        let xx = 1.0 + x;
        let top = 2.0 - xx;
        want += w * (top / xx).atan() / xx;
    }
    assert!((exact_singular_triangle(t, 1.0, [0.0, 0.0]) - want).abs() < 1e-13);
}

#[test]
fn singular_mass_matches_boundary_integral_oracle() {
    let mesh = graded_half_disk(0.5, 8.0);
    let pencil = assemble_pencil(&mesh, &default_rule()).unwrap();
    let mut rng = Lcg::new(7);
    for _ in 0..5 {
        let u = rng.fill_symmetric(pencil.dim());
        let exact = exact_singular_mass(&mesh, &pencil.dof_map.expand(&u));
        let got = pencil.w.quad_form(&u);
        assert!((got - exact).abs() <= 1e-8 * exact, "{got} vs {exact}");
    }
}

#[test]
fn interpolant_matches_polar_closed_form() {
    // ∫ (y(1−r²))²/r² over the half-disk = ∫₀¹ r(1−r²)² dr · ∫₀^π sin²θ dθ = π/12.
    let mut mesh = graded_half_disk(0.2, 3.0);
    for _ in 0..4 {
        mesh = refine_mesh(&mesh).unwrap();
    }
    let pencil = assemble_pencil(&mesh, &default_rule()).unwrap();
    let u = pencil.dof_map.interpolate(&mesh, |p| p[1] * (1.0 - p[0] * p[0] - p[1] * p[1]));
    let got = pencil.w.quad_form(&u);
    assert!((got - PI / 12.0).abs() <= 1e-4 * PI / 12.0, "{got}");
}

#[test]
fn empty_pencils() {
    let single =
        Mesh::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], vec![[0, 1, 2]], vec![true; 3], Grading::ungraded())
            .unwrap();
    assert_eq!(assemble_pencil(&single, &default_rule()).unwrap().dim(), 0);
    let square = Mesh::new(
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        vec![[0, 1, 2], [0, 2, 3]],
        vec![true; 4],
        Grading::ungraded(),
    )
    .unwrap();
    assert_eq!(assemble_pencil(&square, &default_rule()).unwrap().dim(), 0);
}

#[test]
fn matrices_symmetric_same_pattern_and_definite() {
    let mesh = graded_half_disk(0.4, 10.0);
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    for m in [&p.k, &p.m, &p.w] {
        assert!(m.is_symmetric());
        assert_eq!(m.dim(), mesh.num_interior());
    }
    assert!(p.k.same_pattern(&p.m) && p.k.same_pattern(&p.w));
    let mut rng = Lcg::new(3);
    for _ in 0..10 {
        let u = rng.fill_symmetric(p.dim());
        assert!(p.m.quad_form(&u) > 0.0 && p.w.quad_form(&u) > 0.0 && p.k.quad_form(&u) >= 0.0);
    }
}

#[test]
fn dilation_scaling() {
    let mesh = graded_half_disk(0.4, 10.0);
    let s = 3.7;
    let a = assemble_pencil(&mesh, &default_rule()).unwrap();
    let b = assemble_pencil(&mesh.scaled(s), &default_rule()).unwrap();
    let close = |x: &CsrMatrix, y: &CsrMatrix, f: f64| {
        let (dx, dy) = (x.to_dense(), y.to_dense());
        let scale = dx.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        dx.iter().flatten().zip(dy.iter().flatten()).all(|(p, q)| (p * f - q).abs() <= 1e-12 * scale * f)
    };
    assert!(close(&a.k, &b.k, 1.0));
    assert!(close(&a.w, &b.w, 1.0));
    assert!(close(&a.m, &b.m, s * s));
}

#[test]
fn half_disk_quotient_above_half_plane_constant() {
    let mesh = graded_half_disk(0.4, 12.0);
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    let mut rng = Lcg::new(11);
    for _ in 0..50 {
        let u = rng.fill_symmetric(p.dim());
        assert!(rayleigh_quotient(&p, &u, 0.0).unwrap() >= 1.0 - 1e-6);
    }
    let smooth = p.dof_map.interpolate(&mesh, |x| x[1] * (1.0 - x[0] * x[0] - x[1] * x[1]));
    assert!(rayleigh_quotient(&p, &smooth, 0.0).unwrap() >= 1.0 - 1e-6);
}

#[test]
fn annular_quotient_above_closed_form() {
    let d = DomainSpec::annular_sector(4.0 * PI / 3.0, 1.0, 400.0);
    let mesh = generate_mesh(&d, 0.4, Grading::new(0.8, 0)).unwrap();
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    let floor = 9.0 / 16.0 + PI * PI / 400f64.ln().powi(2);
    let mut rng = Lcg::new(5);
    for _ in 0..30 {
        let u = rng.fill_symmetric(p.dim());
        assert!(rayleigh_quotient(&p, &u, 0.0).unwrap() >= floor - 1e-6);
    }
}

#[test]
fn quotient_properties() {
    let mesh = graded_half_disk(0.5, 6.0);
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    let u = Lcg::new(1).fill_symmetric(p.dim());
    let a = rayleigh_quotient(&p, &u, 0.3).unwrap();
    let scaled: Vec<f64> = u.iter().map(|v| -2.5 * v).collect();
    assert!((rayleigh_quotient(&p, &scaled, 0.3).unwrap() - a).abs() <= 1e-13 * a.abs());
    assert!(rayleigh_quotient(&p, &vec![0.0; p.dim()], 0.0).is_err());
    assert!(rayleigh_quotient(&p, &u[1..], 0.0).is_err());
    let same = AssembledPencil { k: p.w.clone(), ..p.clone() };
    assert!((rayleigh_quotient(&same, &u, 0.0).unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn singular_mass_agrees_with_matrix() {
    let mesh = graded_half_disk(0.4, 10.0);
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    let u = Lcg::new(2).fill_symmetric(p.dim());
    let direct =
        singular_mass(&mesh, &p.dof_map, &u, &default_rule(), &SingularQuadrature::default(), Execution::Sequential)
            .unwrap();
    let wq = p.w.quad_form(&u);
    assert!((direct - wq).abs() <= 1e-11 * wq);
    let pts = singular_mass_points(
        &mesh,
        &p.dof_map,
        &u,
        &default_rule(),
        &SingularQuadrature::default(),
        Execution::Sequential,
    )
    .unwrap();
    let sum: f64 = pts.iter().map(|x| x.1).sum();
    assert!((sum - direct).abs() <= 1e-12 * direct);
}

#[test]
fn parallel_and_sequential_assembly_identical() {
    let mesh = graded_half_disk(0.4, 10.0);
    let rule = default_rule();
    let cfg = SingularQuadrature::default();
    let a = assemble_pencil_with(&mesh, &rule, &cfg, Execution::Sequential).unwrap();
    let b = assemble_pencil_with(&mesh, &rule, &cfg, Execution::Parallel).unwrap();
    assert_eq!(a.k, b.k);
    assert_eq!(a.m, b.m);
    assert_eq!(a.w, b.w);
}

#[test]
fn low_degree_rules_rejected() {
    let mesh = graded_half_disk(0.5, 4.0);
    let mut rule = QuadratureRule::strang_fix3();
    rule.degree = 1;
    assert!(assemble_pencil(&mesh, &rule).is_err());
}

#[test]
fn coo_export_parses_back() {
    let mesh = graded_half_disk(0.5, 4.0);
    let p = assemble_pencil(&mesh, &default_rule()).unwrap();
    let text = p.w.to_coo_text();
    let mut triplets = Vec::new();
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        triplets.push((f[0].parse::<usize>().unwrap(), f[1].parse::<usize>().unwrap(), f[2].parse::<f64>().unwrap()));
    }
    assert_eq!(triplets.len(), p.w.nnz());
    let back = CsrMatrix::from_triplets(p.dim(), &triplets);
    assert_eq!(back, p.w);
}
