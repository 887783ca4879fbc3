use serde::{Deserialize, Serialize};

use super::quadrature::QuadratureRule;
use super::singular::{visit_points, SingularQuadrature};
use crate::geometry::{Mesh, Point};
use crate::sparse::CsrMatrix;
use crate::{Error, Execution, Result};

/// Interior (non-Dirichlet) vertices are the degrees of freedom, numbered in
/// vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    pub dof_of_vertex: Vec<Option<usize>>,
    pub vertex_of_dof: Vec<usize>,
}

impl DofMap {
    pub fn from_mesh(mesh: &Mesh) -> Self {
        let mut dof_of_vertex = vec![None; mesh.num_vertices()];
        let mut vertex_of_dof = Vec::new();
        for (v, &b) in mesh.boundary.iter().enumerate() {
            if !b {
                dof_of_vertex[v] = Some(vertex_of_dof.len());
                vertex_of_dof.push(v);
            }
        }
        DofMap { dof_of_vertex, vertex_of_dof }
    }

    pub fn len(&self) -> usize {
        self.vertex_of_dof.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_of_dof.is_empty()
    }

    /// Nodal interpolant of `f` restricted to the degrees of freedom.
    pub fn interpolate(&self, mesh: &Mesh, f: impl Fn(Point) -> f64) -> Vec<f64> {
        self.vertex_of_dof.iter().map(|&v| f(mesh.vertices[v])).collect()
    }

    /// Nodal values on all vertices (zero on Dirichlet vertices).
    pub fn expand(&self, coeffs: &[f64]) -> Vec<f64> {
        self.dof_of_vertex.iter().map(|d| d.map_or(0.0, |i| coeffs[i])).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub max_degree: usize,
    pub origin_triangle_subdivisions: usize,
    pub separation: f64,
    pub max_depth: usize,
    pub cells: usize,
}

/// `K` (∫∇u·∇v), `M` (∫uv) and `W` (∫|x|⁻²uv) on the interior degrees of
/// freedom, sharing one sparsity pattern.
#[derive(Debug, Clone)]
pub struct AssembledPencil {
    pub k: CsrMatrix,
    pub m: CsrMatrix,
    pub w: CsrMatrix,
    pub dof_map: DofMap,
    pub quadrature_report: QuadratureReport,
}

impl AssembledPencil {
    pub fn dim(&self) -> usize {
        self.dof_map.len()
    }

    /// `K − λM`
    pub fn shifted_stiffness(&self, lambda: f64) -> CsrMatrix {
        self.k.add_scaled(&self.m, -lambda).expect("pencil matrices share a pattern")
    }
}

struct ElementBlock {
    k: [[f64; 3]; 3],
    m: [[f64; 3]; 3],
    w: [[f64; 3]; 3],
    cells: usize,
}

/// Closed-form P1 stiffness and mass on a straight triangle.
pub fn p1_element_matrices(c: [Point; 3]) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let area = crate::geometry::signed_area(c[0], c[1], c[2]);
    let mut b = [0.0; 3];
    let mut g = [0.0; 3];
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        b[i] = c[j][1] - c[l][1];
        g[i] = c[l][0] - c[j][0];
    }
    let mut k = [[0.0; 3]; 3];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = (b[i] * b[j] + g[i] * g[j]) / (4.0 * area);
            m[i][j] = area / 12.0 * if i == j { 2.0 } else { 1.0 };
        }
    }
    (k, m)
}

pub fn assemble_pencil(mesh: &Mesh, rule: &QuadratureRule) -> Result<AssembledPencil> {
    assemble_pencil_with(mesh, rule, &SingularQuadrature::default(), Execution::default())
}

pub fn assemble_pencil_with(
    mesh: &Mesh,
    rule: &QuadratureRule,
    cfg: &SingularQuadrature,
    exec: Execution,
) -> Result<AssembledPencil> {
    rule.validate()?;
    if rule.degree < 2 {
        return Err(Error::InvalidRule(format!("exactness degree {} below 2", rule.degree)));
    }
    let dofs = DofMap::from_mesh(mesh);
    let n = dofs.len();

    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in &mesh.triangles {
        for &a in t {
            if let Some(i) = dofs.dof_of_vertex[a] {
                rows[i].extend(t.iter().filter_map(|&b| dofs.dof_of_vertex[b]));
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
        r.dedup();
    }

    let blocks: Vec<Result<Option<ElementBlock>>> = exec.map_range(mesh.num_triangles(), |t| {
        let tri = mesh.triangles[t];
        let free: Vec<usize> = (0..3).filter(|&i| dofs.dof_of_vertex[tri[i]].is_some()).collect();
        if free.is_empty() {
            return Ok(None);
        }
        let c = mesh.corners(t);
        let (k, m) = p1_element_matrices(c);
        let origin = mesh.origin_vertex.and_then(|o| tri.iter().position(|&v| v == o));
        let mut w = [[0.0; 3]; 3];
        let cells = visit_points(c, origin, rule, cfg, &mut |x, l, wt| {
            let s = wt / (x[0] * x[0] + x[1] * x[1]);
            for &i in &free {
                for &j in &free {
                    w[i][j] += s * l[i] * l[j];
                }
            }
        })?;
        Ok(Some(ElementBlock { k, m, w, cells }))
    });

    let mut kmat = CsrMatrix::from_pattern(&rows);
    let mut mmat = kmat.clone();
    let mut wmat = kmat.clone();
    let mut cells = 0;
    for (t, block) in blocks.into_iter().enumerate() {
        let Some(b) = block? else { continue };
        cells += b.cells;
        let tri = mesh.triangles[t];
        for i in 0..3 {
            let Some(di) = dofs.dof_of_vertex[tri[i]] else { continue };
            for (j, &vj) in tri.iter().enumerate() {
                let Some(dj) = dofs.dof_of_vertex[vj] else { continue };
                kmat.add(di, dj, b.k[i][j]);
                mmat.add(di, dj, b.m[i][j]);
                // symmetric by construction: b.w[i][j] and b.w[j][i] are summed identically
                wmat.add(di, dj, if i <= j { b.w[i][j] } else { b.w[j][i] });
            }
        }
    }
    Ok(AssembledPencil {
        k: kmat,
        m: mmat,
        w: wmat,
        dof_map: dofs,
        quadrature_report: QuadratureReport {
            max_degree: rule.degree,
            origin_triangle_subdivisions: cfg.origin_levels,
            separation: cfg.separation,
            max_depth: cfg.max_depth,
            cells,
        },
    })
}

/// `(cᵀKc − λ·cᵀMc) / cᵀWc`
pub fn rayleigh_quotient(pencil: &AssembledPencil, coeffs: &[f64], lambda: f64) -> Result<f64> {
    if coeffs.len() != pencil.dim() {
        return Err(Error::DimensionMismatch { expected: pencil.dim(), got: coeffs.len() });
    }
    let den = pencil.w.quad_form(coeffs);
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::ZeroDenominator);
    }
    Ok((pencil.k.quad_form(coeffs) - lambda * pencil.m.quad_form(coeffs)) / den)
}

/// `∫|x|⁻² u_h²` evaluated element by element with the given quadrature,
/// independent of any assembled matrix.
pub fn singular_mass(
    mesh: &Mesh,
    dofs: &DofMap,
    coeffs: &[f64],
    rule: &QuadratureRule,
    cfg: &SingularQuadrature,
    exec: Execution,
) -> Result<f64> {
    let nodal = dofs.expand(coeffs);
    let parts: Vec<Result<f64>> = exec.map_range(mesh.num_triangles(), |t| {
        let tri = mesh.triangles[t];
        let vals = [nodal[tri[0]], nodal[tri[1]], nodal[tri[2]]];
        if vals.iter().all(|&v| v == 0.0) {
            return Ok(0.0);
        }
        let origin = mesh.origin_vertex.and_then(|o| tri.iter().position(|&v| v == o));
        let mut s = 0.0;
        visit_points(mesh.corners(t), origin, rule, cfg, &mut |x, l, w| {
            let u = l[0] * vals[0] + l[1] * vals[1] + l[2] * vals[2];
            s += w * u * u / (x[0] * x[0] + x[1] * x[1]);
        })?;
        Ok(s)
    });
    parts.into_iter().sum()
}

/// Quadrature points of `|x|⁻² u_h²` as `(|x|, mass)` pairs, in element order.
pub fn singular_mass_points(
    mesh: &Mesh,
    dofs: &DofMap,
    coeffs: &[f64],
    rule: &QuadratureRule,
    cfg: &SingularQuadrature,
    exec: Execution,
) -> Result<Vec<(f64, f64)>> {
    let nodal = dofs.expand(coeffs);
    let parts: Vec<Result<Vec<(f64, f64)>>> = exec.map_range(mesh.num_triangles(), |t| {
        let tri = mesh.triangles[t];
        let vals = [nodal[tri[0]], nodal[tri[1]], nodal[tri[2]]];
        let mut pts = Vec::new();
        if vals.iter().all(|&v| v == 0.0) {
            return Ok(pts);
        }
        let origin = mesh.origin_vertex.and_then(|o| tri.iter().position(|&v| v == o));
        visit_points(mesh.corners(t), origin, rule, cfg, &mut |x, l, w| {
            let u = l[0] * vals[0] + l[1] * vals[1] + l[2] * vals[2];
            let r2 = x[0] * x[0] + x[1] * x[1];
            pts.push((r2.sqrt(), w * u * u / r2));
        })?;
        Ok(pts)
    });
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{generate_mesh, DomainSpec, Grading};

    #[test]
    fn all_dirichlet_triangle_gives_empty_pencil() {
        let m =
            Mesh::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], vec![[0, 1, 2]], vec![true; 3], Grading::ungraded())
                .unwrap();
        let p = assemble_pencil(&m, &QuadratureRule::dunavant4()).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.k.nnz(), 0);
    }

    #[test]
    fn unit_square_two_triangles_is_empty() {
        let m = Mesh::new(
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            vec![[0, 1, 2], [0, 2, 3]],
            vec![true; 4],
            Grading::ungraded(),
        )
        .unwrap();
        assert_eq!(assemble_pencil(&m, &QuadratureRule::dunavant4()).unwrap().dim(), 0);
    }

    #[test]
    fn element_stiffness_rows_sum_to_zero() {
        let (k, m) = p1_element_matrices([[0.2, 0.1], [1.3, 0.4], [0.5, 1.7]]);
        for row in &k {
            assert!(row.iter().sum::<f64>().abs() < 1e-14);
        }
        let total: f64 = m.iter().flatten().sum();
        let area = crate::geometry::signed_area([0.2, 0.1], [1.3, 0.4], [0.5, 1.7]);
        assert!((total - area).abs() < 1e-14);
    }

    #[test]
    fn matrices_symmetric_and_share_pattern() {
        let mesh = generate_mesh(&DomainSpec::half_disk(1.0), 0.3, Grading::new(0.6, 6)).unwrap();
        let p = assemble_pencil(&mesh, &QuadratureRule::dunavant4()).unwrap();
        assert!(p.k.is_symmetric() && p.m.is_symmetric() && p.w.is_symmetric());
        assert!(p.k.same_pattern(&p.m) && p.k.same_pattern(&p.w));
        assert!(p.w.diagonal().iter().all(|&d| d > 0.0));
    }

    #[test]
    fn rayleigh_quotient_rejects_zero_and_wrong_length() {
        let mesh = generate_mesh(&DomainSpec::half_disk(1.0), 0.3, Grading::new(0.6, 4)).unwrap();
        let p = assemble_pencil(&mesh, &QuadratureRule::dunavant4()).unwrap();
        assert_eq!(rayleigh_quotient(&p, &vec![0.0; p.dim()], 0.0), Err(Error::ZeroDenominator));
        assert!(matches!(rayleigh_quotient(&p, &[1.0], 0.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sequential_and_parallel_assembly_identical() {
        let mesh = generate_mesh(&DomainSpec::sector(2.0, 1.0), 0.2, Grading::new(0.7, 8)).unwrap();
        let r = QuadratureRule::collapsed_gauss(4);
        let c = SingularQuadrature::default();
        let a = assemble_pencil_with(&mesh, &r, &c, Execution::Sequential).unwrap();
        let b = assemble_pencil_with(&mesh, &r, &c, Execution::Parallel).unwrap();
        assert_eq!(a.w, b.w);
        assert_eq!(a.k, b.k);
    }
}
