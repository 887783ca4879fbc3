//! Plain-text mesh files.
//!
//! ```text
//! vertices N
//! x y flag        (N lines, flag 1 = Dirichlet, 0 = free)
//! triangles T
//! i j k           (T lines, 0-based vertex indices)
//! ```
//!
//! Coordinates are written with Rust's shortest round-trip float formatting,
//! so save followed by load reproduces every vertex bit for bit. Grading
//! metadata is not stored; loaded meshes report [`Grading::ungraded`].

use std::fmt::Write as _;
use std::path::Path;

use hardy_core::geometry::{Grading, Mesh};

use crate::CliError;

pub fn mesh_to_string(mesh: &Mesh) -> String {
    let mut s = String::new();
    writeln!(s, "vertices {}", mesh.num_vertices()).unwrap();
    for (v, &b) in mesh.vertices.iter().zip(&mesh.boundary) {
        writeln!(s, "{} {} {}", v[0], v[1], u8::from(b)).unwrap();
    }
    writeln!(s, "triangles {}", mesh.num_triangles()).unwrap();
    for t in &mesh.triangles {
        writeln!(s, "{} {} {}", t[0], t[1], t[2]).unwrap();
    }
    s
}

pub fn save_mesh(mesh: &Mesh, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, mesh_to_string(mesh)).map_err(|e| CliError::io(path, e))
}

pub fn load_mesh(path: &Path) -> Result<Mesh, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_mesh(&text)
}

/// Parses the text format and re-validates the mesh. Structural problems
/// (bad counts, tokens, dangling indices) are parse errors with a 1-based
/// line number; geometric ones come back as core invariant violations.
pub fn parse_mesh(text: &str) -> Result<Mesh, CliError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut next =
        |what: &str| lines.next().ok_or_else(|| CliError::parse(0, format!("unexpected end of file, expected {what}")));

    let (ln, header) = next("vertex header")?;
    let nv = header_count(ln, header, "vertices")?;
    let mut vertices = Vec::with_capacity(nv);
    let mut boundary = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, line) = next("vertex line")?;
        let f = fields::<3>(ln, line)?;
        let x = number::<f64>(ln, f[0])?;
        let y = number::<f64>(ln, f[1])?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(CliError::parse(ln, "non-finite coordinate".into()));
        }
        let flag = match f[2] {
            "0" => false,
            "1" => true,
            other => return Err(CliError::parse(ln, format!("flag must be 0 or 1, got {other:?}"))),
        };
        vertices.push([x, y]);
        boundary.push(flag);
    }

    let (ln, header) = next("triangle header")?;
    let nt = header_count(ln, header, "triangles")?;
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (ln, line) = next("triangle line")?;
        let f = fields::<3>(ln, line)?;
        let mut t = [0usize; 3];
        for k in 0..3 {
            t[k] = number::<usize>(ln, f[k])?;
            if t[k] >= nv {
                return Err(CliError::parse(ln, format!("vertex index {} out of range (0..{nv})", t[k])));
            }
        }
        triangles.push(t);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(CliError::parse(ln, "trailing content after last triangle".into()));
    }
    Ok(Mesh::new(vertices, triangles, boundary, Grading::ungraded())?)
}

fn header_count(ln: usize, line: &str, keyword: &str) -> Result<usize, CliError> {
    match line.split_whitespace().collect::<Vec<_>>()[..] {
        [k, n] if k == keyword => number(ln, n),
        _ => Err(CliError::parse(ln, format!("expected `{keyword} <count>`"))),
    }
}

fn fields<const K: usize>(ln: usize, line: &str) -> Result<[&str; K], CliError> {
    let v: Vec<&str> = line.split_whitespace().collect();
    v.try_into().map_err(|v: Vec<&str>| CliError::parse(ln, format!("expected {K} fields, got {}", v.len())))
}

fn number<T: std::str::FromStr>(ln: usize, tok: &str) -> Result<T, CliError> {
    tok.parse().map_err(|_| CliError::parse(ln, format!("cannot parse {tok:?}")))
}
