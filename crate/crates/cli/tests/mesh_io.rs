use hardy_cli::mesh_io::{mesh_to_string, parse_mesh};
use hardy_cli::CliError;
use hardy_core::analysis::Discretization;
use hardy_core::geometry::DomainSpec;
use hardy_core::Error;

fn domains() -> Vec<DomainSpec> {
    vec![
        DomainSpec::half_disk(1.0),
        DomainSpec::sector(2.0 * std::f64::consts::PI, 1.5),
        DomainSpec::annular_sector(2.0, 1.0, 3.0),
        DomainSpec::polygon(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.8], [-0.5, 0.2]]),
    ]
}

#[test]
fn save_then_load_is_identity() {
    let disc = Discretization { target_h: 0.6, log_depth: 8.0, ..Discretization::default() };
    for d in domains() {
        for level in 0..2 {
            let mesh = disc.mesh(&d, level).unwrap();
            let back = parse_mesh(&mesh_to_string(&mesh)).unwrap();
            assert_eq!(back.vertices, mesh.vertices, "{d:?}");
            assert_eq!(back.triangles, mesh.triangles);
            assert_eq!(back.boundary, mesh.boundary);
            assert_eq!(back.origin_vertex, mesh.origin_vertex);
            // Text is a fixed point.
            assert_eq!(mesh_to_string(&back), mesh_to_string(&mesh));
        }
    }
}

const SQUARE: &str = "vertices 4\n0 0 1\n1 0 1\n1 1 1\n0 1 1\ntriangles 2\n0 1 2\n0 2 3\n";

#[test]
fn small_file_parses() {
    let m = parse_mesh(SQUARE).unwrap();
    assert_eq!((m.num_vertices(), m.num_triangles()), (4, 2));
    assert!((m.total_area() - 1.0).abs() < 1e-15);
}

fn parse_line(text: &str) -> usize {
    match parse_mesh(text) {
        Err(CliError::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn dangling_index_is_a_parse_error_with_line() {
    assert_eq!(parse_line(&SQUARE.replace("0 2 3", "0 2 4")), 8);
}

#[test]
fn malformed_lines_report_their_number() {
    assert_eq!(parse_line(&SQUARE.replace("1 1 1", "1 x 1")), 4);
    assert_eq!(parse_line(&SQUARE.replace("1 0 1", "1 0 2")), 3);
    assert_eq!(parse_line(&SQUARE.replace("vertices 4", "verts 4")), 1);
    assert_eq!(parse_line(&SQUARE.replace("0 1 2\n", "0 1\n")), 7);
    assert_eq!(parse_line(&format!("{SQUARE}0 1 2\n")), 9);
    assert!(matches!(parse_mesh("vertices 2\n0 0 1\n"), Err(CliError::Parse { .. })));
}

#[test]
fn zero_area_triangle_violates_invariants() {
    let text = "vertices 3\n0 0 1\n1 0 1\n2 0 1\ntriangles 1\n0 1 2\n";
    assert!(matches!(parse_mesh(text), Err(CliError::Core(Error::InvariantViolation(_)))));
}
