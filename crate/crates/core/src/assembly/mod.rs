//! P1 finite-element matrices for the three quadratic forms of the
//! Hardy–Poincaré quotient.

mod pencil;
mod quadrature;
mod singular;

pub use pencil::{
    assemble_pencil, assemble_pencil_with, p1_element_matrices, rayleigh_quotient, singular_mass, singular_mass_points,
    AssembledPencil, DofMap, QuadratureReport,
};
pub use quadrature::{gauss_legendre_unit, QuadratureRule};
pub use singular::{visit_points, SingularQuadrature};

/// Rule used for the singular mass unless configured otherwise: 25-point
/// collapsed Gauss, degree 8.
pub fn default_rule() -> QuadratureRule {
    QuadratureRule::collapsed_gauss(5)
}
