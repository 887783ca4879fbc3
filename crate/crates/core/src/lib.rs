//! Hardy-Poincaré constants for planar domains whose boundary passes through
//! the origin, together with the one-dimensional cone/cap reductions that hold
//! in every dimension.
//!
//! The quotient studied throughout is
//!
//! ```text
//!            ∫|∇u|² − λ∫u²
//! μ_λ(Ω) = inf ─────────────      u ∈ H¹₀(Ω), u ≠ 0
//!              ∫|x|⁻²u²
//! ```
//!
//! Module map:
//!
//! * [`geometry`]: parametric domains, graded triangulations, refinement.
//! * [`assembly`]: P1 stiffness, mass and singular-mass matrices.
//! * [`eigensolve`]: smallest eigenpair of the symmetric pencil, dense oracle, PCG.
//! * [`cone1d`]: cone/cap constants, Bessel constant, Emden–Fowler identities.
//! * [`analysis`]: μ_λ computation, λ* bracketing, certification and diagnostics.

// `!(x > 0.0)` style guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod assembly;
pub mod cone1d;
pub mod eigensolve;

mod error;
pub mod geometry;
pub mod lcg;
pub mod par;
pub mod sparse;

pub use error::{Error, Result};
pub use par::Execution;
