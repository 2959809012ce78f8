//! Horoball packings of hyperbolic 3-space in the Beltrami-Klein model.
//!
//! The crate rebuilds two ideal Coxeter tilings of H^3 from scratch: the
//! regular ideal tetrahedron with symbol {3,3,6} and the regular ideal cube
//! with symbol {4,3,6}. For each tiling it solves for the facet-reflection
//! generators of the cell-stabilized Coxeter group, seeds horoballs at the
//! ideal cell vertices, expands the packing crown by crown under the group
//! action, verifies tangency and non-overlap of the expanded configuration,
//! and computes packing densities both in closed form and by Monte-Carlo
//! integration. Packings can be serialized to a deterministic text scene
//! format and exported as triangle meshes (OBJ, PLY).
//!
//! All hyperbolic points live in Lorentzian coordinates `(x0, x1, x2, x3)`
//! with the form `<x,y> = -x0*y0 + x1*y1 + x2*y2 + x3*y3`; the Beltrami-Klein
//! model is the affine chart `x0 = 1`, so canonicalized interior points are
//! exactly the points of the open unit ball.

pub mod config;
pub mod coxeter;
pub mod horoball;
pub mod lorentz;
pub mod mesh;
pub mod numeric;
pub mod packing;
pub mod report;
pub mod scene;
pub mod tables;

pub use coxeter::{Cell, Generator, Tiling};
pub use horoball::Horoball;
pub use lorentz::{LorentzError, PointClass, Vec4};
pub use packing::{CaseId, Packing};

/// Tool version stamped into scene files and reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default numeric tolerance for geometric predicates.
///
/// All point classifications, tangency decisions, and matrix comparisons use
/// this scale unless a caller passes an explicit tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for raw floating-point residuals that should vanish exactly.
///
/// Used where the quantity compared is a plain difference of O(1) terms and
/// the only error source is rounding (canonicalization guards, value-function
/// residuals on constructed points).
pub const RESIDUAL_TOL: f64 = 1e-12;
