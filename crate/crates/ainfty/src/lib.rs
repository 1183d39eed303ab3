//! Filtered A∞ algebras over a truncated Novikov ring.
//!
//! Coefficients live in `Λ = C[[T^ℝ]]` truncated at a rational cutoff, with
//! `C` either F₂ or Q. Structure maps are sparse tables on basis tuples and
//! everything is exact, so relation checks are exhaustive evaluations.

pub mod algebra;
pub mod dga;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod json;
pub mod novikov;
mod tuples;

pub use algebra::{Element, FilteredAlgebra, MapTable, RelationReport, Violation};
pub use error::{Error, Result};
pub use hom::AInftyHom;
pub use novikov::{Coeff, Exp, NovikovScalar, Valuation, F2};

/// Highest arity kept by default.
pub const DEFAULT_KMAX: usize = 6;
