//! Tropical hypersurfaces, their dual subdivisions, mollified tropical
//! sections and sampled surgery lifts `L(φ)`.

pub mod error;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod smoothing;
pub mod subdivision;
pub mod surgery;

pub use error::{Error, Result};
