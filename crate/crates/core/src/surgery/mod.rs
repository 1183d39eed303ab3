//! Lagrangian surgery profiles, the sampled lift `L(φ)` and its checks.

pub mod checks;
pub mod cobordism;
mod edt;
pub mod lift;
pub mod profile;
pub mod twist;

pub use cobordism::{cobordism_profile, polygon_moduli_dimension, CobordismProfile};
pub use edt::squared_distance;
pub use lift::{chart_agreement, lift, lift_field, Chart, LagrangianMesh, LiftParams, Region, Sample};
pub use profile::{
    check_profile, make_profile, neck_width, profile_flux, profile_with_neck_width, ConvexPrimitive, FluxReport,
    ProfileFamily, ProfileReport, Shape, SurgeryProfile, PROFILE_TOL,
};
pub use twist::{fiberwise_sum, transverse_winding};
pub use checks::{
    admissibility_check, argument_projection_check, far_field_subtorus, fiber_circle, valuation_projection_check,
    AdmissibilityReport, ArgumentReport, FiberCircleReport, SubtorusReport, ValuationReport,
};
