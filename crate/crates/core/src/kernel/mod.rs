//! Exact min-plus kernel: polynomials, Newton polytopes, varieties and support functions.

pub mod fan;
pub mod poly;
pub mod polytope;
pub mod variety;

pub use fan::{support_function, Fan, SupportFunction};
pub use poly::{named, Monomial, TropicalPolynomial};
pub use polytope::{Facet, LatticePolytope};
pub use variety::{distance_to_variety, tropical_variety, PolyhedralComplex, Stratification, VarietyCell};

use crate::linalg::from_ints;

/// Newton polytope `Δ = hull(Δ^Z)` together with `Δ^Z`, the exponents that
/// achieve the minimum on an open set.
pub fn newton_polytope(phi: &TropicalPolynomial) -> (LatticePolytope, Vec<Vec<i64>>) {
    let strat = Stratification::new(phi);
    let active = active_lattice(&strat);
    (LatticePolytope::from_points(phi.dim(), &active), active)
}

/// Exponents that are vertices of the lower hull.
pub fn active_lattice(strat: &Stratification) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = strat
        .faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| strat.exponents()[f.vertex_indices[0]].clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn lattice_points(p: &LatticePolytope) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    p.lattice_points()
}

pub fn is_in(p: &LatticePolytope, x: &[i64]) -> bool {
    p.contains(&from_ints(x))
}
