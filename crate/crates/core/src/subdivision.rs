//! Regular subdivision of the Newton polytope from the lower hull of
//! `{(v, a_v)}`, the Legendre transform and the smoothness classification.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::variety::Stratification;
use crate::kernel::{active_lattice, LatticePolytope, TropicalPolynomial};
use crate::linalg::Q;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdivisionCell {
    pub dim: usize,
    /// Extreme points of the cell, sorted.
    pub vertices: Vec<Vec<i64>>,
    /// Every exponent tying on the dual stratum (vertices plus collinear ties).
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    pub polytope: LatticePolytope,
    pub cells: Vec<SubdivisionCell>,
    pub heights: Vec<(Vec<i64>, Q)>,
}

impl RegularSubdivision {
    pub fn top_cells(&self) -> impl Iterator<Item = &SubdivisionCell> {
        let d = self.polytope.dim().max(0) as usize;
        self.cells.iter().filter(move |c| c.dim == d)
    }

    pub fn find(&self, points: &[Vec<i64>]) -> Option<&SubdivisionCell> {
        let mut p = points.to_vec();
        p.sort();
        self.cells.iter().find(|c| c.points == p || c.vertices == p)
    }
}

pub fn dual_subdivision(phi: &TropicalPolynomial) -> RegularSubdivision {
    from_stratification(phi, &Stratification::new(phi))
}

pub fn from_stratification(phi: &TropicalPolynomial, strat: &Stratification) -> RegularSubdivision {
    let lattice = active_lattice(strat);
    let polytope = LatticePolytope::from_points(phi.dim(), &lattice);
    let mut cells: Vec<SubdivisionCell> = strat
        .faces
        .iter()
        .map(|f| {
            let mut vertices: Vec<Vec<i64>> = f.vertex_indices.iter().map(|&i| strat.exponents()[i].clone()).collect();
            vertices.sort();
            let mut points = strat.face_points(f);
            points.sort();
            SubdivisionCell { dim: f.dim, vertices, points }
        })
        .collect();
    cells.sort();
    let heights = lattice.iter().map(|v| (v.clone(), phi.coefficient(v).expect("exponent").clone())).collect();
    RegularSubdivision { polytope, cells, heights }
}

/// Heights of the lower-hull vertices together with the induced subdivision.
#[derive(Clone, Debug)]
pub struct LegendreTransform {
    pub heights: Vec<(Vec<i64>, Q)>,
    pub subdivision: RegularSubdivision,
}

impl LegendreTransform {
    /// Rebuild `φ` from the hull data; agrees with the original as a function.
    pub fn to_polynomial(&self, n: usize) -> TropicalPolynomial {
        TropicalPolynomial::new(n, self.heights.clone()).expect("nonempty lower hull")
    }
}

pub fn legendre_transform(phi: &TropicalPolynomial) -> LegendreTransform {
    let subdivision = dual_subdivision(phi);
    LegendreTransform { heights: subdivision.heights.clone(), subdivision }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumClassification {
    pub cell: Vec<Vec<i64>>,
    pub dim: usize,
    pub smooth: bool,
    pub self_intersection: u64,
}

pub fn classify_cell(cell: &SubdivisionCell) -> StratumClassification {
    let n = cell.vertices.first().map_or(0, |v| v.len());
    let poly = LatticePolytope::from_points(n, &cell.vertices);
    let simplex = poly.vertices().len() == cell.dim + 1;
    let smooth = simplex && crate::kernel::polytope::simplex_volume(poly.vertices()) == BigInt::one();
    let (_, interior) = poly.lattice_points();
    StratumClassification { cell: cell.vertices.clone(), dim: cell.dim, smooth, self_intersection: interior.len() as u64 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub smooth: bool,
    pub total_self_intersections: u64,
    pub embedded_lift: bool,
    pub cells: Vec<StratumClassification>,
}

pub fn classify_polynomial(phi: &TropicalPolynomial) -> ClassificationReport {
    classify_subdivision(&dual_subdivision(phi))
}

pub fn classify_subdivision(sub: &RegularSubdivision) -> ClassificationReport {
    let cells: Vec<StratumClassification> = sub.cells.iter().filter(|c| c.dim >= 1).map(classify_cell).collect();
    let smooth = cells.iter().all(|c| c.smooth);
    let total: u64 = cells.iter().map(|c| c.self_intersection).sum();
    ClassificationReport { smooth, total_self_intersections: total, embedded_lift: total == 0, cells }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genus {
    Embedded(u64),
    /// Immersed lift; the genus is the number of surgered interior lattice points.
    Immersed(u64),
}

impl std::fmt::Display for Genus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Genus::Embedded(g) => write!(f, "{g}"),
            Genus::Immersed(0) => write!(f, "immersed-sphere"),
            Genus::Immersed(g) => write!(f, "immersed-genus-{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTopology {
    pub genus: Genus,
    pub punctures: u64,
    pub self_intersections: u64,
    pub euler_characteristic: Option<i64>,
}

pub fn lift_topology(phi: &TropicalPolynomial) -> Result<LiftTopology> {
    if phi.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: "2".into(), got: phi.dim() });
    }
    let sub = dual_subdivision(phi);
    let report = classify_subdivision(&sub);
    let (all, interior) = sub.polytope.lattice_points();
    let punctures = (all.len() - interior.len()) as u64;
    if report.embedded_lift {
        let g = interior.len() as u64;
        Ok(LiftTopology {
            genus: Genus::Embedded(g),
            punctures,
            self_intersections: 0,
            euler_characteristic: Some(2 - 2 * g as i64 - punctures as i64),
        })
    } else {
        let zset: Vec<&Vec<i64>> = sub.heights.iter().map(|(v, _)| v).collect();
        let surgered = interior.iter().filter(|p| zset.contains(p)).count() as u64;
        Ok(LiftTopology {
            genus: Genus::Immersed(surgered),
            punctures,
            self_intersections: report.total_self_intersections,
            euler_characteristic: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::named::*;
    use crate::linalg::q;

    #[test]
    fn figure_one_subdivisions() {
        let s0 = dual_subdivision(&phi_t2(q(0)));
        assert_eq!(s0.top_cells().count(), 1);
        let s1 = dual_subdivision(&phi_t2(q(1)));
        assert_eq!(s1.top_cells().count(), 3);
        assert!(s1.top_cells().all(|c| c.vertices.contains(&vec![0, 0])));
        let sp = dual_subdivision(&phi_plus());
        let tops: Vec<_> = sp.top_cells().collect();
        assert_eq!(tops.len(), 1);
        assert_eq!(tops[0].vertices.len(), 4);
    }

    #[test]
    fn classifications() {
        let r0 = classify_polynomial(&phi_t2(q(0)));
        assert_eq!((r0.smooth, r0.total_self_intersections, r0.embedded_lift), (false, 1, false));
        let r1 = classify_polynomial(&phi_t2(q(1)));
        assert_eq!((r1.smooth, r1.total_self_intersections, r1.embedded_lift), (true, 0, true));
        let rp = classify_polynomial(&phi_plus());
        assert_eq!((rp.smooth, rp.total_self_intersections, rp.embedded_lift), (false, 0, true));
    }

    #[test]
    fn topologies() {
        let t1 = lift_topology(&phi_t2(q(1))).unwrap();
        assert_eq!((t1.genus.clone(), t1.punctures, t1.euler_characteristic), (Genus::Embedded(1), 3, Some(-3)));
        let tp = lift_topology(&phi_plus()).unwrap();
        assert_eq!((tp.genus.clone(), tp.punctures, tp.euler_characteristic), (Genus::Embedded(0), 4, Some(-2)));
        let t0 = lift_topology(&phi_t2(q(0))).unwrap();
        assert_eq!(t0.genus.to_string(), "immersed-sphere");
        assert_eq!((t0.punctures, t0.self_intersections, t0.euler_characteristic), (3, 1, None));
        assert!(lift_topology(&kink()).is_err());
    }

    #[test]
    fn legendre_heights() {
        let lt = legendre_transform(&phi_t2(q(1)));
        let h: Vec<Q> = lt.heights.iter().map(|(_, a)| a.clone()).collect();
        assert_eq!(lt.heights.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(), vec![
            vec![-1, -1],
            vec![0, 0],
            vec![0, 1],
            vec![1, 0]
        ]);
        assert_eq!(h, vec![q(1), q(0), q(0), q(0)]);
        let single = TropicalPolynomial::from_ints(1, &[(&[4], 7)]).unwrap();
        assert_eq!(legendre_transform(&single).heights, vec![(vec![4], q(7))]);
    }
}
