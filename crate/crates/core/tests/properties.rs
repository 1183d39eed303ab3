use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use troplag_core::kernel::{newton_polytope, tropical_variety, LatticePolytope, Stratification, TropicalPolynomial};
use troplag_core::linalg::{q, q_frac, Q};
use troplag_core::smoothing::{smooth, GridSpec};
use troplag_core::subdivision::{classify_cell, dual_subdivision, legendre_transform};
use troplag_core::surgery::{check_profile, cobordism_profile, make_profile, polygon_moduli_dimension, Shape};

fn rational() -> impl Strategy<Value = Q> {
    (-24i64..=24, 1i64..=6).prop_map(|(a, b)| q_frac(a, b))
}

fn polynomial(n: usize, max_terms: usize) -> impl Strategy<Value = TropicalPolynomial> {
    prop::collection::btree_map(prop::collection::vec(-3i64..=3, n), rational(), 1..=max_terms)
        .prop_map(move |m: BTreeMap<Vec<i64>, Q>| TropicalPolynomial::new(n, m.into_iter().collect()).unwrap())
}

fn point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), n)
}

fn affine(phi: &TropicalPolynomial, i: usize, x: &[Q]) -> Q {
    let m = &phi.monomials()[i];
    m.exp.iter().zip(x).fold(m.coeff.clone(), |acc, (&v, y)| acc + q(v) * y)
}

/// A rational point in the relative interior of a variety cell.
fn interior_point(vertices: &[Vec<Q>], rays: &[Vec<i64>]) -> Vec<Q> {
    let n = vertices[0].len();
    let k = q(vertices.len() as i64);
    (0..n)
        .map(|j| {
            let bary = vertices.iter().fold(Q::zero(), |a, v| a + &v[j]) / &k;
            rays.iter().fold(bary, |a, r| a + q(r[j]))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_the_minimum(phi in polynomial(2, 8), x in point(2)) {
        let (val, active) = phi.evaluate(&x).unwrap();
        for (i, m) in phi.monomials().iter().enumerate() {
            let a = affine(&phi, i, &x);
            prop_assert!(val <= a);
            prop_assert_eq!(val == a, active.contains(&m.exp));
        }
    }

    #[test]
    fn exact_midpoint_concavity(phi in polynomial(3, 8), x in point(3), y in point(3)) {
        let mid: Vec<Q> = x.iter().zip(&y).map(|(a, b)| (a + b) / q(2)).collect();
        let (fx, _) = phi.evaluate(&x).unwrap();
        let (fy, _) = phi.evaluate(&y).unwrap();
        let (fm, _) = phi.evaluate(&mid).unwrap();
        prop_assert!(fm * q(2) >= fx + fy);
    }

    #[test]
    fn variety_cells_and_duality(phi in polynomial(2, 8)) {
        let strat = Stratification::new(&phi);
        prop_assume!(strat.lineality.is_empty());
        let v = tropical_variety(&phi);
        let sub = dual_subdivision(&phi);
        for cell in &v.cells {
            prop_assert!(cell.dim < 2);
            let x = interior_point(&cell.vertices, &cell.rays);
            let (_, mut active) = phi.evaluate(&x).unwrap();
            active.sort();
            let mut expected = cell.active.clone();
            expected.sort();
            prop_assert_eq!(&active, &expected);
            let hull = LatticePolytope::from_points(2, &cell.active);
            prop_assert_eq!(cell.dim as isize + hull.dim(), 2);
            let dual = sub.find(&cell.active);
            prop_assert!(dual.is_some());
            prop_assert_eq!(dual.unwrap().dim + cell.dim, 2);
        }
    }

    #[test]
    fn active_lattice_inside_newton_polytope(phi in polynomial(2, 8)) {
        let (poly, z) = newton_polytope(&phi);
        let (all, _) = poly.lattice_points();
        prop_assert!(z.iter().all(|v| all.contains(v)));
    }

    #[test]
    fn top_cell_volumes_sum_to_polytope_volume(phi in polynomial(2, 8)) {
        let sub = dual_subdivision(&phi);
        prop_assume!(sub.polytope.dim() == 2);
        let total = sub
            .top_cells()
            .map(|c| LatticePolytope::from_points(2, &c.vertices).normalized_volume())
            .fold(num_bigint::BigInt::zero(), |a, b| a + b);
        prop_assert_eq!(total, sub.polytope.normalized_volume());
    }

    #[test]
    fn smooth_cells_are_empty_simplices(phi in polynomial(2, 8)) {
        for cell in dual_subdivision(&phi).cells.iter().filter(|c| c.dim >= 1) {
            let k = classify_cell(cell);
            if k.smooth {
                let (all, interior) = LatticePolytope::from_points(2, &cell.vertices).lattice_points();
                prop_assert_eq!(all.len(), cell.dim + 1);
                prop_assert!(interior.is_empty());
            }
        }
    }

    #[test]
    fn legendre_round_trip(phi in polynomial(2, 8), xs in prop::collection::vec(point(2), 100)) {
        let back = legendre_transform(&phi).to_polynomial(2);
        for x in &xs {
            prop_assert_eq!(phi.evaluate(x).unwrap().0, back.evaluate(x).unwrap().0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn smoothed_kink_family_is_concave_with_bounded_slopes(a in -4i64..=4, b in 1i64..=3, c in -4i64..=4) {
        // min(a, b·x + c) has a single vertex, so every ε passes preflight.
        let phi = TropicalPolynomial::from_ints(1, &[(&[0], a), (&[b], c)]).unwrap();
        let f = smooth(&phi, 0.1, &GridSpec::cube(1, 8.0, 0.01).unwrap()).unwrap();
        let len = f.grid().len();
        for i in 1..len - 1 {
            let d2 = f.grid_value(i - 1) + f.grid_value(i + 1) - 2.0 * f.grid_value(i);
            prop_assert!(d2 <= 1e-9);
            let g = f.grid_gradient(i)[0];
            prop_assert!((-1e-12..=b as f64 + 1e-12).contains(&g));
        }
    }

    #[test]
    fn profile_invariants(c in 0.01f64..10.0, kappa in 0.2f64..5.0) {
        let p = make_profile(c, &Shape { kappa }).unwrap();
        let rep = check_profile(&p);
        prop_assert!(rep.pass, "{:?}", rep);
        prop_assert!((p.neck_width + c).abs() <= 1e-9 * c.max(1.0));
    }

    #[test]
    fn cobordism_invariants(eps in 0.001f64..2.0) {
        prop_assert!(cobordism_profile(eps).unwrap().invariants_hold());
    }

    #[test]
    fn index_formula_is_negative_from_dimension_two(n in 2i64..40, k in 1i64..40) {
        let d = polygon_moduli_dimension(n, k).unwrap();
        prop_assert_eq!(d, (2 - n) * k - 3 + n);
        prop_assert!(d < 0);
    }
}
