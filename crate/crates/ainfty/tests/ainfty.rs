use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use troplag_ainfty::dga::{candidate, mc_bruteforce};
use troplag_ainfty::fixtures::*;
use troplag_ainfty::novikov::{exp, Exp, NovikovScalar, Valuation, F2};
use troplag_ainfty::{AInftyHom, Element, Error, FilteredAlgebra};

type N = NovikovScalar<F2>;

fn t(n: i64, d: i64) -> N {
    N::t(exp(n, d), &cutoff())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn spec_dga_generator_is_maurer_cartan() {
    // x(1), y(2) with dx = T·y, x·x = T·y: residual (T + T)·y.
    let a = troplag_ainfty::json::parse_algebra::<F2>(
        r#"{"cutoff": "10", "basis": [{"name": "x", "deg": 1}, {"name": "y", "deg": 2}],
            "maps": {"m1": [{"in": ["x"], "out": [{"b": "y", "c": "T^1"}]}],
                     "m2": [{"in": ["x", "x"], "out": [{"b": "y", "c": "T^1"}]}]}}"#,
    )
    .unwrap();
    assert!(a.check_relations().pass);
    assert!(a.is_mc(&a.unit(0)).unwrap());
}

#[test]
fn residual_is_classical_mc_on_family_a() {
    let mut r = rng(3);
    for _ in 0..20 {
        let alpha = random_scalar(&mut r, &scalar_grid());
        let beta = random_scalar(&mut r, &scalar_grid());
        let a = family_a(&alpha, &beta, 6).unwrap();
        let u = random_scalar(&mut r, &positive_grid());
        let e = a.element(&[("x", u.clone())]).unwrap();
        // da + a·a = (u·β + u²·α)·y
        let expected = &(&u * &beta) + &(&(&u * &u) * &alpha);
        let res = a.mc_residual(&e).unwrap();
        assert_eq!(res.coeff(2), &expected);
        assert!(res.coeff(0).is_zero() && res.coeff(1).is_zero());
    }
}

#[test]
fn random_dgas_and_deformations_pass_relations() {
    let mut r = rng(0);
    for _ in 0..100 {
        let a = random_dga(&mut r);
        assert!(a.check_relations().pass);
        let c = random_degree_one(&mut r, &a, &positive_grid());
        let rep = a.deform(&c).unwrap().check_relations();
        assert!(rep.pass, "{a} deformed by {}: {rep:?}", c.display(a.names()));
    }
}

#[test]
fn deformations_commute() {
    let mut r = rng(1);
    for _ in 0..30 {
        let a = random_dga(&mut r);
        let a1 = random_degree_one(&mut r, &a, &positive_grid());
        let a2 = random_degree_one(&mut r, &a, &positive_grid());
        let lhs = a.deform(&a1).unwrap().deform(&a2).unwrap();
        let rhs = a.deform(&a1.add(&a2)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn curved_deformations_commute_and_pass() {
    let a = curved_family_a(exp(1, 2), &t(1, 1), &t(1, 2)).unwrap();
    let a1 = a.element(&[("x", t(1, 2))]).unwrap();
    let a2 = a.element(&[("x", &t(1, 1) + &t(3, 2))]).unwrap();
    let lhs = a.deform(&a1).unwrap().deform(&a2).unwrap();
    assert_eq!(lhs, a.deform(&a1.add(&a2)).unwrap());
    assert!(lhs.check_relations().pass);
}

#[test]
fn corrupted_product_is_reported() {
    let a = family_a(&t(1, 1), &t(1, 2), 6).unwrap();
    let mut maps = a.maps().to_vec();
    maps[2].remove(&vec![0, 1]);
    let bad = FilteredAlgebra::new(a.basis(), cutoff(), 6, maps).unwrap();
    let rep = bad.check_relations();
    assert!(!rep.pass);
    // m²(1, dx) = T^{1/2}·y survives while d(1·x) and (d1)·x vanish.
    let v = rep.violation.unwrap();
    assert_eq!((v.arity, v.inputs.clone()), (2, vec!["1".to_string(), "x".to_string()]));
    assert_eq!(v.valuation, Valuation::Finite(exp(1, 2)));
}

#[test]
fn zero_energy_quotient_is_uncurved() {
    let mut r = rng(2);
    for _ in 0..20 {
        let a = random_dga(&mut r);
        let c = random_degree_one(&mut r, &a, &positive_grid());
        let curved = a.deform(&c).unwrap();
        // A_{>0} absorbs insertions: one input scaled by T^{1/2} raises the output valuation by ≥ 1/2.
        let half = t(1, 2);
        for k in 1..=3 {
            for key in curved.map(k).keys() {
                for p in 0..k {
                    let inputs: Vec<Element<F2>> =
                        key.iter().enumerate().map(|(q, &i)| if q == p { curved.unit(i).scale(&half) } else { curved.unit(i) }).collect();
                    let refs: Vec<&Element<F2>> = inputs.iter().collect();
                    assert!(curved.m(k, &refs).unwrap().valuation() >= Valuation::Finite(exp(1, 2)));
                }
            }
        }
        let reduced = curved.reduce_zero_energy();
        assert!(!reduced.is_curved());
        assert!(reduced.check_relations().pass);
    }
}

#[test]
fn ideals_and_quotients() {
    let b = family_b(&[[t(0, 1), t(1, 1)], [t(1, 2), t(2, 1)]], &[t(1, 1), N::zero(&cutoff())], 6).unwrap();
    let f = b.index_of("f").unwrap();
    let q = b.quotient_ideal(&[f]).unwrap();
    assert_eq!(q.dim(), 3);
    assert!(q.check_relations().pass);
    assert_eq!(b.quotient_ideal(&[0, 1, 2, 3]).unwrap().dim(), 0);
    match b.quotient_ideal(&[1]).unwrap_err() {
        Error::NotAnIdeal { arity, tuple } => assert_eq!((arity, tuple), (1, vec!["e1".to_string()])),
        e => panic!("{e:?}"),
    }
    // e2 has de2 = 0 but e2·e1 = T^{1/2} f leaves span{e2}.
    assert_eq!(b.quotient_ideal(&[2]).unwrap_err().code(), "E_NOT_AN_IDEAL");
}

#[test]
fn identity_and_dga_maps_are_homomorphisms() {
    let mut r = rng(4);
    for _ in 0..20 {
        let a = random_dga(&mut r);
        assert!(AInftyHom::identity(&a).check_hom().pass);
        let g = random_dga_map(&mut r);
        assert!(g.check_hom().pass);
        assert_eq!(AInftyHom::identity(g.target()).compose(&g).unwrap(), g);
        assert_eq!(g.compose(&AInftyHom::identity(g.source())).unwrap(), g);
    }
}

#[test]
fn perturbed_identity_fails() {
    let a = family_a(&t(1, 1), &t(1, 2), 6).unwrap();
    let mut maps = AInftyHom::identity(&a).maps().to_vec();
    let mut image = a.unit(1);
    image.set(1, &N::one(&cutoff()) + &t(1, 1));
    maps[1].insert(vec![1], image);
    let f = AInftyHom::new(a.clone(), a, maps).unwrap();
    let rep = f.check_hom();
    assert!(!rep.pass);
    assert!(rep.violation.is_some());
}

#[test]
fn composition_is_associative() {
    let mut r = rng(5);
    for _ in 0..10 {
        let (a, b, c, d) = (random_dga(&mut r), random_dga(&mut r), random_dga(&mut r), random_dga(&mut r));
        let f = random_components(&mut r, &a, &b);
        let g = random_components(&mut r, &b, &c);
        let h = random_components(&mut r, &c, &d);
        assert_eq!(h.compose(&g).unwrap().compose(&f).unwrap(), h.compose(&g.compose(&f).unwrap()).unwrap());
        assert_eq!(g.compose(&g).unwrap_err(), Error::AlgebraMismatch);
    }
}

#[test]
fn composites_and_deformed_homs_pass() {
    let mut r = rng(6);
    for _ in 0..20 {
        let fx = random_hom_fixture(&mut r);
        assert!(fx.source.is_curved() || fx.hom.maps()[0].is_empty());
        assert!(fx.hom.check_hom().pass);
        let a = random_degree_one(&mut r, &fx.source, &fx.grid);
        let fa = fx.hom.deform(&a).unwrap();
        assert_eq!(fa.source(), &fx.source.deform(&a).unwrap());
        assert!(fa.check_hom().pass);
        assert_eq!(fx.hom.deform(&fx.source.zero()).unwrap(), fx.hom);
    }
}

#[test]
fn pushforward_lemma_on_fixtures() {
    let mut r = rng(7);
    let mut total = 0;
    for _ in 0..20 {
        let fx = random_hom_fixture(&mut r);
        let found = mc_bruteforce(&fx.source, &fx.support, &fx.grid).unwrap();
        for b in &found {
            let image = fx.hom.pushforward(b).unwrap();
            assert!(fx.target.is_mc(&image).unwrap());
            let shifted = fx.hom.deform(b).unwrap();
            assert_eq!(shifted.pushforward(&shifted.source().zero()).unwrap(), image);
            // Composition with 0_b realizes the same pushforward.
            let zb = AInftyHom::zero_source(&fx.source, b).unwrap();
            let composite = fx.hom.compose(&zb).unwrap();
            assert_eq!(composite.maps()[0].get(&Vec::new()).cloned().unwrap_or_else(|| fx.target.zero()), image);
        }
        total += found.len();
    }
    assert!(total >= 20, "only {total} Maurer-Cartan elements found");
}

#[test]
fn trivial_pushforwards() {
    let mut r = rng(8);
    let g = random_dga_map(&mut r);
    let b = random_degree_one(&mut r, g.source(), &positive_grid());
    assert_eq!(AInftyHom::identity(g.source()).pushforward(&b).unwrap(), b);
    assert_eq!(g.pushforward(&b).unwrap(), g.f(1, &[&b]).unwrap());
}

/// Every candidate `b`: `0_b` is a homomorphism iff `b` is Maurer-Cartan.
fn unobstructedness(a: &FilteredAlgebra<F2>, grid: &[Exp]) -> bool {
    let support = degree_one(a);
    let found = mc_bruteforce(a, &support, grid).unwrap();
    let mut any = false;
    for mask in 0..1u64 << (support.len() * grid.len()) {
        let b = candidate(a, &support, grid, mask);
        if b.is_zero() {
            // 0_0 has f^0 = 0, which is the uncurved case of the same statement.
            assert_eq!(a.is_mc(&b).unwrap(), !a.is_curved());
            any |= !a.is_curved();
            continue;
        }
        let hom = AInftyHom::zero_source(a, &b).unwrap().check_hom().pass;
        assert_eq!(hom, found.contains(&b));
        any |= hom;
    }
    assert_eq!(any, !found.is_empty());
    any
}

#[test]
fn unobstructedness_criterion_exhaustive() {
    let grid = positive_grid();
    let zero = N::zero(&cutoff());
    // Curvature T^{1/2}·y with β = α = 0: the residual always contains T^{1/2}·y.
    let obstructed = curved_family_a(exp(1, 2), &zero, &zero).unwrap();
    assert!(!unobstructedness(&obstructed, &grid));
    // Curvature T^2·y, dx = T·y: u = T^1 solves T² + T·u = 0.
    let solvable = curved_family_a(exp(2, 1), &zero, &t(1, 1)).unwrap();
    assert!(unobstructedness(&solvable, &grid));
    let mut r = rng(9);
    for _ in 0..10 {
        assert!(unobstructedness(&random_dga(&mut r), &grid));
        let fx = random_hom_fixture(&mut r);
        assert!(unobstructedness(&fx.source, &fx.grid));
    }
}

#[test]
fn cutoff_monotonicity_on_fixtures() {
    let mut r = rng(10);
    let five = exp(5, 1);
    for _ in 0..10 {
        let fx = random_hom_fixture(&mut r);
        let low = fx.source.truncate(&five).unwrap();
        for b in mc_bruteforce(&fx.source, &fx.support, &fx.grid).unwrap() {
            assert!(low.is_mc(&b.truncate(&five).unwrap()).unwrap());
        }
    }
}
