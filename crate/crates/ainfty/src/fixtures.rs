//! DGA families and random homomorphisms used by the property suites.
//!
//! Family A is unital on `1(0), x(1), y(2)` with `x·x = α·y`, `dx = β·y`.
//! Family B is unital on `1(0), e1(1), e2(1), f(2)` with `e_i·e_j = c_ij·f`,
//! `de_i = β_i·f`. Every triple product of positive-degree generators lands in
//! degree ≥ 3 and vanishes, so any parameters give a DGA.

use std::collections::BTreeMap;

use rand::Rng;

use crate::algebra::{Element, FilteredAlgebra, MapTable};
use crate::dga::dga_builder;
use crate::error::Result;
use crate::hom::AInftyHom;
use crate::novikov::{exp, Coeff, Exp, NovikovScalar, F2};
use crate::DEFAULT_KMAX;

type N<C> = NovikovScalar<C>;

pub fn cutoff() -> Exp {
    exp(10, 1)
}

/// Exponents for structure constants.
pub fn scalar_grid() -> Vec<Exp> {
    vec![exp(0, 1), exp(1, 2), exp(1, 1), exp(3, 2), exp(2, 1)]
}

/// Exponents for deforming elements and Maurer-Cartan searches.
pub fn positive_grid() -> Vec<Exp> {
    vec![exp(1, 2), exp(1, 1), exp(3, 2)]
}

fn unital<C: Coeff>(dim: usize, cutoff: &Exp) -> BTreeMap<(usize, usize), Element<C>> {
    let mut p = BTreeMap::new();
    for i in 0..dim {
        p.insert((0, i), Element::basis(i, dim, cutoff));
        p.insert((i, 0), Element::basis(i, dim, cutoff));
    }
    p
}

fn on<C: Coeff>(i: usize, dim: usize, c: &N<C>) -> Element<C> {
    let mut e = Element::zero(dim, c.cutoff());
    e.set(i, c.clone());
    e
}

pub fn family_a<C: Coeff>(alpha: &N<C>, beta: &N<C>, kmax: usize) -> Result<FilteredAlgebra<C>> {
    let cut = alpha.cutoff().clone();
    let basis = vec![("1".to_string(), 0), ("x".to_string(), 1), ("y".to_string(), 2)];
    let mut product = unital(3, &cut);
    product.insert((1, 1), on(2, 3, alpha));
    let d = [(1, on(2, 3, beta))].into_iter().collect();
    dga_builder(basis, d, product, cut, kmax)
}

pub fn family_b<C: Coeff>(c: &[[N<C>; 2]; 2], beta: &[N<C>; 2], kmax: usize) -> Result<FilteredAlgebra<C>> {
    let cut = beta[0].cutoff().clone();
    let basis = vec![("1".to_string(), 0), ("e1".to_string(), 1), ("e2".to_string(), 1), ("f".to_string(), 2)];
    let mut product = unital(4, &cut);
    for i in 0..2 {
        for j in 0..2 {
            product.insert((i + 1, j + 1), on(3, 4, &c[i][j]));
        }
    }
    let d = (0..2).map(|i| (i + 1, on(3, 4, &beta[i]))).collect();
    dga_builder(basis, d, product, cut, kmax)
}

/// Family A with curvature `m^0 = T^γ·y`. Over F₂ the unit terms of the
/// curved relations cancel in pairs.
pub fn curved_family_a(gamma: Exp, alpha: &N<F2>, beta: &N<F2>) -> Result<FilteredAlgebra<F2>> {
    let a = family_a(alpha, beta, DEFAULT_KMAX)?;
    let mut maps = a.maps().to_vec();
    maps[0] = [(Vec::new(), on(2, 3, &N::t(gamma, a.cutoff())))].into_iter().collect();
    FilteredAlgebra::new(a.basis(), a.cutoff().clone(), a.kmax(), maps)
}

/// Each grid exponent is included with probability ½.
pub fn random_scalar<R: Rng>(rng: &mut R, grid: &[Exp]) -> N<F2> {
    let terms = grid.iter().filter(|_| rng.gen_bool(0.5)).map(|e| (e.clone(), F2(true))).collect();
    N::from_terms(terms, &cutoff())
}

pub fn degree_one(a: &FilteredAlgebra<F2>) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.degrees()[i] == 1).collect()
}

/// A random nonzero degree-1 element with coefficients drawn from `grid`.
pub fn random_degree_one<R: Rng>(rng: &mut R, a: &FilteredAlgebra<F2>, grid: &[Exp]) -> Element<F2> {
    loop {
        let mut e = a.zero();
        for i in degree_one(a) {
            e.set(i, random_scalar(rng, grid));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_dga<R: Rng>(rng: &mut R) -> FilteredAlgebra<F2> {
    let g = scalar_grid();
    if rng.gen_bool(0.5) {
        family_a(&random_scalar(rng, &g), &random_scalar(rng, &g), DEFAULT_KMAX).expect("family A is a DGA")
    } else {
        let mut s = || random_scalar(rng, &g);
        let c = [[s(), s()], [s(), s()]];
        let beta = [s(), s()];
        family_b(&c, &beta, DEFAULT_KMAX).expect("family B is a DGA")
    }
}

/// A strict DGA map `g: A → B`, with `A` the pullback of a random `B`
/// along a random linear map on generators.
pub fn random_dga_map<R: Rng>(rng: &mut R) -> AInftyHom<F2> {
    let g = scalar_grid();
    let cut = cutoff();
    if rng.gen_bool(0.5) {
        let (alpha, beta, lambda) = (random_scalar(rng, &g), random_scalar(rng, &g), random_scalar(rng, &g));
        let target = family_a(&alpha, &beta, DEFAULT_KMAX).expect("family A is a DGA");
        let source = family_a(&(&(&lambda * &lambda) * &alpha), &(&lambda * &beta), DEFAULT_KMAX).expect("family A is a DGA");
        let images = vec![target.unit(0), on(1, 3, &lambda), target.unit(2)];
        AInftyHom::linear(&source, &target, images).expect("pullback map is valid")
    } else {
        let mut s = || random_scalar(rng, &g);
        let c = [[s(), s()], [s(), s()]];
        let beta = [s(), s()];
        let l = [[s(), s()], [s(), s()]];
        let target = family_b(&c, &beta, DEFAULT_KMAX).expect("family B is a DGA");
        let zero = N::zero(&cut);
        // C_src = L C Lᵀ, β_src = L β.
        let mut cs = [[zero.clone(), zero.clone()], [zero.clone(), zero.clone()]];
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        cs[i][j] = &cs[i][j] + &(&(&l[i][p] * &l[j][q]) * &c[p][q]);
                    }
                }
            }
        }
        let bs = [0, 1].map(|i| &(&l[i][0] * &beta[0]) + &(&l[i][1] * &beta[1]));
        let source = family_b(&cs, &bs, DEFAULT_KMAX).expect("family B is a DGA");
        let image = |i: usize| {
            let mut e = Element::zero(4, &cut);
            e.set(1, l[i][0].clone());
            e.set(2, l[i][1].clone());
            e
        };
        let images = vec![target.unit(0), image(0), image(1), target.unit(3)];
        AInftyHom::linear(&source, &target, images).expect("pullback map is valid")
    }
}

/// A curved source `S = A_c`, a homomorphism `h = g ∘ id_c: S → B` with a
/// nonzero `h^0`, and the search space for Maurer-Cartan elements of `S`.
pub struct HomFixture {
    pub source: FilteredAlgebra<F2>,
    pub target: FilteredAlgebra<F2>,
    pub hom: AInftyHom<F2>,
    pub support: Vec<usize>,
    pub grid: Vec<Exp>,
}

pub fn random_hom_fixture<R: Rng>(rng: &mut R) -> HomFixture {
    let g = random_dga_map(rng);
    let a = g.source().clone();
    let grid = positive_grid();
    let c = random_degree_one(rng, &a, &grid);
    let shift = AInftyHom::identity(&a).deform(&c).expect("c has positive valuation");
    let hom = g.compose(&shift).expect("id_c lands in A");
    HomFixture { source: hom.source().clone(), target: hom.target().clone(), support: degree_one(&a), grid, hom }
}

/// A random homomorphism with arbitrary `f^0`, `f^1`, `f^2` of the right
/// degrees. Usually not a homomorphism; used for the associativity of
/// composition, which is formal.
pub fn random_components<R: Rng>(rng: &mut R, source: &FilteredAlgebra<F2>, target: &FilteredAlgebra<F2>) -> AInftyHom<F2> {
    let pos = positive_grid();
    let any = scalar_grid();
    let mut maps: Vec<MapTable<F2>> = vec![BTreeMap::new(); 3];
    let rand_out = |rng: &mut R, deg: i64, grid: &[Exp]| {
        let mut e = target.zero();
        for (i, &d) in target.degrees().iter().enumerate() {
            if d == deg {
                e.set(i, random_scalar(rng, grid));
            }
        }
        e
    };
    maps[0].insert(Vec::new(), rand_out(rng, 1, &pos));
    for i in 0..source.dim() {
        maps[1].insert(vec![i], rand_out(rng, source.degrees()[i], &any));
        for j in 0..source.dim() {
            maps[2].insert(vec![i, j], rand_out(rng, source.degrees()[i] + source.degrees()[j] - 1, &any));
        }
    }
    AInftyHom::new(source.clone(), target.clone(), maps).expect("degrees match")
}
