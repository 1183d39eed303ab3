//! DGA-built algebras and brute-force Maurer-Cartan enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{Element, FilteredAlgebra, MapTable};
use crate::error::{Error, Result};
use crate::novikov::{Coeff, Exp, NovikovScalar, F2};

/// Largest brute-force search space, in bits.
pub const MAX_BRUTEFORCE_BITS: usize = 20;

/// Builds `m^1 = d`, `m^2 = product` after verifying `d² = 0`,
/// associativity and the Leibniz rule `d(ab) = (da)b + (−1)^{|a|} a(db)` on
/// all basis vectors.
pub fn dga_builder<C: Coeff>(
    basis: Vec<(String, i64)>,
    d: BTreeMap<usize, Element<C>>,
    product: BTreeMap<(usize, usize), Element<C>>,
    cutoff: Exp,
    kmax: usize,
) -> Result<FilteredAlgebra<C>> {
    if kmax < 2 {
        return Err(Error::InvalidParameter("a DGA needs kmax ≥ 2".into()));
    }
    let m1: MapTable<C> = d.into_iter().map(|(i, e)| (vec![i], e)).collect();
    let m2: MapTable<C> = product.into_iter().map(|((i, j), e)| (vec![i, j], e)).collect();
    let a = FilteredAlgebra::new(basis, cutoff, kmax, vec![BTreeMap::new(), m1, m2])?;
    let n = a.dim();
    let units: Vec<Element<C>> = (0..n).map(|i| a.unit(i)).collect();
    let d = |x: &Element<C>| a.m(1, &[x]).expect("dimensions match");
    let mul = |x: &Element<C>, y: &Element<C>| a.m(2, &[x, y]).expect("dimensions match");
    let fail = |axiom: &'static str, idx: &[usize]| Error::NotADga { axiom, tuple: idx.iter().map(|&i| a.names()[i].clone()).collect() };
    for i in 0..n {
        if !d(&d(&units[i])).is_zero() {
            return Err(fail("d^2 = 0", &[i]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ab = mul(&units[i], &units[j]);
            let mut rhs = mul(&d(&units[i]), &units[j]);
            let second = mul(&units[i], &d(&units[j]));
            rhs.add_assign(&if a.degrees()[i].rem_euclid(2) == 1 { second.neg() } else { second });
            if d(&ab) != rhs {
                return Err(fail("Leibniz", &[i, j]));
            }
            for l in 0..n {
                if mul(&ab, &units[l]) != mul(&units[i], &mul(&units[j], &units[l])) {
                    return Err(fail("associativity", &[i, j, l]));
                }
            }
        }
    }
    Ok(a)
}

/// All elements `Σ_{s ∈ support} (Σ_{λ ∈ grid} ε_{s,λ} T^λ) e_s` with
/// `ε ∈ F₂` whose Maurer-Cartan residual vanishes, in enumeration order.
pub fn mc_bruteforce(a: &FilteredAlgebra<F2>, support: &[usize], grid: &[Exp]) -> Result<Vec<Element<F2>>> {
    if let Some(&i) = support.iter().find(|&&i| i >= a.dim()) {
        return Err(Error::InvalidParameter(format!("basis index {i} out of range")));
    }
    let bits = support.len() * grid.len();
    if bits > MAX_BRUTEFORCE_BITS {
        return Err(Error::InvalidParameter(format!("search space of 2^{bits} elements is too large")));
    }
    let candidates: Vec<Element<F2>> = (0u64..1 << bits).map(|mask| candidate(a, support, grid, mask)).collect();
    let hits: Vec<bool> = candidates.par_iter().map(|e| a.is_mc(e).expect("dimensions match")).collect();
    Ok(candidates.into_iter().zip(hits).filter(|(_, h)| *h).map(|(e, _)| e).collect())
}

/// The candidate encoded by the bit pattern `mask` (bit `s·|grid| + g`).
pub fn candidate(a: &FilteredAlgebra<F2>, support: &[usize], grid: &[Exp], mask: u64) -> Element<F2> {
    let mut e = a.zero();
    for (si, &s) in support.iter().enumerate() {
        let terms = grid
            .iter()
            .enumerate()
            .filter(|(g, _)| mask >> (si * grid.len() + g) & 1 == 1)
            .map(|(_, lambda)| (lambda.clone(), F2(true)))
            .collect();
        e.set(s, NovikovScalar::from_terms(terms, a.cutoff()));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::exp;

    type N = NovikovScalar<F2>;

    fn ten() -> Exp {
        exp(10, 1)
    }

    fn grid() -> Vec<Exp> {
        vec![exp(1, 2), exp(1, 1), exp(3, 2)]
    }

    #[test]
    fn trivial_dga_everything_is_mc() {
        let basis = vec![("x".to_string(), 1), ("z".to_string(), 1)];
        let a = dga_builder::<F2>(basis, BTreeMap::new(), BTreeMap::new(), ten(), 6).unwrap();
        assert!(a.check_relations().pass);
        assert_eq!(mc_bruteforce(&a, &[0, 1], &grid()).unwrap().len(), 64);
    }

    /// Generators x, z of degree 1, w of degree 2, with dx = T·w, x·z = w,
    /// z·x = w and every other product of generators zero.
    fn two_generator() -> FilteredAlgebra<F2> {
        let basis = vec![("x".to_string(), 1), ("z".to_string(), 1), ("w".to_string(), 2)];
        let w = |c: N| {
            let mut e = Element::zero(3, &ten());
            e.set(2, c);
            e
        };
        let d = [(0, w(N::t(exp(1, 1), &ten())))].into_iter().collect();
        let product = [((0, 1), w(N::one(&ten()))), ((1, 0), w(N::one(&ten())))].into_iter().collect();
        dga_builder(basis, d, product, ten(), 6).unwrap()
    }

    #[test]
    fn two_generator_oracle_matches_hand_computation() {
        let a = two_generator();
        assert!(a.check_relations().pass);
        let found = mc_bruteforce(&a, &[0, 1], &grid()).unwrap();
        // a = u·x + v·z: da + a² = (T·u + uv + vu)·w = T·u·w over F₂, so MC iff u = 0.
        assert_eq!(found.len(), 8);
        assert!(found.iter().all(|e| e.coeff(0).is_zero()));
    }

    #[test]
    fn bruteforce_is_exact_on_candidates() {
        let a = two_generator();
        let found = mc_bruteforce(&a, &[0, 1], &grid()).unwrap();
        for mask in 0..64u64 {
            let e = candidate(&a, &[0, 1], &grid(), mask);
            let u = e.coeff(0).clone();
            let hand = (&u * &N::t(exp(1, 1), &ten())).is_zero();
            assert_eq!(found.contains(&e), hand);
        }
    }

    #[test]
    fn cutoff_monotonicity() {
        let a = two_generator();
        let low = a.truncate(&exp(5, 1)).unwrap();
        for e in mc_bruteforce(&a, &[0, 1], &grid()).unwrap() {
            assert!(low.is_mc(&e.truncate(&exp(5, 1)).unwrap()).unwrap());
        }
    }

    #[test]
    fn axioms_are_verified() {
        let basis: Vec<(String, i64)> = [("u", 0), ("x", 1), ("y", 2), ("z", 3)].map(|(n, d)| (n.to_string(), d)).into();
        let e = |i| Element::<F2>::basis(i, 4, &ten());
        let check = |d: Vec<(usize, Element<F2>)>, p: Vec<((usize, usize), Element<F2>)>| {
            match dga_builder::<F2>(basis.clone(), d.into_iter().collect(), p.into_iter().collect(), ten(), 6).unwrap_err() {
                Error::NotADga { axiom, tuple } => (axiom, tuple),
                other => panic!("{other:?}"),
            }
        };
        assert_eq!(check(vec![(1, e(2)), (2, e(3))], vec![]), ("d^2 = 0", vec!["x".to_string()]));
        // u·u = u, u·x = x: d(u·x) = y, but (du)·x + u·(dx) = u·y = 0.
        assert_eq!(check(vec![(1, e(2))], vec![((0, 0), e(0)), ((0, 1), e(1))]), ("Leibniz", ["u", "x"].map(String::from).to_vec()));
        // (u·u)·x = 0, u·(u·x) = x.
        assert_eq!(check(vec![], vec![((0, 1), e(1))]), ("associativity", ["u", "u", "x"].map(String::from).to_vec()));
    }
}
