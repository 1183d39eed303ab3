//! Filtered A∞ homomorphisms.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{
    compositions_by_parts, deform_tables, eval, insert_eval, run_report, tree_sum, validate_table, Element, FilteredAlgebra,
    MapTable, RelationReport,
};
use crate::error::{Error, Result};
use crate::novikov::Coeff;
use crate::tuples::all_tuples;

/// Components `f^k: A^{⊗k} → B` for `0 ≤ k ≤ kmax`; higher components are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AInftyHom<C> {
    source: FilteredAlgebra<C>,
    target: FilteredAlgebra<C>,
    maps: Vec<MapTable<C>>,
}

impl<C: Coeff> AInftyHom<C> {
    pub fn new(source: FilteredAlgebra<C>, target: FilteredAlgebra<C>, mut maps: Vec<MapTable<C>>) -> Result<Self> {
        if source.cutoff() != target.cutoff() || source.kmax() != target.kmax() {
            return Err(Error::InvalidHom("source and target differ in cutoff or kmax".into()));
        }
        let kmax = source.kmax();
        if maps.len() > kmax + 1 && maps[kmax + 1..].iter().any(|t| !t.is_empty()) {
            return Err(Error::InvalidHom(format!("components above arity {kmax}")));
        }
        maps.resize_with(kmax + 1, BTreeMap::new);
        for table in &mut maps {
            table.retain(|_, v| !v.is_zero());
        }
        for (k, table) in maps.iter().enumerate() {
            validate_table(table, k, source.degrees(), target.degrees(), 1, source.cutoff(), "f").map_err(Error::InvalidHom)?;
        }
        if let Some(f0) = maps[0].get(&Vec::new()) {
            if !f0.valuation().is_positive() {
                return Err(Error::InvalidHom("f0 must have positive valuation".into()));
            }
        }
        Ok(AInftyHom { source, target, maps })
    }

    pub fn identity(a: &FilteredAlgebra<C>) -> Self {
        let f1: MapTable<C> = (0..a.dim()).map(|i| (vec![i], a.unit(i))).collect();
        Self::new(a.clone(), a.clone(), vec![BTreeMap::new(), f1]).expect("identity is valid")
    }

    /// The homomorphism `0_b` from the zero algebra with `f^0 = b`. It
    /// satisfies the homomorphism relation exactly when `b` is Maurer-Cartan.
    pub fn zero_source(target: &FilteredAlgebra<C>, b: &Element<C>) -> Result<Self> {
        target.check_deforming(b)?;
        let source = FilteredAlgebra::zero_algebra(target.cutoff().clone(), target.kmax());
        let f0: MapTable<C> = [(Vec::new(), b.clone())].into_iter().collect();
        Self::new(source, target.clone(), vec![f0])
    }

    /// A strict map with only `f^1`, given on basis vectors.
    pub fn linear(source: &FilteredAlgebra<C>, target: &FilteredAlgebra<C>, images: Vec<Element<C>>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::Dimension { expected: source.dim(), got: images.len() });
        }
        let f1: MapTable<C> = images.into_iter().enumerate().map(|(i, e)| (vec![i], e)).collect();
        Self::new(source.clone(), target.clone(), vec![BTreeMap::new(), f1])
    }

    pub fn source(&self) -> &FilteredAlgebra<C> {
        &self.source
    }

    pub fn target(&self) -> &FilteredAlgebra<C> {
        &self.target
    }

    pub fn maps(&self) -> &[MapTable<C>] {
        &self.maps
    }

    pub fn kmax(&self) -> usize {
        self.source.kmax()
    }

    /// `f^k(x₁, …, x_k)`.
    pub fn f(&self, k: usize, inputs: &[&Element<C>]) -> Result<Element<C>> {
        if inputs.len() != k {
            return Err(Error::InvalidParameter(format!("f{k} takes {k} inputs")));
        }
        for x in inputs {
            self.source.check_element(x)?;
        }
        if k > self.kmax() {
            return Ok(self.target.zero());
        }
        Ok(eval(&self.maps[k], inputs, &self.target.zero()))
    }

    /// `Σ f(id ⊗ m_A ⊗ id) − Σ m_B(f ⊗ … ⊗ f)` on one basis tuple.
    pub fn relation_defect(&self, x: &[usize], compositions: &[Vec<Vec<usize>>]) -> Element<C> {
        let k = x.len();
        let kmax = self.kmax();
        let zero = self.target.zero();
        let mut out = zero.clone();
        for j1 in 0..=k {
            for i in 0..=(k - j1).min(kmax) {
                let j2 = k - j1 - i;
                let arity = j1 + j2 + 1;
                if arity > kmax || self.maps[arity].is_empty() {
                    continue;
                }
                let Some(inner) = self.source.map(i).get(&x[j1..j1 + i]) else { continue };
                out.add_assign(&insert_eval(&self.maps[arity], &x[..j1], inner, &x[j1 + i..], &zero));
            }
        }
        let rhs = tree_sum(self.target.maps(), &self.maps, x, compositions, &zero);
        out.add(&rhs.neg())
    }

    /// Exhaustive check of the homomorphism relations. With a curved source
    /// the top arity is skipped: its left side needs `f^{kmax+1}`.
    pub fn check_hom(&self) -> RelationReport {
        let kmax = self.kmax();
        let top = if self.source.is_curved() { kmax - 1 } else { kmax };
        let comps: Vec<Vec<Vec<Vec<usize>>>> = (0..=top).map(|k| compositions_by_parts(k, kmax)).collect();
        run_report(0..=top, self.source.dim(), self.source.names(), self.target.names(), |x| {
            self.relation_defect(x, &comps[x.len()])
        })
    }

    /// `(g ∘ f)^k = Σ g^l(f^{j₁} ⊗ … ⊗ f^{j_l})`, with `self = g`.
    pub fn compose(&self, f: &AInftyHom<C>) -> Result<AInftyHom<C>> {
        if f.target != self.source {
            return Err(Error::AlgebraMismatch);
        }
        let kmax = self.kmax();
        let zero = self.target.zero();
        let maps: Vec<MapTable<C>> = (0..=kmax)
            .map(|k| {
                let comps = compositions_by_parts(k, kmax);
                all_tuples(f.source.dim(), k)
                    .into_par_iter()
                    .filter_map(|x| {
                        let e = tree_sum(&self.maps, &f.maps, &x, &comps, &zero);
                        (!e.is_zero()).then_some((x, e))
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .collect()
            })
            .collect();
        AInftyHom::new(f.source.clone(), self.target.clone(), maps)
    }

    /// `f_*(b) = Σ_k f^k(b^{⊗k})`.
    pub fn pushforward(&self, b: &Element<C>) -> Result<Element<C>> {
        self.source.check_element(b)?;
        let zero = self.target.zero();
        let mut out = zero.clone();
        for (k, table) in self.maps.iter().enumerate() {
            if !table.is_empty() {
                out.add_assign(&eval(table, &vec![b; k], &zero));
            }
        }
        Ok(out)
    }

    /// `f_a: (A, m_a) → B` with `f_a^k = Σ_n f^{k+n}((id ⊕ a)^{…})`.
    pub fn deform(&self, a: &Element<C>) -> Result<AInftyHom<C>> {
        let source = self.source.deform(a)?;
        if a.is_zero() {
            return Ok(self.clone());
        }
        let maps = deform_tables(&self.maps, a, self.source.dim(), &self.target.zero());
        AInftyHom::new(source, self.target.clone(), maps)
    }

    /// Image under the truncation to a lower cutoff.
    pub fn truncate(&self, cutoff: &crate::novikov::Exp) -> Result<AInftyHom<C>> {
        let maps = self
            .maps
            .iter()
            .map(|t| t.iter().map(|(k, v)| Ok((k.clone(), v.truncate(cutoff)?))).collect::<Result<MapTable<C>>>())
            .collect::<Result<Vec<_>>>()?;
        AInftyHom::new(self.source.truncate(cutoff)?, self.target.truncate(cutoff)?, maps)
    }
}
