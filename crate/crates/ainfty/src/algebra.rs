//! Filtered curved A∞ algebras with sparse structure maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::novikov::{exp_string, Coeff, Exp, NovikovScalar, Valuation};
use crate::tuples::{all_tuples, weak_compositions};

/// A basis combination with Novikov coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element<C> {
    coeffs: Vec<NovikovScalar<C>>,
    cutoff: Exp,
}

impl<C: Coeff> Element<C> {
    pub fn zero(dim: usize, cutoff: &Exp) -> Self {
        Element { coeffs: vec![NovikovScalar::zero(cutoff); dim], cutoff: cutoff.clone() }
    }

    pub fn basis(i: usize, dim: usize, cutoff: &Exp) -> Self {
        let mut e = Self::zero(dim, cutoff);
        e.coeffs[i] = NovikovScalar::one(cutoff);
        e
    }

    pub fn from_coeffs(coeffs: Vec<NovikovScalar<C>>, cutoff: &Exp) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.cutoff() != cutoff) {
            return Err(Error::CutoffMismatch(exp_string(c.cutoff()), exp_string(cutoff)));
        }
        Ok(Element { coeffs, cutoff: cutoff.clone() })
    }

    pub fn coeffs(&self) -> &[NovikovScalar<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &NovikovScalar<C> {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, c: NovikovScalar<C>) {
        self.coeffs[i] = c;
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn cutoff(&self) -> &Exp {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NovikovScalar::is_zero)
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &NovikovScalar<C>)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn valuation(&self) -> Valuation {
        self.coeffs.iter().map(NovikovScalar::valuation).min().unwrap_or(Valuation::Infinite)
    }

    /// Degrees of the basis vectors in the support.
    pub fn degrees(&self, degrees: &[i64]) -> BTreeSet<i64> {
        self.support().map(|(i, _)| degrees[i]).collect()
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &NovikovScalar<C>) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = &*a + &(b * s);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn scale(&self, s: &NovikovScalar<C>) -> Self {
        Element { coeffs: self.coeffs.iter().map(|c| c * s).collect(), cutoff: self.cutoff.clone() }
    }

    pub fn neg(&self) -> Self {
        Element { coeffs: self.coeffs.iter().map(NovikovScalar::neg).collect(), cutoff: self.cutoff.clone() }
    }

    pub fn truncate(&self, cutoff: &Exp) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.truncate(cutoff)).collect::<Result<Vec<_>>>()?;
        Ok(Element { coeffs, cutoff: cutoff.clone() })
    }

    /// Human-readable form `(c)·name + …` using the given basis names.
    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.support().map(|(i, c)| format!("({c})·{}", names[i])).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Sparse multilinear map: basis tuple ↦ output element. Missing keys are zero.
pub type MapTable<C> = BTreeMap<Vec<usize>, Element<C>>;

/// Evaluates a multilinear map on arbitrary elements.
pub(crate) fn eval<C: Coeff>(table: &MapTable<C>, inputs: &[&Element<C>], zero: &Element<C>) -> Element<C> {
    let mut out = zero.clone();
    'entries: for (key, val) in table {
        let mut c: Option<NovikovScalar<C>> = None;
        for (x, &i) in inputs.iter().zip(key) {
            let a = &x.coeffs[i];
            if a.is_zero() {
                continue 'entries;
            }
            c = Some(match c {
                None => a.clone(),
                Some(prev) => &prev * a,
            });
            if c.as_ref().is_some_and(NovikovScalar::is_zero) {
                continue 'entries;
            }
        }
        match c {
            None => out.add_assign(val),
            Some(c) => out.add_scaled(val, &c),
        }
    }
    out
}

/// `outer(prefix, inner, suffix)` with basis-vector prefix and suffix.
pub(crate) fn insert_eval<C: Coeff>(
    outer: &MapTable<C>,
    prefix: &[usize],
    inner: &Element<C>,
    suffix: &[usize],
    zero: &Element<C>,
) -> Element<C> {
    let mut out = zero.clone();
    let mut key = Vec::with_capacity(prefix.len() + 1 + suffix.len());
    for (b, c) in inner.support() {
        key.clear();
        key.extend_from_slice(prefix);
        key.push(b);
        key.extend_from_slice(suffix);
        if let Some(v) = outer.get(&key) {
            out.add_scaled(v, c);
        }
    }
    out
}

/// `Σ_l Σ_{i₁+…+i_l = k} outer^l(inner^{i₁}(x…) ⊗ … ⊗ inner^{i_l}(…x))`, with
/// `inner` tables keyed by basis tuples of `x`.
pub(crate) fn tree_sum<C: Coeff>(
    outer: &[MapTable<C>],
    inner: &[MapTable<C>],
    x: &[usize],
    compositions: &[Vec<Vec<usize>>],
    zero: &Element<C>,
) -> Element<C> {
    let mut out = zero.clone();
    for (l, table) in outer.iter().enumerate() {
        if table.is_empty() {
            continue;
        }
        'comp: for comp in &compositions[l] {
            let mut args = Vec::with_capacity(l);
            let mut pos = 0;
            for &j in comp {
                match inner.get(j).and_then(|t| t.get(&x[pos..pos + j])) {
                    Some(e) => args.push(e),
                    None => continue 'comp,
                }
                pos += j;
            }
            out.add_assign(&eval(table, &args, zero));
        }
    }
    out
}

/// Weak compositions of `k` into `l` parts for every `l ≤ kmax`.
pub(crate) fn compositions_by_parts(k: usize, kmax: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=kmax).map(|l| weak_compositions(k, l)).collect()
}

/// `Σ_n Σ table^{k+n}(a^{j₀} ⊗ x₁ ⊗ a^{j₁} ⊗ … ⊗ x_k ⊗ a^{j_k})` for every basis tuple `x`.
pub(crate) fn deform_tables<C: Coeff>(
    tables: &[MapTable<C>],
    a: &Element<C>,
    in_dim: usize,
    zero: &Element<C>,
) -> Vec<MapTable<C>> {
    let kmax = tables.len() - 1;
    let cutoff = a.cutoff().clone();
    let units: Vec<Element<C>> = (0..in_dim).map(|i| Element::basis(i, in_dim, &cutoff)).collect();
    (0..=kmax)
        .map(|k| {
            let comps: Vec<Vec<Vec<usize>>> = (0..=kmax - k).map(|n| weak_compositions(n, k + 1)).collect();
            let rows: Vec<(Vec<usize>, Element<C>)> = all_tuples(in_dim, k)
                .into_par_iter()
                .filter_map(|x| {
                    let mut out = zero.clone();
                    for (n, cs) in comps.iter().enumerate() {
                        let table = &tables[k + n];
                        if table.is_empty() {
                            continue;
                        }
                        for comp in cs {
                            let mut args: Vec<&Element<C>> = Vec::with_capacity(k + n);
                            for (slot, &j) in comp.iter().enumerate() {
                                args.extend(std::iter::repeat_n(a, j));
                                if slot < k {
                                    args.push(&units[x[slot]]);
                                }
                            }
                            out.add_assign(&eval(table, &args, zero));
                        }
                    }
                    (!out.is_zero()).then_some((x, out))
                })
                .collect();
            rows.into_iter().collect()
        })
        .collect()
}

/// Worst defect found on one basis tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub residual: String,
    pub valuation: Valuation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArityDefect {
    pub arity: usize,
    pub tuples: usize,
    pub failures: usize,
    /// Lowest valuation of a nonzero defect; `Infinite` when all vanish.
    pub worst: Valuation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub arities: Vec<ArityDefect>,
    /// The tuple with the lowest-valuation defect, first in lexicographic order.
    pub violation: Option<Violation>,
    pub pass: bool,
}

/// Evaluates `defect` on every basis tuple of the given arities.
pub(crate) fn run_report<C, F>(
    arities: impl Iterator<Item = usize>,
    dim: usize,
    in_names: &[String],
    out_names: &[String],
    defect: F,
) -> RelationReport
where
    C: Coeff,
    F: Fn(&[usize]) -> Element<C> + Sync,
{
    let mut report = RelationReport { arities: Vec::new(), violation: None, pass: true };
    for k in arities {
        let tuples = all_tuples(dim, k);
        let defects: Vec<Element<C>> = tuples.par_iter().map(|x| defect(x)).collect();
        let mut row = ArityDefect { arity: k, tuples: tuples.len(), failures: 0, worst: Valuation::Infinite };
        for (x, d) in tuples.iter().zip(&defects) {
            if d.is_zero() {
                continue;
            }
            row.failures += 1;
            let v = d.valuation();
            let better = report.violation.as_ref().is_none_or(|w| v < w.valuation);
            if better {
                report.violation = Some(Violation {
                    arity: k,
                    inputs: x.iter().map(|&i| in_names[i].clone()).collect(),
                    residual: d.display(out_names),
                    valuation: v.clone(),
                });
            }
            row.worst = row.worst.min(v);
        }
        report.pass &= row.failures == 0;
        report.arities.push(row);
    }
    report
}

/// A filtered curved A∞ algebra, truncated at arity `kmax` and at `T^cutoff`.
/// Maps above `kmax` are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredAlgebra<C> {
    names: Vec<String>,
    degrees: Vec<i64>,
    cutoff: Exp,
    kmax: usize,
    maps: Vec<MapTable<C>>,
}

/// Checks keys, dimensions, cutoffs, filtration and the degree rule
/// `deg out = Σ deg in + shift − k` for one table.
pub(crate) fn validate_table<C: Coeff>(
    table: &MapTable<C>,
    k: usize,
    in_degrees: &[i64],
    out_degrees: &[i64],
    shift: i64,
    cutoff: &Exp,
    what: &str,
) -> std::result::Result<(), String> {
    for (key, val) in table {
        if key.len() != k {
            return Err(format!("{what}{k} has a key of length {}", key.len()));
        }
        if key.iter().any(|&i| i >= in_degrees.len()) {
            return Err(format!("{what}{k} key {key:?} is out of range"));
        }
        if val.dim() != out_degrees.len() {
            return Err(format!("{what}{k}{key:?} has {} coordinates, expected {}", val.dim(), out_degrees.len()));
        }
        if val.cutoff() != cutoff || val.coeffs().iter().any(|c| c.cutoff() != cutoff) {
            return Err(format!("{what}{k}{key:?} has a different cutoff"));
        }
        if !val.valuation().is_nonnegative() {
            return Err(format!("{what}{k}{key:?} has negative valuation"));
        }
        let expected = key.iter().map(|&i| in_degrees[i]).sum::<i64>() + shift - k as i64;
        if let Some(&d) = val.degrees(out_degrees).iter().find(|&&d| d != expected) {
            return Err(format!("{what}{k}{key:?} has an output of degree {d}, expected {expected}"));
        }
    }
    Ok(())
}

impl<C: Coeff> FilteredAlgebra<C> {
    /// `maps[k]` holds `m^k`; missing arities up to `kmax` are zero.
    pub fn new(basis: Vec<(String, i64)>, cutoff: Exp, kmax: usize, mut maps: Vec<MapTable<C>>) -> Result<Self> {
        let names: Vec<String> = basis.iter().map(|b| b.0.clone()).collect();
        let degrees: Vec<i64> = basis.iter().map(|b| b.1).collect();
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            return Err(Error::InvalidAlgebra("duplicate basis name".into()));
        }
        if maps.len() > kmax + 1 && maps[kmax + 1..].iter().any(|t| !t.is_empty()) {
            return Err(Error::InvalidAlgebra(format!("structure maps above arity {kmax}")));
        }
        maps.resize_with(kmax + 1, BTreeMap::new);
        for table in &mut maps {
            table.retain(|_, v| !v.is_zero());
        }
        for (k, table) in maps.iter().enumerate() {
            validate_table(table, k, &degrees, &degrees, 2, &cutoff, "m").map_err(Error::InvalidAlgebra)?;
        }
        if let Some(m0) = maps[0].get(&Vec::new()) {
            if !m0.valuation().is_positive() {
                return Err(Error::InvalidAlgebra("curvature m0 must have positive valuation".into()));
            }
        }
        Ok(FilteredAlgebra { names, degrees, cutoff, kmax, maps })
    }

    /// The zero algebra: empty basis, all maps zero.
    pub fn zero_algebra(cutoff: Exp, kmax: usize) -> Self {
        FilteredAlgebra { names: Vec::new(), degrees: Vec::new(), cutoff, kmax, maps: vec![BTreeMap::new(); kmax + 1] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn basis(&self) -> Vec<(String, i64)> {
        self.names.iter().cloned().zip(self.degrees.iter().copied()).collect()
    }

    pub fn cutoff(&self) -> &Exp {
        &self.cutoff
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn maps(&self) -> &[MapTable<C>] {
        &self.maps
    }

    pub fn map(&self, k: usize) -> &MapTable<C> {
        &self.maps[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Element<C> {
        Element::zero(self.dim(), &self.cutoff)
    }

    pub fn unit(&self, i: usize) -> Element<C> {
        Element::basis(i, self.dim(), &self.cutoff)
    }

    pub fn scalar(&self, terms: Vec<(Exp, C)>) -> NovikovScalar<C> {
        NovikovScalar::from_terms(terms, &self.cutoff)
    }

    /// `Σ c_i e_i` from named coordinates.
    pub fn element(&self, coords: &[(&str, NovikovScalar<C>)]) -> Result<Element<C>> {
        let mut e = self.zero();
        for (name, c) in coords {
            let i = self.index_of(name).ok_or_else(|| Error::InvalidParameter(format!("unknown basis element {name}")))?;
            let sum = e.coeffs[i].checked_add(c)?;
            e.coeffs[i] = sum;
        }
        Ok(e)
    }

    pub fn curvature(&self) -> Element<C> {
        self.maps[0].get(&Vec::new()).cloned().unwrap_or_else(|| self.zero())
    }

    pub fn is_curved(&self) -> bool {
        !self.maps[0].is_empty()
    }

    pub(crate) fn check_element(&self, a: &Element<C>) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: a.dim() });
        }
        if a.cutoff() != &self.cutoff {
            return Err(Error::CutoffMismatch(exp_string(a.cutoff()), exp_string(&self.cutoff)));
        }
        Ok(())
    }

    /// `m^k(x₁, …, x_k)`.
    pub fn m(&self, k: usize, inputs: &[&Element<C>]) -> Result<Element<C>> {
        if inputs.len() != k {
            return Err(Error::InvalidParameter(format!("m{k} takes {k} inputs")));
        }
        for x in inputs {
            self.check_element(x)?;
        }
        if k > self.kmax {
            return Ok(self.zero());
        }
        Ok(eval(&self.maps[k], inputs, &self.zero()))
    }

    /// Parity of `♣ = |a_{k−j₁}| + … + |a_k| − i`, indices below 1 ignored.
    pub(crate) fn clubsuit_odd(&self, x: &[usize], j1: usize, i: usize) -> bool {
        let k = x.len();
        let from = k.saturating_sub(j1).max(1);
        let s: i64 = (from..=k).map(|p| self.degrees[x[p - 1]]).sum::<i64>() - i as i64;
        s.rem_euclid(2) == 1
    }

    /// `Σ (−1)^♣ m^{j₁+j₂+1}(id^{j₁} ⊗ m^i ⊗ id^{j₂})` on one basis tuple.
    pub fn relation_defect(&self, x: &[usize]) -> Element<C> {
        let k = x.len();
        let zero = self.zero();
        let mut out = zero.clone();
        for j1 in 0..=k {
            for i in 0..=k - j1 {
                let j2 = k - j1 - i;
                let outer_arity = j1 + j2 + 1;
                if outer_arity > self.kmax || i > self.kmax || self.maps[outer_arity].is_empty() {
                    continue;
                }
                let Some(inner) = self.maps[i].get(&x[j1..j1 + i]) else { continue };
                let term = insert_eval(&self.maps[outer_arity], &x[..j1], inner, &x[j1 + i..], &zero);
                if self.clubsuit_odd(x, j1, i) {
                    out.add_assign(&term.neg());
                } else {
                    out.add_assign(&term);
                }
            }
        }
        out
    }

    /// Exhaustive check of the A∞ relations on all basis tuples of arity ≤ kmax.
    pub fn check_relations(&self) -> RelationReport {
        run_report(0..=self.kmax, self.dim(), &self.names, &self.names, |x| self.relation_defect(x))
    }

    /// `m^0_a = Σ_k m^k(a^{⊗k})`.
    pub fn mc_residual(&self, a: &Element<C>) -> Result<Element<C>> {
        self.check_element(a)?;
        let zero = self.zero();
        let mut out = zero.clone();
        for (k, table) in self.maps.iter().enumerate() {
            if !table.is_empty() {
                out.add_assign(&eval(table, &vec![a; k], &zero));
            }
        }
        Ok(out)
    }

    pub fn is_mc(&self, a: &Element<C>) -> Result<bool> {
        Ok(self.mc_residual(a)?.is_zero())
    }

    /// Checks the preconditions on a deforming element: positive valuation and
    /// homogeneous degree 1.
    pub(crate) fn check_deforming(&self, a: &Element<C>) -> Result<()> {
        self.check_element(a)?;
        if !a.valuation().is_positive() {
            return Err(Error::ZeroValuation);
        }
        if a.degrees(&self.degrees).iter().any(|&d| d != 1) {
            return Err(Error::NotDegreeOne);
        }
        Ok(())
    }

    /// The `a`-deformed algebra `m^k_a = Σ_n m^{k+n}((id ⊕ a)^{…})`.
    pub fn deform(&self, a: &Element<C>) -> Result<Self> {
        self.check_deforming(a)?;
        if a.is_zero() {
            return Ok(self.clone());
        }
        let maps = deform_tables(&self.maps, a, self.dim(), &self.zero());
        Self::new(self.basis(), self.cutoff.clone(), self.kmax, maps)
    }

    /// Quotient by the span of a basis subset, after checking that the span
    /// absorbs every insertion `m^k(…, I, …)` for `k ≥ 1`.
    pub fn quotient_ideal(&self, ideal: &[usize]) -> Result<Self> {
        if let Some(&i) = ideal.iter().find(|&&i| i >= self.dim()) {
            return Err(Error::InvalidParameter(format!("basis index {i} out of range")));
        }
        let in_ideal: BTreeSet<usize> = ideal.iter().copied().collect();
        for (k, table) in self.maps.iter().enumerate().skip(1) {
            for (key, val) in table {
                if key.iter().any(|i| in_ideal.contains(i)) && val.support().any(|(b, _)| !in_ideal.contains(&b)) {
                    return Err(Error::NotAnIdeal { arity: k, tuple: key.iter().map(|&i| self.names[i].clone()).collect() });
                }
            }
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|i| !in_ideal.contains(i)).collect();
        let new_index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let project = |e: &Element<C>| Element { coeffs: keep.iter().map(|&i| e.coeffs[i].clone()).collect(), cutoff: self.cutoff.clone() };
        let maps = self
            .maps
            .iter()
            .map(|table| {
                table
                    .iter()
                    .filter(|(key, _)| key.iter().all(|i| new_index.contains_key(i)))
                    .map(|(key, val)| (key.iter().map(|i| new_index[i]).collect(), project(val)))
                    .collect()
            })
            .collect();
        let basis = keep.iter().map(|&i| (self.names[i].clone(), self.degrees[i])).collect();
        Self::new(basis, self.cutoff.clone(), self.kmax, maps)
    }

    /// `A_{=0} = A / A_{>0}`: every coefficient keeps only its `T^0` part.
    /// The curvature has positive valuation, so the result is uncurved.
    pub fn reduce_zero_energy(&self) -> Self {
        let maps = self
            .maps
            .iter()
            .map(|table| {
                table
                    .iter()
                    .map(|(key, val)| {
                        let coeffs = val.coeffs.iter().map(NovikovScalar::constant_term).collect();
                        (key.clone(), Element { coeffs, cutoff: self.cutoff.clone() })
                    })
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Self::new(self.basis(), self.cutoff.clone(), self.kmax, maps).expect("reduction keeps the invariants")
    }

    /// Image under the truncation `Λ → Λ / T^{cutoff}`.
    pub fn truncate(&self, cutoff: &Exp) -> Result<Self> {
        let maps = self
            .maps
            .iter()
            .map(|t| t.iter().map(|(k, v)| Ok((k.clone(), v.truncate(cutoff)?))).collect::<Result<MapTable<C>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.basis(), cutoff.clone(), self.kmax, maps)
    }
}

impl<C: Coeff> fmt::Display for FilteredAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.names.iter().zip(&self.degrees).map(|(n, d)| format!("{n}({d})")).collect();
        write!(f, "A[{}; cutoff T^{}; kmax {}]", basis.join(", "), exp_string(&self.cutoff), self.kmax)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{exp, F2};

    type N = NovikovScalar<F2>;

    fn ten() -> Exp {
        exp(10, 1)
    }

    fn t(n: i64, d: i64) -> N {
        N::t(exp(n, d), &ten())
    }

    /// Basis {x(1), y(2)}, dx = T·y, x·x = T·y.
    fn xy() -> FilteredAlgebra<F2> {
        let basis = vec![("x".to_string(), 1), ("y".to_string(), 2)];
        let mut ty = Element::zero(2, &ten());
        ty.set(1, t(1, 1));
        let m1: MapTable<F2> = [(vec![0], ty.clone())].into_iter().collect();
        let m2: MapTable<F2> = [(vec![0, 0], ty)].into_iter().collect();
        FilteredAlgebra::new(basis, ten(), 6, vec![BTreeMap::new(), m1, m2]).unwrap()
    }

    #[test]
    fn zero_algebra_passes() {
        let z = FilteredAlgebra::<F2>::zero_algebra(ten(), 6);
        let rep = z.check_relations();
        assert!(rep.pass);
        assert_eq!(rep.arities.len(), 7);
        assert_eq!(rep.arities[0].tuples, 1);
    }

    #[test]
    fn xy_relations_and_mc() {
        let a = xy();
        assert!(a.check_relations().pass);
        let x = a.unit(0);
        assert!(a.mc_residual(&x).unwrap().is_zero());
        // y has degree 2, so its residual is dy + y·y = 0 trivially.
        let y = a.unit(1).scale(&t(1, 2));
        assert!(a.is_mc(&y).unwrap());
        // a = T·x: residual T·Ty + T²·Ty.
        let tx = a.unit(0).scale(&t(1, 1));
        let r = a.mc_residual(&tx).unwrap();
        assert_eq!(r.coeff(1), &N::parse("T^2 + T^3", &ten()).unwrap());
    }

    #[test]
    fn degree_rule_is_enforced() {
        let basis = vec![("x".to_string(), 1), ("y".to_string(), 2)];
        let m2: MapTable<F2> = [(vec![0, 1], Element::basis(1, 2, &ten()))].into_iter().collect();
        let e = FilteredAlgebra::new(basis, ten(), 6, vec![BTreeMap::new(), BTreeMap::new(), m2]).unwrap_err();
        assert_eq!(e.code(), "E_INVALID_ALGEBRA");
    }

    #[test]
    fn curvature_must_have_positive_valuation() {
        let basis = vec![("y".to_string(), 2)];
        let m0: MapTable<F2> = [(vec![], Element::basis(0, 1, &ten()))].into_iter().collect();
        assert!(FilteredAlgebra::new(basis, ten(), 6, vec![m0]).is_err());
    }

    #[test]
    fn deform_by_zero_is_identity() {
        let a = xy();
        assert_eq!(a.deform(&a.zero()).unwrap(), a);
        assert_eq!(a.deform(&a.unit(0)).unwrap_err().code(), "E_ZERO_VALUATION");
        assert_eq!(a.deform(&a.unit(1).scale(&t(1, 1))).unwrap_err().code(), "E_NOT_DEGREE_ONE");
    }

    #[test]
    fn quotients() {
        let a = xy();
        let whole = a.quotient_ideal(&[0, 1]).unwrap();
        assert_eq!(whole.dim(), 0);
        assert!(whole.check_relations().pass);
        // span{y} is an ideal: dy = 0, products with y vanish.
        let q = a.quotient_ideal(&[1]).unwrap();
        assert_eq!(q.names(), &["x".to_string()]);
        assert!(q.maps().iter().all(BTreeMap::is_empty));
        // span{x} is not: dx = T·y.
        match a.quotient_ideal(&[0]).unwrap_err() {
            Error::NotAnIdeal { arity, tuple } => {
                assert_eq!(arity, 1);
                assert_eq!(tuple, vec!["x".to_string()]);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn zero_energy_reduction_drops_positive_terms() {
        let a = xy();
        let r = a.reduce_zero_energy();
        assert!(r.maps().iter().all(BTreeMap::is_empty));
        assert!(!r.is_curved());
    }
}
