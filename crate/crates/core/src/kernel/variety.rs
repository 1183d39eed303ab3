use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::poly::TropicalPolynomial;
use super::polytope::LatticePolytope;
use crate::linalg::{self, dot, from_ints, nullspace, primitive, q, row_basis, sub, Q};

/// One cell of the tropical variety, labeled by the monomials that tie on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyCell {
    pub active: Vec<Vec<i64>>,
    pub dim: usize,
    pub vertices: Vec<Vec<Q>>,
    /// Extreme rays of the recession cone; a lineality direction appears as `±r`.
    pub rays: Vec<Vec<i64>>,
    pub equalities: Vec<(Vec<Q>, Q)>,
    pub inequalities: Vec<(Vec<Q>, Q)>,
    pub span_basis: Vec<Vec<Q>>,
}

impl VarietyCell {
    pub fn bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|(a, b)| dot(a, x) == *b) && self.inequalities.iter().all(|(a, b)| dot(a, x) <= *b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralComplex {
    pub n: usize,
    pub cells: Vec<VarietyCell>,
}

impl PolyhedralComplex {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = &VarietyCell> {
        self.cells.iter().filter(move |c| c.dim == d)
    }
}

/// A face of the lower hull: indices of the tying monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LowerFace {
    pub active: Vec<usize>,
    pub vertex_indices: Vec<usize>,
    pub dim: usize,
}

/// The linearity stratification of a tropical polynomial, computed exactly.
///
/// Shared by the variety and the dual subdivision so both sides of the
/// duality come from one enumeration.
#[derive(Clone, Debug)]
pub struct Stratification {
    pub n: usize,
    /// Affine dimension of the exponent set.
    pub d: usize,
    pub w_basis: Vec<Vec<Q>>,
    pub lineality: Vec<Vec<i64>>,
    /// Top faces (dimension `d`) with the position of their dual vertex in `W`.
    pub top: Vec<(Vec<usize>, Vec<Q>)>,
    pub faces: Vec<LowerFace>,
    exps: Vec<Vec<i64>>,
    coeffs: Vec<Q>,
}

impl Stratification {
    pub fn new(phi: &TropicalPolynomial) -> Stratification {
        let n = phi.dim();
        let exps = phi.exponents();
        let coeffs: Vec<Q> = phi.monomials().iter().map(|m| m.coeff.clone()).collect();
        let m = exps.len();
        let qexps: Vec<Vec<Q>> = exps.iter().map(|e| from_ints(e)).collect();
        let diffs: Vec<Vec<Q>> = qexps[1..].iter().map(|e| sub(e, &qexps[0])).collect();
        let w_basis = row_basis(&diffs);
        let d = w_basis.len();
        let lineality: Vec<Vec<i64>> = nullspace(&w_basis, n).iter().map(|v| primitive(v)).collect();

        let mut top: BTreeMap<Vec<usize>, Vec<Q>> = BTreeMap::new();
        if m == 1 {
            top.insert(vec![0], vec![Q::zero(); n]);
        } else {
            // Projections <v, w_j> of every exponent onto the span.
            let proj: Vec<Vec<Q>> = qexps.iter().map(|e| w_basis.iter().map(|w| dot(e, w)).collect()).collect();
            for subset in linalg::combinations(m, d + 1) {
                let pts: Vec<Vec<Q>> = subset.iter().map(|&i| qexps[i].clone()).collect();
                if linalg::affine_dim(&pts) != d as isize {
                    continue;
                }
                let a: Vec<Vec<Q>> = subset
                    .iter()
                    .map(|&i| {
                        let mut row = proj[i].clone();
                        row.push(q(-1));
                        row
                    })
                    .collect();
                let b: Vec<Q> = subset.iter().map(|&i| -coeffs[i].clone()).collect();
                let Some(sol) = linalg::solve(&a, &b) else { continue };
                let t = sol[d].clone();
                let mut x = vec![Q::zero(); n];
                for (j, w) in w_basis.iter().enumerate() {
                    for k in 0..n {
                        x[k] += &sol[j] * &w[k];
                    }
                }
                let (val, active) = phi.evaluate_indices(&x).expect("dimension checked");
                if val == t && !top.contains_key(&active) {
                    top.insert(active, x);
                }
            }
        }
        let top: Vec<(Vec<usize>, Vec<Q>)> = top.into_iter().collect();

        let mut s = Stratification { n, d, w_basis, lineality, top, faces: vec![], exps, coeffs };
        let mut faces: BTreeMap<Vec<usize>, LowerFace> = BTreeMap::new();
        for (t, _) in s.top.clone() {
            let pts: Vec<Vec<i64>> = t.iter().map(|&i| s.exps[i].clone()).collect();
            let poly = LatticePolytope::from_points(n, &pts);
            for face in poly.faces() {
                let vidx: Vec<usize> = face.iter().map(|e| s.index_of(e)).collect();
                let (verts, rays) = s.dual_generators(&vidx);
                let mut p = vec![Q::zero(); n];
                for v in &verts {
                    for k in 0..n {
                        p[k] += &v[k];
                    }
                }
                let cnt = q(verts.len() as i64);
                for x in p.iter_mut() {
                    *x = &*x / &cnt;
                }
                for r in &rays {
                    for k in 0..n {
                        p[k] += q(r[k]);
                    }
                }
                let (_, active) = phi.evaluate_indices(&p).expect("dimension checked");
                let dim = linalg::affine_dim(&from_ints_all(&face)) as usize;
                faces.entry(active.clone()).or_insert(LowerFace { active, vertex_indices: vidx, dim });
            }
        }
        s.faces = faces.into_values().collect();
        s.faces.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.active.cmp(&b.active)));
        s
    }

    fn index_of(&self, e: &[i64]) -> usize {
        self.exps.iter().position(|x| x == e).expect("exponent of the polynomial")
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exps
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    /// Vertices and rays (including lineality as ± pairs) of the cell dual to a face.
    pub fn dual_generators(&self, face: &[usize]) -> (Vec<Vec<Q>>, Vec<Vec<i64>>) {
        let fset: BTreeSet<usize> = face.iter().copied().collect();
        let verts: Vec<Vec<Q>> = self
            .top
            .iter()
            .filter(|(t, _)| fset.iter().all(|i| t.contains(i)))
            .map(|(_, x)| x.clone())
            .collect();
        let mut rays = self.recession_rays(face);
        for l in &self.lineality {
            rays.push(l.clone());
            rays.push(l.iter().map(|x| -x).collect());
        }
        rays.sort();
        rays.dedup();
        (verts, rays)
    }

    /// Extreme rays of the recession cone inside `W`, by tight-constraint enumeration.
    fn recession_rays(&self, face: &[usize]) -> Vec<Vec<i64>> {
        let d = self.d;
        if d == 0 {
            return vec![];
        }
        let v0 = &self.exps[face[0]];
        let proj = |v: &[i64]| -> Vec<Q> {
            let qv = from_ints(v);
            self.w_basis.iter().map(|w| dot(&qv, w)).collect()
        };
        let diff = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
        let eqs: Vec<Vec<Q>> = face[1..].iter().map(|&i| proj(&diff(&self.exps[i], v0))).collect();
        let fset: BTreeSet<usize> = face.iter().copied().collect();
        let ineqs: Vec<Vec<Q>> = (0..self.exps.len())
            .filter(|i| !fset.contains(i))
            .map(|i| proj(&diff(v0, &self.exps[i])))
            .collect();
        let e = linalg::rank(&eqs);
        if e >= d {
            return vec![];
        }
        let need = d - e - 1;
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        for subset in linalg::combinations(ineqs.len(), need) {
            let mut rows = eqs.clone();
            rows.extend(subset.iter().map(|&i| ineqs[i].clone()));
            let ns = nullspace(&rows, d);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1, -1] {
                let c: Vec<Q> = ns[0].iter().map(|x| x * q(sign)).collect();
                if ineqs.iter().all(|row| !dot(row, &c).is_positive()) {
                    let mut y = vec![Q::zero(); self.n];
                    for (j, w) in self.w_basis.iter().enumerate() {
                        for k in 0..self.n {
                            y[k] += &c[j] * &w[k];
                        }
                    }
                    found.insert(primitive(&y));
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn face_points(&self, f: &LowerFace) -> Vec<Vec<i64>> {
        f.active.iter().map(|&i| self.exps[i].clone()).collect()
    }

    pub fn variety(&self) -> PolyhedralComplex {
        let mut cells = Vec::new();
        for f in &self.faces {
            if f.dim == 0 {
                continue;
            }
            let (vertices, rays) = self.dual_generators(&f.vertex_indices);
            let v0 = f.active[0];
            let e0 = from_ints(&self.exps[v0]);
            let equalities: Vec<(Vec<Q>, Q)> = f.active[1..]
                .iter()
                .map(|&i| (sub(&from_ints(&self.exps[i]), &e0), &self.coeffs[v0] - &self.coeffs[i]))
                .collect();
            let inequalities: Vec<(Vec<Q>, Q)> = (0..self.exps.len())
                .filter(|i| !f.active.contains(i))
                .map(|i| (sub(&e0, &from_ints(&self.exps[i])), &self.coeffs[i] - &self.coeffs[v0]))
                .collect();
            let mut gens: Vec<Vec<Q>> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
            gens.extend(rays.iter().map(|r| from_ints(r)));
            let span_basis = row_basis(&gens);
            let dim = span_basis.len();
            let mut active = self.face_points(f);
            active.sort();
            cells.push(VarietyCell { active, dim, vertices, rays, equalities, inequalities, span_basis });
        }
        cells.sort_by(|a, b| a.dim.cmp(&b.dim).then(a.active.cmp(&b.active)));
        PolyhedralComplex { n: self.n, cells }
    }
}

fn from_ints_all(pts: &[Vec<i64>]) -> Vec<Vec<Q>> {
    pts.iter().map(|p| from_ints(p)).collect()
}

pub fn tropical_variety(phi: &TropicalPolynomial) -> PolyhedralComplex {
    Stratification::new(phi).variety()
}

/// Euclidean distance from `x` to `V(φ)`, via the region containing `x`.
///
/// Inside the region of an active monomial `v` the distance to the boundary is
/// the least distance to the walls `{ℓ_u = ℓ_v}`.
pub fn distance_to_variety(phi: &TropicalPolynomial, x: &[f64]) -> f64 {
    let (best, arg) = phi.eval_f64(x);
    let mono = phi.monomials();
    let mut dist = f64::INFINITY;
    for (i, m) in mono.iter().enumerate() {
        if i == arg {
            continue;
        }
        let val = linalg::to_f64(&m.coeff) + m.exp.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum::<f64>();
        let norm: f64 = m.exp.iter().zip(&mono[arg].exp).map(|(a, b)| ((a - b) as f64).powi(2)).sum::<f64>().sqrt();
        dist = dist.min((val - best).max(0.0) / norm);
    }
    dist
}
