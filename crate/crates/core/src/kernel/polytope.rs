use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{self, dot, from_ints, nullspace, q, row_basis, sub, Q};

/// Halfspace `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Q>,
    pub offset: Q,
}

impl Facet {
    pub fn slack(&self, x: &[Q]) -> Q {
        &self.offset - dot(&self.normal, x)
    }
}

/// Convex hull of finitely many lattice points.
///
/// Lower-dimensional polytopes carry affine equalities; facets are then
/// relative facets inside the affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    n: usize,
    dim: isize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    equalities: Vec<Facet>,
}

impl LatticePolytope {
    pub fn from_points(n: usize, points: &[Vec<i64>]) -> LatticePolytope {
        let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.is_empty() {
            return LatticePolytope { n, dim: -1, vertices: vec![], facets: vec![], equalities: vec![] };
        }
        let qpts: Vec<Vec<Q>> = pts.iter().map(|p| from_ints(p)).collect();
        let diffs: Vec<Vec<Q>> = qpts[1..].iter().map(|p| sub(p, &qpts[0])).collect();
        let dirs = row_basis(&diffs);
        let d = dirs.len();
        let equalities: Vec<Facet> = nullspace(&dirs, n)
            .into_iter()
            .map(|u| {
                let offset = dot(&u, &qpts[0]);
                Facet { normal: u, offset }
            })
            .collect();
        let mut facets: Vec<Facet> = Vec::new();
        if d >= 1 {
            let eq_normals: Vec<Vec<Q>> = equalities.iter().map(|e| e.normal.clone()).collect();
            for subset in linalg::combinations(pts.len(), d) {
                let base = &qpts[subset[0]];
                let mut rows: Vec<Vec<Q>> = subset[1..].iter().map(|&i| sub(&qpts[i], base)).collect();
                if linalg::rank(&rows) != d - 1 {
                    continue;
                }
                rows.extend(eq_normals.iter().cloned());
                let ns = nullspace(&rows, n);
                if ns.len() != 1 {
                    continue;
                }
                let mut normal = ns[0].clone();
                let offset = dot(&normal, base);
                let mut pos = false;
                let mut neg = false;
                for p in &qpts {
                    let s = dot(&normal, p) - &offset;
                    if s.is_positive() {
                        pos = true;
                    } else if s.is_negative() {
                        neg = true;
                    }
                }
                if pos && neg {
                    continue;
                }
                if pos {
                    normal = normal.iter().map(|x| -x).collect();
                }
                let normal = normalize(&normal);
                let offset = dot(&normal, base);
                let f = Facet { normal, offset };
                if !facets.contains(&f) {
                    facets.push(f);
                }
            }
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
        let vertices = if d == 0 {
            vec![pts[0].clone()]
        } else {
            pts.iter()
                .zip(&qpts)
                .filter(|(_, p)| {
                    let tight: Vec<Vec<Q>> = facets
                        .iter()
                        .filter(|f| f.slack(p).is_zero())
                        .map(|f| f.normal.clone())
                        .chain(equalities.iter().map(|e| e.normal.clone()))
                        .collect();
                    linalg::rank(&tight) == n
                })
                .map(|(p, _)| p.clone())
                .collect()
        };
        LatticePolytope { n, dim: d as isize, vertices, facets, equalities }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Facet] {
        &self.equalities
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.dim >= 0
            && self.equalities.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_relative_interior(&self, x: &[Q]) -> bool {
        self.dim >= 0
            && self.equalities.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    /// Floating point membership with a tolerance band on every constraint.
    pub fn contains_f64(&self, x: &[f64], tol: f64) -> bool {
        let slack = |f: &Facet| {
            let nf: Vec<f64> = f.normal.iter().map(linalg::to_f64).collect();
            let norm = nf.iter().map(|a| a * a).sum::<f64>().sqrt();
            (linalg::to_f64(&f.offset) - nf.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()) / norm
        };
        self.dim >= 0
            && self.equalities.iter().all(|e| slack(e).abs() <= tol)
            && self.facets.iter().all(|f| slack(f) >= -tol)
    }

    /// All lattice points and the relative-interior ones, by bounding-box scan.
    pub fn lattice_points(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        if self.dim < 0 {
            return (vec![], vec![]);
        }
        if self.dim == 0 {
            return (vec![self.vertices[0].clone()], vec![]);
        }
        let lo: Vec<i64> = (0..self.n).map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..self.n).map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap()).collect();
        let mut all = Vec::new();
        let mut interior = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x = from_ints(&cur);
            if self.contains(&x) {
                if self.contains_relative_interior(&x) {
                    interior.push(cur.clone());
                }
                all.push(cur.clone());
            }
            let mut k = 0;
            loop {
                if k == self.n {
                    return (all, interior);
                }
                cur[k] += 1;
                if cur[k] <= hi[k] {
                    break;
                }
                cur[k] = lo[k];
                k += 1;
            }
        }
    }

    /// Faces of every dimension, each given by its vertex set (sorted).
    pub fn faces(&self) -> Vec<Vec<Vec<i64>>> {
        let mut out: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        if self.dim < 0 {
            return vec![];
        }
        let mut whole = self.vertices.clone();
        whole.sort();
        out.insert(whole);
        let qv: Vec<Vec<Q>> = self.vertices.iter().map(|v| from_ints(v)).collect();
        let mut frontier: Vec<Vec<Vec<i64>>> = self
            .facets
            .iter()
            .map(|f| {
                let mut s: Vec<Vec<i64>> = self
                    .vertices
                    .iter()
                    .zip(&qv)
                    .filter(|(_, p)| f.slack(p).is_zero())
                    .map(|(v, _)| v.clone())
                    .collect();
                s.sort();
                s
            })
            .collect();
        let facets = frontier.clone();
        while let Some(face) = frontier.pop() {
            if face.is_empty() || !out.insert(face.clone()) {
                continue;
            }
            for f in &facets {
                let inter: Vec<Vec<i64>> = face.iter().filter(|v| f.contains(v)).cloned().collect();
                if inter.len() < face.len() && !inter.is_empty() && !out.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Normalized lattice volume `d! vol` inside the saturated lattice of the affine hull.
    pub fn normalized_volume(&self) -> BigInt {
        if self.dim <= 0 {
            return BigInt::from(1);
        }
        self.triangulate().iter().map(|s| simplex_volume(s)).sum()
    }

    /// Pulling triangulation from the lexicographically first vertex.
    pub fn triangulate(&self) -> Vec<Vec<Vec<i64>>> {
        if self.dim <= 0 {
            return vec![self.vertices.clone()];
        }
        let apex = self.vertices.iter().min().unwrap().clone();
        let qa = from_ints(&apex);
        if self.vertices.len() as isize == self.dim + 1 {
            return vec![self.vertices.clone()];
        }
        let mut out = Vec::new();
        for f in &self.facets {
            if f.slack(&qa).is_zero() {
                continue;
            }
            let pts: Vec<Vec<i64>> =
                self.vertices.iter().filter(|v| f.slack(&from_ints(v)).is_zero()).cloned().collect();
            let face = LatticePolytope::from_points(self.n, &pts);
            for mut s in face.triangulate() {
                s.push(apex.clone());
                out.push(s);
            }
        }
        out
    }
}

/// gcd of maximal minors of the edge matrix of a simplex.
pub fn simplex_volume(vertices: &[Vec<i64>]) -> BigInt {
    if vertices.len() <= 1 {
        return BigInt::from(1);
    }
    let edges: Vec<Vec<i64>> =
        vertices[1..].iter().map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect()).collect();
    linalg::maximal_minor_gcd(&edges)
}

fn normalize(v: &[Q]) -> Vec<Q> {
    let p = linalg::primitive(v);
    p.iter().map(|&a| q(a)).collect()
}
