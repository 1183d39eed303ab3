use std::collections::VecDeque;

use super::SmoothedField;
use crate::error::{Error, Result};
use crate::kernel::{newton_polytope, tropical_variety};
use crate::linalg::{self, to_f64};
use crate::subdivision::dual_subdivision;

/// Distance in gradient space below which `dφ̃(x)` counts as a lattice point.
pub const LATTICE_TOL: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionComponent {
    pub lattice_point: Vec<i64>,
    /// Contains a grid ball of radius 2h.
    pub open: bool,
    /// Number of grid points; 0 for components located off-grid.
    pub size: usize,
    pub representative: Vec<f64>,
}

fn nearest_lattice(g: &[f64]) -> (Vec<i64>, f64) {
    let r: Vec<i64> = g.iter().map(|x| x.round() as i64).collect();
    let d = g.iter().zip(&r).map(|(x, k)| (x - *k as f64).powi(2)).sum::<f64>().sqrt();
    (r, d)
}

/// Offsets (in grid steps) of the closed Euclidean ball of radius `rad` steps.
fn ball_offsets(n: usize, rad: i64) -> Vec<Vec<i64>> {
    let side = (2 * rad + 1) as usize;
    (0..side.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let o = (k % side) as i64 - rad;
                    k /= side;
                    o
                })
                .collect::<Vec<i64>>()
        })
        .filter(|o| o.iter().map(|x| x * x).sum::<i64>() <= rad * rad)
        .collect()
}

fn shifted(idx: &[usize], off: &[i64], dims: &[usize], strides: &[usize]) -> Option<usize> {
    let mut flat = 0;
    for k in 0..idx.len() {
        let v = idx[k] as i64 + off[k];
        if v < 0 || v >= dims[k] as i64 {
            return None;
        }
        flat += v as usize * strides[k];
    }
    Some(flat)
}

/// Connected components of `{x : dist(dφ̃(x), Z^n) < LATTICE_TOL}` on the grid,
/// plus off-grid components at lattice points of `Δ_φ` found by minimizing
/// the convex function `⟨w, x⟩ − φ̃(x)`.
pub fn intersection_components(field: &SmoothedField) -> Result<Vec<IntersectionComponent>> {
    let grid = field.grid();
    let n = field.dim();
    let len = grid.len();
    let dims = grid.dims();
    let strides = grid.strides();
    let h = grid.h;
    let labels: Vec<Option<Vec<i64>>> = (0..len)
        .map(|i| {
            let (r, d) = nearest_lattice(field.grid_gradient(i));
            (d < LATTICE_TOL).then_some(r)
        })
        .collect();
    let mut comp = vec![usize::MAX; len];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut nb = Vec::new();
    for start in 0..len {
        let Some(label) = &labels[start] else { continue };
        if comp[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut list = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            grid.axis_neighbors(i, &mut nb);
            for &j in &nb {
                match &labels[j] {
                    Some(l) if l == label => {
                        if comp[j] == usize::MAX {
                            comp[j] = id;
                            list.push(j);
                            queue.push_back(j);
                        }
                    }
                    Some(_) => return Err(Error::ComponentsMerge { h, suggested: h / 2.0 }),
                    None => {}
                }
            }
        }
        members.push(list);
    }

    let sep = ball_offsets(n, 3);
    for (id, list) in members.iter().enumerate() {
        for &i in list {
            let idx = grid.multi_index(i);
            grid.axis_neighbors(i, &mut nb);
            let boundary = nb.len() < 2 * n || nb.iter().any(|&j| comp[j] != id);
            if !boundary {
                continue;
            }
            for off in &sep {
                if let Some(j) = shifted(&idx, off, &dims, &strides) {
                    if comp[j] != usize::MAX && comp[j] != id && labels[j] != labels[i] {
                        return Err(Error::ComponentsMerge { h, suggested: h / 2.0 });
                    }
                }
            }
        }
    }

    let ball = ball_offsets(n, 2);
    let mut out: Vec<IntersectionComponent> = members
        .iter()
        .enumerate()
        .map(|(id, list)| {
            let open_at = list.iter().find(|&&i| {
                let idx = grid.multi_index(i);
                ball.iter().all(|off| shifted(&idx, off, &dims, &strides).is_some_and(|j| comp[j] == id))
            });
            let rep = *open_at.unwrap_or(&list[0]);
            IntersectionComponent {
                lattice_point: labels[list[0]].clone().expect("labelled"),
                open: open_at.is_some(),
                size: list.len(),
                representative: grid.point(rep),
            }
        })
        .collect();

    let (delta, _) = newton_polytope(field.polynomial());
    let (lattice, _) = delta.lattice_points();
    for w in lattice {
        if out.iter().any(|c| c.lattice_point == w) {
            continue;
        }
        let start = newton_start(field, &w);
        if let Some(x) = locate(field, &w, start) {
            if grid.contains(&x) {
                out.push(IntersectionComponent { lattice_point: w, open: false, size: 0, representative: x });
            }
        }
    }
    out.sort_by(|a, b| a.lattice_point.cmp(&b.lattice_point));
    Ok(out)
}

/// Barycentre of the `V(φ)` cell dual to the smallest subdivision cell containing `w`.
fn newton_start(field: &SmoothedField, w: &[i64]) -> Vec<f64> {
    let phi = field.polynomial();
    let sub = dual_subdivision(phi);
    let wq = linalg::from_ints(w);
    let cell = sub
        .cells
        .iter()
        .filter(|c| {
            c.dim >= 1 && crate::kernel::LatticePolytope::from_points(phi.dim(), &c.vertices).contains(&wq)
        })
        .min_by_key(|c| c.dim);
    let grid = field.grid();
    let centre: Vec<f64> = grid.lo.iter().zip(grid.upper()).map(|(a, b)| (a + b) / 2.0).collect();
    let Some(cell) = cell else { return centre };
    let complex = tropical_variety(phi);
    match complex.cells.iter().find(|c| c.active == cell.points) {
        Some(vc) => {
            let k = vc.vertices.len() as f64;
            (0..phi.dim()).map(|d| vc.vertices.iter().map(|v| to_f64(&v[d])).sum::<f64>() / k).collect()
        }
        None => centre,
    }
}

/// Levenberg-damped Newton iteration for `dφ̃(x) = w`.
fn locate(field: &SmoothedField, w: &[i64], mut x: Vec<f64>) -> Option<Vec<f64>> {
    let n = x.len();
    let wf: Vec<f64> = w.iter().map(|&a| a as f64).collect();
    let eps = field.epsilon();
    let objective = |x: &[f64]| wf.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - field.eval(x).0;
    let mut lambda = 1e-3 / eps;
    let mut fx = objective(&x);
    for _ in 0..200 {
        let g = field.eval(&x).1;
        let r: Vec<f64> = wf.iter().zip(&g).map(|(a, b)| a - b).collect();
        if r.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-12 {
            break;
        }
        let s = 1e-5 * eps;
        let mut hess = vec![vec![0.0; n]; n];
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += s;
            xm[k] -= s;
            let (gp, gm) = (field.eval(&xp).1, field.eval(&xm).1);
            for i in 0..n {
                hess[i][k] = -(gp[i] - gm[i]) / (2.0 * s);
            }
        }
        let mut accepted = false;
        for _ in 0..30 {
            let mut a = hess.clone();
            for i in 0..n {
                for k in 0..n {
                    a[i][k] = 0.5 * (hess[i][k] + hess[k][i]);
                }
                a[i][i] += lambda;
            }
            let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
            let Some(dx) = linalg::solve_f64(&a, &rhs) else {
                lambda *= 10.0;
                continue;
            };
            let cand: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
            let fc = objective(&cand);
            if fc <= fx + 1e-15 * fx.abs().max(1.0) {
                x = cand;
                fx = fc;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    let g = field.eval(&x).1;
    let err = g.iter().zip(&wf).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    (err < LATTICE_TOL).then_some(x)
}
