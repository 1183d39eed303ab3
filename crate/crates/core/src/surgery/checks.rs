//! Geometric checks on a sampled lift: valuation and argument projections,
//! monomial admissibility, far-field subtori and fiber circles.

use rstar::RTree;
use serde::{Deserialize, Serialize};

use super::lift::{Chart, LagrangianMesh, Sample};
use crate::error::{Error, Result};
use crate::kernel::{distance_to_variety, newton_polytope, Fan, TropicalPolynomial};
use crate::linalg::to_f64;
use crate::smoothing::{circle_dist, wrap01, GridSpec};

/// Torus raster cells per axis used by the argument check.
pub fn default_raster(n: usize) -> usize {
    match n {
        1 => 64,
        2 => 32,
        _ => 12,
    }
}

fn pad3(x: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    out[..x.len()].copy_from_slice(x);
    out
}

/// Points of `V(φ)` near the grid: grid points within half a cell diagonal of
/// `V(φ)` projected onto the nearest tie hyperplane of their own cell.
pub fn sample_variety(phi: &TropicalPolynomial, grid: &GridSpec) -> Vec<Vec<f64>> {
    let n = phi.dim();
    let reach = 0.5 * grid.h * (n as f64).sqrt() + 1e-12;
    let mono = phi.monomials();
    (0..grid.len())
        .filter_map(|i| {
            let x = grid.point(i);
            if distance_to_variety(phi, &x) > reach {
                return None;
            }
            let (best, arg) = phi.eval_f64(&x);
            let mut foot = None;
            let mut dist = f64::INFINITY;
            for (j, m) in mono.iter().enumerate() {
                if j == arg {
                    continue;
                }
                let dir: Vec<f64> = m.exp.iter().zip(&mono[arg].exp).map(|(a, b)| (a - b) as f64).collect();
                let norm2: f64 = dir.iter().map(|d| d * d).sum();
                let val = to_f64(&m.coeff) + m.exp.iter().zip(&x).map(|(&a, b)| a as f64 * b).sum::<f64>();
                let d = (val - best).max(0.0) / norm2.sqrt();
                if d < dist {
                    dist = d;
                    let t = (val - best).max(0.0) / norm2;
                    foot = Some(x.iter().zip(&dir).map(|(a, b)| a - t * b).collect::<Vec<f64>>());
                }
            }
            foot.filter(|p| grid.contains(p))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValuationReport {
    pub hausdorff: f64,
    /// `max_q dist(q, V(φ))` over samples.
    pub mesh_to_variety: f64,
    /// `max_y dist(y, samples)` over sampled `y ∈ V(φ)`.
    pub variety_to_mesh: f64,
    pub pass: bool,
}

pub fn valuation_projection_check(mesh: &LagrangianMesh) -> ValuationReport {
    let variety = if mesh.phi.is_single_monomial() { vec![] } else { sample_variety(&mesh.phi, &mesh.grid) };
    let mesh_to_variety =
        mesh.samples.iter().map(|s| distance_to_variety(&mesh.phi, &s.q)).fold(0.0, f64::max);
    let variety_to_mesh = if variety.is_empty() {
        0.0
    } else if mesh.samples.is_empty() {
        f64::INFINITY
    } else {
        let tree = RTree::bulk_load(mesh.samples.iter().map(|s| pad3(&s.q)).collect());
        variety
            .iter()
            .map(|y| {
                let p = pad3(y);
                let nn = tree.nearest_neighbor(p).expect("nonempty tree");
                nn.iter().zip(&p).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    };
    let hausdorff = if mesh.samples.is_empty() && !variety.is_empty() {
        f64::INFINITY
    } else {
        mesh_to_variety.max(variety_to_mesh)
    };
    ValuationReport { hausdorff, mesh_to_variety, variety_to_mesh, pass: hausdorff <= 2.0 * mesh.epsilon }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgumentReport {
    pub resolution: usize,
    pub coverage: f64,
    pub spill: f64,
    pub target_cells: usize,
    pub hit_cells: usize,
    pub pass: bool,
}

fn raster_index(p: &[f64], res: usize) -> usize {
    p.iter().fold(0, |acc, &x| acc * res + ((wrap01(x) * res as f64) as usize).min(res - 1))
}

fn raster_center(mut idx: usize, n: usize, res: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for k in (0..n).rev() {
        out[k] = ((idx % res) as f64 + 0.5) / res as f64;
        idx /= res;
    }
    out
}

/// Torus raster of `π(−Δ_φ)`: cells whose center lies within half a cell
/// diagonal of some translate `−Δ_φ + k`.
pub fn argument_target(phi: &TropicalPolynomial, res: usize) -> Vec<bool> {
    let n = phi.dim();
    let (poly, z) = newton_polytope(phi);
    let slack = 0.5 * (n as f64).sqrt() / res as f64;
    let planes: Vec<(Vec<f64>, f64, bool)> = poly
        .facets()
        .iter()
        .map(|f| (f.normal.iter().map(to_f64).collect(), to_f64(&f.offset), false))
        .chain(poly.equalities().iter().map(|f| (f.normal.iter().map(to_f64).collect(), to_f64(&f.offset), true)))
        .collect();
    // Δ ⊂ box [lo, hi], so −x − k ∈ Δ with x ∈ [0,1)^n needs k ∈ [−hi − 1, −lo].
    let lo: Vec<i64> = (0..n).map(|k| -z.iter().map(|v| v[k]).max().unwrap_or(0) - 1).collect();
    let hi: Vec<i64> = (0..n).map(|k| -z.iter().map(|v| v[k]).min().unwrap_or(0)).collect();
    let shifts = int_box(&lo, &hi);
    let inside = |y: &[f64]| {
        planes.iter().all(|(a, b, eq)| {
            let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let s = b - a.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
            if *eq {
                s.abs() <= slack * norm
            } else {
                s >= -slack * norm
            }
        })
    };
    (0..res.pow(n as u32))
        .map(|i| {
            let x = raster_center(i, n, res);
            // x + k ∈ −Δ  ⇔  −x − k ∈ Δ
            shifts.iter().any(|k| inside(&x.iter().zip(k).map(|(a, &b)| -a - b as f64).collect::<Vec<_>>()))
        })
        .collect()
}

fn int_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        out = out.into_iter().flat_map(|p: Vec<i64>| (*a..=*b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn argument_projection_check(mesh: &LagrangianMesh, resolution: Option<usize>) -> ArgumentReport {
    let n = mesh.dim();
    let res = resolution.unwrap_or_else(|| default_raster(n));
    if mesh.is_empty() {
        return ArgumentReport { resolution: res, coverage: 1.0, spill: 0.0, target_cells: 0, hit_cells: 0, pass: true };
    }
    let target = argument_target(&mesh.phi, res);
    let mut hit = vec![false; target.len()];
    for s in &mesh.samples {
        hit[raster_index(&s.p, res)] = true;
    }
    let t = target.iter().filter(|&&b| b).count();
    let h = hit.iter().filter(|&&b| b).count();
    let both = target.iter().zip(&hit).filter(|(a, b)| **a && **b).count();
    let coverage = if t == 0 { 1.0 } else { both as f64 / t as f64 };
    let spill = if h == 0 { 0.0 } else { (h - both) as f64 / h as f64 };
    ArgumentReport {
        resolution: res,
        coverage,
        spill,
        target_cells: t,
        hit_cells: h,
        pass: coverage >= 0.99 && spill <= 0.01,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayDeviation {
    pub ray: Vec<i64>,
    pub samples: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub radius: f64,
    pub delta: f64,
    pub rays: Vec<RayDeviation>,
    pub max_deviation: f64,
    pub pass: bool,
}

pub const ADMISSIBILITY_TOL: f64 = 1e-6;

fn fan_terms(fan: &Fan, x: &[f64]) -> Vec<f64> {
    fan.rays
        .iter()
        .zip(&fan.values)
        .map(|(r, k)| to_f64(k) + r.iter().zip(x).map(|(&a, b)| a as f64 * b).sum::<f64>())
        .collect()
}

fn in_region(m: &[f64], a: usize, delta: f64) -> bool {
    let top = m.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    m[a] >= top - delta
}

/// Whether `x` lies in the relative interior of a maximal cone containing ray
/// `a`, or on ray `a` itself (the open star of `a`).
fn in_open_star(fan: &Fan, cones: &[Vec<usize>], a: usize, x: &[f64]) -> bool {
    let tol = 1e-9 * x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);
    cones.iter().filter(|c| c.contains(&a)).any(|cone| {
        let gens: Vec<Vec<f64>> = cone.iter().map(|&i| fan.rays[i].iter().map(|&v| v as f64).collect()).collect();
        if gens.len() != x.len() {
            return false;
        }
        // x = Σ λ_i g_i, solved via the transposed system.
        let n = x.len();
        let mat: Vec<Vec<f64>> = (0..n).map(|r| gens.iter().map(|g| g[r]).collect()).collect();
        match crate::linalg::solve_f64(&mat, x) {
            Some(lambda) => lambda.iter().zip(cone).all(|(l, &i)| if i == a { *l > tol } else { *l > -tol }),
            None => false,
        }
    })
}

/// Monomial admissibility: beyond radius `R`, samples with `q ∈ C_α` must have
/// `⟨α,p⟩ ∈ Z`.
pub fn admissibility_check(mesh: &LagrangianMesh, fan: &Fan, delta: f64, radius: f64) -> Result<AdmissibilityReport> {
    let n = mesh.dim();
    if fan.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: fan.dim() });
    }
    let cones = fan.maximal_cones()?;
    let grid = &mesh.grid;
    for i in 0..grid.len() {
        let x = grid.point(i);
        if x.iter().map(|v| v * v).sum::<f64>().sqrt() <= radius {
            continue;
        }
        let m = fan_terms(fan, &x);
        for a in 0..fan.rays.len() {
            if in_region(&m, a, delta) && !in_open_star(fan, &cones, a, &x) {
                return Err(Error::FanCovering(format!(
                    "region of ray {:?} leaves its open star at {:?}",
                    fan.rays[a], x
                )));
            }
        }
    }
    let mut rays: Vec<RayDeviation> =
        fan.rays.iter().map(|r| RayDeviation { ray: r.clone(), samples: 0, max_deviation: 0.0 }).collect();
    for s in &mesh.samples {
        if s.q.iter().map(|v| v * v).sum::<f64>().sqrt() <= radius {
            continue;
        }
        let m = fan_terms(fan, &s.q);
        for (a, rep) in rays.iter_mut().enumerate() {
            if in_region(&m, a, delta) {
                let pair: f64 = rep.ray.iter().zip(&s.p).map(|(&r, p)| r as f64 * p).sum();
                rep.samples += 1;
                rep.max_deviation = rep.max_deviation.max(circle_dist(wrap01(pair), 0.0));
            }
        }
    }
    let max_deviation = rays.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    Ok(AdmissibilityReport { radius, delta, rays, max_deviation, pass: max_deviation <= ADMISSIBILITY_TOL })
}

/// Exponents whose tie hyperplane with the minimizing monomial lies within
/// `reach` of `x`, together with the minimizer.
fn local_exponents(phi: &TropicalPolynomial, x: &[f64], reach: f64) -> Vec<Vec<i64>> {
    let (best, arg) = phi.eval_f64(x);
    let mono = phi.monomials();
    let mut out = vec![mono[arg].exp.clone()];
    for (j, m) in mono.iter().enumerate() {
        if j == arg {
            continue;
        }
        let norm: f64 = m.exp.iter().zip(&mono[arg].exp).map(|(a, b)| ((a - b) as f64).powi(2)).sum::<f64>().sqrt();
        let val = to_f64(&m.coeff) + m.exp.iter().zip(x).map(|(&a, b)| a as f64 * b).sum::<f64>();
        if (val - best) / norm <= reach {
            out.push(m.exp.clone());
        }
    }
    out.sort();
    out
}

fn primitive_perp(d: &[i64]) -> [i64; 2] {
    let g = num_integer::gcd(d[0], d[1]).max(1);
    [-d[1] / g, d[0] / g]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubtorusReport {
    pub samples: usize,
    pub max_deviation: f64,
}

/// Far-field subtorus containment for `n = 2`: samples beyond `radius` near a
/// single leg dual to `[v, v′]` satisfy `⟨e⊥, p⟩ ∈ Z` with `e⊥ ⊥ v − v′`.
pub fn far_field_subtorus(mesh: &LagrangianMesh, radius: f64) -> Result<SubtorusReport> {
    let n = mesh.dim();
    if n != 2 {
        return Err(Error::UnsupportedDimension { required: "2".into(), got: n });
    }
    let mut samples = 0;
    let mut max_deviation: f64 = 0.0;
    for s in &mesh.samples {
        if s.q.iter().map(|v| v * v).sum::<f64>().sqrt() <= radius {
            continue;
        }
        let local = local_exponents(&mesh.phi, &s.q, 1.5 * mesh.epsilon);
        if local.len() != 2 {
            continue;
        }
        let e = primitive_perp(&[local[1][0] - local[0][0], local[1][1] - local[0][1]]);
        let pair = e[0] as f64 * s.p[0] + e[1] as f64 * s.p[1];
        samples += 1;
        max_deviation = max_deviation.max(circle_dist(wrap01(pair), 0.0));
    }
    Ok(SubtorusReport { samples, max_deviation })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCircleReport {
    pub samples: usize,
    /// Largest deviation of sampled fibers from the circle `R(v − v′)/Z^2`.
    pub off_circle: f64,
    /// Largest circular gap between sampled circle parameters.
    pub max_gap: f64,
    pub resolution: usize,
    pub pass: bool,
}

/// Fiber closure over a point `q0` in the interior of a bounded edge with
/// dual segment `[v, v′]`: fibers of samples within `halfwidth` of the
/// transverse line through `q0` (and within 2ε of the edge) must close up to
/// the circle through `v − v′`, with gaps of at most two raster cells.
pub fn fiber_circle(mesh: &LagrangianMesh, q0: &[f64], v: &[i64], w: &[i64], halfwidth: f64) -> Result<FiberCircleReport> {
    if mesh.dim() != 2 {
        return Err(Error::UnsupportedDimension { required: "2".into(), got: mesh.dim() });
    }
    let d = [v[0] - w[0], v[1] - w[1]];
    if num_integer::gcd(d[0], d[1]) != 1 {
        return Err(Error::NonPrimitiveRay(d.to_vec()));
    }
    // u with ⟨u, d⟩ = 1 reads off the circle parameter.
    let eg = num_integer::Integer::extended_gcd(&d[0], &d[1]);
    let u = [eg.x * eg.gcd.signum(), eg.y * eg.gcd.signum()];
    let e = primitive_perp(&d);
    let along = [e[0] as f64, e[1] as f64];
    let norm = along[0].hypot(along[1]);
    let mut taus: Vec<f64> = Vec::new();
    let mut off_circle: f64 = 0.0;
    for s in &mesh.samples {
        let t = ((s.q[0] - q0[0]) * along[0] + (s.q[1] - q0[1]) * along[1]) / norm;
        let across = ((s.q[0] - q0[0]) * along[1] - (s.q[1] - q0[1]) * along[0]) / norm;
        if t.abs() > halfwidth || across.abs() > 2.0 * mesh.epsilon {
            continue;
        }
        off_circle = off_circle.max(circle_dist(wrap01(e[0] as f64 * s.p[0] + e[1] as f64 * s.p[1]), 0.0));
        taus.push(wrap01(u[0] as f64 * s.p[0] + u[1] as f64 * s.p[1]));
    }
    let res = default_raster(2);
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_gap = if taus.is_empty() {
        1.0
    } else {
        let mut g = taus[0] + 1.0 - taus[taus.len() - 1];
        for p in taus.windows(2) {
            g = g.max(p[1] - p[0]);
        }
        g
    };
    Ok(FiberCircleReport {
        samples: taus.len(),
        off_circle,
        max_gap,
        resolution: res,
        pass: max_gap <= 2.0 / res as f64 && off_circle <= 1e-8,
    })
}

/// Copy of a mesh with `shift` added to fiber coordinate `axis` (negative control).
pub fn rotate_fibers(mesh: &LagrangianMesh, axis: usize, shift: f64) -> LagrangianMesh {
    let mut out = mesh.clone();
    for s in &mut out.samples {
        s.p[axis] = wrap01(s.p[axis] + shift);
    }
    out
}

/// Samples of one chart only.
pub fn chart_samples(mesh: &LagrangianMesh, chart: Chart) -> impl Iterator<Item = &Sample> {
    mesh.samples.iter().filter(move |s| s.chart == chart)
}
