use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::edt;
use super::profile::{make_profile, Shape, SurgeryProfile};
use crate::error::{Error, Result};
use crate::kernel::{newton_polytope, TropicalPolynomial};
use crate::smoothing::{intersection_components, smooth, wrap01, GridSpec, SmoothedField};

/// Gradient distance below which a grid point belongs to `U_v`.
const REGION_TOL: f64 = 1e-9;

/// Refinement levels per grid edge inside the neck band `c ≤ f_v < 2c`.
const NECK_LEVELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// Graph of `d(r∘f_v)`, agreeing with `σ_{−φ}` where `f_v ≥ 2c`.
    R,
    /// Graph of `d(s∘f_v)`, agreeing with `σ_0` where `f_v ≥ 2c`.
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Region {
    Lattice(Vec<i64>),
    Far(FarTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FarTag {
    Far,
}

impl Region {
    pub fn far() -> Region {
        Region::Far(FarTag::Far)
    }

    pub fn lattice(&self) -> Option<&[i64]> {
        match self {
            Region::Lattice(v) => Some(v),
            Region::Far(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub chart: Chart,
    pub region: Region,
    /// Value of the active `f_v` at `q`.
    #[serde(skip)]
    pub level: f64,
}

/// Sampled surgery lift `L(φ) = σ_0 #_{U_v} σ_{−φ}`.
#[derive(Clone, Debug)]
pub struct LagrangianMesh {
    pub phi: TropicalPolynomial,
    pub epsilon: f64,
    pub c: f64,
    pub grid: GridSpec,
    pub samples: Vec<Sample>,
    /// Transverse double points at lattice points of `Δ_φ` outside `Δ_φ^Z`.
    pub double_points: Vec<(Vec<i64>, Vec<f64>)>,
    /// Exponents of `Δ_φ^Z` whose region meets the window.
    pub surgered: Vec<Vec<i64>>,
    pub profile: Option<SurgeryProfile>,
}

impl LagrangianMesh {
    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LiftParams {
    pub epsilon: f64,
    pub grid: GridSpec,
    pub shape: Shape,
    /// Neck parameter; derived from the sublevel condition when `None`.
    pub c: Option<f64>,
}

struct RegionData {
    v: Vec<i64>,
    b: f64,
    /// `f_v` on the grid.
    f: Vec<f64>,
    /// Distance from each grid point to `U_v`.
    dist: Vec<f64>,
}

/// Build `L(φ)` on a grid: for each grid point the active region is the
/// `v ∈ Δ^Z` minimizing `f_v = ⟨v,q⟩ + b_v − φ̃(q)`; samples are emitted on
/// both charts where `f_v ≥ c`.
pub fn lift(phi: &TropicalPolynomial, params: &LiftParams) -> Result<LagrangianMesh> {
    let field = smooth(phi, params.epsilon, &params.grid)?;
    lift_field(&field, params)
}

pub fn lift_field(field: &SmoothedField, params: &LiftParams) -> Result<LagrangianMesh> {
    let phi = field.polynomial().clone();
    let grid = field.grid().clone();
    let eps = field.epsilon();
    if phi.is_single_monomial() {
        return Ok(LagrangianMesh {
            phi,
            epsilon: eps,
            c: params.c.unwrap_or(0.0),
            grid,
            samples: vec![],
            double_points: vec![],
            surgered: vec![],
            profile: None,
        });
    }
    let n = phi.dim();
    let len = grid.len();
    let dims = grid.dims();
    let (_, z) = newton_polytope(&phi);
    let mut regions: Vec<RegionData> = Vec::new();
    for v in &z {
        let vf: Vec<f64> = v.iter().map(|&a| a as f64).collect();
        let raw: Vec<f64> = (0..len)
            .into_par_iter()
            .map(|i| {
                let q = grid.point(i);
                vf.iter().zip(&q).map(|(a, b)| a * b).sum::<f64>() - field.grid_value(i)
            })
            .collect();
        let mask: Vec<bool> = (0..len)
            .map(|i| field.grid_gradient(i).iter().zip(&vf).all(|(g, a)| (g - a).abs() < REGION_TOL))
            .collect();
        if !mask.iter().any(|&b| b) {
            continue;
        }
        let b = -raw.iter().cloned().fold(f64::INFINITY, f64::min);
        let f: Vec<f64> = raw.iter().map(|x| (x + b).max(0.0)).collect();
        let dist = edt::squared_distance(&mask, &dims).into_iter().map(|d| d.sqrt() * grid.h).collect();
        regions.push(RegionData { v: v.clone(), b, f, dist });
    }
    if regions.is_empty() {
        return Err(Error::InvalidGrid("no surgery region U_v meets the grid window".into()));
    }

    let c = match params.c {
        Some(c) => c,
        None => {
            // Largest c on this grid with `f_v < 2c ⇒ dist(q, U_v) < ε` and
            // pairwise disjoint 2c-sublevels.
            let far = regions
                .iter()
                .flat_map(|r| r.f.iter().zip(&r.dist).filter(|(_, d)| **d >= eps).map(|(f, _)| *f))
                .fold(f64::INFINITY, f64::min);
            let second = (0..len)
                .map(|i| {
                    let (mut a, mut b) = (f64::INFINITY, f64::INFINITY);
                    for r in &regions {
                        let x = r.f[i];
                        if x < a {
                            b = a;
                            a = x;
                        } else if x < b {
                            b = x;
                        }
                    }
                    b
                })
                .fold(f64::INFINITY, f64::min);
            let m = far.min(second);
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::InvalidGrid("window too small to determine the neck parameter c".into()));
            }
            0.5 * m
        }
    };
    let profile = make_profile(c, &params.shape)?;

    for i in 0..len {
        let below: Vec<&RegionData> = regions.iter().filter(|r| r.f[i] < 2.0 * c).collect();
        if below.len() > 1 {
            return Err(Error::OverlappingSublevels {
                a: below[0].v.clone(),
                b: below[1].v.clone(),
                at: grid.point(i),
            });
        }
    }

    let best: Vec<usize> = (0..len)
        .into_par_iter()
        .map(|i| {
            (0..regions.len())
                .min_by(|&a, &b| regions[a].f[i].partial_cmp(&regions[b].f[i]).expect("finite"))
                .expect("nonempty")
        })
        .collect();
    let emit = |q: Vec<f64>, g: &[f64], r: &RegionData, f: f64, out: &mut Vec<Sample>| {
        let region = if f < 2.0 * c { Region::Lattice(r.v.clone()) } else { Region::far() };
        let df: Vec<f64> = r.v.iter().zip(g).map(|(&a, b)| a as f64 - b).collect();
        for (chart, scale) in [(Chart::S, profile.s_prime_at(f)), (Chart::R, profile.r_prime_at(f))] {
            out.push(Sample {
                q: q.clone(),
                p: df.iter().map(|x| wrap01(scale * x)).collect(),
                chart,
                region: region.clone(),
                level: f,
            });
        }
    };
    let samples: Vec<Sample> = (0..len)
        .into_par_iter()
        .flat_map_iter(|i| {
            let r = &regions[best[i]];
            let f = r.f[i];
            let mut out = Vec::new();
            if f < c {
                return out.into_iter();
            }
            let q = grid.point(i);
            emit(q.clone(), field.grid_gradient(i), r, f, &mut out);
            // Neck refinement: r′ and s′ have a vertical tangent at f = c, so
            // extra base points are placed on grid edges where f_v descends
            // through the levels c + c·u², u = k/K, of the band [c, 2c).
            let mut nb = Vec::new();
            grid.axis_neighbors(i, &mut nb);
            for j in nb {
                let fb = r.f[j];
                if fb >= f || fb >= 2.0 * c {
                    continue;
                }
                let qb = grid.point(j);
                for k in 0..NECK_LEVELS {
                    let u = k as f64 / NECK_LEVELS as f64;
                    let level = c * (1.0 + u * u);
                    if level <= fb || level >= f {
                        continue;
                    }
                    let t = (level - fb) / (f - fb);
                    let qk: Vec<f64> = qb.iter().zip(&q).map(|(a, b)| a + t * (b - a)).collect();
                    let (val, g) = field.eval(&qk);
                    let level_of = |w: &RegionData| {
                        w.v.iter().zip(&qk).map(|(&a, x)| a as f64 * x).sum::<f64>() - val + w.b
                    };
                    let fk = level_of(r);
                    if fk >= c && regions.iter().all(|w| level_of(w) >= fk) {
                        emit(qk, &g, r, fk, &mut out);
                    }
                }
            }
            out.into_iter()
        })
        .collect();

    let double_points = if n <= 3 {
        intersection_components(field)?
            .into_iter()
            .filter(|comp| !z.contains(&comp.lattice_point))
            .map(|comp| (comp.lattice_point, comp.representative))
            .collect()
    } else {
        vec![]
    };
    Ok(LagrangianMesh {
        phi,
        epsilon: eps,
        c,
        grid,
        samples,
        double_points,
        surgered: regions.into_iter().map(|r| r.v).collect(),
        profile: Some(profile),
    })
}

/// Chart agreement: where `f_v ≥ 2c`, the s-chart is `0` and the r-chart is
/// `−dφ̃ mod 1`. Returns the largest circular deviation.
pub fn chart_agreement(mesh: &LagrangianMesh, field: &SmoothedField) -> f64 {
    use crate::smoothing::circle_dist;
    mesh.samples
        .iter()
        .filter(|s| s.level >= 2.0 * mesh.c)
        .map(|s| {
            let target: Vec<f64> = match s.chart {
                Chart::S => vec![0.0; s.q.len()],
                Chart::R => field.eval(&s.q).1.iter().map(|g| wrap01(-g)).collect(),
            };
            s.p.iter().zip(&target).map(|(a, b)| circle_dist(*a, *b)).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}
