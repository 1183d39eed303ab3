use num_traits::Signed;

use super::poly::TropicalPolynomial;
use crate::error::{Error, Result};
use crate::linalg::{self, dot_int, from_ints, gcd_vec, to_f64, Q};

/// Complete or partial fan given by primitive ray generators, optional
/// maximal cones (indices into `rays`) and the divisor values `a_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub values: Vec<Q>,
    pub cones: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportFunction {
    pub polynomial: TropicalPolynomial,
    pub is_concave: bool,
    /// Maximal cones used for the test, as ray indices.
    pub cones: Vec<Vec<usize>>,
    /// Linear functional `m_σ` of ψ on each cone.
    pub slopes: Vec<Vec<Q>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, values: Vec<Q>) -> Fan {
        Fan { rays, values, cones: None }
    }

    pub fn projective_plane(values: Vec<Q>) -> Fan {
        Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], values)
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, |r| r.len())
    }

    /// Maximal cones: explicit, or inferred for n ≤ 2.
    pub fn maximal_cones(&self) -> Result<Vec<Vec<usize>>> {
        if let Some(c) = &self.cones {
            return Ok(c.clone());
        }
        match self.dim() {
            1 => Ok((0..self.rays.len()).map(|i| vec![i]).collect()),
            2 => {
                if self.rays.len() == 1 {
                    return Ok(vec![vec![0]]);
                }
                let mut order: Vec<usize> = (0..self.rays.len()).collect();
                let ang = |i: usize| (self.rays[i][1] as f64).atan2(self.rays[i][0] as f64);
                order.sort_by(|&a, &b| ang(a).partial_cmp(&ang(b)).unwrap());
                let mut cones = Vec::new();
                for k in 0..order.len() {
                    let a = order[k];
                    let b = order[(k + 1) % order.len()];
                    let det = self.rays[a][0] * self.rays[b][1] - self.rays[a][1] * self.rays[b][0];
                    if det > 0 {
                        cones.push(vec![a, b]);
                    }
                }
                let covered: std::collections::BTreeSet<usize> = cones.iter().flatten().copied().collect();
                for i in 0..self.rays.len() {
                    if !covered.contains(&i) {
                        cones.push(vec![i]);
                    }
                }
                Ok(cones)
            }
            n => Err(Error::UnsupportedFan(format!("cones must be given explicitly for n = {n}"))),
        }
    }

    /// Locate a maximal cone containing `x` (floating point), used for sampling ψ.
    pub fn evaluate_support(&self, slopes: &[Vec<Q>], cones: &[Vec<usize>], x: &[f64]) -> Option<f64> {
        for (cone, m) in cones.iter().zip(slopes) {
            let gens: Vec<Vec<Q>> = cone.iter().map(|&i| from_ints(&self.rays[i])).collect();
            // Solve x = Σ λ_i r_i on the cone's span with λ ≥ 0.
            let n = x.len();
            if gens.len() != n {
                continue;
            }
            let a: Vec<Vec<f64>> = (0..n).map(|r| gens.iter().map(|g| to_f64(&g[r])).collect()).collect();
            if let Some(lam) = linalg::solve_f64(&a, x) {
                if lam.iter().all(|&l| l >= -1e-12) {
                    return Some(m.iter().zip(x).map(|(a, b)| to_f64(a) * b).sum());
                }
            }
        }
        None
    }
}

/// Support function of a toric divisor: monomials `(v, a_v)` and the concavity
/// flag of the cone-wise linear function with `ψ(v) = a_v`.
///
/// ψ is concave iff on every maximal cone σ its linear piece `m_σ` satisfies
/// `<m_σ, u> ≥ a_u` for every ray `u`.
pub fn support_function(fan: &Fan) -> Result<SupportFunction> {
    for r in &fan.rays {
        if gcd_vec(r) != 1 {
            return Err(Error::NonPrimitiveRay(r.clone()));
        }
    }
    if fan.rays.len() != fan.values.len() {
        return Err(Error::DimensionMismatch { expected: fan.rays.len(), got: fan.values.len() });
    }
    let n = fan.dim();
    let polynomial = TropicalPolynomial::new(n, fan.rays.iter().cloned().zip(fan.values.iter().cloned()).collect())?;
    let cones = fan.maximal_cones()?;
    let mut slopes = Vec::new();
    let mut is_concave = true;
    for cone in &cones {
        // Solve <m, r_i> = a_i for the rays of the cone; pad with the
        // orthogonal complement when the cone is not full-dimensional.
        let mut rows: Vec<Vec<Q>> = cone.iter().map(|&i| from_ints(&fan.rays[i])).collect();
        let mut rhs: Vec<Q> = cone.iter().map(|&i| fan.values[i].clone()).collect();
        if linalg::rank(&rows) != rows.len() {
            return Err(Error::UnsupportedFan(format!("cone {cone:?} is not simplicial")));
        }
        for extra in linalg::nullspace(&rows, n) {
            rows.push(extra);
            rhs.push(Q::from_integer(0.into()));
        }
        let m = linalg::solve(&rows, &rhs).ok_or_else(|| Error::UnsupportedFan(format!("cone {cone:?}")))?;
        for (u, a) in fan.rays.iter().zip(&fan.values) {
            if (dot_int(u, &m) - a).is_negative() {
                is_concave = false;
            }
        }
        slopes.push(m);
    }
    Ok(SupportFunction { polynomial, is_concave, cones, slopes })
}
