//! Mollified tropical polynomials `φ̃ = ρ_ε * φ`, their gradients, tropical
//! sections and the regions `U_{v_i}`.
//!
//! Along each quadrature direction θ the restriction `r ↦ φ(x + εrθ)` is the
//! lower envelope of the lines `α_v + β_v r`, so the radial integral is exact
//! given the tabulated bump moments. Gradients mollify the exact gradient field
//! and are therefore convex combinations of exponents.

mod components;
mod grid;
mod mollifier;
mod preflight;

use rayon::prelude::*;

pub use components::{intersection_components, IntersectionComponent, LATTICE_TOL};
pub use grid::{GridSpec, Mask};
pub use mollifier::{bump, Mollifier};
pub use preflight::preflight;

use crate::error::{Error, Result};
use crate::kernel::{LatticePolytope, TropicalPolynomial};
use crate::linalg::to_f64;
use crate::subdivision::dual_subdivision;

/// Tolerance band for hull membership of smoothed gradients.
pub const HULL_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SmoothedField {
    phi: TropicalPolynomial,
    mollifier: Mollifier,
    grid: GridSpec,
    exps: Vec<Vec<f64>>,
    coeffs: Vec<f64>,
    /// `β_{θ,v} = ε⟨v, θ⟩`, direction-major.
    slopes: Vec<f64>,
    values: Vec<f64>,
    gradients: Vec<f64>,
}

/// Mollify `φ` with radius `ε` and cache value and gradient on `grid`.
pub fn smooth(phi: &TropicalPolynomial, epsilon: f64, grid: &GridSpec) -> Result<SmoothedField> {
    grid.validate()?;
    if grid.dim() != phi.dim() {
        return Err(Error::DimensionMismatch { expected: phi.dim(), got: grid.dim() });
    }
    let mollifier = Mollifier::new(phi.dim(), epsilon)?;
    preflight(phi, epsilon)?;
    let mut field = SmoothedField::uncached(phi, mollifier, grid.clone());
    field.fill();
    Ok(field)
}

impl SmoothedField {
    fn uncached(phi: &TropicalPolynomial, mollifier: Mollifier, grid: GridSpec) -> SmoothedField {
        let exps: Vec<Vec<f64>> = phi.monomials().iter().map(|m| m.exp.iter().map(|&a| a as f64).collect()).collect();
        let coeffs = phi.monomials().iter().map(|m| to_f64(&m.coeff)).collect();
        let eps = mollifier.epsilon;
        let slopes = mollifier
            .directions()
            .iter()
            .flat_map(|d| exps.iter().map(move |v| eps * v.iter().zip(d).map(|(a, b)| a * b).sum::<f64>()))
            .collect();
        SmoothedField { phi: phi.clone(), mollifier, grid, exps, coeffs, slopes, values: vec![], gradients: vec![] }
    }

    fn fill(&mut self) {
        let n = self.phi.dim();
        let len = self.grid.len();
        let results: Vec<(f64, Vec<f64>)> = (0..len).into_par_iter().map(|i| self.eval(&self.grid.point(i))).collect();
        self.values = Vec::with_capacity(len);
        self.gradients = Vec::with_capacity(len * n);
        for (v, g) in results {
            self.values.push(v);
            self.gradients.extend(g);
        }
    }

    pub fn polynomial(&self) -> &TropicalPolynomial {
        &self.phi
    }

    pub fn epsilon(&self) -> f64 {
        self.mollifier.epsilon
    }

    pub fn mollifier(&self) -> &Mollifier {
        &self.mollifier
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn grid_value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn grid_gradient(&self, i: usize) -> &[f64] {
        let n = self.dim();
        &self.gradients[i * n..(i + 1) * n]
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.eval(x).0)
    }

    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_domain(x)?;
        Ok(self.eval(x).1)
    }

    fn check_domain(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        if !self.grid.contains(x) {
            return Err(Error::OutOfDomain(x.to_vec()));
        }
        Ok(())
    }

    /// `(φ̃(x), dφ̃(x))` without a domain check.
    pub fn eval(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let n = self.dim();
        let m = self.exps.len();
        let alpha: Vec<f64> =
            self.exps.iter().zip(&self.coeffs).map(|(v, a)| a + v.iter().zip(x).map(|(p, q)| p * q).sum::<f64>()).collect();
        if m == 1 {
            return (alpha[0], self.exps[0].clone());
        }
        let kn1 = n - 1;
        let norm = self.mollifier.moment(kn1, 1.0);
        let mut value = 0.0;
        let mut grad_w = vec![0.0; m];
        for (k, &w) in self.mollifier.weights().iter().enumerate() {
            let beta = &self.slopes[k * m..(k + 1) * m];
            let mut cur = 0;
            for j in 1..m {
                if alpha[j] < alpha[cur] || (alpha[j] == alpha[cur] && beta[j] < beta[cur]) {
                    cur = j;
                }
            }
            let mut r0 = 0.0;
            let mut k0 = 0.0;
            let mut kk0 = 0.0;
            loop {
                let mut r1 = 1.0;
                let mut next = None;
                for j in 0..m {
                    if beta[j] < beta[cur] {
                        let r = ((alpha[j] - alpha[cur]) / (beta[cur] - beta[j])).max(r0);
                        let better = match next {
                            None => r < r1,
                            Some(b) => r < r1 || (r == r1 && beta[j] < beta[b]),
                        };
                        if better {
                            r1 = r;
                            next = Some(j);
                        }
                    }
                }
                let k1 = self.mollifier.moment(kn1, r1);
                let kk1 = self.mollifier.moment(n, r1);
                let dk = k1 - k0;
                value += w * (alpha[cur] * dk + beta[cur] * (kk1 - kk0));
                grad_w[cur] += w * dk;
                match next {
                    Some(j) => {
                        cur = j;
                        r0 = r1;
                        k0 = k1;
                        kk0 = kk1;
                    }
                    None => break,
                }
            }
        }
        let mut grad = vec![0.0; n];
        for (v, g) in self.exps.iter().zip(&grad_w) {
            for c in 0..n {
                grad[c] += g * v[c];
            }
        }
        (value / norm, grad.iter().map(|g| g / norm).collect())
    }
}

pub fn smoothed_gradient(field: &SmoothedField, x: &[f64]) -> Result<Vec<f64>> {
    field.gradient(x)
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn wrap01(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Circular distance on `R/Z`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// `σ_{±φ}(q) = ±dφ̃(q) mod 1`.
pub fn section_point(field: &SmoothedField, q: &[f64], sign: i32) -> Result<Vec<f64>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameter(format!("sign must be ±1, got {sign}")));
    }
    Ok(field.gradient(q)?.iter().map(|g| wrap01(sign as f64 * g)).collect())
}

/// Grid mask of points whose smoothed gradient lies in the relative interior
/// of `hull{v_i}`, for `{v_i}` a cell of the dual subdivision.
pub fn strata_regions(field: &SmoothedField, cell: &[Vec<i64>]) -> Result<Mask> {
    let sub = dual_subdivision(&field.phi);
    let found = sub.find(cell).ok_or_else(|| Error::NotACell(cell.to_vec()))?;
    let hull = LatticePolytope::from_points(field.dim(), &found.vertices);
    let data = (0..field.grid.len())
        .into_par_iter()
        .map(|i| in_relative_interior(&hull, field.grid_gradient(i), HULL_TOL))
        .collect();
    Ok(Mask { dims: field.grid.dims(), data })
}

/// Relative-interior membership with a tolerance band: equalities within
/// `tol`, facet slacks above `tol`.
pub fn in_relative_interior(hull: &LatticePolytope, x: &[f64], tol: f64) -> bool {
    let slack = |normal: &[crate::linalg::Q], offset: &crate::linalg::Q| {
        let nf: Vec<f64> = normal.iter().map(to_f64).collect();
        let norm = nf.iter().map(|a| a * a).sum::<f64>().sqrt();
        (to_f64(offset) - nf.iter().zip(x).map(|(a, b)| a * b).sum::<f64>()) / norm
    };
    hull.equalities().iter().all(|e| slack(&e.normal, &e.offset).abs() <= tol)
        && hull.facets().iter().all(|f| slack(&f.normal, &f.offset) > tol)
}
