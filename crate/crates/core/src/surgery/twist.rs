use rayon::prelude::*;

use super::lift::LagrangianMesh;
use crate::error::{Error, Result};
use crate::kernel::TropicalPolynomial;
use crate::smoothing::{smooth, wrap01};

/// Fiberwise sum `L + σ_ψ`: every fiber is translated by `dψ̃(q)` mod 1, with
/// `ψ̃` mollified at the mesh's ε.
pub fn fiberwise_sum(mesh: &LagrangianMesh, psi: &TropicalPolynomial) -> Result<LagrangianMesh> {
    if psi.dim() != mesh.dim() {
        return Err(Error::DimensionMismatch { expected: mesh.dim(), got: psi.dim() });
    }
    let field = smooth(psi, mesh.epsilon, &mesh.grid)?;
    let samples = mesh
        .samples
        .par_iter()
        .map(|s| {
            let g = field.gradient(&s.q)?;
            let mut t = s.clone();
            t.p = s.p.iter().zip(&g).map(|(a, b)| wrap01(a + b)).collect();
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LagrangianMesh { samples, ..mesh.clone() })
}

/// Net winding of `⟨e⊥, p⟩` mod 1 along the segment `a → b`, from samples
/// whose base lies within `halfwidth` of the segment.
///
/// Samples are binned along the segment, each bin is reduced to a circular
/// mean and consecutive means are unwrapped.
pub fn transverse_winding(mesh: &LagrangianMesh, a: &[f64], b: &[f64], e_perp: &[i64], halfwidth: f64, bins: usize) -> Result<f64> {
    let n = mesh.dim();
    if a.len() != n || b.len() != n || e_perp.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: e_perp.len() });
    }
    let d: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let len2: f64 = d.iter().map(|x| x * x).sum();
    if len2 == 0.0 || bins == 0 {
        return Err(Error::InvalidParameter("degenerate winding segment".into()));
    }
    let mut acc = vec![(0.0f64, 0.0f64, 0usize); bins];
    for s in &mesh.samples {
        let rel: Vec<f64> = s.q.iter().zip(a).map(|(x, y)| x - y).collect();
        let t = rel.iter().zip(&d).map(|(x, y)| x * y).sum::<f64>() / len2;
        if !(0.0..=1.0).contains(&t) {
            continue;
        }
        let off2: f64 = rel.iter().zip(&d).map(|(x, y)| (x - t * y).powi(2)).sum();
        if off2.sqrt() > halfwidth {
            continue;
        }
        let theta = std::f64::consts::TAU * s.p.iter().zip(e_perp).map(|(p, &e)| p * e as f64).sum::<f64>();
        let k = ((t * bins as f64) as usize).min(bins - 1);
        acc[k].0 += theta.cos();
        acc[k].1 += theta.sin();
        acc[k].2 += 1;
    }
    let means: Vec<f64> = acc.iter().filter(|x| x.2 > 0).map(|x| x.1.atan2(x.0) / std::f64::consts::TAU).collect();
    if means.len() < 2 {
        return Err(Error::InvalidParameter("too few samples along the winding segment".into()));
    }
    let mut total = 0.0;
    for w in means.windows(2) {
        let mut step = w[1] - w[0];
        step -= step.round();
        total += step;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::named::phi_t2;
    use crate::linalg::{q, q_frac};
    use crate::smoothing::{circle_dist, GridSpec};
    use crate::surgery::{lift, LiftParams, Shape};

    fn mesh() -> LagrangianMesh {
        let eps = 0.05;
        let grid = GridSpec::new(vec![-0.5, -0.5], vec![1.5, 1.5], eps / 8.0).unwrap();
        lift(&phi_t2(q(1)), &LiftParams { epsilon: eps, grid, shape: Shape::default(), c: None }).unwrap()
    }

    #[test]
    fn integral_shift_and_zero_are_identities() {
        let m = mesh();
        let mono = TropicalPolynomial::from_ints(2, &[(&[2, -1], 3)]).unwrap();
        let zero = TropicalPolynomial::from_ints(2, &[(&[0, 0], 0)]).unwrap();
        for psi in [mono, zero] {
            let t = fiberwise_sum(&m, &psi).unwrap();
            for (a, b) in m.samples.iter().zip(&t.samples) {
                assert_eq!(a.q, b.q);
                assert!(a.p.iter().zip(&b.p).all(|(x, y)| circle_dist(*x, *y) < 1e-12));
            }
        }
        let bad = TropicalPolynomial::from_ints(1, &[(&[0], 0)]).unwrap();
        assert!(fiberwise_sum(&m, &bad).is_err());
    }

    #[test]
    fn pants_twist_adds_one_winding_across_crossing() {
        let m = mesh();
        // V(ψ) crosses the bottom edge x2 = 0 of V(φ) at (0.5, 0).
        let pants = TropicalPolynomial::new(
            2,
            vec![(vec![0, 0], q(0)), (vec![1, 0], q_frac(-1, 2)), (vec![0, 1], q_frac(1, 2))],
        )
        .unwrap();
        let t = fiberwise_sum(&m, &pants).unwrap();
        let (a, b) = ([0.2, 0.0], [0.8, 0.0]);
        let before = transverse_winding(&m, &a, &b, &[1, 0], 0.05, 60).unwrap();
        let after = transverse_winding(&t, &a, &b, &[1, 0], 0.05, 60).unwrap();
        assert!(before.abs() < 1e-9, "{before}");
        assert!((after.abs() - 1.0).abs() < 1e-6, "{after}");
    }
}
