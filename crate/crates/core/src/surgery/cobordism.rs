use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SAMPLES: usize = 1201;

fn step_density(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        (-1.0 / (u * (1.0 - u))).exp()
    }
}

/// Profile of the surgery cobordism: `g` convex with `g' = 0` for `t < −ε`
/// and `g' = 1` for `t > 0`; the curve is `z(t) = t + i g'(t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CobordismProfile {
    pub epsilon: f64,
    pub t: Vec<f64>,
    pub g: Vec<f64>,
    pub g_prime: Vec<f64>,
}

struct Smoothstep {
    gl: GaussLegendre,
}

impl Smoothstep {
    fn new() -> Smoothstep {
        Smoothstep { gl: GaussLegendre::new(40).expect("degree >= 2") }
    }

    /// `A/(A+B)` with `A = ∫_0^u`, `B = ∫_u^1`, so the value stays in `[0,1]`.
    fn eval(&self, u: f64) -> f64 {
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            1.0
        } else {
            let a = self.gl.integrate(0.0, u, step_density);
            let b = self.gl.integrate(u, 1.0, step_density);
            a / (a + b)
        }
    }
}

pub fn cobordism_profile(epsilon: f64) -> Result<CobordismProfile> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let h = Smoothstep::new();
    let (a, b) = (-2.0 * epsilon, epsilon);
    let t: Vec<f64> = (0..SAMPLES).map(|i| a + (b - a) * i as f64 / (SAMPLES - 1) as f64).collect();
    let g_prime: Vec<f64> = t.iter().map(|&x| h.eval((x + epsilon) / epsilon)).collect();
    let gl = GaussLegendre::new(20).expect("degree >= 2");
    let mut g = vec![0.0];
    for w in t.windows(2) {
        let step = gl.integrate(w[0], w[1], |x| h.eval((x + epsilon) / epsilon));
        g.push(g.last().unwrap() + step);
    }
    Ok(CobordismProfile { epsilon, t, g, g_prime })
}

impl CobordismProfile {
    /// Points `(t, g'(t))` of the curve `z = t + i g'(t)`.
    pub fn curve(&self) -> Vec<[f64; 2]> {
        self.t.iter().zip(&self.g_prime).map(|(&t, &d)| [t, d]).collect()
    }

    /// `g' = 0` left of `−ε`, `g' = 1` right of 0, `g'` nondecreasing.
    pub fn invariants_hold(&self) -> bool {
        let e = self.epsilon;
        self.t.iter().zip(&self.g_prime).all(|(&t, &d)| (t >= -e || d == 0.0) && (t <= 0.0 || d == 1.0))
            && self.g_prime.windows(2).all(|w| w[1] >= w[0])
    }
}

pub fn polygon_moduli_dimension(n: i64, k: i64) -> Result<i64> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParameter(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
    }
    Ok((2 - n) * k - 3 + n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_convexity() {
        let p = cobordism_profile(0.1).unwrap();
        assert_eq!(p.g_prime[0], 0.0);
        assert_eq!(*p.g_prime.last().unwrap(), 1.0);
        assert!(p.invariants_hold());
        let fd: Vec<f64> = p.g.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(fd.windows(2).all(|w| w[1] >= w[0] - 1e-15));
        assert!(cobordism_profile(0.0).is_err());
    }

    #[test]
    fn index_formula() {
        assert_eq!(polygon_moduli_dimension(2, 1).unwrap(), -1);
        assert_eq!(polygon_moduli_dimension(3, 1).unwrap(), -1);
        assert_eq!(polygon_moduli_dimension(3, 2).unwrap(), -2);
        assert_eq!(polygon_moduli_dimension(1, 2).unwrap(), 0);
        for k in 1..20 {
            assert_eq!(polygon_moduli_dimension(2, k).unwrap(), -1);
        }
        assert!(polygon_moduli_dimension(0, 1).is_err());
    }
}
