use gauss_quad::GaussLegendre;

use crate::error::{Error, Result};

const TABLE_SIZE: usize = 2048;
const ANGLES_2D: usize = 128;
const POLAR_3D: usize = 16;
const AZIMUTH_3D: usize = 32;

/// Unnormalized radial bump `exp(-1/(1-r²))` on `[0, 1)`.
pub fn bump(r: f64) -> f64 {
    if r >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - r * r)).exp()
    }
}

/// Radial moments `K_j(r) = ∫₀^r ρ(s) s^j ds` for `j = 0..=3`, tabulated on a
/// uniform grid and evaluated by cubic Hermite interpolation with the exact
/// derivative `ρ(r) r^j`.
#[derive(Clone, Debug)]
struct RadialTable {
    values: [Vec<f64>; 4],
    slopes: [Vec<f64>; 4],
}

impl RadialTable {
    fn new() -> RadialTable {
        let gl = GaussLegendre::new(12).expect("degree >= 2");
        let step = 1.0 / TABLE_SIZE as f64;
        let mut values: [Vec<f64>; 4] = Default::default();
        let mut slopes: [Vec<f64>; 4] = Default::default();
        for j in 0..4 {
            let mut acc = 0.0;
            values[j].push(0.0);
            for i in 0..TABLE_SIZE {
                let a = i as f64 * step;
                acc += gl.integrate(a, a + step, |s| bump(s) * s.powi(j as i32));
                values[j].push(acc);
            }
            slopes[j] = (0..=TABLE_SIZE).map(|i| {
                let r = i as f64 * step;
                bump(r) * r.powi(j as i32)
            }).collect();
        }
        RadialTable { values, slopes }
    }

    fn eval(&self, j: usize, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if r >= 1.0 {
            return self.values[j][TABLE_SIZE];
        }
        let x = r * TABLE_SIZE as f64;
        let i = (x.floor() as usize).min(TABLE_SIZE - 1);
        let t = x - i as f64;
        let h = 1.0 / TABLE_SIZE as f64;
        let (y0, y1) = (self.values[j][i], self.values[j][i + 1]);
        let (m0, m1) = (self.slopes[j][i] * h, self.slopes[j][i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * m1
    }
}

/// Radially symmetric bump of radius ε with a polar quadrature rule: a
/// symmetric set of unit directions with weights summing to one, and exact
/// radial integration of piecewise-linear integrands through [`RadialTable`].
#[derive(Clone, Debug)]
pub struct Mollifier {
    pub epsilon: f64,
    n: usize,
    directions: Vec<Vec<f64>>,
    weights: Vec<f64>,
    table: RadialTable,
}

impl Mollifier {
    pub fn new(n: usize, epsilon: f64) -> Result<Mollifier> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        let (directions, weights) = match n {
            1 => (vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5]),
            2 => {
                let m = ANGLES_2D;
                let dirs = (0..m)
                    .map(|j| {
                        let t = (2 * j + 1) as f64 * std::f64::consts::PI / m as f64;
                        vec![t.cos(), t.sin()]
                    })
                    .collect();
                (dirs, vec![1.0 / m as f64; m])
            }
            3 => {
                let gl = GaussLegendre::new(POLAR_3D).expect("degree >= 2");
                let mut dirs = Vec::new();
                let mut w = Vec::new();
                for &(z, wz) in gl.as_node_weight_pairs() {
                    let rho = (1.0 - z * z).sqrt();
                    for k in 0..AZIMUTH_3D {
                        let a = (2 * k + 1) as f64 * std::f64::consts::PI / AZIMUTH_3D as f64;
                        dirs.push(vec![rho * a.cos(), rho * a.sin(), z]);
                        w.push(wz / 2.0 / AZIMUTH_3D as f64);
                    }
                }
                (dirs, w)
            }
            _ => return Err(Error::UnsupportedDimension { required: "1, 2 or 3".into(), got: n }),
        };
        Ok(Mollifier { epsilon, n, directions, weights, table: RadialTable::new() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `K_j(r)` from the table.
    pub fn moment(&self, j: usize, r: f64) -> f64 {
        self.table.eval(j, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_one() {
        for n in 1..=3 {
            let m = Mollifier::new(n, 0.1).unwrap();
            assert!((m.weight_sum() - 1.0).abs() < 1e-10);
            let mut c = vec![0.0; n];
            for (d, w) in m.directions().iter().zip(&m.weights) {
                for k in 0..n {
                    c[k] += w * d[k];
                }
            }
            assert!(c.iter().all(|x| x.abs() < 1e-14), "{c:?}");
        }
        assert!(Mollifier::new(4, 0.1).is_err());
        assert!(Mollifier::new(2, 0.0).is_err());
    }

    #[test]
    fn table_matches_direct_quadrature() {
        let m = Mollifier::new(1, 0.1).unwrap();
        let gl = GaussLegendre::new(60).unwrap();
        for &r in &[0.1, 0.37, 0.5, 0.77, 0.93, 0.999] {
            for j in 0..4 {
                let direct = gl.integrate(0.0, r, |s| bump(s) * s.powi(j as i32));
                assert!((m.moment(j, r) - direct).abs() < 1e-13, "j={j} r={r}");
            }
        }
    }
}
