use crate::error::{Error, Result};
use crate::kernel::{tropical_variety, TropicalPolynomial, VarietyCell};
use crate::linalg::to_f64;

/// Stand-in length for rays when measuring distances between cells.
const FAR: f64 = 1e6;

/// ε-preflight: every ball of radius ε meets at most one vertex of `V(φ)`,
/// and for n = 2 it meets no two disjoint cells.
pub fn preflight(phi: &TropicalPolynomial, epsilon: f64) -> Result<()> {
    let complex = tropical_variety(phi);
    let vertices: Vec<Vec<f64>> =
        complex.cells_of_dim(0).map(|c| c.vertices[0].iter().map(to_f64).collect()).collect();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let d = dist(&vertices[i], &vertices[j]);
            if d <= 2.0 * epsilon {
                return Err(Error::EpsilonTooLarge {
                    epsilon,
                    center: midpoint(&vertices[i], &vertices[j]),
                    what: "two vertices of V(φ)".into(),
                });
            }
        }
    }
    if phi.dim() != 2 {
        return Ok(());
    }
    let cells: Vec<&VarietyCell> = complex.cells.iter().collect();
    let segs: Vec<(Vec<f64>, Vec<f64>)> = cells.iter().map(|c| as_segment(c)).collect();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if cells[i].vertices.iter().any(|v| cells[j].vertices.contains(v)) {
                continue;
            }
            let (d, p, q) = segment_distance(&segs[i], &segs[j]);
            if d <= 2.0 * epsilon {
                return Err(Error::EpsilonTooLarge {
                    epsilon,
                    center: midpoint(&p, &q),
                    what: format!("disjoint strata with active sets {:?} and {:?}", cells[i].active, cells[j].active),
                });
            }
        }
    }
    Ok(())
}

fn as_segment(c: &VarietyCell) -> (Vec<f64>, Vec<f64>) {
    let v: Vec<Vec<f64>> = c.vertices.iter().map(|p| p.iter().map(to_f64).collect()).collect();
    let ray = |base: &[f64], r: &[i64]| -> Vec<f64> { base.iter().zip(r).map(|(b, d)| b + FAR * *d as f64).collect() };
    match (v.len(), c.rays.len()) {
        (1, 0) => (v[0].clone(), v[0].clone()),
        (2, _) => (v[0].clone(), v[1].clone()),
        (1, 1) => (v[0].clone(), ray(&v[0], &c.rays[0])),
        (1, _) => (ray(&v[0], &c.rays[0]), ray(&v[0], &c.rays[1])),
        _ => (v[0].clone(), v[0].clone()),
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect()
}

fn closest_on_segment(p: &[f64], a: &[f64], b: &[f64]) -> Vec<f64> {
    let ab: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let len2: f64 = ab.iter().map(|x| x * x).sum();
    if len2 == 0.0 {
        return a.to_vec();
    }
    let t = (p.iter().zip(a).zip(&ab).map(|((p, a), d)| (p - a) * d).sum::<f64>() / len2).clamp(0.0, 1.0);
    a.iter().zip(&ab).map(|(a, d)| a + t * d).collect()
}

/// Distance between two planar segments and a closest pair.
fn segment_distance(s: &(Vec<f64>, Vec<f64>), t: &(Vec<f64>, Vec<f64>)) -> (f64, Vec<f64>, Vec<f64>) {
    let cross = |o: &[f64], a: &[f64], b: &[f64]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let (a, b) = (&s.0, &s.1);
    let (c, d) = (&t.0, &t.1);
    let d1 = cross(a, b, c);
    let d2 = cross(a, b, d);
    let d3 = cross(c, d, a);
    let d4 = cross(c, d, b);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        let t = d3 / (d3 - d4);
        let p: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
        return (0.0, p.clone(), p);
    }
    let candidates = [
        (a.clone(), closest_on_segment(a, c, d)),
        (b.clone(), closest_on_segment(b, c, d)),
        (closest_on_segment(c, a, b), c.clone()),
        (closest_on_segment(d, a, b), d.clone()),
    ];
    candidates
        .into_iter()
        .map(|(p, q)| (dist(&p, &q), p, q))
        .min_by(|x, y| x.0.partial_cmp(&y.0).unwrap())
        .unwrap()
}
