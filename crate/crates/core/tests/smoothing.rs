use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplag_core::kernel::{distance_to_variety, named, newton_polytope, TropicalPolynomial};
use troplag_core::linalg::q;
use troplag_core::smoothing::{intersection_components, smooth, strata_regions, GridSpec, SmoothedField};

/// Carathéodory oracle: `x` lies in the hull of planar points iff it lies in a
/// triangle spanned by three of them (barycentric coordinates ≥ −tol).
fn in_hull_2d(points: &[Vec<i64>], x: &[f64], tol: f64) -> bool {
    let p: Vec<[f64; 2]> = points.iter().map(|v| [v[0] as f64, v[1] as f64]).collect();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            for k in j + 1..p.len() {
                let (a, b, c) = (p[i], p[j], p[k]);
                let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
                if det.abs() < 1e-12 {
                    continue;
                }
                let l1 = ((x[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (x[1] - a[1])) / det;
                let l2 = ((b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1])) / det;
                if l1 >= -tol && l2 >= -tol && 1.0 - l1 - l2 >= -tol {
                    return true;
                }
            }
        }
    }
    false
}

fn field(phi: &TropicalPolynomial, eps: f64, r: f64, h: f64) -> SmoothedField {
    smooth(phi, eps, &GridSpec::cube(phi.dim(), r, h).unwrap()).unwrap()
}

#[test]
fn midpoint_concavity_on_grid_triples() {
    let f = field(&named::phi_t2(q(1)), 0.05, 1.0, 0.05 / 8.0);
    let dims = f.grid().dims();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a: Vec<usize> = dims.iter().map(|&d| rng.gen_range(0..d)).collect();
        let b: Vec<usize> = a.iter().zip(&dims).map(|(&x, &d)| {
            let y = rng.gen_range(0..d);
            if (x + y) % 2 == 0 { y } else if y + 1 < d { y + 1 } else { y - 1 }
        }).collect();
        let m: Vec<usize> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2).collect();
        let g = f.grid();
        let (fa, fb, fm) = (f.grid_value(g.flat_index(&a)), f.grid_value(g.flat_index(&b)), f.grid_value(g.flat_index(&m)));
        worst = worst.max((fa + fb) / 2.0 - fm);
    }
    assert!(worst <= 1e-9, "concavity defect {worst}");
}

#[test]
fn gradients_lie_in_newton_polytope() {
    for phi in [named::phi_t2(q(1)), named::phi_t2(q(0)), named::phi_plus()] {
        let f = field(&phi, 0.05, 1.0, 0.05 / 4.0);
        let (_, z) = newton_polytope(&phi);
        for i in 0..f.grid().len() {
            assert!(in_hull_2d(&z, f.grid_gradient(i), 1e-9), "{:?}", f.grid_gradient(i));
        }
    }
}

#[test]
fn hull_lemma_against_local_gradients() {
    let phi = named::phi_t2(q(1));
    let f = field(&phi, 0.05, 1.0, 0.05);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let x = [rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)];
        let mut local: Vec<Vec<i64>> = Vec::new();
        for k in 0..400 {
            let r = 0.05 * ((k % 20) as f64 / 19.0);
            let t = (k / 20) as f64 * std::f64::consts::TAU / 20.0;
            let y = [x[0] + r * t.cos(), x[1] + r * t.sin()];
            let v = phi.monomials()[phi.eval_f64(&y).1].exp.clone();
            if !local.contains(&v) {
                local.push(v);
            }
        }
        let g = f.gradient(&x).unwrap();
        if local.len() >= 3 {
            assert!(in_hull_2d(&local, &g, 1e-6));
        } else if local.len() == 2 {
            let (a, b) = (&local[0], &local[1]);
            let d = [(b[0] - a[0]) as f64, (b[1] - a[1]) as f64];
            let cross = (g[0] - a[0] as f64) * d[1] - (g[1] - a[1] as f64) * d[0];
            assert!(cross.abs() < 1e-6);
        } else {
            assert!((g[0] - local[0][0] as f64).abs() < 1e-6 && (g[1] - local[0][1] as f64).abs() < 1e-6);
        }
    }
}

#[test]
fn exact_outside_neighbourhood() {
    let phi = named::phi_t2(q(1));
    let f = field(&phi, 0.05, 2.0, 0.05 / 2.0);
    for i in 0..f.grid().len() {
        let x = f.grid().point(i);
        if distance_to_variety(&phi, &x) > 0.05 {
            assert!((f.grid_value(i) - phi.eval_f64(&x).0).abs() <= 1e-12);
        }
    }
}

#[test]
fn single_exponent_region_inside_shrunk_region() {
    let phi = named::phi_t2(q(1));
    let eps = 0.05;
    let f = field(&phi, eps, 1.5, eps / 4.0);
    let mask = strata_regions(&f, &[vec![1, 0]]).unwrap();
    let v = phi.monomials().iter().position(|m| m.exp == vec![1, 0]).unwrap();
    for i in 0..f.grid().len() {
        let x = f.grid().point(i);
        let (_, arg) = phi.eval_f64(&x);
        let d = distance_to_variety(&phi, &x);
        if mask.data[i] {
            assert!(arg == v && d >= 0.9 * eps, "{x:?}");
        } else if arg == v {
            assert!(d <= eps + f.grid().h, "{x:?}");
        }
    }
}

#[test]
fn vertex_region_is_near_the_vertex() {
    let phi = named::phi_t2(q(1));
    let eps = 0.05;
    let f = field(&phi, eps, 1.5, eps / 4.0);
    let mask = strata_regions(&f, &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
    assert!(mask.count() > 0);
    for i in (0..f.grid().len()).filter(|&i| mask.data[i]) {
        let x = f.grid().point(i);
        let d = ((x[0] - 1.0).powi(2) + x[1].powi(2)).sqrt().min((x[0].powi(2) + (x[1] - 1.0).powi(2)).sqrt()).min(x[0].hypot(x[1]));
        // The smallest sector angle at the vertex is π/2, so a ball can meet
        // all three regions from up to ε/sin(π/4) away.
        assert!(d < eps * 2f64.sqrt(), "{x:?}");
    }
}

#[test]
fn acceptance_scale_components() {
    let g = GridSpec::cube(2, 2.0, 0.05 / 8.0).unwrap();
    let c1 = intersection_components(&smooth(&named::phi_t2(q(1)), 0.05, &g).unwrap()).unwrap();
    assert_eq!((c1.len(), c1.iter().filter(|c| c.open).count()), (4, 4));
    let c0 = intersection_components(&smooth(&named::phi_t2(q(0)), 0.05, &g).unwrap()).unwrap();
    assert_eq!((c0.len(), c0.iter().filter(|c| c.open).count()), (4, 3));
}

#[test]
fn oversized_epsilon_is_rejected() {
    let e = smooth(&named::phi_t2(q(1)), 0.6, &GridSpec::cube(2, 1.0, 0.1).unwrap()).unwrap_err();
    assert_eq!(e.code(), "E_EPSILON_TOO_LARGE");
}
