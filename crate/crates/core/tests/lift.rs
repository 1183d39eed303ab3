use troplag_core::kernel::{named, tropical_variety, Fan, TropicalPolynomial};
use troplag_core::linalg::{q, to_f64};
use troplag_core::smoothing::{circle_dist, smooth, GridSpec};
use troplag_core::surgery::checks::rotate_fibers;
use troplag_core::surgery::*;

const EPS: f64 = 0.05;

fn mesh(phi: &TropicalPolynomial, grid: GridSpec) -> LagrangianMesh {
    lift(phi, &LiftParams { epsilon: EPS, grid, shape: Shape::default(), c: None }).unwrap()
}

fn wide(phi: &TropicalPolynomial) -> LagrangianMesh {
    let h = if phi.dim() == 1 { EPS / 1024.0 } else { EPS / 8.0 };
    mesh(phi, GridSpec::cube(phi.dim(), 2.0, h).unwrap())
}

/// Dense sampling of the 1-cells of a planar tropical curve, clipped to a box.
fn curve_points(phi: &TropicalPolynomial, r: f64, step: f64) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for cell in tropical_variety(phi).cells_of_dim(1) {
        let a: Vec<f64> = cell.vertices[0].iter().map(to_f64).collect();
        let (dir, len) = if cell.vertices.len() == 2 {
            let b: Vec<f64> = cell.vertices[1].iter().map(to_f64).collect();
            ([b[0] - a[0], b[1] - a[1]], 1.0)
        } else {
            let d = &cell.rays[0];
            let nrm = (d[0] as f64).hypot(d[1] as f64);
            ([d[0] as f64 / nrm, d[1] as f64 / nrm], 4.0 * r)
        };
        let speed = dir[0].hypot(dir[1]);
        let k = (len * speed / step).ceil() as usize;
        for i in 0..=k {
            let t = len * i as f64 / k as f64;
            let p = [a[0] + t * dir[0], a[1] + t * dir[1]];
            if p[0].abs() <= r && p[1].abs() <= r {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn valuation_kink_matches_brute_force() {
    let m = wide(&named::kink());
    let rep = valuation_projection_check(&m);
    // V = {0}: brute-force pairwise distances reduce to |q|.
    let far = m.samples.iter().map(|s| s.q[0].abs()).fold(0.0, f64::max);
    let near = m.samples.iter().map(|s| s.q[0].abs()).fold(f64::INFINITY, f64::min);
    assert!((rep.mesh_to_variety - far).abs() < 1e-12);
    assert!(rep.variety_to_mesh <= near + 1e-12);
    assert!(rep.hausdorff <= 2.0 * EPS && rep.pass, "{rep:?}");
}

#[test]
fn valuation_elliptic_curve_matches_brute_force() {
    let phi = named::phi_t2(q(1));
    let m = wide(&phi);
    let rep = valuation_projection_check(&m);
    let curve = curve_points(&phi, 2.0, 0.002);
    let qs: Vec<[f64; 2]> = m.samples.iter().map(|s| [s.q[0], s.q[1]]).collect();
    let dist = |a: &[f64; 2], b: &[f64; 2]| (a[0] - b[0]).hypot(a[1] - b[1]);
    let v_to_m = curve.iter().map(|y| qs.iter().map(|x| dist(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    let m_to_v = qs.iter().map(|x| curve.iter().map(|y| dist(x, y)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    let oracle = v_to_m.max(m_to_v);
    // Both sides sample V at spacing ≤ h, so they agree to one grid step.
    assert!((rep.hausdorff - oracle).abs() <= m.grid.h, "{} vs {oracle}", rep.hausdorff);
    assert!(rep.pass && oracle <= 2.0 * EPS, "{rep:?}");
}

#[test]
fn empty_mesh_checks_are_vacuous() {
    let phi = TropicalPolynomial::from_ints(2, &[(&[2, 1], 0)]).unwrap();
    let m = mesh(&phi, GridSpec::cube(2, 1.0, 0.1).unwrap());
    assert!(m.is_empty());
    assert_eq!(valuation_projection_check(&m).hausdorff, 0.0);
    assert!(argument_projection_check(&m, None).pass);
}

#[test]
fn argument_kink_covers_circle() {
    let rep = argument_projection_check(&wide(&named::kink()), None);
    assert_eq!(rep.target_cells, 64);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn argument_elliptic_curve_bounded_window() {
    let grid = GridSpec::new(vec![-0.3, -0.3], vec![1.3, 1.3], EPS / 32.0).unwrap();
    let rep = argument_projection_check(&mesh(&named::phi_t2(q(1)), grid), None);
    assert_eq!(rep.target_cells, 32 * 32);
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn argument_target_of_a_segment_is_thin() {
    // Δ = [(0,0),(1,0)]: π(−Δ) is the circle p2 = 0.
    let phi = TropicalPolynomial::from_ints(2, &[(&[0, 0], 0), (&[1, 0], 0)]).unwrap();
    let t = troplag_core::surgery::checks::argument_target(&phi, 16);
    assert_eq!(t.iter().filter(|&&b| b).count(), 16 * 2);
}

#[test]
fn admissibility_positive_controls() {
    let line = wide(&named::tropical_line());
    let rep = admissibility_check(&line, &Fan::projective_plane(vec![q(0); 3]), 0.1, 1.0).unwrap();
    assert!(rep.pass && rep.rays.iter().all(|r| r.samples > 0), "{rep:?}");

    let phi = named::phi_t2(q(1));
    let m = wide(&phi);
    let legs = Fan::new(vec![vec![-1, -1], vec![2, -1], vec![-1, 2]], vec![q(0); 3]);
    // Beyond radius 1.5 only the legs remain; closer in, the vertex (1,0) has 2D fibers.
    let rep = admissibility_check(&m, &legs, 0.1, 1.5).unwrap();
    assert!(rep.pass, "{rep:?}");

    // σ_0 alone: the s-chart where it agrees with the zero section.
    let mut zero = m.clone();
    zero.samples.retain(|s| s.chart == Chart::S && s.level >= 2.0 * m.c);
    let rep = admissibility_check(&zero, &Fan::projective_plane(vec![q(0); 3]), 0.1, 1.0).unwrap();
    assert_eq!(rep.max_deviation, 0.0);
}

#[test]
fn admissibility_elliptic_curve_against_projective_plane() {
    // The (2,−1) leg sweeps t(1,2) mod 1 inside the region of the ray (1,0),
    // so ⟨(1,0),p⟩ is not integral there.
    let m = wide(&named::phi_t2(q(1)));
    let rep = admissibility_check(&m, &Fan::projective_plane(vec![q(0); 3]), 0.1, 1.5).unwrap();
    assert!(!rep.pass);
    assert!((rep.max_deviation - 0.5).abs() < 0.05, "{rep:?}");
}

#[test]
fn rotated_mesh_fails_admissibility() {
    let m = rotate_fibers(&wide(&named::tropical_line()), 0, 0.3);
    let rep = admissibility_check(&m, &Fan::projective_plane(vec![q(0); 3]), 0.1, 1.0).unwrap();
    assert!(!rep.pass);
    assert!((rep.max_deviation - 0.3).abs() < 1e-9, "{rep:?}");
}

#[test]
fn fan_regions_outside_their_star_are_rejected() {
    let m = wide(&named::tropical_line());
    let e = admissibility_check(&m, &Fan::projective_plane(vec![q(5), q(0), q(0)]), 0.1, 1.0).unwrap_err();
    assert_eq!(e.code(), "E_FAN_COVERING");
}

#[test]
fn far_field_fibers_lie_in_subtori() {
    for phi in [named::phi_t2(q(1)), named::tropical_line()] {
        let rep = far_field_subtorus(&wide(&phi), 1.5).unwrap();
        assert!(rep.samples > 0 && rep.max_deviation <= 1e-8, "{rep:?}");
    }
}

#[test]
fn fiber_closes_to_circle_over_bounded_edge() {
    let phi = named::phi_t2(q(1));
    // The neck has a vertical tangent at f = c, so the fiber parameter moves
    // fast there; a local grid at ε/32 resolves it.
    let m = mesh(&phi, GridSpec::new(vec![0.3, -0.2], vec![0.7, 0.2], EPS / 32.0).unwrap());
    let rep = fiber_circle(&m, &[0.5, 0.0], &[0, 1], &[0, 0], 0.05).unwrap();
    assert!(rep.pass, "{rep:?}");
    // Diagonal edge x1 + x2 = 1, dual to [(0,0),(−1,−1)].
    let m = mesh(&phi, GridSpec::new(vec![0.3, 0.3], vec![0.7, 0.7], EPS / 32.0).unwrap());
    let rep = fiber_circle(&m, &[0.5, 0.5], &[0, 0], &[-1, -1], 0.05).unwrap();
    assert!(rep.pass, "{rep:?}");
    // The coarse wide mesh still puts every fiber on the circle.
    let rep = fiber_circle(&wide(&phi), &[0.5, 0.0], &[0, 1], &[0, 0], 0.05).unwrap();
    assert!(rep.off_circle <= 1e-8 && rep.samples > 0);
}

#[test]
fn chart_agreement_at_scale() {
    let phi = named::phi_t2(q(1));
    let grid = GridSpec::cube(2, 2.0, EPS / 8.0).unwrap();
    let field = smooth(&phi, EPS, &grid).unwrap();
    let m = lift_field(&field, &LiftParams { epsilon: EPS, grid, shape: Shape::default(), c: None }).unwrap();
    assert!(chart_agreement(&m, &field) <= 1e-8);
    let s = m.samples.iter().find(|s| s.level >= 2.0 * m.c && s.chart == Chart::S).unwrap();
    assert!(s.p.iter().all(|x| circle_dist(*x, 0.0) <= 1e-8));
}
