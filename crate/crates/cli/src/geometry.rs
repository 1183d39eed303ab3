//! `analyze`, `lift`, `profiles`, `cobordism` and `index`.

use serde_json::{json, Value};
use troplag_core::io::{
    classification_json, complex_json, grid_json, parse_fan, parse_polynomial, polynomial_json, subdivision_json,
    topology_json, write_mesh_jsonl,
};
use troplag_core::kernel::{tropical_variety, Fan, PolyhedralComplex, TropicalPolynomial};
use troplag_core::linalg::{q, to_f64};
use troplag_core::smoothing::smooth;
use troplag_core::subdivision::{classify_subdivision, dual_subdivision, lift_topology, RegularSubdivision};
use troplag_core::surgery::checks::argument_target;
use troplag_core::surgery::{
    admissibility_check, argument_projection_check, check_profile, cobordism_profile, lift_field, make_profile,
    polygon_moduli_dimension, profile_flux, valuation_projection_check, Chart, ConvexPrimitive, LagrangianMesh,
    LiftParams, ProfileFamily, Shape,
};

use crate::config::{read_input, RunConfig};
use crate::error::{CliError, CliResult};
use crate::svg::{clip_ray, Canvas, Panel};
use crate::Outcome;

/// Flux and neck width are compared to this tolerance.
pub const FLUX_TOL: f64 = 1e-6;

fn svg_notice(n: usize) -> String {
    format!("svg disabled for n = {n}; raw data only")
}

pub fn analyze(text: &str) -> CliResult<Outcome> {
    let phi = parse_polynomial(text)?;
    let n = phi.dim();
    let variety = tropical_variety(&phi);
    let sub = dual_subdivision(&phi);
    let class = classify_subdivision(&sub);
    let topology = if n == 2 { topology_json(&lift_topology(&phi)?) } else { Value::Null };
    let mut notices = vec![];
    let mut files = vec![];
    if n <= 2 {
        files.push(("analyze.svg".to_string(), analyze_svg(&phi, &variety, &sub).into_bytes()));
    } else {
        notices.push(svg_notice(n));
    }
    let report = json!({
        "polynomial": polynomial_json(&phi),
        "tropical_variety": complex_json(&variety),
        "dual_subdivision": subdivision_json(&sub, &class),
        "classification": classification_json(&class),
        "lift_topology": topology,
        "notices": notices,
    });
    Ok(Outcome { report, files, pass: true })
}

fn point2(v: &[f64]) -> [f64; 2] {
    [v[0], v.get(1).copied().unwrap_or(0.0)]
}

/// Window around the bounded part of the variety, at least `[−2, 2]²`.
fn variety_window(variety: &PolyhedralComplex) -> ([f64; 2], [f64; 2]) {
    let (mut lo, mut hi) = ([-1.0f64, -1.0], [1.0f64, 1.0]);
    for cell in &variety.cells {
        for v in &cell.vertices {
            let p = point2(&v.iter().map(to_f64).collect::<Vec<_>>());
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    ([lo[0] - 1.0, lo[1] - 1.0], [hi[0] + 1.0, hi[1] + 1.0])
}

fn draw_variety(canvas: &mut Canvas, panel: &Panel, variety: &PolyhedralComplex, lo: [f64; 2], hi: [f64; 2]) {
    for cell in &variety.cells {
        let verts: Vec<[f64; 2]> = cell.vertices.iter().map(|v| point2(&v.iter().map(to_f64).collect::<Vec<_>>())).collect();
        match (variety.n, cell.dim) {
            (1, 0) | (2, 0) => canvas.dot(panel, verts[0], 3.0, "black"),
            (2, 1) if verts.len() == 2 => canvas.line(panel, verts[0], verts[1], "black", 2.0),
            (2, 1) => {
                for r in &cell.rays {
                    if let Some(end) = clip_ray(verts[0], [r[0] as f64, r[1] as f64], lo, hi) {
                        canvas.line(panel, verts[0], end, "black", 2.0);
                    }
                }
            }
            _ => {}
        }
    }
}

fn analyze_svg(phi: &TropicalPolynomial, variety: &PolyhedralComplex, sub: &RegularSubdivision) -> String {
    let mut canvas = Canvas::new();
    let (lo, hi) = if phi.dim() == 1 {
        let (l, h) = variety_window(variety);
        ([l[0], -1.0], [h[0], 1.0])
    } else {
        variety_window(variety)
    };
    let left = canvas.panel(lo, hi, "tropical variety V(phi)");
    draw_variety(&mut canvas, &left, variety, lo, hi);

    let pts: Vec<[f64; 2]> = phi.exponents().iter().map(|v| point2(&v.iter().map(|&a| a as f64).collect::<Vec<_>>())).collect();
    let (mut plo, mut phi_hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &pts {
        for k in 0..2 {
            plo[k] = plo[k].min(p[k]);
            phi_hi[k] = phi_hi[k].max(p[k]);
        }
    }
    let right = canvas.panel([plo[0] - 0.5, plo[1] - 0.5], [phi_hi[0] + 0.5, phi_hi[1] + 0.5], "dual subdivision");
    for cell in sub.cells.iter().filter(|c| c.dim == 1) {
        let a = point2(&cell.vertices[0].iter().map(|&x| x as f64).collect::<Vec<_>>());
        let b = point2(&cell.vertices[cell.vertices.len() - 1].iter().map(|&x| x as f64).collect::<Vec<_>>());
        canvas.line(&right, a, b, "#1f5fa8", 2.0);
    }
    let (all, _) = sub.polytope.lattice_points();
    for v in &all {
        canvas.dot(&right, point2(&v.iter().map(|&x| x as f64).collect::<Vec<_>>()), 2.0, "#999");
    }
    for (v, a) in &sub.heights {
        let p = point2(&v.iter().map(|&x| x as f64).collect::<Vec<_>>());
        canvas.dot(&right, p, 4.0, "#1f5fa8");
        canvas.label(&right, p, &troplag_core::io::rational_string(a));
    }
    canvas.finish()
}

/// Fan of projective space: `e_1, …, e_n, −Σe_i` with every n-subset a cone.
pub fn projective_fan(n: usize) -> Fan {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    Fan { rays, values: vec![q(0); n + 1], cones: Some(cones) }
}

pub fn lift(text: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let phi = parse_polynomial(text)?;
    let n = phi.dim();
    let grid = cfg.grid(n)?;
    let eps = cfg.epsilon();
    let field = smooth(&phi, eps, &grid)?;
    let mesh = lift_field(&field, &LiftParams { epsilon: eps, grid: grid.clone(), shape: Shape::default(), c: cfg.c })?;
    let fan = match &cfg.fan {
        Some(path) => parse_fan(&read_input(path)?)?,
        None => projective_fan(n),
    };
    let valuation = valuation_projection_check(&mesh);
    let argument = argument_projection_check(&mesh, None);
    let admissibility = admissibility_check(&mesh, &fan, cfg.delta.unwrap_or(0.1), cfg.radius.unwrap_or(1.5))?;
    let pass = valuation.pass && argument.pass && admissibility.pass;

    let mut jsonl = Vec::new();
    write_mesh_jsonl(&mesh, &mut jsonl)?;
    let mut files = vec![("mesh.jsonl".to_string(), jsonl)];
    let mut notices = vec![];
    if n <= 2 {
        files.push(("lift.svg".to_string(), lift_svg(&mesh).into_bytes()));
    } else {
        notices.push(svg_notice(n));
    }
    let report = json!({
        "epsilon": eps,
        "c": mesh.c,
        "grid": grid_json(&grid),
        "samples": mesh.samples.len(),
        "double_points": mesh.double_points.iter().map(|(v, x)| json!({"lattice_point": v, "at": x})).collect::<Vec<_>>(),
        "checks": {
            "valuation": serde_json::to_value(&valuation)?,
            "argument": serde_json::to_value(&argument)?,
            "admissibility": serde_json::to_value(&admissibility)?,
        },
        "notices": notices,
        "pass": pass,
    });
    Ok(Outcome { report, files, pass })
}

/// At most this many base points are drawn.
const MAX_DRAWN: usize = 20_000;

fn lift_svg(mesh: &LagrangianMesh) -> String {
    let mut canvas = Canvas::new();
    let g = &mesh.grid;
    let stride = mesh.samples.len().div_ceil(MAX_DRAWN).max(1);
    if mesh.dim() == 1 {
        let left = canvas.panel([g.lo[0], 0.0], [g.hi[0], 1.0], "L(phi): base q against fiber p");
        for s in mesh.samples.iter().step_by(stride) {
            let color = if s.chart == Chart::R { "#c0392b" } else { "#1f5fa8" };
            canvas.dot(&left, [s.q[0], s.p[0]], 1.0, color);
        }
    } else {
        let (lo, hi) = ([g.lo[0], g.lo[1]], [g.hi[0], g.hi[1]]);
        let left = canvas.panel(lo, hi, "base points of L(phi) over V(phi)");
        for s in mesh.samples.iter().step_by(stride) {
            let color = if s.chart == Chart::R { "#e6a19a" } else { "#9bb8de" };
            canvas.dot(&left, [s.q[0], s.q[1]], 0.8, color);
        }
        draw_variety(&mut canvas, &left, &tropical_variety(&mesh.phi), lo, hi);

        let res = 32;
        let right = canvas.panel([0.0, 0.0], [1.0, 1.0], "argument raster on T^2 (grey: target)");
        let target = argument_target(&mesh.phi, res);
        let mut hit = vec![false; res * res];
        for s in &mesh.samples {
            let i = |x: f64| ((x.rem_euclid(1.0) * res as f64) as usize).min(res - 1);
            hit[i(s.p[0]) * res + i(s.p[1])] = true;
        }
        let size = 1.0 / res as f64;
        for idx in 0..res * res {
            let corner = [(idx / res) as f64 * size, (idx % res) as f64 * size];
            let color = match (target[idx], hit[idx]) {
                (_, true) => "#1f5fa8",
                (true, false) => "#ddd",
                (false, false) => continue,
            };
            canvas.cell(&right, corner, [size, size], color);
        }
    }
    canvas.finish()
}

pub fn profiles(c: f64, kappas: &[f64]) -> CliResult<Outcome> {
    let mut rows = vec![];
    let mut pass = true;
    let mut canvas = Canvas::new();
    let left = canvas.panel([c, -c], [3.0 * c, 3.0 * c], "profiles r(t), s(t)");
    let mut curves = vec![];
    let colors = ["#c0392b", "#1f5fa8", "#27ae60", "#8e44ad"];
    for (i, &kappa) in kappas.iter().enumerate() {
        let p = make_profile(c, &Shape { kappa })?;
        let check = check_profile(&p);
        let flux = profile_flux(&ProfileFamily::to_identity(p.clone()), &ConvexPrimitive::quadratic())?;
        pass &= check.pass;
        rows.push(json!({
            "kappa": kappa,
            "c": c,
            "neck_width": p.neck_width,
            "shape_integral": p.shape_integral(),
            "check": serde_json::to_value(&check)?,
            "flux": serde_json::to_value(&flux)?,
            "flux_matches_neck_width": (flux.flux.abs() - p.neck_width.abs()).abs() <= FLUX_TOL,
        }));
        let color = colors[i % colors.len()];
        let r: Vec<[f64; 2]> = p.t.iter().zip(&p.r).map(|(&t, &r)| [t, r]).collect();
        let s: Vec<[f64; 2]> = p.t.iter().zip(&p.s).map(|(&t, &s)| [t, s]).collect();
        canvas.polyline(&left, &r, color, 1.5);
        canvas.polyline(&left, &s, color, 1.5);
        curves.push((p, color));
    }
    let right = canvas.panel([c, 0.0], [2.0 * c, 1.0], "neck: r' (upper) and s' (lower)");
    for (p, color) in &curves {
        let pts: Vec<[f64; 2]> = (0..=400).map(|k| p.neck_curve(-1.0 + 2.0 * k as f64 / 400.0).0).collect();
        canvas.polyline(&right, &pts, color, 1.5);
    }
    let report = json!({"profiles": rows, "pass": pass});
    Ok(Outcome { report, files: vec![("profiles.svg".into(), canvas.finish().into_bytes())], pass })
}

pub fn cobordism(epsilon: f64) -> CliResult<Outcome> {
    let p = cobordism_profile(epsilon)?;
    let pass = p.invariants_hold();
    let curve = p.curve();
    let mut canvas = Canvas::new();
    let panel = canvas.panel([-2.0 * epsilon, -0.25], [epsilon, 1.25], "z(t) = t + i g'(t)");
    canvas.polyline(&panel, &curve, "#1f5fa8", 2.0);
    canvas.line(&panel, [-epsilon, -0.25], [-epsilon, 1.25], "#bbb", 1.0);
    canvas.line(&panel, [0.0, -0.25], [0.0, 1.25], "#bbb", 1.0);
    let step = (curve.len() / 200).max(1);
    let report = json!({
        "epsilon": epsilon,
        "invariants_hold": pass,
        "curve": curve.iter().step_by(step).collect::<Vec<_>>(),
        "pass": pass,
    });
    Ok(Outcome { report, files: vec![("cobordism.svg".into(), canvas.finish().into_bytes())], pass })
}

pub fn index(n: i64, k: i64) -> CliResult<Outcome> {
    let d = polygon_moduli_dimension(n, k)?;
    Ok(Outcome { report: json!({"n": n, "k": k, "dimension": d, "negative": d < 0}), files: vec![], pass: true })
}

pub fn parse_kappas(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::new("E_CONFIG", format!("bad kappa {x:?}"))))
        .collect()
}
