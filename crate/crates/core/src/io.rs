//! JSON file formats. Output goes through `serde_json::Value`, whose maps are
//! ordered, so serialized keys are always sorted.

use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{Fan, PolyhedralComplex, TropicalPolynomial};
use crate::linalg::Q;
use crate::smoothing::{GridSpec, Mask};
use crate::subdivision::{ClassificationReport, LiftTopology, RegularSubdivision};
use crate::surgery::{LagrangianMesh, Sample};

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| Error::Parse { line: 0, column: 0, message: format!("not a rational: {s:?}") })
}

pub fn rational_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialFile {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFile {
    n: usize,
    monomials: Vec<MonomialFile>,
}

pub fn parse_polynomial(text: &str) -> Result<TropicalPolynomial> {
    let file: PolynomialFile = serde_json::from_str(text).map_err(parse_error)?;
    let terms = file
        .monomials
        .into_iter()
        .map(|m| Ok((m.exp, parse_rational(&m.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    TropicalPolynomial::new(file.n, terms)
}

pub fn polynomial_json(phi: &TropicalPolynomial) -> Value {
    json!({
        "n": phi.dim(),
        "monomials": phi.monomials().iter().map(|m| json!({"exp": m.exp, "coeff": rational_string(&m.coeff)})).collect::<Vec<_>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rays: Vec<Vec<i64>>,
    values: Vec<String>,
    #[serde(default)]
    cones: Option<Vec<Vec<usize>>>,
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    let file: FanFile = serde_json::from_str(text).map_err(parse_error)?;
    if file.rays.len() != file.values.len() {
        return Err(Error::Parse {
            line: 0,
            column: 0,
            message: format!("{} rays but {} values", file.rays.len(), file.values.len()),
        });
    }
    let values = file.values.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    Ok(Fan { rays: file.rays, values, cones: file.cones })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    bbox: [Vec<f64>; 2],
    h: f64,
}

pub fn parse_grid(text: &str) -> Result<GridSpec> {
    let file: GridFile = serde_json::from_str(text).map_err(parse_error)?;
    let [lo, hi] = file.bbox;
    GridSpec::new(lo, hi, file.h)
}

pub fn grid_json(g: &GridSpec) -> Value {
    json!({"bbox": [g.lo, g.hi], "h": g.h})
}

fn rationals(v: &[Q]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

pub fn complex_json(c: &PolyhedralComplex) -> Value {
    json!({
        "n": c.n,
        "cells": c.cells.iter().map(|cell| json!({
            "active": cell.active,
            "dim": cell.dim,
            "vertices": cell.vertices.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            "rays": cell.rays,
        })).collect::<Vec<_>>(),
    })
}

pub fn subdivision_json(s: &RegularSubdivision, report: &ClassificationReport) -> Value {
    let cells: Vec<Value> = s
        .cells
        .iter()
        .map(|c| {
            let flags = report.cells.iter().find(|k| k.cell == c.vertices && k.dim == c.dim);
            json!({
                "dim": c.dim,
                "vertices": c.vertices,
                "points": c.points,
                "smooth": flags.map(|f| f.smooth),
                "self_intersection": flags.map(|f| f.self_intersection),
            })
        })
        .collect();
    json!({
        "cells": cells,
        "heights": s.heights.iter().map(|(v, a)| json!({"exp": v, "coeff": rational_string(a)})).collect::<Vec<_>>(),
    })
}

pub fn classification_json(r: &ClassificationReport) -> Value {
    json!({
        "smooth": r.smooth,
        "total_self_intersections": r.total_self_intersections,
        "embedded_lift": r.embedded_lift,
    })
}

pub fn topology_json(t: &LiftTopology) -> Value {
    json!({
        "genus": t.genus.to_string(),
        "punctures": t.punctures,
        "self_intersections": t.self_intersections,
        "euler_characteristic": t.euler_characteristic,
    })
}

/// Run-length encoding of a mask, starting with a run of `false`.
pub fn mask_json(m: &Mask) -> Value {
    json!({"dims": m.dims, "runs": m.run_lengths()})
}

/// Mesh as JSON lines, one `{q, p, chart, region}` object per sample.
pub fn write_mesh_jsonl<W: Write>(mesh: &LagrangianMesh, mut out: W) -> std::io::Result<()> {
    for s in &mesh.samples {
        serde_json::to_writer(&mut out, &serde_json::to_value(s)?)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_mesh_jsonl(text: &str) -> Result<Vec<Sample>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, column: e.column(), message: e.to_string() })
        })
        .collect()
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::named;
    use crate::linalg::q;

    #[test]
    fn polynomial_round_trip() {
        let p = named::phi_t2(q(1));
        let text = polynomial_json(&p).to_string();
        assert_eq!(parse_polynomial(&text).unwrap(), p);
        let half = parse_polynomial(r#"{"n":1,"monomials":[{"exp":[0],"coeff":"-1/2"},{"exp":[1],"coeff":"3"}]}"#).unwrap();
        assert_eq!(half.coefficient(&[0]).unwrap(), &crate::linalg::q_frac(-1, 2));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_polynomial("{\"n\": 2,\n \"monomials\": [}").unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_polynomial(r#"{"n":2,"monomials":[]}"#).unwrap_err().code(), "E_EMPTY_POLYNOMIAL");
        assert_eq!(parse_polynomial(r#"{"n":1,"monomials":[{"exp":[0],"coeff":"x"}]}"#).unwrap_err().code(), "E_PARSE");
    }

    #[test]
    fn fan_and_grid() {
        let f = parse_fan(r#"{"rays":[[1,0],[0,1],[-1,-1]],"values":["0","0","1/3"]}"#).unwrap();
        assert_eq!(f.values[2], crate::linalg::q_frac(1, 3));
        assert!(parse_fan(r#"{"rays":[[1,0]],"values":[]}"#).is_err());
        let g = parse_grid(r#"{"bbox":[[-1,-1],[1,1]],"h":0.5}"#).unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(parse_grid(&grid_json(&g).to_string()).unwrap(), g);
    }

    #[test]
    fn keys_are_sorted() {
        let s = classification_json(&crate::subdivision::classify_polynomial(&named::phi_plus())).to_string();
        assert_eq!(s, r#"{"embedded_lift":true,"smooth":false,"total_self_intersections":0}"#);
    }
}
