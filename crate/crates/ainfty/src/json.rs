//! JSON formats for algebras, homomorphisms, elements and reports.
//!
//! ```json
//! {"field": "F2", "cutoff": "10", "kmax": 6,
//!  "basis": [{"name": "x", "deg": 1}, {"name": "y", "deg": 2}],
//!  "maps": {"m2": [{"in": ["x", "x"], "out": [{"b": "y", "c": "T^1"}]}]}}
//! ```
//!
//! `field` defaults to F2 and `kmax` to 6. A homomorphism file has
//! `source`, `target` and `maps` with `f<k>` keys.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{ArityDefect, Element, FilteredAlgebra, MapTable, RelationReport};
use crate::error::{Error, Result};
use crate::hom::AInftyHom;
use crate::novikov::{exp_string, parse_exp, Coeff, NovikovScalar};
use crate::DEFAULT_KMAX;

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

fn schema(message: String) -> Error {
    Error::Parse { line: 0, column: 0, message }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    name: String,
    deg: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    b: String,
    c: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    #[serde(rename = "in")]
    input: Vec<String>,
    out: Vec<TermFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    field: Option<String>,
    cutoff: String,
    #[serde(default)]
    kmax: Option<usize>,
    basis: Vec<BasisFile>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<EntryFile>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HomFile {
    #[serde(default)]
    field: Option<String>,
    source: serde_json::Value,
    target: serde_json::Value,
    #[serde(default)]
    maps: BTreeMap<String, Vec<EntryFile>>,
}

/// Coefficient field named in a file: `"F2"` (default) or `"Q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    F2,
    Q,
}

pub fn field_of(text: &str) -> Result<Field> {
    let v: Value = serde_json::from_str(text).map_err(parse_error)?;
    match v.get("field").and_then(Value::as_str) {
        None | Some("F2") => Ok(Field::F2),
        Some("Q") => Ok(Field::Q),
        Some(other) => Err(schema(format!("unknown field {other:?}"))),
    }
}

fn check_field<C: Coeff>(field: &Option<String>) -> Result<()> {
    let name = field.as_deref().unwrap_or("F2");
    if name != C::NAME {
        return Err(schema(format!("file declares field {name}, expected {}", C::NAME)));
    }
    Ok(())
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| schema(format!("unknown basis element {name:?}")))
}

fn parse_terms<C: Coeff>(terms: &[TermFile], names: &[String], cutoff: &crate::Exp) -> Result<Element<C>> {
    let mut e = Element::zero(names.len(), cutoff);
    for t in terms {
        let i = lookup(names, &t.b)?;
        let c = NovikovScalar::parse(&t.c, cutoff)?;
        e.set(i, e.coeff(i).checked_add(&c)?);
    }
    Ok(e)
}

fn parse_maps<C: Coeff>(
    maps: &BTreeMap<String, Vec<EntryFile>>,
    prefix: char,
    in_names: &[String],
    out_names: &[String],
    cutoff: &crate::Exp,
) -> Result<Vec<MapTable<C>>> {
    let mut out: Vec<MapTable<C>> = Vec::new();
    for (key, entries) in maps {
        let k: usize = key
            .strip_prefix(prefix)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| schema(format!("map key {key:?} is not {prefix}<k>")))?;
        if out.len() <= k {
            out.resize_with(k + 1, BTreeMap::new);
        }
        for entry in entries {
            if entry.input.len() != k {
                return Err(schema(format!("{key} entry has {} inputs", entry.input.len())));
            }
            let tuple = entry.input.iter().map(|n| lookup(in_names, n)).collect::<Result<Vec<_>>>()?;
            let val = parse_terms(&entry.out, out_names, cutoff)?;
            let slot = out[k].entry(tuple).or_insert_with(|| Element::zero(out_names.len(), cutoff));
            slot.add_assign(&val);
        }
    }
    Ok(out)
}

fn algebra_from_value<C: Coeff>(v: Value) -> Result<FilteredAlgebra<C>> {
    let file: AlgebraFile = serde_json::from_value(v).map_err(|e| schema(e.to_string()))?;
    algebra_from_file(file)
}

fn algebra_from_file<C: Coeff>(file: AlgebraFile) -> Result<FilteredAlgebra<C>> {
    check_field::<C>(&file.field)?;
    let cutoff = parse_exp(&file.cutoff).ok_or_else(|| schema(format!("bad cutoff {:?}", file.cutoff)))?;
    let names: Vec<String> = file.basis.iter().map(|b| b.name.clone()).collect();
    let maps = parse_maps(&file.maps, 'm', &names, &names, &cutoff)?;
    let basis = file.basis.into_iter().map(|b| (b.name, b.deg)).collect();
    FilteredAlgebra::new(basis, cutoff, file.kmax.unwrap_or(DEFAULT_KMAX), maps)
}

pub fn parse_algebra<C: Coeff>(text: &str) -> Result<FilteredAlgebra<C>> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(parse_error)?;
    algebra_from_file(file)
}

pub fn parse_hom<C: Coeff>(text: &str) -> Result<AInftyHom<C>> {
    let file: HomFile = serde_json::from_str(text).map_err(parse_error)?;
    check_field::<C>(&file.field)?;
    let source: FilteredAlgebra<C> = algebra_from_value(file.source)?;
    let target: FilteredAlgebra<C> = algebra_from_value(file.target)?;
    let maps = parse_maps(&file.maps, 'f', source.names(), target.names(), source.cutoff())?;
    AInftyHom::new(source, target, maps)
}

/// An element as a list of `{"b", "c"}` terms.
pub fn parse_element<C: Coeff>(text: &str, a: &FilteredAlgebra<C>) -> Result<Element<C>> {
    let terms: Vec<TermFile> = serde_json::from_str(text).map_err(parse_error)?;
    parse_terms(&terms, a.names(), a.cutoff())
}

pub fn element_json<C: Coeff>(e: &Element<C>, names: &[String]) -> Value {
    Value::Array(e.support().map(|(i, c)| json!({"b": names[i], "c": c.to_string()})).collect())
}

fn maps_json<C: Coeff>(maps: &[MapTable<C>], prefix: char, in_names: &[String], out_names: &[String]) -> Value {
    let mut out = serde_json::Map::new();
    for (k, table) in maps.iter().enumerate() {
        if table.is_empty() {
            continue;
        }
        let entries: Vec<Value> = table
            .iter()
            .map(|(key, val)| {
                json!({
                    "in": key.iter().map(|&i| in_names[i].clone()).collect::<Vec<_>>(),
                    "out": element_json(val, out_names),
                })
            })
            .collect();
        out.insert(format!("{prefix}{k}"), Value::Array(entries));
    }
    Value::Object(out)
}

pub fn algebra_json<C: Coeff>(a: &FilteredAlgebra<C>) -> Value {
    json!({
        "field": C::NAME,
        "cutoff": exp_string(a.cutoff()),
        "kmax": a.kmax(),
        "basis": a.names().iter().zip(a.degrees()).map(|(n, d)| json!({"name": n, "deg": d})).collect::<Vec<_>>(),
        "maps": maps_json(a.maps(), 'm', a.names(), a.names()),
    })
}

pub fn hom_json<C: Coeff>(f: &AInftyHom<C>) -> Value {
    json!({
        "field": C::NAME,
        "source": algebra_json(f.source()),
        "target": algebra_json(f.target()),
        "maps": maps_json(f.maps(), 'f', f.source().names(), f.target().names()),
    })
}

fn arity_json(a: &ArityDefect) -> Value {
    json!({"arity": a.arity, "tuples": a.tuples, "failures": a.failures, "worst_valuation": a.worst.to_string()})
}

pub fn report_json(r: &RelationReport) -> Value {
    json!({
        "pass": r.pass,
        "arities": r.arities.iter().map(arity_json).collect::<Vec<_>>(),
        "violation": r.violation.as_ref().map(|v| json!({
            "arity": v.arity,
            "inputs": v.inputs,
            "residual": v.residual,
            "valuation": v.valuation.to_string(),
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::F2;
    use num_rational::BigRational;

    const XY: &str = r#"{
        "cutoff": "10",
        "basis": [{"name": "x", "deg": 1}, {"name": "y", "deg": 2}],
        "maps": {
            "m1": [{"in": ["x"], "out": [{"b": "y", "c": "T^1"}]}],
            "m2": [{"in": ["x", "x"], "out": [{"b": "y", "c": "1*T^{1}"}]}]
        }
    }"#;

    #[test]
    fn algebra_round_trip() {
        let a: FilteredAlgebra<F2> = parse_algebra(XY).unwrap();
        assert_eq!(a.kmax(), 6);
        assert!(a.is_mc(&a.unit(0)).unwrap());
        let back: FilteredAlgebra<F2> = parse_algebra(&algebra_json(&a).to_string()).unwrap();
        assert_eq!(back, a);
        assert_eq!(field_of(XY).unwrap(), Field::F2);
        assert!(parse_algebra::<BigRational>(XY).is_err());
    }

    #[test]
    fn hom_round_trip() {
        let a: FilteredAlgebra<F2> = parse_algebra(XY).unwrap();
        let id = AInftyHom::identity(&a);
        let text = hom_json(&id).to_string();
        assert_eq!(parse_hom::<F2>(&text).unwrap(), id);
        let e = parse_element(r#"[{"b": "x", "c": "T^{1/2}"}]"#, &a).unwrap();
        assert_eq!(id.pushforward(&e).unwrap(), e);
        assert_eq!(parse_element(&element_json(&e, a.names()).to_string(), &a).unwrap(), e);
    }

    #[test]
    fn schema_errors() {
        let bad_key = XY.replace("\"m2\"", "\"mx\"");
        assert_eq!(parse_algebra::<F2>(&bad_key).unwrap_err().code(), "E_PARSE");
        let unknown = XY.replace("\"b\": \"y\", \"c\": \"T^1\"", "\"b\": \"z\", \"c\": \"T^1\"");
        assert_eq!(parse_algebra::<F2>(&unknown).unwrap_err().code(), "E_PARSE");
        let wrong_degree = XY.replace("{\"name\": \"y\", \"deg\": 2}", "{\"name\": \"y\", \"deg\": 3}");
        assert_eq!(parse_algebra::<F2>(&wrong_degree).unwrap_err().code(), "E_INVALID_ALGEBRA");
        match parse_algebra::<F2>("{\n\"cutoff\": 10}").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
    }
}
