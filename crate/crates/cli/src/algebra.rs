//! `ainfty` subcommands. The coefficient field comes from the file's
//! `field` key unless the configuration overrides it.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use troplag_ainfty::dga::mc_bruteforce;
use troplag_ainfty::fixtures::{degree_one, positive_grid, random_dga, random_degree_one};
use troplag_ainfty::json::{
    algebra_json, element_json, field_of, parse_algebra, parse_element, parse_hom, report_json, Field,
};
use troplag_ainfty::novikov::{exp_string, parse_exp};
use troplag_ainfty::{AInftyHom, Coeff, Exp, FilteredAlgebra, F2};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::Outcome;

fn field(text: &str, cfg: &RunConfig) -> CliResult<Field> {
    match cfg.field.as_deref() {
        None => Ok(field_of(text)?),
        Some("F2") => Ok(Field::F2),
        Some("Q") => Ok(Field::Q),
        Some(other) => Err(CliError::new("E_CONFIG", format!("unknown field {other:?}; expected F2 or Q"))),
    }
}

fn cutoff(cfg: &RunConfig) -> CliResult<Option<Exp>> {
    cfg.cutoff
        .as_deref()
        .map(|s| parse_exp(s).ok_or_else(|| CliError::new("E_CONFIG", format!("bad cutoff {s:?}"))))
        .transpose()
}

fn load<C: Coeff>(text: &str, cfg: &RunConfig) -> CliResult<FilteredAlgebra<C>> {
    let a: FilteredAlgebra<C> = parse_algebra(text)?;
    Ok(match cutoff(cfg)? {
        Some(c) => a.truncate(&c)?,
        None => a,
    })
}

fn load_hom<C: Coeff>(text: &str, cfg: &RunConfig) -> CliResult<AInftyHom<C>> {
    let f: AInftyHom<C> = parse_hom(text)?;
    Ok(match cutoff(cfg)? {
        Some(c) => f.truncate(&c)?,
        None => f,
    })
}

macro_rules! by_field {
    ($text:expr, $cfg:expr, $f:ident ( $($arg:expr),* )) => {
        match field($text, $cfg)? {
            Field::F2 => $f::<F2>($($arg),*),
            Field::Q => $f::<BigRational>($($arg),*),
        }
    };
}

pub fn check(text: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    by_field!(text, cfg, check_as(text, cfg))
}

fn check_as<C: Coeff>(text: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let a: FilteredAlgebra<C> = load(text, cfg)?;
    let rep = a.check_relations();
    let report = json!({
        "field": C::NAME,
        "cutoff": exp_string(a.cutoff()),
        "kmax": a.kmax(),
        "curved": a.is_curved(),
        "relations": report_json(&rep),
        "pass": rep.pass,
    });
    Ok(Outcome { report, files: vec![], pass: rep.pass })
}

pub fn deform(text: &str, element: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    by_field!(text, cfg, deform_as(text, element, cfg))
}

fn deform_as<C: Coeff>(text: &str, element: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let a: FilteredAlgebra<C> = load(text, cfg)?;
    let x = parse_element(element, &a)?;
    let d = a.deform(&x)?;
    let rep = d.check_relations();
    let report = json!({
        "element": element_json(&x, a.names()),
        "deformed": algebra_json(&d),
        "relations": report_json(&rep),
        "pass": rep.pass,
    });
    Ok(Outcome { report, files: vec![], pass: rep.pass })
}

/// Brute-force Maurer-Cartan search over F₂ with coefficients in the span
/// of `T^e`, `e ∈ exponents`, on the named degree-1 generators.
pub fn mc(text: &str, exponents: Option<&str>, support: Option<&str>, cfg: &RunConfig) -> CliResult<Outcome> {
    if field(text, cfg)? != Field::F2 {
        return Err(CliError::new("E_UNSUPPORTED_FIELD", "Maurer-Cartan search runs over F2 only"));
    }
    let a: FilteredAlgebra<F2> = load(text, cfg)?;
    let grid = match exponents {
        None => positive_grid(),
        Some(s) => s
            .split(',')
            .map(|e| parse_exp(e).ok_or_else(|| CliError::new("E_CONFIG", format!("bad exponent {e:?}"))))
            .collect::<CliResult<Vec<_>>>()?,
    };
    let support = match support {
        None => degree_one(&a),
        Some(s) => s
            .split(',')
            .map(|n| a.index_of(n.trim()).ok_or_else(|| CliError::new("E_CONFIG", format!("unknown basis element {n:?}"))))
            .collect::<CliResult<Vec<_>>>()?,
    };
    let found = mc_bruteforce(&a, &support, &grid)?;
    let report = json!({
        "support": support.iter().map(|&i| a.names()[i].clone()).collect::<Vec<_>>(),
        "exponents": grid.iter().map(exp_string).collect::<Vec<_>>(),
        "count": found.len(),
        "elements": found.iter().map(|e| element_json(e, a.names())).collect::<Vec<_>>(),
    });
    Ok(Outcome { report, files: vec![], pass: true })
}

pub fn push(text: &str, element: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    by_field!(text, cfg, push_as(text, element, cfg))
}

fn push_as<C: Coeff>(text: &str, element: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let f: AInftyHom<C> = load_hom(text, cfg)?;
    let b = parse_element(element, f.source())?;
    let image = f.pushforward(&b)?;
    let hom = f.check_hom();
    let (source_mc, image_mc) = (f.source().is_mc(&b)?, f.target().is_mc(&image)?);
    // The pushforward lemma: an MC element along a homomorphism lands on an MC element.
    let pass = hom.pass && (!source_mc || image_mc);
    let report = json!({
        "element": element_json(&b, f.source().names()),
        "image": element_json(&image, f.target().names()),
        "element_is_mc": source_mc,
        "image_is_mc": image_mc,
        "homomorphism": report_json(&hom),
        "pass": pass,
    });
    Ok(Outcome { report, files: vec![], pass })
}

pub fn quotient(text: &str, ideal: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    by_field!(text, cfg, quotient_as(text, ideal, cfg))
}

fn quotient_as<C: Coeff>(text: &str, ideal: &str, cfg: &RunConfig) -> CliResult<Outcome> {
    let a: FilteredAlgebra<C> = load(text, cfg)?;
    let idx = ideal
        .split(',')
        .map(|n| a.index_of(n.trim()).ok_or_else(|| CliError::new("E_CONFIG", format!("unknown basis element {n:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    let quotient = a.quotient_ideal(&idx)?;
    let rep = quotient.check_relations();
    let report = json!({"quotient": algebra_json(&quotient), "relations": report_json(&rep), "pass": rep.pass});
    Ok(Outcome { report, files: vec![], pass: rep.pass })
}

/// Seeded property run: random DGA-built algebras and one random
/// positive-valuation deformation of each must satisfy the relations.
pub fn suite(count: usize, seed: u64) -> CliResult<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid = positive_grid();
    let mut failures: Vec<Value> = vec![];
    for i in 0..count {
        let a = random_dga(&mut rng);
        let x = random_degree_one(&mut rng, &a, &grid);
        let d = a.deform(&x)?;
        for (what, rep) in [("algebra", a.check_relations()), ("deformation", d.check_relations())] {
            if !rep.pass {
                failures.push(json!({"case": i, "which": what, "algebra": algebra_json(&a), "relations": report_json(&rep)}));
            }
        }
    }
    let pass = failures.is_empty();
    Ok(Outcome { report: json!({"seed": seed, "count": count, "failures": failures, "pass": pass}), files: vec![], pass })
}
