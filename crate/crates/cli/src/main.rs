//! `troplag`: tropical polynomials to sampled Lagrangian lifts, plus checks
//! for filtered A∞ algebras.
//!
//! Reports go to stdout as JSON with sorted keys; artifacts (SVG, mesh
//! JSON lines) go to the output directory. Exit status: 0 on success, 1 when
//! a check fails, 2 on an error, which is printed to stderr as
//! `{"error": {"code", "message", "detail"?}}`.

mod algebra;
mod config;
mod error;
mod geometry;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use config::{read_input, RunConfig};
use error::CliResult;

pub struct Outcome {
    pub report: Value,
    pub files: Vec<(String, Vec<u8>)>,
    pub pass: bool,
}

#[derive(Parser)]
#[command(name = "troplag", version, about = "Tropical Lagrangian lifts and filtered A-infinity checks")]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Neck parameter; derived from the sublevel condition when absent.
    #[arg(long, global = true)]
    c: Option<f64>,
    /// Thickening of the fan regions in the admissibility check.
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// Far-field radius for the admissibility check.
    #[arg(long, global = true)]
    radius: Option<f64>,
    /// Half-width of the cube window when no grid file is given.
    #[arg(long, global = true)]
    window: Option<f64>,
    #[arg(long, global = true)]
    h: Option<f64>,
    /// Grid file `{"bbox": [lo, hi], "h": h}`.
    #[arg(long, global = true)]
    grid: Option<PathBuf>,
    /// Fan file for the admissibility check; projective space by default.
    #[arg(long, global = true)]
    fan: Option<PathBuf>,
    /// Truncate algebras to this Novikov cutoff.
    #[arg(long, global = true)]
    cutoff: Option<String>,
    /// Coefficient field override: F2 or Q.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Variety, dual subdivision, classification and lift topology.
    Analyze { polynomial: PathBuf },
    /// Sampled lift L(phi) with valuation, argument and admissibility checks.
    Lift { polynomial: PathBuf },
    /// Surgery profiles, their invariants and flux.
    Profiles {
        /// Comma-separated shape parameters.
        #[arg(long, default_value = "1,4")]
        kappa: String,
    },
    /// Profile curve of the surgery cobordism.
    Cobordism,
    /// Expected dimension (2 − n)k − 3 + n of the polygon moduli space.
    Index {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
    },
    #[command(subcommand)]
    Ainfty(Ainfty),
}

#[derive(Subcommand)]
enum Ainfty {
    /// Check the A-infinity relations up to arity kmax.
    Check { algebra: PathBuf },
    /// Deform by an element and check the deformed relations.
    Deform { algebra: PathBuf, element: PathBuf },
    /// Enumerate Maurer-Cartan elements over F2.
    Mc {
        algebra: PathBuf,
        /// Comma-separated exponents, default 1/2,1,3/2.
        #[arg(long)]
        exponents: Option<String>,
        /// Comma-separated generators, default all of degree 1.
        #[arg(long)]
        support: Option<String>,
    },
    /// Push an element forward along a homomorphism.
    Push { hom: PathBuf, element: PathBuf },
    /// Quotient by the span of a subset of generators.
    Quotient {
        algebra: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Seeded run over random DGA-built algebras and their deformations.
    Suite {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn flag_config(f: &Flags) -> CliResult<RunConfig> {
    let grid = match &f.grid {
        Some(p) => Some(serde_json::from_str(&read_input(p)?)?),
        None => None,
    };
    Ok(RunConfig {
        epsilon: f.epsilon,
        c: f.c,
        delta: f.delta,
        radius: f.radius,
        window: f.window,
        h: f.h,
        grid,
        fan: f.fan.clone(),
        cutoff: f.cutoff.clone(),
        field: f.field.clone(),
        out: f.out.clone(),
        seed: f.seed,
    })
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let cfg = RunConfig::load(cli.config.as_deref())?.merge(&flag_config(&cli.flags)?);
    cfg.validate()?;
    let read = |p: &Path| read_input(p);
    let outcome = match &cli.command {
        Command::Analyze { polynomial } => geometry::analyze(&read(polynomial)?)?,
        Command::Lift { polynomial } => geometry::lift(&read(polynomial)?, &cfg)?,
        Command::Profiles { kappa } => geometry::profiles(cfg.c.unwrap_or(1.0), &geometry::parse_kappas(kappa)?)?,
        Command::Cobordism => geometry::cobordism(cfg.epsilon())?,
        Command::Index { n, k } => geometry::index(*n, *k)?,
        Command::Ainfty(sub) => match sub {
            Ainfty::Check { algebra } => algebra::check(&read(algebra)?, &cfg)?,
            Ainfty::Deform { algebra, element } => algebra::deform(&read(algebra)?, &read(element)?, &cfg)?,
            Ainfty::Mc { algebra, exponents, support } => {
                algebra::mc(&read(algebra)?, exponents.as_deref(), support.as_deref(), &cfg)?
            }
            Ainfty::Push { hom, element } => algebra::push(&read(hom)?, &read(element)?, &cfg)?,
            Ainfty::Quotient { algebra, ideal } => algebra::quotient(&read(algebra)?, ideal, &cfg)?,
            Ainfty::Suite { count } => algebra::suite(*count, cfg.seed.unwrap_or(0))?,
        },
    };
    if !outcome.files.is_empty() {
        let dir = cfg.out_dir();
        std::fs::create_dir_all(&dir)?;
        for (name, bytes) in &outcome.files {
            std::fs::write(dir.join(name), bytes)?;
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", troplag_core::io::to_pretty(&outcome.report));
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprint!("{}", troplag_core::io::to_pretty(&e.to_json()));
            ExitCode::from(2)
        }
    }
}
