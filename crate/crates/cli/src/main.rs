use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use quivreg_core::constructions::{self, BimoduleSpec};
use quivreg_core::linalg::{FieldSpec, Rat};
use quivreg_core::presentation::{parse_raw, validate, Presentation};
use quivreg_core::report::{run_check, run_hilbert, run_resolve, Parameters};

mod render;

#[derive(Parser)]
#[command(name = "quivreg", version, about = "Twisted Calabi-Yau and AS-regularity checks for graded quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: resolutions, Ext, verdict and cross-checks.
    Check(RunArgs),
    /// Minimal resolutions of the simples and their Betti tables.
    Resolve(RunArgs),
    /// Hilbert matrix `dim e_i A_d e_j`.
    Hilbert(RunArgs),
    /// Print a generated presentation.
    Gen {
        /// Coefficient field of the output.
        #[arg(long, default_value = "Q", global = true)]
        field: FieldSpec,
        #[command(subcommand)]
        which: Generator,
    },
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// Truncation degree D.
    #[arg(long = "truncate", default_value_t = 8)]
    truncate: usize,
    /// Highest homological step (defaults to D).
    #[arg(long)]
    maxstep: Option<usize>,
    /// Override the field declared in the file.
    #[arg(long)]
    field: Option<FieldSpec>,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    no_duality_check: bool,
    /// Seed for the sampled consistency checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Generator {
    /// k[x_1..x_m]
    Polynomial {
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// k_q[x,y] with y.x = q x.y
    Skew {
        #[arg(long, allow_hyphen_values = true)]
        q: Rat,
    },
    /// Free algebra on m loops.
    Free {
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// k^n in degree 0.
    Trivial {
        #[arg(long, default_value_t = 1)]
        vertices: usize,
    },
    /// McKay quiver of k[x,y] with the sign action of Z/2.
    Mckay,
    /// Preprojective algebra of a named quiver (a<n>, kronecker<m>, cyclic<n>, loop).
    Preprojective {
        #[arg(long)]
        quiver: String,
    },
    /// Tensor algebra T_S(V) of generators `source,target,degree`.
    Tensor {
        #[arg(long)]
        vertices: usize,
        #[arg(long = "generator", value_parser = parse_generator)]
        generators: Vec<(usize, usize, usize)>,
    },
    DirectSum {
        first: PathBuf,
        second: PathBuf,
    },
    TensorProduct {
        first: PathBuf,
        second: PathBuf,
    },
}

fn parse_generator(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.parse::<usize>()).collect();
    match nums.as_deref() {
        Ok([i, j, d]) => Ok((*i, *j, *d)),
        _ => Err(format!("expected `source,target,degree`, got `{s}`")),
    }
}

fn load(path: &Path, field: Option<FieldSpec>) -> Result<Presentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut raw = parse_raw(&text).with_context(|| format!("in {}", path.display()))?;
    if field.is_some() {
        raw.field = field;
    }
    validate(raw).with_context(|| format!("in {}", path.display()))
}

fn parameters(args: &RunArgs, p: &Presentation) -> Parameters {
    Parameters {
        truncation: args.truncate,
        maxstep: args.maxstep.unwrap_or(args.truncate),
        field: p.field(),
        duality_check: !args.no_duality_check,
        seed: args.seed,
    }
}

fn write_json<T: serde::Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(value)?;
        fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn generate(field: FieldSpec, which: Generator) -> Result<Presentation> {
    Ok(match which {
        Generator::Polynomial { vars } => constructions::polynomial(vars, field)?,
        Generator::Skew { q } => constructions::skew(q, field)?,
        Generator::Free { vars } => constructions::free(vars, field)?,
        Generator::Trivial { vertices } => constructions::trivial(vertices, field),
        Generator::Mckay => constructions::mckay_z2(field),
        Generator::Preprojective { quiver } => constructions::preprojective(&constructions::named_quiver(&quiver)?, field)?,
        Generator::Tensor { vertices, generators } => {
            constructions::tensor_algebra(&BimoduleSpec { vertex_count: vertices, generators }, field)?
        }
        Generator::DirectSum { first, second } => {
            constructions::direct_sum(&load(&first, Some(field))?, &load(&second, Some(field))?)?
        }
        Generator::TensorProduct { first, second } => {
            constructions::tensor_product(&load(&first, Some(field))?, &load(&second, Some(field))?)?
        }
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => {
            let p = load(&args.file, args.field)?;
            let report = run_check(&p, &parameters(&args, &p))?;
            print!("{}", render::check(&report));
            write_json(&args.json, &report)?;
            Ok(report.verdict.status.exit_code() as u8)
        }
        Command::Resolve(args) => {
            let p = load(&args.file, args.field)?;
            let report = run_resolve(&p, &parameters(&args, &p))?;
            print!("{}", render::resolve(&report));
            write_json(&args.json, &report)?;
            Ok(0)
        }
        Command::Hilbert(args) => {
            let p = load(&args.file, args.field)?;
            let h = run_hilbert(&p, p.field(), args.truncate)?;
            print!("{}", render::hilbert(&h));
            write_json(&args.json, &h)?;
            Ok(0)
        }
        Command::Gen { field, which } => {
            let p = generate(field, which)?;
            // the output must read back as the same presentation
            let again = quivreg_core::presentation::parse(&p.to_text())?;
            if again != p {
                bail!("generated presentation does not round-trip");
            }
            print!("{}", p.to_text());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
