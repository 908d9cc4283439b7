//! `mpla`: command-line front end for the mpla library.
//!
//! Exit codes: 0 when the computation succeeded (and the structure is valid),
//! 1 when the structure is invalid, 2 for malformed input or usage errors.

mod commands;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Ctx, Done, Fail};

#[derive(Parser)]
#[command(name = "mpla", version, about = "Exact computations for matched pairs of Lie algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Highest cohomology degree
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: usize,
    /// Representation file, or `adjoint` / `coadjoint`
    #[arg(long, global = true)]
    coefficients: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result to FILE instead of stdout
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// What `validate` should read its input as.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    MatchedPair,
    Lie,
    LieRep,
    Bialgebra,
    Extension,
    TwoTerm,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the axioms of a structure (a representation with --coefficients)
    Validate {
        file: String,
        #[arg(long = "as", value_enum, default_value_t = Kind::MatchedPair)]
        kind: Kind,
    },
    /// Bicrossed product of a matched pair
    Bicross { file: String },
    /// Semidirect product matched pair of a representation
    Semidirect { file: String },
    /// Dual representation
    Dual { file: String },
    /// Cohomology dimensions
    Cohomology { file: String },
    /// Maurer-Cartan test of the structure element
    McCheck { file: String },
    /// Test an infinitesimal deformation candidate
    DeformCheck { file: String, candidate: String },
    /// Test whether (id + tf, id + tg) relates two deformations
    DeformEquiv { file: String, first: String, second: String, maps: String },
    /// Abelian extension of a 2-cocycle
    Extend { file: String, cocycle: String },
    /// 2-cocycle of an abelian extension
    ExtractCocycle {
        file: String,
        #[arg(long)]
        section: Option<String>,
    },
    /// Check a 2-term L-infinity algebra, skeletal representation or skeletal matched pair
    SkeletalValidate { file: String },
    /// Pass between skeletal matched pairs and (matched pair, representation, 3-cocycle) triples
    SkeletalCorrespond { file: String },
    /// Matched pair of a Rota-Baxter operator of weight 1
    RotaBaxter { file: String },
    /// Matched pair of a Lie bialgebra
    Bialgebra { file: String },
}

fn init_threads() -> Result<(), String> {
    let Ok(s) = std::env::var("MPLA_THREADS") else {
        return Ok(());
    };
    let n: usize = s.trim().parse().map_err(|_| format!("MPLA_THREADS: expected a positive integer, got {s:?}"))?;
    if n == 0 {
        return Err("MPLA_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Done, Fail> {
    let ctx = Ctx { max_degree: cli.max_degree, coefficients: cli.coefficients.clone() };
    match &cli.verb {
        Verb::Validate { file, kind } => ctx.validate(file, *kind),
        Verb::Bicross { file } => ctx.bicross(file),
        Verb::Semidirect { file } => ctx.semidirect(file),
        Verb::Dual { file } => ctx.dual(file),
        Verb::Cohomology { file } => ctx.cohomology(file),
        Verb::McCheck { file } => ctx.mc_check(file),
        Verb::DeformCheck { file, candidate } => ctx.deform_check(file, candidate),
        Verb::DeformEquiv { file, first, second, maps } => ctx.deform_equiv(file, first, second, maps),
        Verb::Extend { file, cocycle } => ctx.extend(file, cocycle),
        Verb::ExtractCocycle { file, section } => ctx.extract_cocycle(file, section.as_deref()),
        Verb::SkeletalValidate { file } => ctx.skeletal_validate(file),
        Verb::SkeletalCorrespond { file } => ctx.skeletal_correspond(file),
        Verb::RotaBaxter { file } => ctx.rota_baxter(file),
        Verb::Bialgebra { file } => ctx.bialgebra(file),
    }
}

fn emit(cli: &Cli, done: &Done) -> Result<(), String> {
    let body = done.render(cli.format);
    match (&cli.output, done.is_artifact()) {
        (Some(path), true) => {
            fs::write(path, done.render(Format::Json)).map_err(|e| format!("{}: {e}", path.display()))?;
            print!("{}", done.summary(path));
        }
        (Some(path), false) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?,
        (None, _) => print!("{body}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(done) => match emit(&cli, &done) {
            Ok(()) => ExitCode::from(if done.ok { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Fail::Invalid(done)) => {
            // invalid input: the report goes wherever a result would have gone
            let body = done.render(cli.format);
            match &cli.output {
                Some(path) if !done.is_artifact() => {
                    if let Err(e) = fs::write(path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                _ => print!("{body}"),
            }
            ExitCode::from(1)
        }
        Err(Fail::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
