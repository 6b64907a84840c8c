//! Command-line front end: decompose generator files, generate test
//! instances, and verify claimed decompositions.
//!
//! Exit codes: 0 success / verification passed, 1 verification failed,
//! 2 I/O or parse problems, 3 structural inconsistencies.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use wedderburn::decompose::decompose;
use wedderburn::error::Result;
use wedderburn::instances::{generate_planted, named_instance};
use wedderburn::io::{
    parse_structure_arg, read_decomposition_file, read_generator_file, write_decomposition_file,
    write_generator_file, DecompositionFile, GeneratorFile, GeneratorMetadata,
};
use wedderburn::matrix::Tolerance;
use wedderburn::verify::{verify_claim, verify_decomposition, VerificationReport};
use wedderburn::Error;

#[derive(Parser)]
#[command(
    name = "wedderburn",
    about = "Numerical block decomposition of finite-dimensional *-algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the block decomposition of the algebra in a generator file.
    Decompose {
        /// Generator file (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Where to write the decomposition (JSON).
        #[arg(long)]
        output: PathBuf,
        /// Relative tolerance override (default 1e-9).
        #[arg(long)]
        tol: Option<f64>,
        /// Print the verification report as JSON instead of text.
        #[arg(long)]
        json_report: bool,
    },
    /// Write a generator file with a known planted structure.
    #[command(group = ArgGroup::new("source").required(true).args(["structure", "named"]))]
    Generate {
        /// Planted structure, e.g. "2x3,1x4,3x1" (PxQ per block).
        #[arg(long)]
        structure: Option<String>,
        /// Catalog instance: full_n, scalars_n, diag_n, s3_regular.
        #[arg(long)]
        named: Option<String>,
        /// RNG seed for the planted draw.
        #[arg(long, default_value_t = 0, conflicts_with = "named")]
        seed: u64,
        /// Number of generators to draw.
        #[arg(long, default_value_t = 2, conflicts_with = "named")]
        num_gens: usize,
        /// Where to write the generator file (JSON).
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a claimed decomposition against its generator file and print
    /// the verification report as JSON.
    Verify {
        /// Generator file the decomposition claims to describe.
        #[arg(long)]
        generators: PathBuf,
        /// Decomposition file to check.
        #[arg(long)]
        decomposition: PathBuf,
        /// Relative tolerance override (default: the file's tolerances).
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn tolerance_from_arg(tol: Option<f64>) -> Result<Tolerance> {
    match tol {
        Some(rel) => Tolerance::with_rel(rel),
        None => Ok(Tolerance::default()),
    }
}

/// Print a line to stdout, ignoring broken pipes (e.g. `… | head`).
fn say(line: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn print_structure(structure: &[(usize, usize)]) {
    say("structure:");
    for (k, (p, q)) in structure.iter().enumerate() {
        say(format!("{k}: p={p} q={q}"));
    }
}

fn print_report(report: &VerificationReport) {
    print_structure(&report.structure);
    say(format!(
        "unitarity_residual: {:.3e}",
        report.unitarity_residual
    ));
    say(format!(
        "max_block_residual: {:.3e}",
        report.max_block_residual
    ));
    say(format!(
        "projector_image_residual: {:.3e}",
        report.projector_image_residual
    ));
    let di = &report.dimension_identity;
    say(format!(
        "dimension identity: algebra {} vs structure {} ({})",
        di.algebra_dim,
        di.structure_dim,
        if di.holds { "holds" } else { "violated" }
    ));
    say(format!(
        "verification: {}",
        if report.passed { "PASS" } else { "FAIL" }
    ));
}

fn emit_report(report: &VerificationReport, json: bool) -> Result<()> {
    if json {
        say(serde_json::to_string(report)?);
    } else {
        print_report(report);
    }
    Ok(())
}

fn run_decompose(
    input: PathBuf,
    output: PathBuf,
    tol: Option<f64>,
    json_report: bool,
) -> Result<u8> {
    let tol = tolerance_from_arg(tol)?;
    let file = read_generator_file(&input)?;
    let generators = file.matrices()?;
    let d = decompose(&generators, file.dim, tol)?;
    let report = verify_decomposition(&generators, &d, tol)?;
    let file = DecompositionFile::from_decomposition(&d, report.clone());
    write_decomposition_file(&output, &file)?;
    emit_report(&report, json_report)?;
    if !json_report {
        say(format!("wrote {}", output.display()));
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn run_generate(
    structure: Option<String>,
    named: Option<String>,
    seed: u64,
    num_gens: usize,
    output: PathBuf,
) -> Result<u8> {
    let (dim, generators, planted_structure, metadata) = match (&structure, &named) {
        (Some(arg), None) => {
            let inst = generate_planted(&parse_structure_arg(arg)?, num_gens, seed)?;
            let meta = GeneratorMetadata {
                name: None,
                expected_structure: Some(inst.structure.clone()),
                seed: Some(inst.seed),
            };
            (inst.dim_h(), inst.generators, inst.structure, meta)
        }
        (None, Some(name)) => {
            let inst = named_instance(name)?;
            let meta = GeneratorMetadata {
                name: Some(name.clone()),
                expected_structure: Some(inst.structure.clone()),
                seed: None,
            };
            (inst.dim_h, inst.generators, inst.structure, meta)
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    let file = GeneratorFile::new(dim, &generators, Some(metadata))?;
    write_generator_file(&output, &file)?;
    say(format!("dim: {dim}"));
    print_structure(&planted_structure);
    say(format!("wrote {}", output.display()));
    Ok(0)
}

fn run_verify(generators: PathBuf, decomposition: PathBuf, tol: Option<f64>) -> Result<u8> {
    let gens = read_generator_file(&generators)?.matrices()?;
    let file = read_decomposition_file(&decomposition)?;
    let tol = match tol {
        Some(rel) => Tolerance::with_rel(rel)?,
        None => {
            let t = file.tolerances;
            t.validate()
                .map_err(|e| Error::Parse(format!("tolerances stored in file are invalid: {e}")))?;
            t
        }
    };
    let u = file.unitary()?;
    let projectors = file.projector_matrices()?;
    let report = verify_claim(&gens, &file.structure, &u, &projectors, tol)?;
    emit_report(&report, true)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose {
            input,
            output,
            tol,
            json_report,
        } => run_decompose(input, output, tol, json_report),
        Command::Generate {
            structure,
            named,
            seed,
            num_gens,
            output,
        } => run_generate(structure, named, seed, num_gens, output),
        Command::Verify {
            generators,
            decomposition,
            tol,
        } => run_verify(generators, decomposition, tol),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
