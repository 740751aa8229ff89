use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use annseq::bench::{run_suite, BenchError, Suite};
use annseq::gen::{gen_document, DEFAULT_VARS};
use annseq::io::{parse_field, AnnihilatorDocument, InputError, SequenceDocument};
use annseq_core::{annihilator, is_annihilator, AnnihilatorOptions, Engine, Field, FieldKind, PrimeField, Rationals};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "annseq", version, about = "Annihilators of multidimensional sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Hankel,
    Duality,
    Macaulay,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Hankel => Engine::Hankel,
            EngineArg::Duality => Engine::Duality,
            EngineArg::Macaulay => Engine::Macaulay,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the annihilator of a sequence document.
    Compute {
        #[arg(long, value_enum, default_value = "duality")]
        engine: EngineArg,
        #[arg(long)]
        input: PathBuf,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Include the size of every linear system solved.
        #[arg(long)]
        stats: bool,
        /// Run the full pipeline even when the corner value decides the answer.
        #[arg(long)]
        audit: bool,
        /// Iterate the dual over the whole box.
        #[arg(long)]
        safe_mode: bool,
        /// Hankel rows over the whole box.
        #[arg(long)]
        extended_rows: bool,
    },
    /// Write a sequence with seeded random values on a staircase.
    Gen {
        /// Defining monomials, e.g. "x^20,x^19*y^3,y^4".
        #[arg(long)]
        staircase: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "rational" or "fp:<prime>".
        #[arg(long, default_value = "fp:65521")]
        field: String,
        /// Comma-separated variable names.
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite through every engine.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Tab-separated records instead of the table.
        #[arg(long)]
        tsv: bool,
        /// Print "-" instead of timings.
        #[arg(long)]
        no_time: bool,
    },
    /// Check that every generator annihilates the input sequences.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        generators: PathBuf,
    },
}

enum Failure {
    Input(String),
    Disagreement(String),
    Invariant(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Disagreement { .. } => Failure::Disagreement(e.to_string()),
            BenchError::Engine { .. } => Failure::Invariant(e.to_string()),
            BenchError::Input(e) => e.into(),
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compute<F: Field>(
    field: &F,
    kind: FieldKind,
    doc: &SequenceDocument,
    engine: Engine,
    opts: AnnihilatorOptions,
    stats: bool,
) -> Result<String, Failure> {
    let fam = doc.family(field)?;
    let res = annihilator(field, &fam, engine, opts).map_err(|e| Failure::Invariant(e.to_string()))?;
    Ok(AnnihilatorDocument::from_result(&doc.vars, kind, &res, stats).to_json())
}

/// Names of the generators that fail to annihilate, in document order.
fn verify<F: Field>(field: &F, doc: &SequenceDocument, gens: &AnnihilatorDocument) -> Result<Vec<String>, Failure> {
    if gens.vars != doc.vars {
        return Err(Failure::Input(format!("generators use variables {:?}, input uses {:?}", gens.vars, doc.vars)));
    }
    let fam = doc.family(field)?;
    let nbasis = gens.basis.len();
    let mut failed = Vec::new();
    for (i, g) in gens.generators(field)?.iter().enumerate() {
        if !is_annihilator(field, g, &fam).map_err(InputError::from)? {
            failed.push(if i < nbasis { format!("basis[{i}]") } else { format!("border[{}]", i - nbasis) });
        }
    }
    Ok(failed)
}

macro_rules! with_field {
    ($kind:expr, $f:ident => $body:expr) => {
        match $kind {
            FieldKind::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldKind::Prime(p) => {
                let $f = &PrimeField::new(p).map_err(|e| Failure::Input(e.to_string()))?;
                $body
            }
        }
    };
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { engine, input, output, stats, audit, safe_mode, extended_rows } => {
            let doc = SequenceDocument::read(&input)?;
            let kind = doc.field_kind()?;
            let opts = AnnihilatorOptions { audit, safe_mode, extended_rows };
            let text = with_field!(kind, f => compute(f, kind, &doc, engine.into(), opts, stats)?);
            write_out(output.as_deref(), &text)
        }
        Command::Gen { staircase, seed, field, vars, output } => {
            let kind = parse_field(&field)?;
            let names: Vec<String> = match vars {
                Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
                None => DEFAULT_VARS.iter().map(|s| s.to_string()).collect(),
            };
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let doc = gen_document(&staircase, &names, seed, kind)?;
            write_out(output.as_deref(), &doc.to_json())
        }
        Command::Bench { suite, seed, tsv, no_time } => {
            let report = run_suite(suite, seed)?;
            let text = if tsv { report.tsv(!no_time) } else { report.render(!no_time) };
            write_out(None, &text)
        }
        Command::Verify { input, generators } => {
            let doc = SequenceDocument::read(&input)?;
            let gens = AnnihilatorDocument::read(&generators)?;
            let kind = doc.field_kind()?;
            if parse_field(&gens.field)? != kind {
                return Err(Failure::Input(format!("generators are over {}, input over {kind}", gens.field)));
            }
            let failed = with_field!(kind, f => verify(f, &doc, &gens)?);
            if failed.is_empty() {
                println!("ok: all {} generators annihilate", gens.basis.len() + gens.border.len());
                Ok(())
            } else {
                Err(Failure::Input(format!("not annihilators: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("engine disagreement: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
