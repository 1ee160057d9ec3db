use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use zignorm::corpus::{Corpus, Limits};
use zignorm::diagram::{validate_diagram, validate_map, Leg, Sink};
use zignorm::io;
use zignorm::oracle::{oracle_normalise, Budget};
use zignorm::typecheck::{extract_piece, singular_content, typecheck, Verdict};
use zignorm::{normalise_relative, Diagram, Error, NormalisationResult};

const EXIT_INVALID: u8 = 1;
const EXIT_REJECT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "zignorm", version, about = "Normal forms and type checking for zigzag diagrams")]
struct Cli {
    /// Validate every result before writing it.
    #[arg(long, global = true)]
    strict_validate: bool,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram, sink or signature document.
    Validate { file: PathBuf },
    /// Normalise a diagram, optionally relative to sink legs.
    Normalise {
        file: PathBuf,
        #[arg(long, num_args = 1..)]
        sink: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Type check a diagram against a signature.
    Typecheck {
        file: PathBuf,
        #[arg(long)]
        signature: PathBuf,
    },
    /// List singular content addresses and labels.
    Content { file: PathBuf },
    /// Extract the piece at a content address.
    Piece {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        address: Vec<usize>,
    },
    /// Normalise by exhaustive search.
    OracleNormalise {
        file: PathBuf,
        #[arg(long, num_args = 1..)]
        sink: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = Budget::default().max_nodes)]
        max_nodes: usize,
    },
    /// Write a random sink document.
    Generate {
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("zignorm: {e}");
            ExitCode::from(match e {
                Error::Budget(_) => EXIT_BUDGET,
                _ => EXIT_INVALID,
            })
        }
    }
}

fn read(path: &Path) -> zignorm::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, output: Option<&Path>) -> zignorm::Result<()> {
    let text = io::to_text(value);
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::Argument(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

/// A diagram document with leg files, or a sink document on its own.
fn load_sink(file: &Path, legs: &[PathBuf]) -> zignorm::Result<Sink> {
    let text = read(file)?;
    if io::parse_text(&text)?.get("target").is_some() {
        if !legs.is_empty() {
            return Err(Error::Argument("--sink cannot be combined with a sink document".into()));
        }
        return io::read_sink(&text);
    }
    let target = io::read_diagram(&text)?;
    let legs = legs
        .iter()
        .map(|p| io::read_leg(&read(p)?, &target))
        .collect::<zignorm::Result<Vec<Leg>>>()?;
    Ok(Sink { target, legs })
}

fn check_result(r: &NormalisationResult, sink: &Sink) -> zignorm::Result<()> {
    validate_diagram(&r.normal_form)?;
    validate_map(&r.normaliser, &r.normal_form, &sink.target)?;
    for (u, leg) in r.factorisations.iter().zip(&sink.legs) {
        validate_map(u, &leg.source, &r.normal_form)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> zignorm::Result<ExitCode> {
    match &cli.command {
        Command::Validate { file } => {
            let text = read(file)?;
            let v = io::parse_text(&text)?;
            let outcome = if v.get("legs").is_some() {
                io::read_sink(&text).map(|_| ())
            } else if v.get("generators").is_some() {
                io::read_signature(&text).map(|_| ())
            } else {
                io::read_diagram(&text).map(|_| ())
            };
            match outcome {
                Ok(()) => Ok(ExitCode::SUCCESS),
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(EXIT_INVALID))
                }
            }
        }
        Command::Normalise { file, sink, output } => {
            let sink = load_sink(file, sink)?;
            let r = normalise_relative(&sink)?;
            if cli.strict_validate {
                check_result(&r, &sink)?;
            }
            emit(&io::result_document(&r), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleNormalise { file, sink, output, max_nodes } => {
            let sink = load_sink(file, sink)?;
            let budget = Budget { max_nodes: *max_nodes, ..Budget::default() };
            let r = oracle_normalise(&sink, budget)?;
            if cli.strict_validate {
                check_result(&r, &sink)?;
            }
            emit(&io::result_document(&r), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Typecheck { file, signature } => {
            let d = io::read_diagram(&read(file)?)?;
            let sig = io::read_signature(&read(signature)?)?;
            let verdict = typecheck(&d, &sig)?;
            emit(&io::verdict_document(&verdict), None)?;
            Ok(match verdict {
                Verdict::Accept => ExitCode::SUCCESS,
                Verdict::Reject { .. } => ExitCode::from(EXIT_REJECT),
            })
        }
        Command::Content { file } => {
            let d = io::read_diagram(&read(file)?)?;
            let mut out = String::new();
            for (address, g) in singular_content(&d) {
                let a: Vec<String> = address.iter().map(usize::to_string).collect();
                out.push_str(&format!("[{}] {}\n", a.join(","), g.name));
            }
            let _ = std::io::stdout().write_all(out.as_bytes());
            Ok(ExitCode::SUCCESS)
        }
        Command::Piece { file, address } => {
            let d = io::read_diagram(&read(file)?)?;
            let piece: Diagram = extract_piece(&d, address)?;
            if cli.strict_validate {
                validate_diagram(&piece)?;
            }
            emit(&io::diagram_document(&piece), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { dim } => {
            let limits = Limits::default();
            if *dim == 0 || *dim > limits.max_dimension {
                return Err(Error::Argument(format!("--dim must be between 1 and {}", limits.max_dimension)));
            }
            let sink = Corpus::new(cli.seed, limits).sink(*dim);
            emit(&io::sink_document(&sink), None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
