use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unilift::enumerate::set_enumeration_cap;
use unilift::io::error_json;
use unilift::Error;

mod commands;
mod svg;

#[derive(Parser)]
#[command(name = "unilift", version, about = "Exact lifting regions of maximal lattice-free simplicial polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input body JSON (stdin when omitted).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximality, lattice points, exact torus volume and verdict at one f.
    Analyze {
        #[command(flatten)]
        io: Io,
        /// Comma-separated rationals, e.g. "1/2,1/2".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Skip the uncovered-point search.
        #[arg(long)]
        no_witness: bool,
    },
    /// Affine fit of the volume over the body and the dichotomy verdict.
    Sweep {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 5)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SVG picture of a planar lifting region.
    Render {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Grid covering test of the torus.
    Oracle {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 64)]
        grid: u32,
    },
    /// Emit a body from one of the built-in families.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Dilation factor (standard) or blow-up factor (type3-cone).
        #[arg(long)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        /// Search denominator bound.
        #[arg(long)]
        q: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
        /// Triangle JSON for type3-cone.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure-based verdict cross-checked against the volume verdict.
    Classify {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Criterion::Auto)]
        criterion: Criterion,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Standard,
    Delta,
    Type3Cone,
    Search,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Auto,
    OnePoint,
    TwoPartition,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn apply_cap_override() -> Result<(), Error> {
    if let Ok(raw) = std::env::var("LIFTING_ENUM_CAP") {
        let cap = raw
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("LIFTING_ENUM_CAP must be a non-negative integer, got {raw:?}")))?;
        set_enumeration_cap(cap);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    apply_cap_override()?;
    match cli.command {
        Command::Analyze { io, f, no_witness } => {
            let text = commands::analyze(&read_input(&io.input)?, &f, !no_witness)?;
            write_output(&io.out, &text)
        }
        Command::Sweep { io, probes, seed } => {
            let text = commands::sweep(&read_input(&io.input)?, probes, seed)?;
            write_output(&io.out, &text)
        }
        Command::Render { io, f } => {
            let text = commands::render(&read_input(&io.input)?, &f)?;
            write_output(&io.out, &text)
        }
        Command::Oracle { io, f, grid } => {
            let text = commands::oracle(&read_input(&io.input)?, &f, grid)?;
            write_output(&io.out, &text)
        }
        Command::Generate { family, n, m, delta, q, lo, hi, input, out } => {
            let params = commands::GenerateParams { n, m, delta, q, lo, hi };
            let triangle = match family {
                Family::Type3Cone => Some(read_input(&input)?),
                _ => None,
            };
            let text = commands::generate(family, &params, triangle.as_deref())?;
            write_output(&out, &text)
        }
        Command::Classify { io, criterion } => {
            let text = commands::classify(&read_input(&io.input)?, criterion)?;
            write_output(&io.out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = serde_json::to_string(&error_json(&e)).expect("json");
            eprintln!("{payload}");
            if e.is_cap() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
