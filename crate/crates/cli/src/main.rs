//! `rk`: JSON in, JSON or SVG out.

mod commands;
mod render;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Failure, Report};

#[derive(Parser, Debug)]
#[command(name = "rk", version, about = "Reinhardt domains in C^2: classification, endomorphisms, embeddings")]
struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Starting interval precision in bits; refinement doubles up to at least 512.
    #[arg(long, global = true, default_value_t = 64)]
    bits: u32,
    /// Sample count for residual checks and the counterexample harness.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a domain and attach hyperbolicity and pseudoconvexity certificates.
    Classify { input: PathBuf },
    /// Endomorphism algebra.
    Endo {
        #[command(subcommand)]
        op: EndoOp,
    },
    /// Build the monomial C*-curve and its retraction for a domain with a rational line.
    Embed { input: PathBuf },
    /// Draw the logarithmic image as SVG.
    Render {
        input: PathBuf,
        /// Viewport `xmin,xmax,ymin,ymax` in log coordinates.
        #[arg(long, default_value = "-4,4,-4,4", value_parser = parse_view)]
        view: [f64; 4],
    },
    /// Run the rejection harness on the non-pseudoconvex counterexample.
    Counterexample {
        /// Exponent JSON file; an enclosure of π/2 when absent.
        #[arg(long)]
        gamma: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CatalogChoice::Builtin)]
        catalog: CatalogChoice,
        /// Also build and verify the witness disc.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum EndoOp {
    /// `{"gamma", "map"}` → degree, conjugate degree, multiplicity, level map.
    Degree { input: PathBuf },
    /// `{"domain", "map"}` → normal-form check; exit 3 on a violated clause.
    Validate { input: PathBuf },
    /// `{"gamma" | "domain", "maps": [F, G]}` → `F∘G`, closed or opaque.
    Compose { input: PathBuf },
    /// `{"gamma", "n"}` → exponent matrices with entries in `[-n, n]` that admit a degree.
    Enumerate { input: PathBuf },
    /// Domain JSON → involutive automorphisms with closed-form squares.
    Involutions { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalogChoice {
    Builtin,
    Rotations,
}

fn parse_view(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] if a < b && c < d && v.iter().all(|x| x.is_finite()) => Ok([*a, *b, *c, *d]),
        _ => Err("expected xmin,xmax,ymin,ymax with xmin < xmax and ymin < ymax".into()),
    }
}

pub struct Ctx {
    pub seed: u64,
    pub bits: u32,
    pub samples: usize,
}

fn run(cli: &Cli) -> Result<report::Output, Failure> {
    let ctx = Ctx { seed: cli.seed, bits: cli.bits, samples: cli.samples };
    match &cli.command {
        Command::Classify { input } => commands::classify(&ctx, input),
        Command::Endo { op } => match op {
            EndoOp::Degree { input } => commands::degree(&ctx, input),
            EndoOp::Validate { input } => commands::validate(&ctx, input),
            EndoOp::Compose { input } => commands::compose(&ctx, input),
            EndoOp::Enumerate { input } => commands::enumerate(&ctx, input),
            EndoOp::Involutions { input } => commands::involutions(&ctx, input),
        },
        Command::Embed { input } => commands::embed(&ctx, input),
        Command::Render { input, view } => commands::render(&ctx, input, *view),
        Command::Counterexample { gamma, catalog, check } => commands::counterexample(&ctx, gamma.as_deref(), *catalog, *check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(report::Output::Json(r)) => (r.to_string_pretty(), r.exit),
        Ok(report::Output::Svg(s)) => (s, report::EXIT_OK),
        Err(f) => {
            eprintln!("rk: {}", f.message);
            (Report::failure(&f).to_string_pretty(), f.exit)
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| e.to_string()),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{body}").and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    };
    if let Err(e) = written {
        eprintln!("rk: cannot write output: {e}");
        return ExitCode::from(report::EXIT_OTHER);
    }
    ExitCode::from(code)
}
