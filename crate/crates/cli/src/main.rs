use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use predynkin_cli::commands::OPERATIONS;
use predynkin_cli::{render, run, size_cap_from_env, CliError, Overrides};

/// Exact finite imprecise-probability computations on JSON problem files.
#[derive(Debug, Parser)]
#[command(name = "predynkin", version)]
struct Args {
    /// Operation to run.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(OPERATIONS))]
    operation: String,

    /// Problem file (positional form).
    #[arg(conflicts_with = "input")]
    file: Option<PathBuf>,

    /// Problem file.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Search depth for Horn–Tarski falsifiers.
    #[arg(long)]
    depth: Option<usize>,

    /// Target event, e.g. `13` or `1,3`.
    #[arg(long)]
    event: Option<String>,

    /// Conditioning event, e.g. `12` or `1,2`.
    #[arg(long)]
    cond: Option<String>,

    /// Worker threads for per-event solves.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    parallel: u16,
}

fn execute(args: &Args) -> Result<String, CliError> {
    if let Some(cap) = size_cap_from_env()? {
        predynkin::lp::set_size_cap(cap);
    }
    let path = args
        .input
        .as_ref()
        .or(args.file.as_ref())
        .ok_or_else(|| CliError::field("input", "no problem file given"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let overrides = Overrides {
        event: args.event.clone(),
        cond: args.cond.clone(),
        depth: args.depth,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallel as usize)
        .build()
        .map_err(|e| CliError::field("parallel", e.to_string()))?;
    let doc = pool.install(|| run(&args.operation, &text, &overrides))?;
    Ok(render(&doc))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&args) {
        Ok(doc) => {
            print!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
