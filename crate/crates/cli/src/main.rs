use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use leviflat_cli::{batch_exit_code, emit_batch, emit_report, parse_input, parse_tolerance, run_batch, Format, Overrides};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

/// Run exact analyses of plane curves, pencils and real hypersurfaces.
#[derive(Parser, Debug)]
#[command(name = "leviflat", version)]
struct Cli {
    /// Request file (a JSON object or array of objects); `-` reads stdin.
    input: PathBuf,
    /// Seed of the random generator.
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points used by numeric certificates.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance, as `p/q` or an exact decimal such as `1e-9`.
    #[arg(long)]
    tol: Option<String>,
    /// Truncation order of branch expansions.
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fail = |msg: String| {
        eprintln!("leviflat: {msg}");
        ExitCode::from(3)
    };
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", cli.input.display())),
    };
    let tol = match cli.tol.as_deref().map(parse_tolerance).transpose() {
        Ok(t) => t,
        Err(e) => return fail(e.to_string()),
    };
    let overrides = Overrides {
        seed: cli.seed,
        samples: cli.samples,
        tol,
        truncation: cli.truncation,
    };
    let mut requests = match parse_input(&text) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    for r in &mut requests {
        r.apply(&overrides);
    }
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let reports = run_batch(&requests);
    let batch = text.trim_start().starts_with('[');
    let bytes = if batch {
        emit_batch(&reports, format)
    } else {
        emit_report(&reports[0], format)
    };
    if std::io::stdout().write_all(&bytes).is_err() {
        return ExitCode::from(3);
    }
    ExitCode::from(batch_exit_code(&reports) as u8)
}
