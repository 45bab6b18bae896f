use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use comax_cli::{render_json, run_batch, run_str, text::render_text, Overrides, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Decompose finitely presented modules along comaximal ideal families.
#[derive(Parser, Debug)]
#[command(name = "comax", version)]
struct Args {
    /// decompose, crt, pcomp, nilary, gamma, split, check-stability, verify
    /// or primes. Defaults to the job's "command" field.
    command: Option<String>,
    /// Job file, or "-" for stdin.
    #[arg(long, conflicts_with = "jobs")]
    input: Option<PathBuf>,
    /// File holding a JSON array of jobs.
    #[arg(long)]
    jobs: Option<PathBuf>,
    /// Cross-check results against brute-force enumeration.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_name = "K")]
    max_exponent: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
}

fn read(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let ov = Overrides {
        command: args.command.clone(),
        oracle: args.oracle,
        max_exponent: args.max_exponent,
    };
    let (path, batch) = match &args.jobs {
        Some(p) => (Some(p), true),
        None => (args.input.as_ref(), false),
    };
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("comax: cannot read input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = if batch { run_batch(&text, &ov) } else { run_str(&text, &ov) };
    let rendered = match args.output {
        Format::Json => render_json(&outcome.report),
        Format::Text => render_text(&outcome.report),
    };
    print!("{rendered}");
    ExitCode::from(outcome.exit_code as u8)
}
