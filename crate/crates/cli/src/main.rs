use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lochom::functors::DEFAULT_KMAX;
use lochom::session::{emit, parse_session, run_session, Format, Options, KMAX_ENV};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Run session files and audit suites")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tower cutoff; defaults to $WORKBENCH_KMAX, then 20.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    kmax: Option<u32>,
    #[arg(long, default_value_t = 4)]
    degree: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a session file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run an audit suite: representability, exact_sequences,
    /// main_theorems, coherence, descent, all or fuzz.
    Suite {
        name: String,
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn options(common: &Common) -> Result<Options, String> {
    let env = std::env::var(KMAX_ENV).ok();
    let from_env = match &env {
        Some(v) => match v.trim().parse::<u32>() {
            Ok(k) if k >= 1 => Some(k),
            _ => return Err(format!("{KMAX_ENV} must be a positive integer, got `{v}`")),
        },
        None => None,
    };
    Ok(Options {
        kmax: common.kmax.or(from_env).unwrap_or(DEFAULT_KMAX),
        degree: common.degree,
        seed: common.seed,
        kmax_env: env,
    })
}

fn execute(text: &str, common: &Common) -> Result<(String, i32), String> {
    let opts = options(common)?;
    let session = parse_session(text).map_err(|e| e.to_string())?;
    let report = run_session(&session, &opts);
    let format = match common.format {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json,
    };
    Ok((emit(&report, format), report.exit_code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Run { file, common } => std::fs::read_to_string(file)
            .map_err(|e| format!("{}: {e}", file.display()))
            .and_then(|text| execute(&text, common)),
        Cmd::Suite { name, budget, common } => {
            let budget = budget.map(|b| format!(" --budget {b}")).unwrap_or_default();
            execute(&format!("suite {name}{budget}\n"), common)
        }
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
