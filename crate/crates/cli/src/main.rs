use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};
use serde_json::Value;

use polystrata::Execution;
use polystrata_cli::{fixtures, run, Command, Options};

/// Exact combinatorics of regular subdivisions, periodic Delaunay
/// decompositions and matroid polytopes.
#[derive(Parser, Debug)]
#[command(name = "polystrata", version)]
#[command(group(ArgGroup::new("source").args(["input", "json", "fixture"])))]
struct Cli {
    command: Command,

    /// Read the input document from a file ("-" for stdin).
    #[arg(long, short)]
    input: Option<PathBuf>,

    /// Inline input document.
    #[arg(long)]
    json: Option<String>,

    /// Use a bundled fixture as input.
    #[arg(long)]
    fixture: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Sup-norm limit for periodic lattice-point searches.
    #[arg(long, default_value_t = polystrata::periodic::DEFAULT_WINDOW, value_parser = clap::value_parser!(i64).range(1..=4096))]
    window: i64,

    /// Longest generator word tried by gl-equiv.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(0..=12))]
    word_bound: u64,

    /// Highest dilation checked by idp.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=16))]
    degree_bound: u32,

    /// Largest configuration accepted by the enumeration subcommands.
    #[arg(long, default_value_t = polystrata::subdiv::MAX_ENUM_POINTS as u64, value_parser = clap::value_parser!(u64).range(1..=polystrata::subdiv::MAX_ENUM_POINTS as u64))]
    max_points: u64,

    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

fn read_input(cli: &Cli) -> Result<Value, String> {
    let text = if let Some(name) = &cli.fixture {
        return fixtures::get(name)
            .map(|f| f.input)
            .ok_or_else(|| format!("unknown fixture {name:?}; run `polystrata fixtures`"));
    } else if let Some(s) = &cli.json {
        s.clone()
    } else if let Some(p) = &cli.input {
        if p.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| e.to_string())?;
            s
        } else {
            fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?
        }
    } else if cli.command == Command::Fixtures {
        "{}".to_string()
    } else {
        return Err("exactly one of --input, --json or --fixture is required".into());
    };
    serde_json::from_str(&text).map_err(|e| format!("input is not valid JSON: {e}"))
}

fn emit(cli: &Cli, v: &impl serde::Serialize) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    match &cli.out {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        window: cli.window,
        word_bound: cli.word_bound as usize,
        degree_bound: cli.degree_bound,
        max_points: cli.max_points as usize,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let input = match read_input(&cli) {
        Ok(v) => v,
        Err(message) => {
            let report = polystrata_cli::ErrorReport {
                exit_code: 1,
                subcommand: cli.command.name(),
                error: polystrata_cli::ErrorBody {
                    code: "invalid_input",
                    message,
                },
                version: polystrata_cli::VERSION,
            };
            let _ = emit(&cli, &report);
            return ExitCode::from(1);
        }
    };
    let (result, code) = match run(cli.command, &input, &opts) {
        Ok(r) => (emit(&cli, &r), 0),
        Err(e) => (emit(&cli, &e), e.exit_code),
    };
    if let Err(e) = result {
        eprintln!("polystrata: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
