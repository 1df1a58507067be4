use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use localfield::claims::{ClaimError, ClaimKind, ModeChoice, Overrides, Registry};

/// Runs the registered claims and reports PASS/FAIL per claim.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered claims.
    List,
    /// Run one claim.
    Run {
        name: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run every claim, optionally of one kind.
    All {
        #[arg(long, value_parser = parse_kind)]
        kind: Option<ClaimKind>,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Load a claim file, then list or run its claims.
    Load {
        file: PathBuf,
        #[command(subcommand)]
        then: Option<Then>,
    },
}

#[derive(Subcommand)]
enum Then {
    List,
    Run {
        name: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    All {
        #[command(flatten)]
        opts: RunOpts,
    },
}

#[derive(Args, Clone)]
struct RunOpts {
    /// Number of series terms kept in truncated arithmetic.
    #[arg(long)]
    precision: Option<usize>,
    /// Sample count for randomized claims.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ModeChoice>,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

impl RunOpts {
    fn overrides(&self) -> Overrides {
        Overrides { precision: self.precision, samples: self.samples, seed: self.seed, mode: self.mode }
    }
}

fn parse_kind(s: &str) -> Result<ClaimKind, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<ModeChoice, String> {
    s.parse()
}

fn list(reg: &Registry, only: Option<&[String]>) {
    for c in reg.claims() {
        if only.is_none_or(|ns| ns.contains(&c.name)) {
            println!("{:<32} {:<24} {}", c.name, c.kind.to_string(), c.description);
        }
    }
}

fn run_one(reg: &Registry, name: &str, opts: &RunOpts) -> Result<u8, ClaimError> {
    let report = reg.run(name, &opts.overrides())?;
    if opts.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render());
    }
    Ok(u8::from(report.verdict != localfield::variety::Verdict::Pass))
}

fn run_all(reg: &Registry, kind: Option<ClaimKind>, opts: &RunOpts) -> Result<u8, ClaimError> {
    let summary = reg.run_all(kind, &opts.overrides())?;
    if opts.json {
        println!("{}", summary.to_json());
    } else {
        print!("{}", summary.render());
    }
    Ok(summary.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut reg = Registry::builtin();
    let result = match &cli.command {
        Command::List => {
            list(&reg, None);
            Ok(0)
        }
        Command::Run { name, opts } => run_one(&reg, name, opts),
        Command::All { kind, opts } => run_all(&reg, *kind, opts),
        Command::Load { file, then } => match reg.load_file(file) {
            Err(e) => Err(e),
            Ok(names) => match then {
                None | Some(Then::List) => {
                    list(&reg, Some(&names));
                    Ok(0)
                }
                Some(Then::Run { name, opts }) => run_one(&reg, name, opts),
                Some(Then::All { opts }) => {
                    let mut only = Registry::empty();
                    only.load_file(file).map(|_| ()).and_then(|_| run_all(&only, None, opts))
                }
            },
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
