//! `ellis-lab`: enumeration tables, verification suites, membership checks
//! and witnesses for enveloping semigroups of chain automorphism groups.

mod enumerate;
mod lattice;
mod verify;
mod witness;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ellis_core::partial::Mode;
use ellis_core::Error;

/// Largest carrier for enumeration unless overridden.
const DEFAULT_N_CAP: usize = 6;
/// Largest monoid the verification suites will close up.
const DEFAULT_CLOSURE_CAP: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "ellis-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override the size caps (also `ELLIS_LAB_CAP`).
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orders, rank-ideal sizes and Rees-quotient orders of I_n or J_n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "I", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Run one of the exhaustive or sampled check suites.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check an observation file and build a witness when it is consistent.
    Witness {
        /// Observation JSON; `-` reads stdin.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The quotient arrows between the compactifications.
    Lattice {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run and its exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> &str {
        let (Failure::Input(m) | Failure::Cap(m) | Failure::Check(m)) = self;
        m
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// The output text and whether every check in it passed.
struct Report {
    text: String,
    ok: bool,
}

struct Caps {
    n: usize,
    closure: usize,
}

impl Caps {
    fn resolve(flag: Option<usize>) -> Result<Self, Failure> {
        let env =
            match std::env::var("ELLIS_LAB_CAP") {
                Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                    Failure::Input(format!("ELLIS_LAB_CAP is not a number: {v:?}"))
                })?),
                Err(_) => None,
            };
        Ok(match flag.or(env) {
            Some(c) => Caps {
                n: c,
                closure: c.max(DEFAULT_CLOSURE_CAP),
            },
            None => Caps {
                n: DEFAULT_N_CAP,
                closure: DEFAULT_CLOSURE_CAP,
            },
        })
    }
}

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let caps = Caps::resolve(cli.cap)?;
    match &cli.command {
        Command::Enumerate { n, mode } => enumerate::run(*n, *mode, cli.format, &caps),
        Command::Verify { suite, n, seed } => verify::run(*suite, *n, *seed, cli.format, &caps),
        Command::Witness { input } => {
            let text = if input.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                s
            } else {
                fs::read_to_string(input)
                    .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?
            };
            witness::run(&text)
        }
        Command::Lattice { seed } => lattice::run(*seed, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (report, failure) = match run(&cli) {
        Ok(r) => (
            Some(r.text.clone()),
            (!r.ok).then(|| Failure::Check("some checks failed".into())),
        ),
        Err(f) => (None, Some(f)),
    };
    if let Some(text) = report {
        let written = match &cli.out {
            Some(path) => fs::write(path, &text),
            None => io::stdout().write_all(text.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::Parse("x".into())).code(), 1);
        let cap = Error::CapExceeded {
            what: "carrier size",
            size: 9,
            cap: 6,
        };
        assert_eq!(Failure::from(cap).code(), 2);
        assert_eq!(Failure::Check("x".into()).code(), 3);
    }

    #[test]
    fn flag_cap_wins() {
        let c = Caps::resolve(Some(8)).unwrap();
        assert_eq!((c.n, c.closure), (8, DEFAULT_CLOSURE_CAP));
    }

    #[test]
    fn modes() {
        assert_eq!(parse_mode("j"), Ok(Mode::J));
        assert!(parse_mode("x").is_err());
    }
}
