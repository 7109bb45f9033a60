mod bench;
mod config;
mod eval;
mod pullback;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Io = 3,
}

/// A failed command: message plus exit status.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { status: Status::Usage, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { status: Status::Io, message: message.into() }
    }

    pub fn fail(message: impl Into<String>) -> Self {
        Self { status: Status::Fail, message: message.into() }
    }
}

#[derive(Parser)]
#[command(name = "mbkit", version, about = "Mellin-Barnes integrals, delta pull-backs and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check catalog identities on seeded parameter samples.
    Verify(verify::VerifyArgs),
    /// Evaluate a special function by its line integral or by its oracle.
    Eval(eval::EvalArgs),
    /// Compare the three pull-back routes on a built-in example.
    Pullback(pullback::PullbackArgs),
    /// Time line-integral against oracle evaluation on a fixed grid.
    Bench(bench::BenchArgs),
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("MBKIT_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::usage(format!("MBKIT_THREADS must be an integer >= 1, got `{v}`"))),
        },
    }
}

fn run(cli: Cli) -> Result<Status, Failure> {
    if let Some(n) = thread_cap()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::fail(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Eval(args) => eval::run(args),
        Command::Pullback(args) => pullback::run(args),
        Command::Bench(args) => bench::run(args),
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::io(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(s) => ExitCode::from(s as u8),
        Err(f) => {
            eprintln!("mbkit: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
