//! Command-line front end: argument parsing, the weight cache and report
//! output. [`run`] is the whole program minus process exit.

pub mod args;
pub mod cache;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;

use args::{Cli, Command};
use astlab::limits::{LimitError, Limits};
use commands::Context;

pub const EXIT_OK: i32 = 0;
/// A check failed, or IO did.
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// A resource guard refused the computation.
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Failed(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAILED,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<LimitError> for CliError {
    fn from(e: LimitError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<astlab::Error> for CliError {
    fn from(e: astlab::Error) -> Self {
        match e.limit() {
            Some(l) => CliError::Resource(l.to_string()),
            None => CliError::Failed(e.to_string()),
        }
    }
}

macro_rules! via_core_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                astlab::Error::from(e).into()
            }
        }
    )*};
}

via_core_error!(
    astlab::paths::PathError,
    astlab::trapezoid::TrapezoidError,
    astlab::algebra::AlgebraError,
    astlab::weights::WeightError,
    astlab::identities::IdentityError,
    astlab::conjectures::ConjectureError
);

/// Parses `argv` and runs the subcommand, returning the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render();
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let cache = open_cache(&cli, err);
    let mut cx = Context { limits: Limits::new(cli.limit_size), format: cli.format, cache, out, err };
    let res = match &cli.command {
        Command::Enumerate(a) => commands::enumerate(&mut cx, a),
        Command::Weight(a) => commands::weight(&mut cx, a),
        Command::Verify(a) => commands::verify(&mut cx, a),
        Command::Scan(a) => commands::scan(&mut cx, a),
        Command::Tables(a) => commands::tables(&mut cx, a),
    };
    let res = res.and_then(|ok| cx.out.flush().map(|_| ok).map_err(CliError::from));
    match res {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(cx.err, "error: {e}");
            e.exit_code()
        }
    }
}

/// A missing cache is created on first write; an unreadable one is ignored.
fn open_cache(cli: &Cli, err: &mut dyn Write) -> Option<cache::Cache> {
    if cli.no_cache {
        return None;
    }
    let path = cli.cache.clone().or_else(cache::default_path)?;
    match cache::Cache::open(&path) {
        Ok(c) => {
            for w in &c.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            Some(c)
        }
        Err(e) => {
            let _ = writeln!(err, "warning: cache {} unreadable, continuing without it: {e}", path.display());
            None
        }
    }
}
