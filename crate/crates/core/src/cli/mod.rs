//! Command-line front end: `inspect`, `build`, `verify`, `transform` and `export`.
//!
//! Exit codes are 0 on success, 1 when verification or separation fails and
//! 2 for invalid input.

mod config;
mod export;
mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use config::{
    GeneratorConfig, GeneratorKind, GridConfig, LatticeConfig, LatticeMode, RunConfig, TransformConfig, SEED_ENV,
};
pub use export::{export, ExportKind};
pub use run::{
    build, build_norm, build_pair, inspect, transform, verify, Built, LatticeSummary, NormSummary, PairSummary,
    RunReport, Timings, TransformSummary, SCHEMA_VERSION,
};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dualframe",
    version,
    about = "Bandlimited dual wavelet frames for expansive matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Use every core; results are identical either way.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct Io {
    #[arg(long)]
    pub config: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, associated norm and contraction factor of the matrix.
    Inspect(Io),
    /// Generator, lattice and dual generator.
    Build(Io),
    /// Build and run every verification check; exit 1 unless all pass.
    Verify(Io),
    /// Analysis/synthesis round trip of the configured signal.
    Transform(Io),
    /// CSV data for plotting.
    Export {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        what: ExportKind,
        /// Points per axis (psi, phi), points per shell (shells) or index window (lattice).
        #[arg(long)]
        resolution: Option<usize>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SeparationFailure { .. } => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(io: &Io) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(&io.config)?;
    cfg.apply_env()?;
    Ok(cfg)
}

fn execute(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Inspect(io) => {
            emit(io.out.as_deref(), &inspect(&load(io)?)?.to_json()?)?;
            Ok(EXIT_OK)
        }
        Command::Build(io) => {
            emit(io.out.as_deref(), &build(&load(io)?)?.to_json()?)?;
            Ok(EXIT_OK)
        }
        Command::Verify(io) => {
            let r = verify(&load(io)?)?;
            emit(io.out.as_deref(), &r.to_json()?)?;
            let passed = r.verification.as_ref().is_some_and(|v| v.all_passed);
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Transform(io) => {
            let r = transform(&load(io)?)?;
            emit(io.out.as_deref(), &r.to_json()?)?;
            if let Some(t) = &r.transform {
                log::info!("relative error {:.3e}", t.result.rel_err);
            }
            Ok(EXIT_OK)
        }
        Command::Export { io, what, resolution } => {
            let cfg = load(io)?;
            let mut buf = Vec::new();
            let rows = export(&cfg, *what, *resolution, &mut buf)?;
            if rows == 0 {
                return Err(Error::Config("the selection produced no rows".into()));
            }
            match &io.out {
                Some(p) => std::fs::write(p, &buf)?,
                None => std::io::stdout().write_all(&buf)?,
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let run = || execute(&cli.command);
    let result = if cli.parallel {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(1).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Config(format!("thread pool: {e}"))),
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
