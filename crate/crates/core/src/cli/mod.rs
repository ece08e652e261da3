//! Command-line entry point.
//!
//! Every command prints a JSON certificate. Exit codes: 0 when every check
//! passes, 1 when a check fails, 2 on usage or I/O errors. Check timings
//! are omitted unless `--timings` is given, so equal invocations produce
//! byte-identical output.

mod ltab;
mod pipeline;

pub use ltab::{parse_ltab, read_ltab, to_ltab_string, write_ltab, LTAB_HEADER};
pub use pipeline::{
    base_loop, build_family, certify_base, run_counterexample, simplicity, verify_table, Built, Complement,
};

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::baseg::GroupG;
use crate::bigg::Variant;
use crate::loopcore::{BolMode, Certificate, LoopTable};
use crate::s5mod::certify_modules;

/// Environment variable overriding the default sampling seed.
pub const SEED_VAR: &str = "BOLFORGE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "bolforge",
    version,
    about = "Build and certify simple right Bol loops of exponent 2"
)]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Keep per-check timings in the JSON output.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify G, its folder and the order-96 loop.
    CertifyBase,
    /// Certify the modules N, M, U and the pieces of U used by the family.
    CertifyModules,
    /// Build and certify a family folder; at k = 1 also write its loop table.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "twisted")]
        variant: Variant,
        /// Which D1-submodule besides W is used as T1.
        #[arg(long, default_value = "t1")]
        complement: Complement,
        /// LTAB output (k = 1 only).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Re-validate an LTAB file.
    Verify {
        file: PathBuf,
        /// `exhaustive` or `sample=N`.
        #[arg(long, default_value = "sample=1000000")]
        bol: BolMode,
        /// Sampling seed; defaults to $BOLFORGE_SEED, then 1.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Block analysis of an LTAB file.
    Simplicity { file: PathBuf },
    /// The split extension J ⋊ S5; passes when the criterion fails as it must.
    Counterexample,
}

/// A usage or I/O error (exit code 2).
#[derive(Debug)]
struct Failure(String);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, stdout, stderr) = run_captured(args);
    print!("{stdout}");
    eprint!("{stderr}");
    code
}

/// Like [`run`], returning the exit code, stdout and stderr.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return (2, String::new(), e.render().to_string()),
        Err(e) => return (0, e.render().to_string(), String::new()),
    };
    let mut buf = Vec::new();
    let (code, stderr) = match execute(&cli, &mut buf) {
        Ok(true) => (0, String::new()),
        Ok(false) => (1, String::new()),
        Err(Failure(msg)) => (2, format!("error: {msg}\n")),
    };
    (code, String::from_utf8_lossy(&buf).into_owned(), stderr)
}

fn default_seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure(format!("{SEED_VAR}={s} is not an integer"))),
        Err(_) => Ok(1),
    }
}

fn load_table(path: &Path) -> Result<LoopTable, Failure> {
    let f = fs::File::open(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    read_ltab(BufReader::new(f)).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn group() -> Result<GroupG, Failure> {
    GroupG::build().map_err(|e| Failure(format!("building G: {e}")))
}

fn emit(cert: &mut Certificate, timings: bool, out: &mut dyn Write, file: Option<&Path>) -> Result<bool, Failure> {
    if !timings {
        cert.strip_timings();
    }
    let json = cert.to_json() + "\n";
    match file {
        Some(p) => fs::write(p, json).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => out.write_all(json.as_bytes()).map_err(|e| Failure(e.to_string()))?,
    }
    Ok(cert.passed())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, Failure> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Failure("--workers must be positive".into()));
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let t = cli.timings;
    match &cli.command {
        Command::CertifyBase => emit(&mut certify_base(&group()?), t, out, None),
        Command::CertifyModules => emit(&mut certify_modules(&group()?), t, out, None),
        Command::Build {
            k,
            variant,
            complement,
            out: ltab,
            meta,
        } => {
            if ltab.is_some() && *k != 1 {
                return Err(Failure(format!(
                    "loop tables are only materialized at k = 1, not k = {k}"
                )));
            }
            let built = build_family(&group()?, *k, *variant, *complement).map_err(|e| Failure(e.to_string()))?;
            let Built { mut cert, table } = built;
            if let (Some(path), Some(table)) = (ltab, &table) {
                let f = fs::File::create(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                write_ltab(table, io::BufWriter::new(f)).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            emit(&mut cert, t, out, meta.as_deref())
        }
        Command::Verify { file, bol, seed } => {
            let table = load_table(file)?;
            let seed = match seed {
                Some(s) => *s,
                None => default_seed()?,
            };
            emit(&mut verify_table(&table, bol.with_seed(seed)), t, out, None)
        }
        Command::Simplicity { file } => emit(&mut simplicity(&load_table(file)?), t, out, None),
        Command::Counterexample => emit(&mut run_counterexample(&group()?), t, out, None),
    }
}
