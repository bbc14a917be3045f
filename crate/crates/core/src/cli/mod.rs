//! Command-line front end. Output goes to the supplied writers so the
//! commands can be driven from tests; [`run`] returns the exit code.
//!
//! Exit codes: 0 success, 1 a check failed or nothing was found, 2 usage
//! error.

mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::jw::{check_jw_properties, jones_wenzl};
use crate::karoubi::decompose_jw;
use crate::otl::Chirality;
use crate::qarith::{parse_rational, quantum_binom, quantum_int};

pub use suites::{
    half_cup_cap, iota_partition_counterexample, lift_functor_counterexample, run_suite, CheckResult, Suite,
    SuiteReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "popswitch", version, about = "Exact Temperley-Lieb and pop-switch computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the quantum integer [n], or the quantum binomial with --choose.
    Qnum {
        n: u32,
        #[arg(long)]
        choose: Option<u32>,
    },
    /// Print the Jones-Wenzl idempotent p_n.
    Jw {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10))]
        n: u32,
        /// Print the property report instead of the element.
        #[arg(long)]
        check: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest size to check; clamped to what the suite supports.
        #[arg(long)]
        max: Option<usize>,
        /// Rational point for a numeric pre-check (refutation only).
        #[arg(long)]
        q0: Option<String>,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append per-check elapsed time (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Certify p_n as a direct sum of n+1 vertical-strand objects.
    Decompose {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=4))]
        n: u32,
        #[arg(long)]
        mirrored: bool,
        /// Also write the certificate to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parse(_) | Error::ArityMismatch { .. } => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> crate::Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}

fn execute(cmd: Command, out: &mut dyn Write) -> crate::Result<i32> {
    let mut emit = |s: &str| {
        let _ = out.write_all(s.as_bytes());
    };
    match cmd {
        Command::Qnum { n, choose } => {
            let text = match choose {
                None => quantum_int(n).to_string(),
                Some(k) if k > n => {
                    return Err(Error::Domain(format!("--choose needs 0 <= k <= n, got k = {k}, n = {n}")));
                }
                Some(k) => quantum_binom(i64::from(n), i64::from(k))?.to_string(),
            };
            emit(&format!("{text}\n"));
            Ok(EXIT_OK)
        }
        Command::Jw { n, check } => {
            let p = jones_wenzl(n as usize)?;
            if !check {
                emit(&format!("{}\n", p.element));
                return Ok(EXIT_OK);
            }
            let rep = check_jw_properties(&p.element)?;
            let line = |name: &str, ok: bool| format!("{name}: {}\n", if ok { "pass" } else { "FAIL" });
            emit(&format!("p_{n}\n"));
            emit(&line("nonzero", rep.nonzero));
            emit(&line("idempotent", rep.idempotent));
            emit(&line("left uncappable", rep.left_uncappable));
            emit(&line("right uncappable", rep.right_uncappable));
            Ok(if rep.all_pass() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Verify {
            suite,
            max,
            q0,
            out: path,
            timings,
        } => {
            let q0 = q0.as_deref().map(parse_rational).transpose()?;
            let mut reports = Vec::new();
            for s in suite.members() {
                let rep = run_suite(s, max, q0.as_ref());
                emit(&rep.render(timings));
                reports.push(rep);
            }
            if let Some(path) = path {
                let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
                write_file(&path, &json)?;
            }
            Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Decompose { n, mirrored, out: path } => {
            let chir = if mirrored { Chirality::Mirrored } else { Chirality::Standard };
            let d = match decompose_jw(n as usize, chir) {
                Ok(d) => d,
                Err(Error::NotFound(msg)) => {
                    emit(&format!("NOT-FOUND {msg}\n"));
                    return Ok(EXIT_FAIL);
                }
                Err(e) => return Err(e),
            };
            let text = format!("{d}\n");
            emit(&text);
            if let Some(path) = path {
                write_file(&path, &text)?;
            }
            Ok(EXIT_OK)
        }
    }
}
