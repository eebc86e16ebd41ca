//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qdwork_core::padic::{check_dwork_padic, check_mortenson, check_sun_liu};
use qdwork_core::polyring::cyclotomic;
use qdwork_core::verifier::{
    verify_gz_d2, verify_lemma21, verify_param_roots, verify_thm1, verify_thm2, Limits, ParamVariant, TheoremParams,
    VerificationReport, DEFAULT_SIZE_GUARD,
};
use qdwork_core::{Error, Rational};

use crate::config::ScanConfig;
use crate::report::{emit_report, CongruenceEntry, DworkEntry, Entry, Format, ReportDocument, VerificationEntry};
use crate::scan::{is_invalid, run_scan};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qdwork", version, about = "Exact checker for q-Dwork-type supercongruences")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Largest admissible number of summands n^r
    #[arg(long, global = true, value_name = "N")]
    size_guard: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the n-th cyclotomic polynomial
    Cyclotomic { n: u64 },
    /// Check one theorem instance
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Check one p-adic congruence
    #[command(subcommand)]
    Padic(PadicCommand),
    /// Run every check of a configuration file
    Scan {
        config: PathBuf,
        /// Worker threads (overrides the file's [run] jobs)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Msnr {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    r: u32,
}

impl From<Msnr> for TheoremParams {
    fn from(a: Msnr) -> Self {
        TheoremParams::new(a.m, a.s, a.n, a.r)
    }
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// n ≡ 1 (mod m)
    Thm1(Msnr),
    /// n ≡ -1 (mod m)
    Thm2(Msnr),
    /// Root identities for thm1
    Param1(Msnr),
    /// Root identities for thm2
    Param2(Msnr),
    /// Single-length sum at the roots of its modulus
    Lemma21 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
    },
    /// The (m, s) = (2, 1) congruence with the Jacobi sign
    #[command(name = "gz-d2")]
    GzD2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Subcommand, Debug)]
enum PadicCommand {
    /// Residues of the four classical sums mod p^2
    Mortenson {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        variant: u8,
    },
    /// Truncated binomial sums of length pn against length n
    SunLiu {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Rational such as 1/2
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// q = 1 specialisation of the Dwork-type congruence
    Dwork {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        s: u64,
    },
}

enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if is_invalid(&e) {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

enum Output {
    Document(ReportDocument),
    Text(String),
}

fn timed(f: impl FnOnce() -> Result<VerificationReport, Error>) -> Result<Entry, Failure> {
    let start = Instant::now();
    let mut report = f()?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Entry::Verification(VerificationEntry::from(report)))
}

fn verify(cmd: VerifyCommand, limits: &Limits) -> Result<Entry, Failure> {
    match cmd {
        VerifyCommand::Thm1(a) => timed(|| verify_thm1(&a.into(), limits)),
        VerifyCommand::Thm2(a) => timed(|| verify_thm2(&a.into(), limits)),
        VerifyCommand::Param1(a) => timed(|| verify_param_roots(ParamVariant::One, &a.into(), limits)),
        VerifyCommand::Param2(a) => timed(|| verify_param_roots(ParamVariant::Two, &a.into(), limits)),
        VerifyCommand::Lemma21 { m, n, s } => timed(|| verify_lemma21(m, n, s, limits)),
        VerifyCommand::GzD2 { n, r } => timed(|| verify_gz_d2(n, r, limits)),
    }
}

fn padic(cmd: PadicCommand) -> Result<Entry, Failure> {
    let start = Instant::now();
    let mut entry = match cmd {
        PadicCommand::Mortenson { p, variant } => {
            Entry::Congruence(CongruenceEntry::mortenson(variant, &check_mortenson(p, variant)?))
        }
        PadicCommand::SunLiu { p, n, x } => {
            let value: Rational =
                x.parse().map_err(|_| Failure::Invalid(format!("x must be a rational such as 1/2, got {x:?}")))?;
            Entry::Congruence(CongruenceEntry::sun_liu(n, value.to_string(), &check_sun_liu(p, n, &value)?))
        }
        PadicCommand::Dwork { p, r, m, s } => Entry::Dwork(DworkEntry::new(p, r, m, s, &check_dwork_padic(p, r, m, s)?)),
    };
    entry.set_elapsed_ms(start.elapsed().as_millis() as u64);
    Ok(entry)
}

fn scan(path: PathBuf, jobs: Option<usize>, size_guard: Option<u64>) -> Result<ReportDocument, Failure> {
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut config = ScanConfig::parse(&text).map_err(|e| Failure::Invalid(e.to_string()))?;
    if let Some(j) = jobs {
        config.jobs = j;
    }
    if let Some(g) = size_guard {
        config.size_guard = g;
    }
    config.validate().map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(run_scan(&config)?)
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let limits = Limits { size_guard: cli.size_guard.unwrap_or(DEFAULT_SIZE_GUARD) };
    match cli.command {
        Command::Cyclotomic { n } => {
            let poly = cyclotomic(n)?;
            if cli.json {
                let value = serde_json::json!({ "n": n, "degree": poly.degree(), "polynomial": poly.to_string() });
                Ok(Output::Text(format!("{value}\n")))
            } else {
                Ok(Output::Text(format!("{poly}\n")))
            }
        }
        Command::Verify(cmd) => Ok(Output::Document(ReportDocument::single(verify(cmd, &limits)?))),
        Command::Padic(cmd) => Ok(Output::Document(ReportDocument::single(padic(cmd)?))),
        Command::Scan { config, jobs } => Ok(Output::Document(scan(config, jobs, cli.size_guard)?)),
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_PASS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let reason = rendered.lines().next().unwrap_or("invalid usage");
            let _ = writeln!(stderr, "{reason}");
            return EXIT_INVALID;
        }
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    let out_path = cli.out.clone();
    let (body, code) = match dispatch(cli) {
        Ok(Output::Text(text)) => (text, EXIT_PASS),
        Ok(Output::Document(doc)) => {
            let code = if doc.all_passed() { EXIT_PASS } else { EXIT_FAIL };
            (emit_report(&doc, format), code)
        }
        Err(Failure::Invalid(why)) => {
            let _ = writeln!(stderr, "error: {why}");
            return EXIT_INVALID;
        }
        Err(Failure::Internal(why)) => {
            let _ = writeln!(stderr, "internal error: {why}");
            return EXIT_INTERNAL;
        }
    };
    let written = match out_path {
        Some(path) => std::fs::write(&path, body.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => code,
        Err(why) => {
            let _ = writeln!(stderr, "internal error: {why}");
            EXIT_INTERNAL
        }
    }
}
