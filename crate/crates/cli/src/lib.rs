//! Command-line front end for `telesum`.
//!
//! Exit codes: 0 when every requested check passes, 1 when any fails, 2 on
//! usage or parse errors.

pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use telesum::catalog::{self, Level, VerificationReport};
use telesum::exact::fmt_rational;
use telesum::partfrac::{build_family, decompose};
use telesum::telescope::{gosper, verify_certificate, wz_difference, GosperOutcome};

pub use expr::{parse_ratfun, render, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "telesum",
    version,
    about = "Exact verification of binomial-harmonic sum identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check identities at the requested levels.
    Verify(VerifyArgs),
    /// Print the partial fraction decomposition behind an identity.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        identity: u8,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        j: Option<i64>,
    },
    /// Run Gosper's algorithm on a term ratio t(j+1)/t(j).
    Gosper {
        #[arg(long)]
        ratio: String,
    },
    /// Show and check the WZ-style certificate of an identity.
    Certificate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=7))]
        identity: u8,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
    },
    /// Verify every identity at every standard level and write a JSON report.
    Report {
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        n_max: i64,
        #[arg(long)]
        json: PathBuf,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// 1-8 or "all".
    #[arg(long, value_parser = parse_identity)]
    identity: IdentitySel,
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    n_max: i64,
    /// value, summand, decompose, certificate, recurrence, dual or all.
    #[arg(long, value_delimiter = ',', default_value = "all", value_parser = parse_level)]
    level: Vec<LevelSel>,
    /// Also assert the alternative closed form of identity 7.
    #[arg(long)]
    alt: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
enum IdentitySel {
    All,
    One(u8),
}

#[derive(Debug, Clone, Copy)]
enum LevelSel {
    All,
    One(Level),
}

fn parse_identity(s: &str) -> Result<IdentitySel, String> {
    if s == "all" {
        return Ok(IdentitySel::All);
    }
    match s.parse::<u8>() {
        Ok(id @ 1..=8) => Ok(IdentitySel::One(id)),
        _ => Err(format!("expected 1-8 or `all`, got `{s}`")),
    }
}

fn parse_level(s: &str) -> Result<LevelSel, String> {
    if s == "all" {
        return Ok(LevelSel::All);
    }
    s.parse().map(LevelSel::One)
}

/// Runs the CLI on `args` (without the program name), writing to the
/// process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("telesum")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if informational { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Decompose { identity, n, j } => cmd_decompose(identity, n, j, out),
        Command::Gosper { ratio } => cmd_gosper(&ratio, out),
        Command::Certificate { identity, n } => cmd_certificate(identity, n, out),
        Command::Report { n_max, json } => {
            run_verification(&(1..=8).collect::<Vec<_>>(), n_max, &Level::STANDARD, Some(&json), out)
        }
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAIL
        }
    }
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let ids: Vec<u8> = match a.identity {
        IdentitySel::All => (1..=8).collect(),
        IdentitySel::One(id) => vec![id],
    };
    let mut levels = Vec::new();
    for sel in &a.level {
        match sel {
            LevelSel::All => levels.extend(Level::STANDARD),
            LevelSel::One(l) => levels.push(*l),
        }
    }
    if a.alt {
        levels.push(Level::Alt);
    }
    levels.sort();
    levels.dedup();
    run_verification(&ids, a.n_max, &levels, a.json.as_deref(), out)
}

fn run_verification(
    ids: &[u8],
    n_max: i64,
    levels: &[Level],
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let start = Instant::now();
    let mut reports = Vec::with_capacity(ids.len());
    for &id in ids {
        let r = catalog::verify(id, n_max, levels).map_err(|e| CliError::Usage(e.to_string()))?;
        print_summary(&r, out)?;
        reports.push(r);
    }
    let doc = report::build(&reports, start.elapsed().as_millis());
    writeln!(
        out,
        "{}: {} failure(s)",
        if doc.summary.pass { "PASS" } else { "FAIL" },
        doc.summary.failures
    )?;
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Failure(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if doc.summary.pass { EXIT_OK } else { EXIT_FAIL })
}

fn print_summary(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    let rec = catalog::record(r.id).expect("verified id");
    writeln!(
        out,
        "identity {} (X = {}, closed form {}), n ≤ {}",
        r.id, rec.weight, rec.closed_form, r.n_max
    )?;
    for (level, outcomes) in &r.levels {
        let passed = outcomes.iter().filter(|o| o.pass).count();
        writeln!(out, "  {:<12} {}/{}", level.as_str(), passed, outcomes.len())?;
        for o in outcomes.iter().filter(|o| !o.pass).take(5) {
            let params: Vec<String> = o.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(out, "    FAIL {} [{}]", o.check, params.join(", "))?;
            if let Some(w) = &o.witness {
                write!(out, " lhs {} rhs {}", fmt_rational(&w.lhs), fmt_rational(&w.rhs))?;
            }
            if let Some(n) = &o.note {
                write!(out, " ({n})")?;
            }
            writeln!(out)?;
        }
    }
    for f in &r.findings {
        writeln!(out, "  finding: {f}")?;
    }
    Ok(())
}

fn cmd_decompose(id: u8, n: i64, j: Option<i64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let j = match (id, j) {
        (1 | 2, _) => None,
        (_, None) => return Err(CliError::Usage(format!("identity {id} needs --j"))),
        (_, Some(j)) => Some(j),
    };
    let family = build_family(id, n, j).map_err(|e| CliError::Usage(e.to_string()))?;
    let d = decompose(&family.function, &family.poles).map_err(|e| CliError::Failure(e.to_string()))?;
    writeln!(out, "f(z) = {}", family.function.display_in("z"))?;
    if !d.polynomial_part.is_zero() {
        writeln!(out, "polynomial part: {}", d.polynomial_part.display_in("z"))?;
    }
    for part in &d.parts {
        let loc = fmt_rational(part.pole.location());
        let order = part.coefficients.len();
        for (i, c) in part.coefficients.iter().enumerate() {
            writeln!(out, "z = {loc}: c_-{} = {}", order - i, fmt_rational(c))?;
        }
    }
    let mismatches = catalog::decompose_check(id, n, j).map_err(|e| CliError::Failure(e.to_string()))?;
    for m in &mismatches {
        writeln!(
            out,
            "MISMATCH {}: computed {}, closed form {}",
            m.what,
            fmt_rational(&m.actual),
            fmt_rational(&m.expected)
        )?;
    }
    if mismatches.is_empty() {
        writeln!(out, "all coefficients match their closed forms")?;
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_FAIL)
    }
}

fn cmd_gosper(text: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let ratio = parse_ratfun(text).map_err(|e| CliError::Usage(format!("--ratio: {e}")))?;
    writeln!(out, "ratio: {}", render(&ratio))?;
    match gosper(&ratio).map_err(|e| CliError::Usage(e.to_string()))? {
        GosperOutcome::NotSummable => {
            writeln!(out, "not Gosper-summable")?;
            Ok(EXIT_OK)
        }
        GosperOutcome::Summable(cert) => {
            writeln!(out, "certificate R(j) = {}", render(&cert.r))?;
            let ok = verify_certificate(&ratio, &cert.r);
            writeln!(
                out,
                "r(j)·R(j+1) - R(j) = 1: {}",
                if ok { "verified" } else { "FAILED" }
            )?;
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn cmd_certificate(id: u8, n: i64, out: &mut dyn Write) -> Result<i32, CliError> {
    let fail = |e: catalog::CatalogError| CliError::Failure(e.to_string());
    let pair = catalog::wz_pair(id).map_err(fail)?;
    let rel = (pair.relation)(n);
    writeln!(out, "F(n,j) = {}", (pair.f)(n))?;
    writeln!(out, "G(n,j) = {}", (pair.g)(n))?;
    writeln!(out, "{rel}")?;
    let h = wz_difference(&pair.f, &rel, n).map_err(|e| fail(e.into()))?;
    writeln!(out, "h_n(j) = {}", render(&h))?;
    let wz = catalog::certificate_check(id, n).map_err(fail)?;
    writeln!(
        out,
        "relation as rational functions of j: {}",
        if wz { "holds" } else { "FAILS" }
    )?;
    let gosper_ok = match catalog::gosper_check(id, n).map_err(fail)? {
        Some(diff) if diff.as_constant().is_some() => {
            let c = diff.as_constant().expect("constant");
            writeln!(out, "Gosper antidifference = G(n,j) + {}", fmt_rational(&c))?;
            true
        }
        Some(diff) => {
            writeln!(out, "Gosper antidifference differs from G by {}", render(&diff))?;
            false
        }
        None => {
            writeln!(out, "Gosper reports h_n not summable")?;
            false
        }
    };
    Ok(if wz && gosper_ok { EXIT_OK } else { EXIT_FAIL })
}
