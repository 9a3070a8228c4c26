//! The `qlcm` command line. Exit codes: 0 when every check passes, 1 on a
//! mathematical mismatch, 2 on a usage or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::cyclotomic::factorization_to_poly;
use crate::error::Error;
use crate::numthy::require_prime;
use crate::qcalc::{
    bounds_check, carry_count_lhs, carry_count_rhs, carry_pattern, carry_sum_for_k, classical_farhi_check,
    lcm_qbinomials_factorization, q_binomial_factorization, q_binomial_poly, verify_main_identity, witness_all_carries,
    Depth, QBinomialSpec,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qlcm", version, about = "Verify lcm identities for q-binomial coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the identity for n = 1..=n_max.
    Verify {
        #[arg(long, value_parser = positive())]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Depth::Factored)]
        depth: Depth,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; defaults to one per core.
        #[arg(long, value_parser = positive())]
        workers: Option<u64>,
    },
    /// Cyclotomic factorization of [N choose K]_q.
    Factor {
        #[arg(value_parser = positive())]
        n: u64,
        k: u64,
        /// Also print the expanded polynomial.
        #[arg(long)]
        expand: bool,
    },
    /// Factored lcm of row n of q-binomials.
    Lcm {
        #[arg(long, value_parser = positive())]
        n: u64,
        #[arg(long)]
        expand: bool,
    },
    /// Compare the digit formula for the maximal carry count with brute force.
    Maxcheck {
        #[arg(long, value_parser = positive())]
        p: u64,
        #[arg(long, value_parser = positive())]
        n_max: u64,
    },
    /// Show k = p^M - 1 and the levels at which it carries.
    Witness {
        #[arg(long, value_parser = positive())]
        n: u64,
        #[arg(long, value_parser = positive())]
        p: u64,
    },
    /// Check lcm_k C(n,k) = lcm(1..n+1)/(n+1) for n = 1..=n_max.
    Classical {
        #[arg(long, value_parser = positive())]
        n_max: u64,
    },
    /// Check 2^(n-1) <= lcm(1..n) <= 3^n for n = 1..=n_max.
    Bounds {
        #[arg(long, value_parser = positive())]
        n_max: u64,
    },
}

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

/// Outcome of a subcommand that ran to completion.
enum Verdict {
    Pass,
    Mismatch,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonPositive { .. } | Error::NotPrime(_) | Error::OutOfRange(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_PASS
            };
        }
    };
    let result = match cli.command {
        Command::Verify {
            n_max,
            depth,
            format,
            workers,
        } => cmd_verify(n_max, depth, format, workers, out, err),
        Command::Factor { n, k, expand } => cmd_factor(n, k, expand, out),
        Command::Lcm { n, expand } => cmd_lcm(n, expand, out),
        Command::Maxcheck { p, n_max } => cmd_maxcheck(p, n_max, out),
        Command::Witness { n, p } => cmd_witness(n, p, out),
        Command::Classical { n_max } => cmd_classical(n_max, out),
        Command::Bounds { n_max } => cmd_bounds(n_max, out),
    };
    match result {
        Ok(Verdict::Pass) => EXIT_PASS,
        Ok(Verdict::Mismatch) => EXIT_MISMATCH,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<Verdict, CliError>;

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Mismatch
    }
}

fn pool(workers: Option<u64>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w as usize);
    }
    builder
        .build()
        .map_err(|e| CliError::Lib(Error::OutOfRange(format!("cannot start worker pool: {e}"))))
}

fn cmd_verify(
    n_max: u64,
    depth: Depth,
    format: Format,
    workers: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let pool = pool(workers)?;
    let chunk = match depth {
        Depth::Factored => 256,
        Depth::Polynomial => 4 * pool.current_num_threads() as u64,
    };
    let started = Instant::now();
    let mut last_progress = started;
    let mut failures = Vec::new();
    let mut lo = 1;
    while lo <= n_max {
        let hi = (lo + chunk - 1).min(n_max);
        let reports = pool.install(|| {
            (lo..=hi)
                .into_par_iter()
                .map(|n| verify_main_identity(n, depth))
                .collect::<Result<Vec<_>, _>>()
        })?;
        for r in &reports {
            match format {
                Format::Text => writeln!(out, "{}", r.text_line())?,
                Format::Json => {
                    let line = serde_json::to_string(&r.record()).map_err(|e| Error::Internal(e.to_string()))?;
                    writeln!(out, "{line}")?;
                }
            }
            if !r.passed() {
                failures.push(r.n);
            }
        }
        if hi < n_max && last_progress.elapsed() >= Duration::from_secs(1) {
            last_progress = Instant::now();
            let _ = writeln!(err, "progress: {hi}/{n_max} ({:.1}s)", started.elapsed().as_secs_f64());
        }
        lo = hi + 1;
    }
    if failures.is_empty() {
        let _ = writeln!(err, "verified n = 1..={n_max} at {depth} depth: all PASS");
    } else {
        let _ = writeln!(err, "FAIL at n = {failures:?}");
    }
    Ok(verdict(failures.is_empty()))
}

fn cmd_factor(n: u64, k: u64, expand: bool, out: &mut dyn Write) -> CmdResult {
    let spec = QBinomialSpec::new(n, k)?;
    let f = q_binomial_factorization(spec)?;
    writeln!(out, "{f}")?;
    if expand {
        let poly = q_binomial_poly(spec)?;
        if factorization_to_poly(&f) != poly {
            return Err(Error::Internal(format!("[{n} choose {k}]_q: factored and expanded forms disagree")).into());
        }
        writeln!(out, "{poly}")?;
    }
    Ok(Verdict::Pass)
}

fn cmd_lcm(n: u64, expand: bool, out: &mut dyn Write) -> CmdResult {
    let f = lcm_qbinomials_factorization(n)?;
    writeln!(out, "{f}")?;
    if expand {
        writeln!(out, "{}", factorization_to_poly(&f))?;
    }
    Ok(Verdict::Pass)
}

fn cmd_maxcheck(p: u64, n_max: u64, out: &mut dyn Write) -> CmdResult {
    require_prime(p)?;
    let bad: Vec<String> = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Option<String>, Error> {
            let lhs = carry_count_lhs(n, p)?;
            let rhs = carry_count_rhs(n, p)?;
            let attained = if n >= p { carry_sum_for_k(n, witness_all_carries(n, p)?, p)? } else { 0 };
            Ok((lhs != rhs || attained != rhs).then(|| format!("n={n}: lhs={lhs} rhs={rhs} witness={attained} FAIL")))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    for line in &bad {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "maxcheck p={p} n<={n_max}: {}", pass_fail(bad.is_empty()))?;
    Ok(verdict(bad.is_empty()))
}

fn cmd_witness(n: u64, p: u64, out: &mut dyn Write) -> CmdResult {
    let k = witness_all_carries(n, p)?;
    let levels: Vec<String> = carry_pattern(n, k, p)?
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == 1)
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if levels.is_empty() {
        writeln!(out, "k={k}, no carries")?;
    } else {
        writeln!(out, "k={k}, carries at r={}", levels.join(","))?;
    }
    Ok(Verdict::Pass)
}

fn cmd_classical(n_max: u64, out: &mut dyn Write) -> CmdResult {
    let bad = failing(n_max, |n| Ok(classical_farhi_check(n)?.holds()))?;
    report_sweep("classical", n_max, &bad, out)
}

fn cmd_bounds(n_max: u64, out: &mut dyn Write) -> CmdResult {
    let bad = failing(n_max, bounds_check)?;
    report_sweep("bounds", n_max, &bad, out)
}

fn failing(n_max: u64, check: impl Fn(u64) -> Result<bool, Error> + Sync) -> Result<Vec<u64>, Error> {
    let results = (1..=n_max).into_par_iter().map(|n| Ok((n, check(n)?))).collect::<Result<Vec<_>, Error>>()?;
    Ok(results.into_iter().filter(|&(_, ok)| !ok).map(|(n, _)| n).collect())
}

fn report_sweep(name: &str, n_max: u64, bad: &[u64], out: &mut dyn Write) -> CmdResult {
    for n in bad {
        writeln!(out, "n={n}: FAIL")?;
    }
    writeln!(out, "{name} n<={n_max}: {}", pass_fail(bad.is_empty()))?;
    Ok(verdict(bad.is_empty()))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qlcm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn verify_one() {
        let (code, out, _) = run_str(&["verify", "--n-max", "1"]);
        assert_eq!((code, out.as_str()), (0, "n=1: lhs=1 rhs=1 PASS\n"));
    }

    #[test]
    fn factor_and_expand() {
        assert_eq!(run_str(&["factor", "4", "2"]).1, "Phi_3 * Phi_4\n");
        let (code, out, _) = run_str(&["factor", "4", "2", "--expand"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().last(), Some("1 + q + 2*q^2 + q^3 + q^4"));
        assert_eq!(run_str(&["factor", "3", "0"]).1, "1\n");
        assert_eq!(run_str(&["factor", "2", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["verify", "--n-max", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "--n-max", "-3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["maxcheck", "--p", "4", "--n-max", "10"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["witness", "--n", "2", "--p", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn witness_line() {
        assert_eq!(run_str(&["witness", "--n", "10", "--p", "3"]).1, "k=8, carries at r=1,2\n");
        assert_eq!(run_str(&["witness", "--n", "7", "--p", "2"]).1, "k=3, no carries\n");
    }
}
