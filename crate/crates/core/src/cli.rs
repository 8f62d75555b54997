//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so it can be driven from tests.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::ORACLE_ORDER_BOUND;
use crate::checks::deep_checks;
use crate::error::{Error, ErrorKind};
use crate::formulas::{complex_counts_closed_form, rational_counts_closed_form};
use crate::group::GroupParams;
use crate::rational::{oracle, RationalCounts};
use crate::report::{DecompositionReport, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_SIZE_BOUND: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "wedderburn",
    version,
    about = "Wedderburn decomposition of QG for split metacyclic p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the simple components of QG.
    Decompose(DecomposeArgs),
    /// Compare the closed form with the character-theoretic computation.
    Verify(VerifyArgs),
    /// Print complex and rational irreducible counts by degree.
    Counts(CountsArgs),
    /// One row per parameter set up to an order bound.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    ClosedForm,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Complex,
    Rational,
    Both,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Odd prime.
    #[arg(long)]
    p: u64,
    /// a has order p^n.
    #[arg(long)]
    n: Option<u32>,
    /// b has order p^m.
    #[arg(long)]
    m: Option<u32>,
    /// Action b a b^-1 = a^r.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["s", "abelian"])]
    r: Option<i64>,
    /// r has order p^s mod p^n; uses r = 1 + p^(n-s).
    #[arg(long, conflicts_with = "abelian")]
    s: Option<u32>,
    /// The direct product C_{p^n} x C_{p^m}.
    #[arg(long)]
    abelian: bool,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
    method: Method,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Verify every parameter set with p^(n+m) <= --max-order.
    #[arg(long, requires = "max_order", conflicts_with_all = ["n", "m", "r", "s", "abelian"])]
    all: bool,
    #[arg(long)]
    max_order: Option<u64>,
    /// Also run orthogonality, class-function, matrix and Galois checks.
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Perturb the closed form before comparing (negative control).
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Debug, Args)]
struct CountsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum, default_value_t = Kind::Both)]
    kind: Kind,
    /// Add an oracle column and fail on disagreement.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    max_order: u64,
    /// Cross-check every row against the oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Validation => EXIT_VALIDATION,
        ErrorKind::SizeBound => EXIT_SIZE_BOUND,
        ErrorKind::Internal => EXIT_INTERNAL,
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
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
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => decompose(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Counts(a) => counts(a, out),
        Command::Sweep(a) => sweep(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn resolve(a: &ParamArgs) -> std::result::Result<GroupParams, Failure> {
    let (n, m) = match (a.n, a.m) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(Failure::Usage("--n and --m are required".into())),
    };
    match (a.r, a.s, a.abelian) {
        (Some(r), None, false) => Ok(GroupParams::new(a.p, n, m, r)?),
        (None, Some(s), false) => Ok(GroupParams::from_s(a.p, n, m, s)?),
        (None, None, true) => Ok(GroupParams::abelian(a.p, n, m)?),
        _ => Err(Failure::Usage(
            "exactly one of --r, --s, --abelian is required".into(),
        )),
    }
}

fn pool(threads: Option<usize>) -> std::result::Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))
}

fn write_diff(out: &mut dyn Write, v: &Verification) -> io::Result<()> {
    for line in v.summary().lines() {
        writeln!(out, "  {line}")?;
    }
    Ok(())
}

fn decompose(a: DecomposeArgs, out: &mut dyn Write) -> CliResult {
    let params = resolve(&a.params)?;
    let report = match a.method {
        Method::ClosedForm => DecompositionReport::closed_form(&params)?,
        Method::Oracle => DecompositionReport::oracle(&params)?,
        Method::Both => {
            let v = Verification::run(&params)?;
            if !v.agrees() {
                writeln!(out, "MISMATCH")?;
                write_diff(out, &v)?;
                return Ok(EXIT_MISMATCH);
            }
            DecompositionReport::verified(&params)?
        }
    };
    match a.format {
        Format::Text => writeln!(out, "{}", report.text())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(EXIT_OK)
}

fn label(g: &GroupParams) -> String {
    format!(
        "p={} n={} m={} s={} r={} |G|={}",
        g.p(),
        g.n(),
        g.m(),
        g.s(),
        g.r(),
        g.order()
    )
}

/// Verdict and report lines for one parameter set.
fn verify_one(g: &GroupParams, deep: bool, corrupt: bool) -> crate::error::Result<(bool, String)> {
    let mut v = Verification::run(g)?;
    if corrupt {
        if let Some(c) = v.closed_form.components.first_mut() {
            c.multiplicity += 1;
        }
    }
    let mut ok = v.agrees();
    let mut text = Vec::new();
    if ok {
        text.push(format!("VERIFIED {}: {}", label(g), v.closed_form.text()));
    } else {
        text.push(format!("MISMATCH {}", label(g)));
        text.extend(v.summary().lines().map(|l| format!("  {l}")));
    }
    if deep {
        for outcome in deep_checks(g)? {
            let status = if outcome.passed() { "ok" } else { "FAILED" };
            text.push(format!(
                "  {}: {status} ({} checks)",
                outcome.name, outcome.checked
            ));
            text.extend(outcome.failures.iter().map(|f| format!("    {f}")));
            ok &= outcome.passed();
        }
    }
    Ok((ok, text.join("\n")))
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> CliResult {
    if !a.all {
        let g = resolve(&a.params)?;
        let (ok, text) = verify_one(&g, a.deep, a.corrupt)?;
        writeln!(out, "{text}")?;
        return Ok(if ok { EXIT_OK } else { EXIT_MISMATCH });
    }
    let max_order = a.max_order.expect("clap enforces --max-order with --all");
    if max_order > ORACLE_ORDER_BOUND {
        return Err(Error::SizeBound {
            order: max_order as u128,
            bound: ORACLE_ORDER_BOUND,
        }
        .into());
    }
    let all = GroupParams::enumerate(a.params.p, max_order)?;
    let rows: Vec<_> = pool(a.threads)?.install(|| {
        all.par_iter()
            .map(|g| verify_one(g, a.deep, a.corrupt))
            .collect::<crate::error::Result<Vec<_>>>()
    })?;
    let passed = rows.iter().filter(|(ok, _)| *ok).count();
    for (_, text) in &rows {
        writeln!(out, "{text}")?;
    }
    writeln!(out, "{passed}/{} parameter sets verified", rows.len())?;
    Ok(if passed == rows.len() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

#[derive(Serialize)]
struct CountsDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    complex_counts: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rational_counts: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_complex_counts: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_rational_counts: Option<BTreeMap<u64, u64>>,
}

fn counts_table(
    out: &mut dyn Write,
    title: &str,
    rows: &[(String, u64, Option<u64>)],
    key: &str,
) -> io::Result<()> {
    writeln!(out, "{title}")?;
    let oracle = rows.iter().any(|r| r.2.is_some());
    if oracle {
        writeln!(out, "{key:>14}  {:>10}  {:>10}", "count", "oracle")?;
    } else {
        writeln!(out, "{key:>14}  {:>10}", "count")?;
    }
    for (k, c, o) in rows {
        match o {
            Some(o) => writeln!(out, "{k:>14}  {c:>10}  {o:>10}")?,
            None => writeln!(out, "{k:>14}  {c:>10}")?,
        }
    }
    Ok(())
}

fn merge_keys(
    a: &BTreeMap<u64, u64>,
    b: Option<&BTreeMap<u64, u64>>,
) -> Vec<(u64, u64, Option<u64>)> {
    let mut keys: Vec<u64> = a.keys().copied().collect();
    if let Some(b) = b {
        keys.extend(b.keys().copied());
    }
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|k| {
            (
                k,
                a.get(&k).copied().unwrap_or(0),
                b.map(|b| b.get(&k).copied().unwrap_or(0)),
            )
        })
        .collect()
}

fn rational_rows(
    counts: &RationalCounts,
    other: Option<&RationalCounts>,
) -> Vec<(String, u64, Option<u64>)> {
    let by_degree = counts.by_degree();
    let lambda_of: BTreeMap<u64, u32> = counts
        .by_lambda
        .keys()
        .chain(other.iter().flat_map(|o| o.by_lambda.keys()))
        .map(|&l| {
            let d = RationalCounts {
                p: counts.p,
                by_lambda: BTreeMap::from([(l, 1)]),
            };
            (*d.by_degree().keys().next().expect("one entry"), l)
        })
        .collect();
    let other_by_degree = other.map(|o| o.by_degree());
    merge_keys(&by_degree, other_by_degree.as_ref())
        .into_iter()
        .map(|(d, c, o)| (format!("{d} (lambda={})", lambda_of[&d]), c, o))
        .collect()
}

fn counts(a: CountsArgs, out: &mut dyn Write) -> CliResult {
    let g = resolve(&a.params)?;
    let complex = complex_counts_closed_form(&g);
    let rational = rational_counts_closed_form(&g);
    let oracle_result = if a.oracle { Some(oracle(&g)?) } else { None };
    let want_complex = a.kind != Kind::Rational;
    let want_rational = a.kind != Kind::Complex;
    let mut agree = true;
    if let Some(o) = &oracle_result {
        if want_complex {
            agree &= o.complex_counts == complex;
        }
        if want_rational {
            agree &= o.rational_counts == rational;
        }
    }
    match a.format {
        Format::Json => {
            let doc = CountsDocument {
                complex_counts: want_complex.then(|| complex.clone()),
                rational_counts: want_rational.then(|| rational.by_degree()),
                oracle_complex_counts: oracle_result
                    .as_ref()
                    .filter(|_| want_complex)
                    .map(|o| o.complex_counts.clone()),
                oracle_rational_counts: oracle_result
                    .as_ref()
                    .filter(|_| want_rational)
                    .map(|o| o.rational_counts.by_degree()),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Text => {
            if want_complex {
                let rows: Vec<_> =
                    merge_keys(&complex, oracle_result.as_ref().map(|o| &o.complex_counts))
                        .into_iter()
                        .map(|(d, c, o)| (d.to_string(), c, o))
                        .collect();
                counts_table(out, "complex irreducibles", &rows, "degree")?;
            }
            if want_rational {
                if want_complex {
                    writeln!(out)?;
                }
                let rows = rational_rows(
                    &rational,
                    oracle_result.as_ref().map(|o| &o.rational_counts),
                );
                counts_table(out, "rational irreducibles", &rows, "degree")?;
            }
        }
    }
    Ok(if agree { EXIT_OK } else { EXIT_MISMATCH })
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> CliResult {
    if a.oracle && a.max_order > ORACLE_ORDER_BOUND {
        return Err(Error::SizeBound {
            order: a.max_order as u128,
            bound: ORACLE_ORDER_BOUND,
        }
        .into());
    }
    let all = GroupParams::enumerate(a.p, a.max_order)?;
    let rows: Vec<DecompositionReport> = pool(a.threads)?.install(|| {
        all.par_iter()
            .map(|g| {
                if a.oracle {
                    DecompositionReport::verified(g)
                } else {
                    DecompositionReport::closed_form(g)
                }
            })
            .collect::<crate::error::Result<Vec<_>>>()
    })?;
    match a.format {
        Format::Json => {
            for row in &rows {
                writeln!(out, "{}", serde_json::to_string(row)?)?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>3} {:>3} {:>3} {:>3} {:>8} {:>9}  decomposition",
                "p", "n", "m", "s", "r", "order"
            )?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>3} {:>8} {:>9}  {}",
                    row.p,
                    row.n,
                    row.m,
                    row.s,
                    row.r,
                    row.order,
                    row.text()
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("wedderburn").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn decompose_text() {
        let (code, out, _) = call(&["decompose", "--p", "3", "--n", "4", "--m", "2", "--r", "10"]);
        assert_eq!(code, 0);
        assert_eq!(
            out.trim(),
            "Q + 4*Q(z3) + 12*Q(z9) + 3*M3(Q(z9)) + M9(Q(z9))"
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["decompose", "--p", "3"]).0, EXIT_USAGE);
        assert_eq!(
            call(&[
                "decompose",
                "--p",
                "3",
                "--n",
                "2",
                "--m",
                "1",
                "--r",
                "4",
                "--s",
                "1"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn corrupt_hook_reports_mismatch() {
        let (code, out, _) = call(&[
            "verify",
            "--p",
            "3",
            "--n",
            "2",
            "--m",
            "1",
            "--s",
            "1",
            "--corrupt",
        ]);
        assert_eq!(code, EXIT_MISMATCH);
        assert!(out.contains("MISMATCH"));
        assert!(out.contains("closed form 2 vs oracle 1"));
    }

    #[test]
    fn size_bound_code() {
        let (code, _, err) = call(&["verify", "--p", "3", "--n", "5", "--m", "4", "--s", "2"]);
        assert_eq!(code, EXIT_SIZE_BOUND, "{err}");
    }
}
