//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: `0` on success, `1` when a verification or cross-check fails,
//! `2` for usage and parameter errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog;
use crate::exact::Rational;
use crate::fastpath::{term_fast, term_fast_counted, Method};
use crate::identities::{run_suite, IdentityId, Suite, SuiteConfig, SuiteSummary};
use crate::sequence::{terms_naive, Params, SequenceKind};

/// Largest `n` the bench command will evaluate with the naive recurrence.
pub const NAIVE_BENCH_LIMIT: u64 = 10_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "biperiodic",
    version,
    about = "Exact terms and identity checks for bi-periodic Horadam sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one term.
    Term(TermArgs),
    /// Print a range of terms.
    Gen(GenArgs),
    /// Check the identity suites at sampled parameters.
    Verify(VerifyArgs),
    /// Time the evaluation methods against each other.
    Bench(BenchArgs),
    /// Named special cases.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// List every catalog key.
    List {
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Args, Debug)]
struct SeqArgs {
    /// Catalog key such as `pell` or `k-fibonacci(3)`.
    #[arg(long, conflicts_with_all = ["a", "b", "c", "w0", "w1"])]
    seq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<Rational>,
    /// Defaults to 0.
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<Rational>,
    /// Defaults to 1.
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<Rational>,
    /// Defaults to the catalog entry's kind, or `w`.
    #[arg(long)]
    kind: Option<SequenceKind>,
}

#[derive(Args, Debug)]
struct TermArgs {
    #[command(flatten)]
    seq: SeqArgs,
    #[arg(short = 'n', allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value_t = Method::Doubling)]
    method: Method,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    seq: SeqArgs,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    max_index: i64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    report: ReportFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Plain,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    seq: SeqArgs,
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    n_list: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "matrix,doubling")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Term(a) => cmd_term(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Catalog {
            command: CatalogCommand::List { format },
        } => cmd_catalog(format, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

/// Resolved sequence selection.
struct Selection {
    label: Option<String>,
    params: Params,
    kind: SequenceKind,
}

impl SeqArgs {
    fn resolve(&self) -> std::result::Result<Selection, Failure> {
        if let Some(key) = &self.seq {
            let named = catalog::lookup(key)?;
            return Ok(Selection {
                label: Some(named.name),
                params: named.params,
                kind: self.kind.unwrap_or(named.kind),
            });
        }
        let need = |v: &Option<Rational>, flag: &str| {
            v.clone()
                .ok_or_else(|| Failure::Usage(format!("either --seq or --{flag} is required")))
        };
        let params = Params::new(
            need(&self.a, "a")?,
            need(&self.b, "b")?,
            need(&self.c, "c")?,
            self.w0.clone().unwrap_or_else(Rational::zero),
            self.w1.clone().unwrap_or_else(Rational::one),
        )?;
        Ok(Selection {
            label: None,
            params,
            kind: self.kind.unwrap_or(SequenceKind::W),
        })
    }
}

fn cmd_term(args: TermArgs, out: &mut dyn Write) -> Outcome {
    let sel = args.seq.resolve()?;
    let value = term_fast(&sel.params, sel.kind, args.n, args.method);
    match args.format {
        OutputFormat::Plain => writeln!(out, "{value}")?,
        OutputFormat::Csv => writeln!(out, "n,value\n{},{value}", args.n)?,
        OutputFormat::Json => {
            let doc = json!({
                "seq": sel.label,
                "params": sel.params,
                "kind": sel.kind,
                "n": args.n,
                "method": args.method,
                "value": value,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Row<'a> {
    n: i64,
    value: &'a Rational,
}

fn cmd_gen(args: GenArgs, out: &mut dyn Write) -> Outcome {
    let sel = args.seq.resolve()?;
    if args.from > args.to {
        return Err(Failure::Usage(format!(
            "--from {} is greater than --to {}",
            args.from, args.to
        )));
    }
    let values = terms_naive(&sel.params, sel.kind, args.from, args.to);
    let mut text = String::new();
    match args.format {
        OutputFormat::Csv => {
            text.push_str("n,value\n");
            for (n, v) in (args.from..).zip(&values) {
                text.push_str(&format!("{n},{v}\n"));
            }
        }
        OutputFormat::Plain => {
            for (n, v) in (args.from..).zip(&values) {
                text.push_str(&format!("{n} {v}\n"));
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Row> = (args.from..)
                .zip(&values)
                .map(|(n, value)| Row { n, value })
                .collect();
            text = serde_json::to_string_pretty(&rows).expect("serializable");
            text.push('\n');
        }
    }
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    if args.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let summary = run_suite(&SuiteConfig {
        suite,
        samples: args.samples,
        seed: args.seed,
        max_index: args.max_index,
        ..SuiteConfig::default()
    })?;
    match args.report {
        ReportFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&summary).expect("serializable")
        )?,
        ReportFormat::Plain => write_plain_summary(&summary, out)?,
    }
    for (id, count) in printed_form_mismatches(&summary) {
        writeln!(
            err,
            "warning: printed-form mismatch: {id} as printed disagrees in {count} of {} samples",
            summary.results.iter().filter(|r| r.id == id).count()
        )?;
    }
    if verify_exit_code(&summary) == EXIT_OK {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} of {} identity checks failed",
            summary.failed,
            summary.results.len()
        )))
    }
}

/// Exit code for a verification run: any failed check is `1`. Printed-form
/// mismatches only produce warnings.
#[must_use]
pub fn verify_exit_code(summary: &SuiteSummary) -> i32 {
    if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn printed_form_mismatches(summary: &SuiteSummary) -> Vec<(IdentityId, usize)> {
    let mut counts: Vec<(IdentityId, usize)> = Vec::new();
    for r in &summary.results {
        if r.printed_form_matches == Some(false) {
            match counts.last_mut() {
                Some((id, n)) if *id == r.id => *n += 1,
                _ => counts.push((r.id, 1)),
            }
        }
    }
    counts
}

fn write_plain_summary(summary: &SuiteSummary, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "suite {} seed {} samples {} max-index {}",
        summary.suite, summary.seed, summary.samples, summary.max_index
    )?;
    for (family, c) in &summary.families {
        writeln!(
            out,
            "{family:<10} passed {:>5}  failed {:>3}  skipped {:>3}",
            c.passed, c.failed, c.skipped
        )?;
    }
    for r in summary.failures() {
        let idx: Vec<String> = r.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            out,
            "FAIL {} sample {} {} [{}]: {} != {}",
            r.id,
            r.sample,
            r.params,
            idx.join(" "),
            r.lhs,
            r.rhs
        )?;
    }
    writeln!(
        out,
        "total passed {} failed {} skipped {}",
        summary.passed,
        summary.failed,
        summary.skipped.len()
    )
}

#[derive(Serialize)]
struct BenchRow {
    method: Method,
    n: u64,
    median_ms: f64,
    samples_ms: Vec<f64>,
    multiplications: u64,
    value_bits: u64,
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write) -> Outcome {
    let seq = SeqArgs {
        seq: args
            .seq
            .seq
            .clone()
            .or_else(|| args.seq.a.is_none().then(|| "fibonacci".to_string())),
        ..args.seq
    };
    let sel = seq.resolve()?;
    if args.repeat == 0 {
        return Err(Failure::Usage("--repeat must be at least 1".into()));
    }
    if args.methods.is_empty() || args.n_list.is_empty() {
        return Err(Failure::Usage(
            "--methods and --n-list must be nonempty".into(),
        ));
    }
    if let Some(n) = args.n_list.iter().find(|&&n| n == 0 || n > i64::MAX as u64) {
        return Err(Failure::Usage(format!(
            "n = {n} is out of range; need n >= 1"
        )));
    }
    if args.methods.contains(&Method::Naive) {
        if let Some(n) = args.n_list.iter().find(|&&n| n > NAIVE_BENCH_LIMIT) {
            return Err(Failure::Usage(format!(
                "naive method refused for n = {n} (limit {NAIVE_BENCH_LIMIT})"
            )));
        }
    }

    let mut rows = Vec::new();
    for &n in &args.n_list {
        let mut reference: Option<(Method, Rational)> = None;
        for &method in &args.methods {
            let mut times = Vec::with_capacity(args.repeat);
            let mut last = None;
            for _ in 0..args.repeat {
                let start = Instant::now();
                let eval = term_fast_counted(&sel.params, sel.kind, n as i64, method);
                times.push(start.elapsed());
                last = Some(eval);
            }
            let eval = last.expect("repeat >= 1");
            match &reference {
                Some((m0, v0)) if *v0 != eval.value => {
                    return Err(Failure::Check(format!(
                        "{method} and {m0} disagree at n = {n}"
                    )));
                }
                Some(_) => {}
                None => reference = Some((method, eval.value.clone())),
            }
            rows.push(BenchRow {
                method,
                n,
                median_ms: ms(median(times.clone())),
                samples_ms: times.into_iter().map(ms).collect(),
                multiplications: eval.multiplications,
                value_bits: eval.value.bits(),
            });
        }
    }

    match args.format {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json!({
                "seq": sel.label,
                "params": sel.params,
                "kind": sel.kind,
                "repeat": args.repeat,
                "rows": rows,
            }))
            .expect("serializable")
        )?,
        OutputFormat::Csv => {
            writeln!(out, "method,n,median_ms,multiplications,value_bits")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{:.3},{},{}",
                    r.method, r.n, r.median_ms, r.multiplications, r.value_bits
                )?;
            }
        }
        OutputFormat::Plain => {
            writeln!(
                out,
                "{:<9} {:>10} {:>12} {:>10} {:>10}",
                "method", "n", "median ms", "mults", "bits"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<9} {:>10} {:>12.3} {:>10} {:>10}",
                    r.method.to_string(),
                    r.n,
                    r.median_ms,
                    r.multiplications,
                    r.value_bits
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    template: &'static str,
    kind: SequenceKind,
    description: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<Params>,
}

fn cmd_catalog(format: OutputFormat, out: &mut dyn Write) -> Outcome {
    let rows: Vec<CatalogRow> = catalog::list()
        .iter()
        .map(|e| CatalogRow {
            name: e.signature(),
            template: e.template,
            kind: e.kind,
            description: e.description,
            params: e
                .args
                .is_empty()
                .then(|| catalog::lookup(e.key).expect("fixed rows are valid").params),
        })
        .collect();
    match format {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        )?,
        OutputFormat::Csv => {
            writeln!(out, "name,template,kind,description")?;
            for r in &rows {
                writeln!(
                    out,
                    "\"{}\",\"{}\",{},{}",
                    r.name, r.template, r.kind, r.description
                )?;
            }
        }
        OutputFormat::Plain => {
            for r in &rows {
                writeln!(
                    out,
                    "{} {}  [{}] {}",
                    r.name, r.template, r.kind, r.description
                )?;
            }
        }
    }
    Ok(())
}
