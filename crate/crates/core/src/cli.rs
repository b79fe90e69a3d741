//! The `einstein-flag` command line.
//!
//! Exit codes: 0 on success (including an empty root set), 1 when a
//! verification fails, 2 on malformed input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::partition::{FlagPartition, ModuleIndex};
use crate::pipeline::{
    certificate_json, check_ordering, h1_for, scan_row, solve, AnsatzParams, PipelineError,
    Verdict, CSV_HEADER,
};
use crate::rational::{decimal, int, parse_rational, Rational};
use crate::ricci::{ricci_general, MetricParams, RicciError};
use crate::selfcheck::{run_checks, CheckOptions};

/// Significant digits of decimal displays.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "einstein-flag",
    version,
    about = "Einstein metrics on SO(n) adapted to real flag manifolds"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ricci components of a metric on a partition.
    Ricci {
        /// Block sizes, e.g. 4,3,3.
        #[arg(long)]
        partition: String,
        /// Module values, e.g. m1=1,m2=1/2,m12=0.75. Omit for the all-ones metric.
        #[arg(long)]
        metric: Option<String>,
    },
    /// Certified Einstein metrics of the (k1, k, ..., k) ansatz.
    Solve {
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, env = "EINSTEIN_FLAG_BITS", default_value_t = 128)]
        bits: u32,
    },
    /// Solve over a grid; ranges are inclusive, e.g. 3..12.
    Scan {
        #[arg(long, value_parser = parse_range)]
        k1: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        k: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<usize>,
        #[arg(long, env = "EINSTEIN_FLAG_BITS", default_value_t = 128)]
        bits: u32,
    },
    /// Compare the closed forms against the matrix oracle.
    OracleCheck {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        triple_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        ricci_tol: f64,
        #[arg(long, default_value_t = 1e-12)]
        block_tol: f64,
    },
}

/// `a..b` or `a..=b` (both inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("bad range {s:?}, expected e.g. 3..12");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Parses `m1=1,m12=1/2,...`.
pub fn parse_metric(s: &str) -> Result<BTreeMap<ModuleIndex, Rational>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected label=value, got {item:?}"))?;
        let m = ModuleIndex::parse_label(k).ok_or_else(|| format!("bad module label {k:?}"))?;
        let v = parse_rational(v).ok_or_else(|| format!("bad value {v:?} for {k}"))?;
        if out.insert(m, v).is_some() {
            return Err(format!("module {k} given twice"));
        }
    }
    Ok(out)
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn check_bits(bits: u32) -> Result<(), Failure> {
    if bits < 53 {
        return Err(usage(format!(
            "precision must be at least 53 bits, got {bits}"
        )));
    }
    Ok(())
}

fn params(k1: usize, k: usize, p: usize) -> Result<AnsatzParams, Failure> {
    AnsatzParams::new(k1, k, p).map_err(|e| usage(e.to_string()))
}

fn labels(ms: &[ModuleIndex]) -> String {
    ms.iter().map(|m| m.label()).collect::<Vec<_>>().join(", ")
}

fn cmd_ricci(
    format: Format,
    partition: &str,
    metric: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let part: FlagPartition = partition
        .parse()
        .map_err(|e: crate::partition::PartitionError| usage(e.to_string()))?;
    let values = match metric {
        Some(s) => parse_metric(s).map_err(usage)?,
        None => part.modules().into_iter().map(|m| (m, int(1))).collect(),
    };
    let metric = MetricParams::new(&part, values).map_err(|e| match e {
        RicciError::MissingModules(ms) => usage(format!(
            "missing metric values for modules: {}",
            labels(&ms)
        )),
        RicciError::UnexpectedModules(ms) => {
            usage(format!("modules not in {part}: {}", labels(&ms)))
        }
        e => usage(e.to_string()),
    })?;
    let r = ricci_general(&part, &metric).map_err(|e| usage(e.to_string()))?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").ok();
    match format {
        Format::Json => {
            w(
                out,
                serde_json::to_string_pretty(
                    &json!({"partition": part.to_string(), "components": r.to_json()}),
                )
                .expect("serializable"),
            );
        }
        Format::Csv => {
            w(out, "module,value,decimal".into());
            for (m, v) in r.iter() {
                w(
                    out,
                    format!("{},{},{}", m.label(), v, decimal(v, SIG_DIGITS)),
                );
            }
        }
        Format::Text => {
            for (m, v) in r.iter() {
                w(
                    out,
                    format!("r_{} = {} ({})", m.label(), v, decimal(v, SIG_DIGITS)),
                );
            }
        }
    }
    Ok(())
}

fn cmd_solve(
    format: Format,
    p: AnsatzParams,
    bits: u32,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    check_bits(bits)?;
    let h1 = h1_for(&p).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let certs = match solve(&p, bits) {
        Ok(c) => c,
        Err(PipelineError::NoPositiveRoots(label)) => {
            let msg = format!("no positive real roots of {label}");
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "parameters": {"k1": p.k1, "k": p.k, "p": p.p},
                        "h1_coefficients": h1.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "certificates": [],
                        "message": msg,
                    }))
                    .expect("serializable")
                ),
                Format::Csv => writeln!(out, "{CSV_HEADER}\n{}", scan_row(&p, bits, SIG_DIGITS).to_csv()),
                Format::Text => writeln!(out, "{p}: {msg}"),
            }
            .ok();
            return Ok(());
        }
        Err(e @ PipelineError::PrecisionTooLow(_))
        | Err(e @ PipelineError::InvalidParameters { .. }) => return Err(usage(e.to_string())),
        Err(e) => {
            return Err(Failure {
                code: 1,
                message: e.to_string(),
            })
        }
    };
    let (k1, k, pp) = p.as_i64();
    let ordering = (k1 >= 10 * k * pp).then(|| {
        check_ordering(
            &p,
            &certs.iter().map(|c| c.root.clone()).collect::<Vec<_>>(),
        )
    });
    let all_certified = certs
        .iter()
        .all(|c| c.positivity.all() && c.verdict != Verdict::Undecided);
    match format {
        Format::Json => {
            let body = json!({
                "parameters": {"k1": p.k1, "k": p.k, "p": p.p},
                "h1_coefficients": h1.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "certificates": certs.iter().map(|c| certificate_json(c, &h1)).collect::<Vec<_>>(),
                "ordering": ordering,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&body).expect("serializable")
            )
            .ok();
        }
        Format::Csv => {
            let mut row = scan_row(&p, bits, SIG_DIGITS);
            row.error = None;
            writeln!(out, "{CSV_HEADER}\n{}", row.to_csv()).ok();
        }
        Format::Text => {
            writeln!(
                out,
                "{p}: {} certified root(s) of {}",
                certs.len(),
                certs[0].source
            )
            .ok();
            for (i, c) in certs.iter().enumerate() {
                writeln!(out, "certificate {}:", i + 1).ok();
                writeln!(
                    out,
                    "  x23 in [{}, {}]",
                    decimal(c.x23.lo(), SIG_DIGITS),
                    decimal(c.x23.hi(), SIG_DIGITS)
                )
                .ok();
                writeln!(out, "  x23 = {}", decimal(&c.x23.midpoint(), SIG_DIGITS)).ok();
                writeln!(out, "  x2  = {}", decimal(&c.x2.midpoint(), SIG_DIGITS)).ok();
                writeln!(out, "  x1  = {}", decimal(&c.x1.midpoint(), SIG_DIGITS)).ok();
                writeln!(out, "  x12 = 1").ok();
                writeln!(
                    out,
                    "  lambda = {}",
                    decimal(&c.lambda.midpoint(), SIG_DIGITS)
                )
                .ok();
                writeln!(out, "  residual bound = {}", decimal(&c.residual_bound, 6)).ok();
                let pos = if c.positivity.all() {
                    "certified"
                } else {
                    "NOT certified"
                };
                writeln!(out, "  positivity: {pos}").ok();
                let v = match c.verdict {
                    Verdict::Undecided => "undecided".to_string(),
                    Verdict::NaturallyReductive(r) => {
                        format!("naturally-reductive ({r:?}): certified")
                    }
                    v => format!("{}: certified", v.label()),
                };
                writeln!(out, "  {v}").ok();
            }
            if let Some(o) = &ordering {
                let state = if o.holds {
                    "certified"
                } else {
                    "NOT certified"
                };
                writeln!(
                    out,
                    "ordering 0 < a1 < rho < a2 < 2/3 < a3 < 1 < a4 < 2 (rho = {}): {state}",
                    o.separators[1]
                )
                .ok();
            }
        }
    }
    if !all_certified || ordering.is_some_and(|o| !o.holds) {
        return Err(Failure {
            code: 1,
            message: "some certificate conditions could not be established".into(),
        });
    }
    Ok(())
}

fn cmd_scan(
    format: Format,
    (k1s, ks, ps): (
        RangeInclusive<usize>,
        RangeInclusive<usize>,
        RangeInclusive<usize>,
    ),
    bits: u32,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    check_bits(bits)?;
    let mut cells = Vec::new();
    for k1 in k1s {
        for k in ks.clone() {
            for p in ps.clone() {
                cells.push(params(k1, k, p)?);
            }
        }
    }
    let rows: Vec<_> = cells
        .par_iter()
        .map(|c| scan_row(c, bits, SIG_DIGITS))
        .collect();
    match format {
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&rows).expect("serializable")
            )
            .ok();
        }
        Format::Csv | Format::Text => {
            writeln!(out, "{CSV_HEADER}").ok();
            for r in &rows {
                writeln!(out, "{}", r.to_csv()).ok();
            }
        }
    }
    if rows.iter().any(|r| r.error.is_some()) {
        return Err(Failure {
            code: 1,
            message: "some grid cells failed to certify".into(),
        });
    }
    Ok(())
}

fn cmd_oracle_check(
    format: Format,
    opts: CheckOptions,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let report = run_checks(&opts);
    match format {
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            )
            .ok();
        }
        Format::Csv => {
            writeln!(out, "check,worst,status").ok();
            for (name, worst, ok) in [
                ("triples", report.triples_worst, report.triples_pass),
                ("ricci", report.ricci_worst, report.ricci_pass),
                ("block-diagonality", report.block_worst, report.block_pass),
            ] {
                writeln!(out, "{name},{worst:e},{}", if ok { "PASS" } else { "FAIL" }).ok();
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{} partitions with n <= {}, {} metrics each (seed {})",
                report.partitions.len(),
                opts.max_n,
                opts.samples,
                opts.seed
            )
            .ok();
            for f in &report.failures {
                writeln!(out, "  {f}").ok();
            }
            writeln!(out, "{}", report.summary()).ok();
        }
    }
    if !report.passed() {
        return Err(Failure {
            code: 1,
            message: report.summary(),
        });
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            write!(target, "{}", e.render()).ok();
            return code;
        }
    };
    let result = match cli.command {
        Command::Ricci { partition, metric } => {
            cmd_ricci(cli.format, &partition, metric.as_deref(), out)
        }
        Command::Solve { k1, k, p, bits } => {
            params(k1, k, p).and_then(|pr| cmd_solve(cli.format, pr, bits, out))
        }
        Command::Scan { k1, k, p, bits } => cmd_scan(cli.format, (k1, k, p), bits, out),
        Command::OracleCheck {
            max_n,
            samples,
            seed,
            triple_tol,
            ricci_tol,
            block_tol,
        } => cmd_oracle_check(
            cli.format,
            CheckOptions {
                max_n,
                samples,
                seed,
                triple_tolerance: triple_tol,
                ricci_tolerance: ricci_tol,
                block_tolerance: block_tol,
            },
            out,
        ),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            writeln!(err, "error: {}", f.message).ok();
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..12").unwrap(), 3..=12);
        assert_eq!(parse_range("3..=4").unwrap(), 3..=4);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("6..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn metric_strings() {
        let m = parse_metric("m1=1, m12=1/2,x23=0.25").unwrap();
        assert_eq!(m[&ModuleIndex::OffDiag(1, 2)], crate::rational::rat(1, 2));
        assert_eq!(m[&ModuleIndex::OffDiag(2, 3)], crate::rational::rat(1, 4));
        assert!(parse_metric("m1=1,m1=2").is_err());
        assert!(parse_metric("q1=1").is_err());
    }
}
