//! Command-line front end: triangles, series coefficients and identity
//! reports in csv, json or pretty form.
//!
//! Exit codes: 0 success, 1 unexpected identity failure, 2 parse or
//! validation error. Output is deterministic; identical invocations produce
//! byte-identical bytes.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::families::{triangle_strings, FamilyParams, ParamValue};
use crate::identities::{run_suite, IdentityId, IdentityReport, Status, SuiteConfig};
use crate::lampoly::LamRPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::series::{daehee_gf, r_stirling_gf, TruncatedSeries};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "lamstir",
    about = "Exact lambda-analogue Stirling/Daehee/Whitney number families and identity checks",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print rows 0..=N of a number-family triangle.
    Triangle(TriangleArgs),
    /// Run identity checks and print one report per identity.
    Verify(VerifyArgs),
    /// Print ordinary and EGF coefficients of a generating function.
    Series(SeriesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Pretty,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    /// Family: lambda-stirling, r-stirling-lambda, unsigned-r-stirling-lambda,
    /// classical-stirling1, classical-stirling2, daehee-numbers,
    /// daehee-polynomial, whitney, whitney-type-t.
    #[arg(long)]
    pub family: String,
    /// Largest row index.
    #[arg(long)]
    pub n: u32,
    /// lam parameter, "p/q" or "sym"; defaults to "sym" where the family uses it.
    #[arg(long)]
    pub lam: Option<String>,
    /// r parameter, "p/q" or "sym"; defaults to "sym" where the family uses it
    /// (whitney needs a numeric value).
    #[arg(long)]
    pub r: Option<String>,
    /// m parameter, "p/q" (whitney families only).
    #[arg(long)]
    pub m: Option<String>,
    /// x argument, "p/q" (daehee-polynomial only).
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated identity ids (default: the whole registry).
    #[arg(long, value_delimiter = ',')]
    pub ids: Option<Vec<String>>,
    /// Override the per-identity default maximum row index.
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SeriesKind {
    /// (1/k!) (log(1+lam t)/lam)^k (1+lam t)^(r/lam)
    RStirlingGf,
    /// (log(1+t)/t)^k (1+t)^x
    DaeheeGf,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub which: SeriesKind,
    /// Power of the log factor.
    #[arg(long)]
    pub k: u32,
    /// Truncation order: coefficients t^0 ..= t^order.
    #[arg(long)]
    pub order: u32,
    /// lam parameter, "p/q" or "sym" (r-stirling-gf only; default sym).
    #[arg(long)]
    pub lam: Option<String>,
    /// r parameter, "p/q" or "sym" (r-stirling-gf only; default sym).
    #[arg(long)]
    pub r: Option<String>,
    /// x argument, "p/q" (daehee-gf only; default 0).
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub format: OutputFormat,
}

/// Parse and dispatch, printing output and mapping errors to exit codes.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Triangle(args) => cmd_triangle(&args).map(|out| (out, 0)),
        Command::Verify(args) => cmd_verify(&args),
        Command::Series(args) => cmd_series(&args).map(|out| (out, 0)),
    };
    match outcome {
        Ok((out, code)) => {
            println!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn parse_param(v: &Option<String>) -> Result<Option<ParamValue>, Error> {
    v.as_deref().map(ParamValue::parse).transpose()
}

fn parse_rational(v: &Option<String>) -> Result<Option<Rational>, Error> {
    v.as_deref().map(str::parse).transpose()
}

fn family_params(args: &TriangleArgs) -> Result<FamilyParams, Error> {
    FamilyParams::from_strings(
        &args.family,
        args.lam.as_deref(),
        args.r.as_deref(),
        args.m.as_deref(),
        args.x.as_deref(),
    )
}

#[derive(Serialize)]
struct TriangleDoc {
    family: &'static str,
    n: u32,
    params: std::collections::BTreeMap<&'static str, String>,
    rows: Vec<Vec<String>>,
}

pub fn cmd_triangle(args: &TriangleArgs) -> Result<String, Error> {
    let params = family_params(args)?;
    let rows = triangle_strings(&params, args.n)?;
    let mut meta = std::collections::BTreeMap::new();
    if let Some(v) = &params.lam {
        meta.insert("lam", v.render());
    }
    if let Some(v) = &params.r {
        meta.insert("r", v.render());
    }
    if let Some(v) = &params.m {
        meta.insert("m", v.to_string());
    }
    if let Some(v) = &params.x {
        meta.insert("x", v.to_string());
    }
    match args.format {
        OutputFormat::Csv => Ok(rows
            .iter()
            .map(|row| row.join(","))
            .collect::<Vec<_>>()
            .join("\n")),
        OutputFormat::Json => {
            let doc = TriangleDoc {
                family: params.family.name(),
                n: args.n,
                params: meta,
                rows,
            };
            Ok(serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        OutputFormat::Pretty => {
            let mut lines = Vec::with_capacity(rows.len() + 1);
            let meta_str: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
            lines.push(format!(
                "# family={} n={}{}{}",
                params.family.name(),
                args.n,
                if meta_str.is_empty() { "" } else { " " },
                meta_str.join(" ")
            ));
            for (n, row) in rows.iter().enumerate() {
                lines.push(format!("n={n}: {}", row.join(", ")));
            }
            Ok(lines.join("\n"))
        }
    }
}

#[derive(Serialize)]
struct SeriesDoc {
    which: &'static str,
    k: u32,
    order: u32,
    params: std::collections::BTreeMap<&'static str, String>,
    ordinary: Vec<String>,
    egf: Vec<String>,
}

fn series_lists<R: Scalar>(s: &TruncatedSeries<R>) -> (Vec<String>, Vec<String>) {
    let ordinary = (0..=s.order())
        .map(|n| s.coefficient(n).to_string())
        .collect();
    let egf = (0..=s.order())
        .map(|n| s.egf_coefficient(n).to_string())
        .collect();
    (ordinary, egf)
}

pub fn cmd_series(args: &SeriesArgs) -> Result<String, Error> {
    let order = args.order as usize;
    let mut meta = std::collections::BTreeMap::new();
    let (which, (ordinary, egf)) = match args.which {
        SeriesKind::RStirlingGf => {
            if args.x.is_some() {
                return Err(Error::InvalidParams(
                    "series r-stirling-gf does not take parameter x".into(),
                ));
            }
            let lam = parse_param(&args.lam)?.unwrap_or(ParamValue::Sym);
            let r = parse_param(&args.r)?.unwrap_or(ParamValue::Sym);
            meta.insert("lam", lam.render());
            meta.insert("r", r.render());
            let lists = match (&lam, &r) {
                (ParamValue::Num(lq), ParamValue::Num(rq)) => {
                    series_lists(&r_stirling_gf(args.k, lq, rq, order))
                }
                _ => {
                    let lam_p = match &lam {
                        ParamValue::Sym => LamRPoly::sym_lam(),
                        ParamValue::Num(q) => LamRPoly::constant(q.clone()),
                    };
                    let r_p = match &r {
                        ParamValue::Sym => LamRPoly::sym_r(),
                        ParamValue::Num(q) => LamRPoly::constant(q.clone()),
                    };
                    series_lists(&r_stirling_gf(args.k, &lam_p, &r_p, order))
                }
            };
            ("r-stirling-gf", lists)
        }
        SeriesKind::DaeheeGf => {
            if args.lam.is_some() || args.r.is_some() {
                return Err(Error::InvalidParams(
                    "series daehee-gf takes only x (not lam or r)".into(),
                ));
            }
            let x = parse_rational(&args.x)?.unwrap_or_else(Rational::zero);
            meta.insert("x", x.to_string());
            ("daehee-gf", series_lists(&daehee_gf(args.k, &x, order)))
        }
    };
    match args.format {
        OutputFormat::Csv => {
            let mut lines = vec!["n,ordinary,egf".to_string()];
            for n in 0..=order {
                lines.push(format!("{n},{},{}", ordinary[n], egf[n]));
            }
            Ok(lines.join("\n"))
        }
        OutputFormat::Json => {
            let doc = SeriesDoc {
                which,
                k: args.k,
                order: args.order,
                params: meta,
                ordinary,
                egf,
            };
            Ok(serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        OutputFormat::Pretty => {
            let meta_str: Vec<String> = meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mut lines = vec![format!(
                "# series={which} k={} order={}{}{}",
                args.k,
                args.order,
                if meta_str.is_empty() { "" } else { " " },
                meta_str.join(" ")
            )];
            for n in 0..=order {
                lines.push(format!("t^{n}: ordinary={} egf={}", ordinary[n], egf[n]));
            }
            Ok(lines.join("\n"))
        }
    }
}

fn render_report_pretty(report: &IdentityReport) -> String {
    let mut line = format!(
        "{:<18} {:<8} instances={:<6} {}",
        report.id.name(),
        report.mode.name(),
        report.instances,
        match report.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail if report.is_expected_failure() => "FAIL (EXPECTED)".to_string(),
            Status::Fail => "FAIL".to_string(),
        }
    );
    if let Some(note) = &report.note {
        line.push_str(&format!("\n    note: {note}"));
    }
    for f in report.failures.iter().take(3) {
        let indices: Vec<String> = f.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
        line.push_str(&format!(
            "\n    mismatch [{}] lhs={} rhs={}",
            indices.join(" "),
            f.lhs,
            f.rhs
        ));
    }
    if report.failures.len() > 3 {
        line.push_str(&format!(
            "\n    ... {} further mismatches",
            report.failures.len() - 3
        ));
    }
    line
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32), Error> {
    let ids = match &args.ids {
        None => None,
        Some(names) => Some(
            names
                .iter()
                .map(|s| s.parse::<IdentityId>())
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    let config = SuiteConfig {
        ids,
        max_n: args.n,
        samples: None,
    };
    let reports = run_suite(&config)?;
    let all_ok = reports
        .iter()
        .all(|r| r.status == Status::Pass || r.is_expected_failure());
    let out = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&reports).expect("serializable"),
        OutputFormat::Csv => {
            let mut lines = vec!["id,mode,instances,failures,status".to_string()];
            for r in &reports {
                lines.push(format!(
                    "{},{},{},{},{}",
                    r.id.name(),
                    r.mode.name(),
                    r.instances,
                    r.failures.len(),
                    match r.status {
                        Status::Pass => "pass",
                        Status::Fail => "fail",
                    }
                ));
            }
            lines.join("\n")
        }
        OutputFormat::Pretty => {
            let mut lines: Vec<String> = reports.iter().map(render_report_pretty).collect();
            lines.push(if all_ok {
                "suite: OK".to_string()
            } else {
                "suite: FAILED".to_string()
            });
            lines.join("\n")
        }
    };
    Ok((out, if all_ok { 0 } else { 1 }))
}
