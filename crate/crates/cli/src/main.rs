//! `arcstraight`: expansion, straightening, basis listings, dimension
//! tables and the verification suites from the command line.
//!
//! Exit status: 0 success, 1 usage error, 2 a check failed, 3 an internal
//! invariant broke. All output is deterministic for fixed arguments.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arcstraight::minors::{expand_minor, parse_product, MinorSymbol};
use arcstraight::ring::poly_to_json;
use arcstraight::straighten::{Oracle, Straightener};
use arcstraight::tableaux::enumerate_standard;
use arcstraight::verify::{self, CriterionScope, Report, StraightenScope, Suite};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] arcstraight::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(arcstraight::Error::Usage(_)) => 1,
            CliError::Lib(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "arcstraight", version, about = "Standard monomials for arc spaces of determinantal varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand a minor symbol such as `1:(1,2|1,3)` into a polynomial.
    Expand {
        #[arg(long)]
        minor: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rewrite a product of minor symbols in the standard basis.
    Straighten {
        #[command(flatten)]
        shape: Shape,
        /// Comma-separated minor symbols, e.g. `0:(1|2),0:(2|1)`.
        #[arg(long)]
        product: String,
        /// Use the linear-algebra oracle instead of tableau elimination.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the standard products of one degree and weight.
    Basis {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Table of standard-product counts against quotient dimensions.
    Dims {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification suite, or all of them.
    Check {
        /// basis, leading, sft, invariants, criterion, relations, straighten, calculus or all
        suite: String,
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        bounds: Bounds,
        /// Seed for the randomized identities.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Shape {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=9))]
    p: u8,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=9))]
    q: u8,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=9))]
    h: u8,
}

impl Shape {
    fn dims(self) -> (usize, usize, usize) {
        (self.p as usize, self.q as usize, self.h as usize)
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct Bounds {
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, default_value_t = 3)]
    max_weight: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

fn json_line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn expand(minor: &str, format: Format) -> Result<String, CliError> {
    let j: MinorSymbol = minor.parse()?;
    let f = expand_minor(&j);
    Ok(match format {
        Format::Text => format!("{f}\n"),
        _ => json_line(&poly_to_json(&f)),
    })
}

fn straighten(shape: Shape, product: &str, oracle: bool, format: Format) -> Result<String, CliError> {
    let (p, q, h) = shape.dims();
    let js = parse_product(product)?;
    let c = if oracle {
        Oracle::new(p, q, h).straighten(&js)?
    } else {
        Straightener::new(p, q, h).straighten(&js)?
    };
    Ok(match format {
        Format::Text => format!("{c}\n"),
        _ => json_line(&c.to_json()),
    })
}

fn basis(shape: Shape, degree: usize, weight: u32, format: Format) -> String {
    let (p, q, h) = shape.dims();
    let products = enumerate_standard(p, q, h, degree, weight);
    match format {
        Format::Text => products.iter().map(|s| format!("{s}\n")).collect(),
        _ => json_line(&Value::Array(products.iter().map(|s| s.to_json()).collect())),
    }
}

fn dims(shape: Shape, bounds: Bounds, format: Format) -> String {
    let (p, q, h) = shape.dims();
    let mut oracle = Oracle::new(p, q, h);
    let mut rows = Vec::new();
    for d in 0..=bounds.max_degree {
        for w in 0..=bounds.max_weight {
            rows.push((d, w, enumerate_standard(p, q, h, d, w).len(), oracle.graded_dim(d, w)));
        }
    }
    match format {
        Format::Csv => {
            let mut out = String::from("degree,weight,standard,graded_dim\n");
            for (d, w, s, g) in rows {
                writeln!(out, "{d},{w},{s},{g}").expect("writing to a string");
            }
            out
        }
        Format::Json => json_line(&Value::Array(
            rows.into_iter()
                .map(|(d, w, s, g)| json!({"degree": d, "weight": w, "standard": s, "graded_dim": g}))
                .collect(),
        )),
        Format::Text => {
            let mut out = format!("{:>6} {:>6} {:>9} {:>10}\n", "degree", "weight", "standard", "graded_dim");
            for (d, w, s, g) in rows {
                writeln!(out, "{d:>6} {w:>6} {s:>9} {g:>10}").expect("writing to a string");
            }
            out
        }
    }
}

/// One suite at the scale given by the shape and bounds.
fn run_suite(suite: Suite, shape: Shape, bounds: Bounds, seed: u64, threads: usize) -> arcstraight::Result<Report> {
    let (p, q, h) = shape.dims();
    let (max_d, max_w) = (bounds.max_degree, bounds.max_weight);
    match suite {
        Suite::Basis => verify::check_basis(&[(p, q, h)], max_d, max_w, threads),
        Suite::Leading => verify::check_leading(&[(p, q, h)], max_d, max_w, threads),
        Suite::Invariants => verify::check_invariants(&[(p, q, h)], max_d, max_w, threads),
        Suite::Sft => verify::check_sft(&[h], max_w),
        Suite::Criterion => verify::check_criterion(CriterionScope {
            max_size: h,
            max_weight: max_w,
            max_index: p.max(q) as u8,
            max_target_weight: max_w + 1,
        }),
        Suite::Relations => verify::check_relations(p.min(q), max_w),
        Suite::Straighten => verify::check_straighten(
            &[StraightenScope { p, q, h, max_factors: max_d, max_degree: max_d, max_weight: max_w }],
            threads,
        ),
        Suite::Calculus => verify::check_calculus(seed, 100),
    }
}

/// Returns the rendered reports and whether every suite passed.
fn check(name: &str, shape: Shape, bounds: Bounds, seed: u64, format: Format) -> Result<(String, bool), CliError> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let threads = verify::thread_budget()?;
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, shape, bounds, seed, threads)?);
    }
    let passed = reports.iter().all(Report::passed);
    let out = match format {
        Format::Json => json_line(&json!({
            "passed": passed,
            "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("suite,passed,cases\n");
            for r in &reports {
                writeln!(out, "{},{},{}", r.suite, r.passed(), r.cases).expect("writing to a string");
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(out, "{}: {verdict} ({} cases)", r.suite, r.cases).expect("writing to a string");
                if let Some(f) = &r.failure {
                    writeln!(out, "  {f}").expect("writing to a string");
                }
            }
            out
        }
    };
    Ok((out, passed))
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Expand { minor, format } => Ok((expand(&minor, format)?, true)),
        Command::Straighten { shape, product, oracle, format } => Ok((straighten(shape, &product, oracle, format)?, true)),
        Command::Basis { shape, degree, weight, format } => Ok((basis(shape, degree, weight, format), true)),
        Command::Dims { shape, bounds, format } => Ok((dims(shape, bounds, format), true)),
        Command::Check { suite, shape, bounds, seed, format } => check(&suite, shape, bounds, seed, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                eprintln!("error: {}", CliError::from(e));
                return ExitCode::from(1);
            }
            ExitCode::from(if passed { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
