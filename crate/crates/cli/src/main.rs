//! `pa-degree-forge`: build the multicurve families, certify trace-field and
//! stretch-factor degrees, rerun the reference computations, and re-verify
//! certificate files.
//!
//! Exit codes: 0 all certificates issued, 1 refutation (or failed
//! verification), 2 inconclusive, 64 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pa_degree_forge::families::parse_shorthand;
use pa_degree_forge::report::{certify_matrix, certify_spec, CertifyOptions};
use pa_degree_forge::suites::{
    run_suite, SuiteOptions, SuiteReport, PROP62_DEFAULT_G_MAX, PROP62_FULL_G_MAX,
};
use pa_degree_forge::verify::verify_json;
use pa_degree_forge::{Error, Execution, FamilySpec, IntMatrix};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "pa-degree-forge", version, about = "Exact degree certificates for Thurston–Veech pseudo-Anosov maps")]
struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family's Gram matrix and write it in the matrix text format.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file for the matrix (stdout when absent).
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
        /// Write the parameter echo as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Certify trace-field and stretch-factor degrees of a family or matrix.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Certify the Gram matrix in this file instead of a family.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["words", "spec"])]
        matrix: Option<PathBuf>,
        /// Sign of the second twist exponent; repeatable (default: both).
        #[arg(long, value_name = "EPS", allow_negative_numbers = true, value_parser = parse_epsilon)]
        epsilon: Vec<i8>,
        /// Largest witness n tried by the nonsplitting search.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Primes examined by the irreducibility certifier.
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        prime_budget: u64,
        /// Run the signature criterion (optionally with an explicit d, e.g. `d=2`).
        #[arg(long, value_name = "D", num_args = 0..=1, default_missing_value = "auto", value_parser = parse_ll_degree)]
        with_ll: Option<LlDegree>,
        /// Certify the bipartite degree through chi(t^2).
        #[arg(long)]
        with_bipartite: bool,
        /// Write the full report as JSON (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Run one of the reference reproduction suites.
    Reproduce {
        suite: Suite,
        /// Largest genus for `prop62` and `thurston-claim`.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        g_max: Option<u64>,
        /// Extend `prop62` to the full range g <= 200 (slow).
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        prime_budget: u64,
        /// Write the suite report as JSON (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write one CSV row per suite item (index, name, passed, checks).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Re-check every witness of a certificate report.
    Verify {
        /// Report written by `certify --json`.
        path: PathBuf,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Family in shorthand, e.g. `KBlock k=2 ys=12,13 y=5` or `MgNg g=3`.
    #[arg(value_name = "FAMILY")]
    words: Vec<String>,
    /// Family as a JSON file `{"variant": ..., "params": {...}}`.
    #[arg(long, value_name = "PATH", conflicts_with = "words")]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    #[value(name = "genus2-table")]
    Genus2Table,
    #[value(name = "thurston-claim")]
    ThurstonClaim,
    #[value(name = "torelli-small")]
    TorelliSmall,
    #[value(name = "prop62")]
    Prop62,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Genus2Table => "genus2-table",
            Suite::ThurstonClaim => "thurston-claim",
            Suite::TorelliSmall => "torelli-small",
            Suite::Prop62 => "prop62",
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum LlDegree {
    Auto,
    Fixed(usize),
}

fn parse_epsilon(s: &str) -> Result<i8, String> {
    match s.trim_start_matches('+') {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("epsilon must be 1 or -1, got {s:?}")),
    }
}

fn parse_ll_degree(s: &str) -> Result<LlDegree, String> {
    if s == "auto" {
        return Ok(LlDegree::Auto);
    }
    match s.trim_start_matches("d=").parse::<usize>() {
        Ok(d) if d >= 1 => Ok(LlDegree::Fixed(d)),
        _ => Err(format!("expected a positive degree, got {s:?}")),
    }
}

/// Failure classes mapped onto the exit-code contract.
enum Failure {
    Usage(anyhow::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(
                Error::Parse(_)
                | Error::Validation(_)
                | Error::InvalidArgument(_)
                | Error::Unsupported(_),
            ) => Failure::Usage(e),
            _ => Failure::Other(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match run(cli.command, exec) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, exec: Execution) -> Result<u8, Failure> {
    match command {
        Command::Build { family, matrix, json } => {
            let spec = family.resolve()?;
            let gram = spec.build_gram().map_err(anyhow::Error::from)?;
            println!("family    {}", serde_json::to_string(&spec).expect("specs serialize"));
            println!("dimension {}", gram.rows());
            match matrix {
                Some(path) => {
                    write_file(&path, &gram.to_text())?;
                    println!("matrix    written to {}", path.display());
                }
                None => print!("{}", gram.to_text()),
            }
            if let Some(path) = json {
                let echo = serde_json::json!({
                    "schema": pa_degree_forge::report::SCHEMA,
                    "spec": spec,
                    "dim": gram.rows(),
                    "gram": gram,
                });
                write_output(&path, &serde_json::to_string_pretty(&echo).expect("json"))?;
            }
            Ok(0)
        }
        Command::Certify {
            family,
            matrix,
            epsilon,
            n_max,
            prime_budget,
            with_ll,
            with_bipartite,
            json,
        } => {
            let opts = CertifyOptions {
                epsilons: if epsilon.is_empty() { vec![1, -1] } else { epsilon },
                n_max: n_max as usize,
                prime_budget: prime_budget as usize,
                ll: with_ll.map(|d| match d {
                    LlDegree::Auto => None,
                    LlDegree::Fixed(d) => Some(d),
                }),
                bipartite: with_bipartite,
                exec,
            };
            let report = match matrix {
                Some(path) => {
                    let text = read_file(&path)?;
                    let gram = IntMatrix::from_text(&text).map_err(anyhow::Error::from)?;
                    certify_matrix(&gram, &opts)
                }
                None => certify_spec(&family.resolve()?, &opts),
            }
            .map_err(anyhow::Error::from)?;
            emit(&report.summary(), &report.to_json(), json.as_deref())?;
            Ok(report.exit_code() as u8)
        }
        Command::Reproduce { suite, g_max, extended, prime_budget, json, csv } => {
            let g_max = match (suite, g_max, extended) {
                (_, Some(g), _) => Some(g as usize),
                (Suite::Prop62, None, true) => Some(PROP62_FULL_G_MAX),
                _ => None,
            };
            if matches!(suite, Suite::Prop62) && g_max.unwrap_or(PROP62_DEFAULT_G_MAX) > PROP62_DEFAULT_G_MAX {
                eprintln!(
                    "warning: genus above {PROP62_DEFAULT_G_MAX} means characteristic polynomials of \
                     dimension up to {}; expect a long run",
                    3 * g_max.unwrap_or(PROP62_DEFAULT_G_MAX)
                );
            }
            let opts = SuiteOptions { g_max, prime_budget: prime_budget as usize, exec };
            let report = run_suite(suite.name(), &opts).map_err(anyhow::Error::from)?;
            let text = serde_json::to_string_pretty(&report).expect("suite reports serialize");
            emit(&report.summary(), &text, json.as_deref())?;
            if let Some(path) = csv {
                write_suite_csv(&path, &report)?;
            }
            Ok(report.exit_code() as u8)
        }
        Command::Verify { path } => {
            let text = read_file(&path)?;
            match verify_json(&text) {
                Ok(n) => {
                    println!("ok: {n} checks passed");
                    Ok(0)
                }
                Err(f) => {
                    println!("verification failed: {f}");
                    Ok(1)
                }
            }
        }
    }
}

impl FamilyArgs {
    fn resolve(&self) -> Result<FamilySpec, Failure> {
        if let Some(path) = &self.spec {
            let text = read_file(path)?;
            let spec: FamilySpec = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", path.display())))?;
            return Ok(spec);
        }
        if self.words.is_empty() {
            return Err(Failure::Usage(anyhow::anyhow!(
                "no family given (shorthand like `MgNg g=3`, or --spec FILE)"
            )));
        }
        parse_shorthand(&self.words.join(" ")).map_err(|e| Failure::Usage(e.into()))
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Human summary on stdout, JSON to a file or (with `-`) to stdout instead.
fn emit(summary: &str, json: &str, target: Option<&Path>) -> anyhow::Result<()> {
    match target {
        Some(p) if p == Path::new("-") => println!("{json}"),
        Some(p) => {
            print!("{summary}");
            write_output(p, json)?;
        }
        None => print!("{summary}"),
    }
    Ok(())
}

fn write_suite_csv(path: &Path, report: &SuiteReport) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["index", "name", "passed", "checks"])?;
    for item in &report.items {
        let checks: Vec<String> =
            item.checks.iter().map(|c| format!("{}={}", c.name, if c.ok { "ok" } else { "fail" })).collect();
        w.write_record([item.index.to_string(), item.name.clone(), item.passed.to_string(), checks.join("; ")])?;
    }
    w.flush()?;
    Ok(())
}

fn write_output(path: &Path, text: &str) -> anyhow::Result<()> {
    if path == Path::new("-") {
        println!("{text}");
        return Ok(());
    }
    if path.as_os_str().is_empty() {
        bail!("empty output path");
    }
    write_file(path, text)
}
