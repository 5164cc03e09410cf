//! `lerchq`: coefficient export, certified evaluation and identity verification.
//!
//! Exit status is 0 when every selected report passes, 1 when a report fails or errors, and
//! 2 for invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lerchq::integral::theorems::{run_theorem, THEOREMS};
use lerchq::integral::transforms::Params;
use lerchq::verify::{self, Config, ConfigLayer, Filter, Format};
use lerchq::{Error, IdentityReport, Status};

#[derive(Parser)]
#[command(name = "lerchq", version, about = "q-series, mock theta functions, Lerch sums and their integral representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rational coefficients of a series family.
    Coeffs(CoeffsArgs),
    /// Evaluate a named function with a certified error bound.
    Eval(EvalArgs),
    /// Run registered identities and report pass/fail.
    Verify(VerifyArgs),
    /// Check one integral representation or transformation theorem.
    Integral(IntegralArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Family name; `--list` shows them all.
    #[arg(required_unless_present = "list")]
    family: Option<String>,
    #[arg(long, default_value_t = 20)]
    order: usize,
    /// Family parameters as `key=value`.
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    /// `csv` (default) or `json` on stdout.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
    /// Also write the JSON form to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(required_unless_present = "list")]
    name: Option<String>,
    /// Complex arguments such as `0.1+0.9i`, `0.9i` or `0.5`; put arguments that start
    /// with `-` after `--`.
    args: Vec<String>,
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Id glob such as `thm1-*`, or `exact`, `numeric`, `all`.
    #[arg(default_value = "all")]
    filter: String,
    /// Series order for exact identities (overrides each identity's default).
    #[arg(long)]
    order: Option<usize>,
    /// Threshold for numeric identities (overrides each identity's default).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Plain `key=value` file with order, tol, seed, jobs; flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the report array as JSON to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    /// List the selected identities without running them.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct IntegralArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: u32,
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutFormat,
}

fn parse_theorem(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("not a theorem number: {}", s))?;
    if THEOREMS.contains(&n) {
        Ok(n)
    } else {
        Err(format!("theorem must be one of {:?}", THEOREMS))
    }
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Checks,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(Error::from)
}

fn coeffs(a: CoeffsArgs) -> Outcome {
    if a.list {
        for (name, params) in verify::family_names() {
            println!("{:<14} {}", name, params);
        }
        return Ok(());
    }
    let family = a.family.as_deref().unwrap_or_default();
    let params = Params::parse(&a.params)?;
    let format = match a.format {
        OutFormat::Json => Format::Json,
        _ => Format::Csv,
    };
    print!("{}", ensure_newline(verify::export_coeffs(family, &params, a.order, format)?));
    if let Some(path) = &a.json {
        verify::write_coeffs(path, family, &params, a.order, Format::Json)?;
    }
    Ok(())
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn eval(a: EvalArgs) -> Outcome {
    if a.list {
        for (name, args, params) in verify::eval_names() {
            println!("{:<14} {:<8} {}", name, args, params);
        }
        return Ok(());
    }
    let name = a.name.as_deref().unwrap_or_default();
    let params = Params::parse(&a.params)?;
    let args: Vec<&str> = a.args.iter().map(String::as_str).collect();
    let v = verify::evaluate(name, &args, &params, a.tol)?;
    let record = json!({
        "function": name,
        "args": a.args,
        "params": params.entries().collect::<std::collections::BTreeMap<_, _>>(),
        "value": {"re": v.value.re, "im": v.value.im},
        "bound": v.bound,
        "terms": v.terms,
    });
    let pretty = serde_json::to_string_pretty(&record).expect("record serializes");
    match a.format {
        OutFormat::Json => println!("{}", pretty),
        _ => {
            println!("value = {:.17e} {:+.17e}i", v.value.re, v.value.im);
            println!("bound = {:.3e}", v.bound);
            println!("terms = {}", v.terms);
        }
    }
    if let Some(path) = &a.json {
        write(path, &pretty)?;
    }
    Ok(())
}

fn summary_line(r: &IdentityReport) -> String {
    let tag = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    };
    let err = r.max_abs_error.map_or("-".to_string(), |e| format!("{:.3e}", e));
    let mut line = format!("{:<5} {:<22} err {:<10} thr {:<8.1e} {:>9.1} ms", tag, r.identity_id, err, r.threshold, r.runtime_ms);
    if r.status != Status::Pass {
        if let Some(n) = &r.note {
            line.push_str(&format!("  ({})", n));
        }
    }
    line
}

fn emit(reports: &[IdentityReport], format: OutFormat, json_path: Option<&PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(reports).expect("reports serialize");
    match format {
        OutFormat::Json => println!("{}", text),
        _ => {
            for r in reports {
                println!("{}", summary_line(r));
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!("{} of {} passed", passed, reports.len());
        }
    }
    if let Some(p) = json_path {
        write(p, &text)?;
    }
    Ok(())
}

fn checks(reports: &[IdentityReport]) -> Outcome {
    if reports.iter().all(IdentityReport::passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let filter: Filter = a.filter.parse()?;
    if a.list {
        for d in verify::select(&filter)? {
            println!("{:<22} {:<8} {:<14} {}", d.id, format!("{:?}", d.mode).to_lowercase(), d.module, d.summary);
        }
        return Ok(());
    }
    let file = a.config.as_deref().map(ConfigLayer::load).transpose()?;
    let cli = ConfigLayer { order: a.order, tol: a.tol, seed: a.seed, jobs: a.jobs };
    let config = Config::resolve(&cli, file.as_ref())?;
    let reports = verify::run_suite(&filter, &config)?;
    emit(&reports, a.format, a.json.as_ref())?;
    checks(&reports)
}

fn integral(a: IntegralArgs) -> Outcome {
    let mut params = Params::parse(&a.params)?;
    if let Some(s) = a.seed {
        params = params.set("seed", s);
    }
    let report = run_theorem(a.theorem, &params, a.tol)?;
    match a.format {
        OutFormat::Json => println!("{}", report.to_json()),
        _ => println!("{}", summary_line(&report)),
    }
    if let Some(p) = &a.json {
        write(p, &report.to_json())?;
    }
    checks(std::slice::from_ref(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Coeffs(a) => coeffs(a),
        Command::Eval(a) => eval(a),
        Command::Verify(a) => run_verify(a),
        Command::Integral(a) => integral(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
