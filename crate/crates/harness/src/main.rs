use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use eulersum_core::algebra::{render, Format};
use eulersum_core::audit::typo_ledger;
use eulersum_core::closed::closed_form;
use eulersum_core::oracle::{AtomOracle, Verdict, VerificationReport};
use eulersum_core::{algebra, Error, Family, SumSpec};
use serde_json::json;

use eulersum_harness::config::{
    slow_tol_for, ConfigError, OutputFormat, RunConfig, DEFAULT_MAX_TERMS, DEFAULT_TOL_DIGITS, DIGITS_ENV,
};
use eulersum_harness::grid::{parse_range, standard_grids, SweepGrid};
use eulersum_harness::report::{sweep, verdict_name, verify_point, Report};
use eulersum_harness::selftest;

/// Closed forms of Euler-type sums, checked against direct summation.
#[derive(Parser)]
#[command(name = "eulersum", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed form of one series.
    Eval(EvalArgs),
    /// Compare one closed form with the direct-summation oracle.
    Verify(PointArgs),
    /// Verify a parameter grid (standard grids of every family by default).
    Sweep(SweepArgs),
    /// Run golden values, invariant suites and the formula audit.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct Common {
    /// Working precision in decimal digits.
    #[arg(long, env = DIGITS_ENV, default_value_t = 60)]
    digits: u32,
    /// Term budget of the direct summation.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: u64,
    /// Agreement required for fast series, in digits.
    #[arg(long, default_value_t = DEFAULT_TOL_DIGITS)]
    tol: u32,
    /// Agreement required for slowly decaying series; defaults by budget.
    #[arg(long)]
    slow_tol: Option<u32>,
    /// text, latex, json or csv.
    #[arg(long, default_value = "text")]
    format: String,
    /// Render even zeta values as powers of pi.
    #[arg(long)]
    pi: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let format: OutputFormat = self.format.parse()?;
        let config = RunConfig {
            precision_digits: self.digits,
            max_terms: self.max_terms,
            tol_digits: self.tol,
            slow_tol_digits: self.slow_tol.unwrap_or_else(|| slow_tol_for(self.max_terms)),
            output_path: self.out.clone(),
            format,
            pi_form: self.pi,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Series parameters; sweeps also accept inclusive ranges such as `1..4`.
#[derive(Args)]
struct Params {
    /// Family name, e.g. HyperBinom.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

impl Params {
    fn get(&self, name: &str) -> Option<&str> {
        match name {
            "r" => self.r.as_deref(),
            "q" => self.q.as_deref(),
            "p" => self.p.as_deref(),
            "l" => self.l.as_deref(),
            "m" => self.m.as_deref(),
            "j" => self.j.as_deref(),
            "a" => self.a.as_deref(),
            _ => None,
        }
    }

    fn family(&self) -> Result<Option<Family>> {
        self.family.as_deref().map(|f| f.parse().map_err(anyhow::Error::from)).transpose()
    }

    fn spec(&self, label: Option<&str>) -> Result<SumSpec> {
        if let Some(label) = label {
            return Ok(label.parse()?);
        }
        let family = self.family()?.ok_or_else(|| ConfigError("--family or a spec like HyperBinom(2,5,2) is required".into()))?;
        let mut values = Vec::new();
        for name in family.params() {
            let raw = self
                .get(name)
                .ok_or_else(|| Error::InvalidParameter(format!("{family} needs --{name}")))?;
            let v = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("--{name}: {raw:?} is not an integer")))?;
            values.push(v);
        }
        Ok(SumSpec::new(family, &values)?)
    }

    fn grids(&self) -> Result<Vec<SweepGrid>> {
        let Some(family) = self.family()? else {
            return Ok(standard_grids());
        };
        let mut grid = SweepGrid::standard(family);
        for name in family.params() {
            if let Some(raw) = self.get(name) {
                let (lo, hi) = parse_range(raw)
                    .ok_or_else(|| Error::InvalidParameter(format!("--{name}: bad range {raw:?}")))?;
                grid = grid.with_range(name, lo, hi).expect("parameter of this family");
            }
        }
        Ok(vec![grid])
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Series such as `HyperBinom(2,5,2)`; alternative to --family.
    spec: Option<String>,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PointArgs {
    spec: Option<String>,
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: Params,
    #[command(flatten)]
    common: Common,
    /// Sweep the standard grid of every family (the default without --family).
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct SelftestArgs {
    #[command(flatten)]
    common: Common,
    /// Run the oracle comparison over the full standard grid.
    #[arg(long)]
    full: bool,
}

fn output(config: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &config.output_path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn eval(args: &EvalArgs) -> Result<ExitCode> {
    let config = args.common.config()?;
    let spec = args.params.spec(args.spec.as_deref())?;
    let expr = closed_form(&spec)?;
    let value = algebra::eval_expr(&expr, config.precision_digits, AtomOracle::global())?;
    let value = value.to_string_radix(10, Some(config.precision_digits as usize));
    let mut out = output(&config)?;
    match config.format {
        OutputFormat::Json => {
            let expr_json: serde_json::Value = serde_json::from_str(&expr.to_json())?;
            let doc = json!({
                "spec": spec.to_string(),
                "expr": expr_json,
                "rendered": render(&expr, Format::Text, config.pi_form),
                "value": value,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        OutputFormat::Latex => writeln!(out, "{}", render(&expr, Format::Latex, config.pi_form))?,
        OutputFormat::Text | OutputFormat::Csv => {
            writeln!(out, "{spec} = {}", render(&expr, Format::Text, config.pi_form))?;
            writeln!(out, "  ~ {value}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(failed: bool) -> ExitCode {
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn text_line(r: &VerificationReport) -> String {
    let mut line = format!("{:<8} {}", verdict_name(r.verdict), r.spec);
    if let (Some(err), Some(o)) = (&r.abs_err, &r.oracle) {
        line += &format!("  |closed - oracle| = {:.3e}, tail bound {:.3e}, {} terms ({})", err, o.tail_bound, o.terms_used, o.mode);
    }
    if r.strict == Some(false) {
        line += "  [outside extrapolation band]";
    }
    if let Some(why) = &r.reason {
        line += &format!("  ({why})");
    }
    line
}

fn verify_cmd(args: &PointArgs) -> Result<ExitCode> {
    let config = args.common.config()?;
    let spec = args.params.spec(args.spec.as_deref())?;
    let r = verify_point(&spec, &config);
    if let Some(why) = &r.reason {
        if why.starts_with("invalid parameter") {
            return Err(anyhow!(Error::InvalidParameter(why.clone())));
        }
    }
    let mut out = output(&config)?;
    match config.format {
        OutputFormat::Text | OutputFormat::Latex => writeln!(out, "{}", text_line(&r))?,
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?,
        OutputFormat::Csv => Report::new(&config, vec![r.clone()], 0, &[]).write(&mut out, true)?,
    }
    Ok(exit_for(r.verdict == Verdict::Fail))
}

fn sweep_cmd(args: &SweepArgs) -> Result<ExitCode> {
    let config = args.common.config()?;
    let grids = if args.all { standard_grids() } else { args.params.grids()? };
    let (results, invalid) = sweep(&grids, &config);
    let ledger = typo_ledger()?;
    let report = Report::new(&config, results, invalid, ledger);
    let mut out = output(&config)?;
    match config.format {
        OutputFormat::Json => report.write(&mut out, false)?,
        OutputFormat::Csv => report.write(&mut out, true)?,
        OutputFormat::Text | OutputFormat::Latex => {
            for r in &report.results {
                writeln!(out, "{}", text_line(r))?;
            }
            let s = &report.summary;
            writeln!(
                out,
                "{} points: {} pass, {} fail, {} skipped; {} invalid grid points; {} outside extrapolation band",
                s.points, s.pass, s.fail, s.skipped, s.invalid, s.strict_fail
            )?;
        }
    }
    Ok(exit_for(report.summary.fail > 0))
}

fn selftest_cmd(args: &SelftestArgs) -> Result<ExitCode> {
    let config = args.common.config()?;
    let report = selftest::run(&config, args.full);
    let mut out = output(&config)?;
    match config.format {
        OutputFormat::Json | OutputFormat::Csv => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        OutputFormat::Text | OutputFormat::Latex => {
            for s in &report.suites {
                writeln!(out, "{} {} ({} checks)", if s.passed { "PASS" } else { "FAIL" }, s.name, s.checks)?;
                for f in &s.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            for e in &report.typo_ledger {
                writeln!(out, "ledger {}: {:?} - {}", e.formula, e.status, e.note)?;
            }
        }
    }
    Ok(exit_for(!report.passed))
}

/// Configuration and parameter errors exit with 2, everything else with 1.
fn error_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidParameter(_) | Error::Parse(_) | Error::NonConvergent(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Selftest(a) => selftest_cmd(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
