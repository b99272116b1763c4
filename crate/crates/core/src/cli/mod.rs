//! `fracpois <eval|dist|simulate|verify>`: command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 numerical failure.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::check::CheckReport;
use crate::error::{invalid, Error, Result};
use crate::models::{self, ProcessSpec};
use crate::simulate::{self, SimConfig, RNG_ALGORITHM};
use crate::special::{self, MLSpec, SeriesPolicy};
use crate::verify;
use output::{write_records, Format, OutputRecord, Provenance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable overriding the series term cap.
pub const MAX_TERMS_ENV: &str = "FRACPOIS_MAX_TERMS";

#[derive(Debug, Parser)]
#[command(name = "fracpois", version, about = "Fractional Poisson processes: special functions, distributions, simulation and checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Series relative tolerance for `eval`; replaces every check tolerance for `verify`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// RNG seed for `simulate`.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a Mittag-Leffler, Prabhakar or Wright function on a grid.
    Eval(EvalArgs),
    /// Distributional quantities of a process.
    Dist(DistArgs),
    /// Simulate event paths and compare empirical with exact quantities.
    Simulate(SimArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Function {
    /// E_{α,β}(x)
    Ml,
    /// E^γ_{α,β}(x)
    Gml,
    /// W_{λ,β}(x)
    Wright,
}

/// A grid given either as explicit values or as `min`, `max`, `points`.
#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Explicit grid values (repeatable).
    #[arg(long = "x", num_args = 1.., allow_negative_numbers = true)]
    pub values: Vec<f64>,
    #[arg(long = "x-min", allow_negative_numbers = true)]
    pub min: Option<f64>,
    #[arg(long = "x-max", allow_negative_numbers = true)]
    pub max: Option<f64>,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub gamma: f64,
    /// First Wright parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub lam: Option<f64>,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Model order (1 first type, 2 second type).
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[command(subcommand)]
    pub quantity: Quantity,
}

#[derive(Debug, Clone, Args)]
pub struct Times {
    /// Times (repeatable).
    #[arg(long = "t", num_args = 1.., allow_negative_numbers = true)]
    pub values: Vec<f64>,
    #[arg(long = "t-min")]
    pub min: Option<f64>,
    #[arg(long = "t-max")]
    pub max: Option<f64>,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    /// Logarithmic spacing between `--t-min` and `--t-max`.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Subcommand)]
pub enum Quantity {
    /// Pr{N(t) = k}: over t for a fixed `--k`, or over k = 0..=`--k-max`.
    Pmf {
        #[command(flatten)]
        times: Times,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long = "k-max")]
        k_max: Option<u64>,
    },
    /// Density of the k-th event time.
    Wtpdf {
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Distribution function of the k-th event time.
    Wtcdf {
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Interarrival density.
    Iapdf {
        #[command(flatten)]
        times: Times,
    },
    /// Probability generating function over u.
    Pgf {
        #[arg(long = "t", allow_negative_numbers = true)]
        t: f64,
        /// Values of u in (0, 1] (repeatable); default an 11-point grid.
        #[arg(long = "u", num_args = 1.., allow_negative_numbers = true)]
        u: Vec<f64>,
    },
    /// Expected number of events by time t.
    Renewal {
        #[command(flatten)]
        times: Times,
    },
    /// Factorial moment of order `--r` (first type).
    Moments {
        #[command(flatten)]
        times: Times,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub horizon: f64,
    #[arg(long, default_value_t = 10_000)]
    pub paths: usize,
    /// Probe times for empirical summaries (repeatable); default the horizon.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub probe: Vec<f64>,
    /// JSON-lines file receiving the event paths.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only these checks (repeatable); see `--list`.
    #[arg(long, num_args = 1..)]
    pub only: Vec<String>,
    /// Print the available check names and exit.
    #[arg(long)]
    pub list: bool,
}

/// Run with the process arguments and write to stdout.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    run_from(std::env::args_os(), &mut stdout.lock())
}

/// Run with explicit arguments (the first is the program name).
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        match v.trim().parse::<usize>().map_err(|e| invalid(format!("{MAX_TERMS_ENV}={v}: {e}"))).and_then(|n| {
            special::set_default_max_terms(n)
        }) {
            Ok(()) => {}
            Err(e) => return report_error(&e),
        }
    }
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.tol).and_then(|r| emit(&r, format, out)).map(|_| EXIT_OK),
        Command::Dist(a) => cmd_dist(a).and_then(|r| emit(&r, format, out)).map(|_| EXIT_OK),
        Command::Simulate(a) => cmd_simulate(a, cli.seed).and_then(|r| emit(&r, format, out)).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a, cli.tol, format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if e.is_usage() {
        EXIT_USAGE
    } else {
        EXIT_NUMERICAL
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidParam(format!("i/o: {e}"))
}

fn emit(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> Result<()> {
    write_records(records, format, &mut *out).map_err(io_err)?;
    out.flush().map_err(io_err)
}

fn linspace(min: f64, max: f64, points: usize, log: bool) -> Result<Vec<f64>> {
    if points < 1 {
        return Err(invalid("--points must be at least 1"));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    if log && !(min > 0.0 && max > 0.0) {
        return Err(invalid("logarithmic grid needs positive bounds"));
    }
    let m = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            let f = i as f64 / m;
            if log {
                (min.ln() + f * (max / min).ln()).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect())
}

fn grid_values(values: &[f64], min: Option<f64>, max: Option<f64>, points: usize, log: bool, what: &str) -> Result<Vec<f64>> {
    match (values.is_empty(), min, max) {
        (false, None, None) => Ok(values.to_vec()),
        (true, Some(a), Some(b)) => linspace(a, b, points, log),
        (true, _, _) => Err(invalid(format!("give --{what} values or both --{what}-min and --{what}-max"))),
        (false, _, _) => Err(invalid(format!("--{what} cannot be combined with --{what}-min/--{what}-max"))),
    }
}

fn require(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| invalid(format!("--{name} is required")))
}

pub fn cmd_eval(a: &EvalArgs, tol: Option<f64>) -> Result<Vec<OutputRecord>> {
    let xs = grid_values(&a.grid.values, a.grid.min, a.grid.max, a.grid.points, false, "x")?;
    let mut policy = SeriesPolicy::default();
    if let Some(t) = tol {
        policy.rel_tol = t;
    }
    policy.validate()?;
    let mut out = Vec::with_capacity(xs.len());
    match a.function {
        Function::Ml | Function::Gml => {
            let gamma = if matches!(a.function, Function::Ml) { 1.0 } else { a.gamma };
            let spec = MLSpec::new(require(a.alpha, "alpha")?, require(a.beta, "beta")?, gamma)?;
            let target = if matches!(a.function, Function::Ml) { "ml" } else { "gml" };
            for x in xs {
                let e = special::gml_with(&spec, x, &policy)?;
                let mut r = OutputRecord::new("eval", target, x, e.value, e.route.into())
                    .param("alpha", spec.alpha)
                    .param("beta", spec.beta);
                if target == "gml" {
                    r = r.param("gamma", gamma);
                }
                out.push(r);
            }
        }
        Function::Wright => {
            let lam = require(a.lam, "lam")?;
            let beta = require(a.beta, "beta")?;
            for x in xs {
                let e = special::wright(lam, beta, x)?;
                out.push(OutputRecord::new("eval", "wright", x, e.value, e.route.into()).param("lam", lam).param("beta", beta));
            }
        }
    }
    Ok(out)
}

fn times(t: &Times) -> Result<Vec<f64>> {
    let v = grid_values(&t.values, t.min, t.max, t.points, t.log, "t")?;
    if let Some(bad) = v.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        return Err(invalid(format!("times must be finite and nonnegative, got {bad}")));
    }
    Ok(v)
}

/// Densities are stated for `t > 0`; a grid starting at zero is moved to this.
const T_EPS: f64 = 1e-9;

fn positive(ts: Vec<f64>) -> Vec<f64> {
    ts.into_iter().map(|t| t.max(T_EPS)).collect()
}

pub fn cmd_dist(a: &DistArgs) -> Result<Vec<OutputRecord>> {
    let spec = ProcessSpec::new(a.n, a.nu, a.lambda)?;
    let base = |target: &str, x: f64, y: f64, p: Provenance| {
        OutputRecord::new("dist", target, x, y, p)
            .param("n", spec.n as f64)
            .param("nu", spec.nu)
            .param("lambda", spec.lambda)
    };
    let mut out = Vec::new();
    match &a.quantity {
        Quantity::Pmf { times: ts, k, k_max } => {
            let ts = times(ts)?;
            match (k, k_max) {
                (Some(_), Some(_)) => return Err(invalid("give either --k or --k-max")),
                (_, Some(k_max)) => {
                    for &t in &ts {
                        for k in 0..=*k_max {
                            let e = models::pmf_eval(&spec, k, t)?;
                            out.push(base("pmf", k as f64, e.value, e.route.into()).param("t", t));
                        }
                    }
                }
                (k, None) => {
                    let k = k.unwrap_or(0);
                    for &t in &ts {
                        let e = models::pmf_eval(&spec, k, t)?;
                        out.push(base("pmf", t, e.value, e.route.into()).param("k", k as f64));
                    }
                }
            }
        }
        Quantity::Wtpdf { times: ts, k } => {
            for t in positive(times(ts)?) {
                let e = models::waiting_time_pdf_eval(&spec, *k, t)?;
                out.push(base("wtpdf", t, e.value, e.route.into()).param("k", *k as f64));
            }
        }
        Quantity::Wtcdf { times: ts, k } => {
            for t in times(ts)? {
                let e = models::waiting_time_cdf_eval(&spec, *k, t)?;
                out.push(base("wtcdf", t, e.value, e.route.into()).param("k", *k as f64));
            }
        }
        Quantity::Iapdf { times: ts } => {
            for t in positive(times(ts)?) {
                let e = models::waiting_time_pdf_eval(&spec, 1, t)?;
                out.push(base("iapdf", t, e.value, e.route.into()));
            }
        }
        Quantity::Pgf { t, u } => {
            let us = if u.is_empty() { linspace(0.1, 1.0, 10, false)? } else { u.clone() };
            for u in us {
                let e = models::pgf_eval(&spec, u, *t)?;
                out.push(base("pgf", u, e.value, e.route.into()).param("t", *t));
            }
        }
        Quantity::Renewal { times: ts } => {
            for t in times(ts)? {
                let e = models::renewal_mean_eval(&spec, t)?;
                out.push(base("renewal", t, e.value, e.route.into()));
            }
        }
        Quantity::Moments { times: ts, r } => {
            for t in times(ts)? {
                let v = models::factorial_moment(&spec, *r, t)?;
                out.push(base("moments", t, v, Provenance::Closed).param("r", *r as f64));
            }
        }
    }
    Ok(out)
}

pub fn cmd_simulate(a: &SimArgs, seed: u64) -> Result<Vec<OutputRecord>> {
    let spec = ProcessSpec::new(a.n, a.nu, a.lambda)?;
    let config = SimConfig::new(seed, a.paths, a.horizon)?;
    let probes = if a.probe.is_empty() { vec![a.horizon] } else { a.probe.clone() };
    if let Some(bad) = probes.iter().find(|t| !(**t >= 0.0 && **t <= a.horizon)) {
        return Err(invalid(format!("probe time {bad} must lie in [0, horizon]")));
    }
    let paths = simulate::simulate_paths(&spec, &config)?;
    if let Some(path) = &a.out {
        let f = File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(f);
        simulate::write_paths_jsonl(&paths, &mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    let rng = format!("{RNG_ALGORITHM}; seed={seed}");
    let n = a.paths as f64;
    let mut out = Vec::new();
    let tag = |mut r: OutputRecord, t: f64| {
        r = r
            .param("n", spec.n as f64)
            .param("nu", spec.nu)
            .param("lambda", spec.lambda)
            .param("t", t)
            .param("paths", n);
        r.meta.rng = Some(rng.clone());
        r
    };
    for &t in &probes {
        let emp = simulate::empirical_pmf(&paths, t)?;
        for (k, &q) in emp.iter().enumerate() {
            let mut r = OutputRecord::new("simulate", "pmf", k as f64, q, Provenance::Simulation)
                .std_err((q * (1.0 - q) / n).sqrt());
            if let Ok(p) = models::pmf(&spec, k as u64, t) {
                r = r.reference(p);
            }
            out.push(tag(r, t));
        }
        let (mean, se) = simulate::empirical_mean(&paths, t);
        let mut r = OutputRecord::new("simulate", "mean", t, mean, Provenance::Simulation).std_err(se);
        if spec.n <= 2 {
            if let Ok(m) = models::renewal_mean(&spec, t) {
                r = r.reference(m);
            }
        }
        out.push(tag(r, t));
    }
    Ok(out)
}

fn cmd_verify(a: &VerifyArgs, tol: Option<f64>, format: Format, out: &mut dyn Write) -> Result<i32> {
    if a.list {
        for c in verify::suite::CHECKS {
            let aliases = if c.aliases.is_empty() { String::new() } else { format!(" (alias: {})", c.aliases.join(", ")) };
            writeln!(out, "{}{aliases}: {}", c.name, c.summary).map_err(io_err)?;
        }
        return Ok(EXIT_OK);
    }
    let reports = verify::run_suite(&a.only, tol)?;
    write_reports(&reports, format, out)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", reports.len());
        Ok(EXIT_CHECK_FAILED)
    } else {
        Ok(EXIT_OK)
    }
}

fn write_reports(reports: &[CheckReport], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, reports).map_err(|e| io_err(e.into()))?;
            writeln!(out).map_err(io_err)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in reports {
                w.serialize(r).map_err(|e| io_err(e.into()))?;
            }
            w.flush().map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)
}
