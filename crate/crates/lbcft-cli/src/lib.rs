//! Command-line front end: `eval`, `verify` and `scan`.
//!
//! Exit codes: 0 success, 1 verification failures, 2 evaluation
//! (domain/pole) error, 64 usage error, 74 I/O error.

pub mod complex;
pub mod target;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use lbcft::verify::{run_suite, Cx, TolMap};
use lbcft::{Error, LiouvilleParams, QuadSettings};

use complex::{format_complex, parse_complex};
use target::{assign_flag, check_params, evaluate, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_EVAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

const COMPLEX_HELP: &str = "Complex values are written re, imj or re+imj (e.g. 1.2, 0.5j, 1.2-0.5j); \
lists are comma separated.";

#[derive(Debug, Parser)]
#[command(name = "lbcft", version, about = "Boundary Liouville structure constants", after_help = COMPLEX_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity.
    #[command(after_help = COMPLEX_HELP)]
    Eval(EvalArgs),
    /// Run the seeded identity suite and write a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a quantity on a linear grid of one parameter and write CSV.
    #[command(after_help = COMPLEX_HELP)]
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Parameter flags shared by `eval` and `scan`.
#[derive(Debug, Args)]
pub struct ParamFlags {
    /// Coupling γ in (0, 2).
    #[arg(long)]
    pub gamma: f64,
    /// β, or β₁,β₂,β₃.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// σ, or σ₁,σ₂[,σ₃].
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Bulk momentum α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Argument of dgamma / dsine.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Kernel weights α′ (four for fusion, one for modular).
    #[arg(long = "alpha-prime", allow_hyphen_values = true)]
    pub alpha_prime: Option<String>,
    /// Kernel momentum P.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Kernel momentum P′.
    #[arg(long = "p-prime", allow_hyphen_values = true)]
    pub p_prime: Option<String>,
    /// Boundary positions s₁,s₂[,s₃] for corr3 (s₃ omitted: at infinity).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Bulk position z (Im z > 0) for corrbb.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Boundary position for corrbb.
    #[arg(long, allow_hyphen_values = true)]
    pub s0: Option<String>,
    /// Any schema parameter by name, e.g. --set beta2=1.1+0.2j (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    pub set: Vec<String>,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-11)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub params: ParamFlags,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Values of γ to sample (γ = √2 is skipped).
    #[arg(long = "gamma-list", value_delimiter = ',', default_values_t = [0.9, 1.2, 1.6])]
    pub gamma_list: Vec<f64>,
    /// Random three-point samples per γ.
    #[arg(long, default_value_t = 10)]
    pub cases: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// One tolerance for every identity (default: per-identity tolerances).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output path for the JSON report (default: stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Write elapsed_s = 0 so reports are byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// Parameter to vary (a schema key such as beta, beta1, sigma2, x).
    #[arg(long)]
    pub vary: String,
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    /// Number of grid points, endpoints included (at least 2).
    #[arg(long)]
    pub count: usize,
    #[command(flatten)]
    pub params: ParamFlags,
    /// Output CSV path (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// A failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Eval(Error),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Eval(_) => EXIT_EVAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

fn cx(z: C) -> serde_json::Value {
    json!({"re": z.re, "im": z.im})
}

/// Machine-readable form of an evaluation error.
pub fn error_json(e: &Error) -> serde_json::Value {
    let witness = match e {
        Error::PoleCollision {
            left,
            right,
            left_seed,
            right_seed,
            n,
            m,
        } => Some(json!({
            "n": n, "m": m, "left_seed": cx(*left_seed), "right_seed": cx(*right_seed),
            "left": cx(*left), "right": cx(*right),
        })),
        Error::PoleEncountered { what, at, n, m } | Error::ZeroEncountered { what, at, n, m } => {
            Some(json!({"what": what, "at": cx(*at), "n": n, "m": m}))
        }
        _ => None,
    };
    let mut v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    if let Some(w) = witness {
        v["error"]["witness"] = w;
    }
    v
}

fn parse_list(s: &str) -> Result<Vec<C>, CliError> {
    s.split(',')
        .map(|x| parse_complex(x).map_err(CliError::Usage))
        .collect()
}

fn collect_params(target: Target, f: &ParamFlags) -> Result<BTreeMap<String, C>, CliError> {
    let mut out = BTreeMap::new();
    let flags = [
        ("beta", &f.beta),
        ("sigma", &f.sigma),
        ("alpha", &f.alpha),
        ("x", &f.x),
        ("alpha-prime", &f.alpha_prime),
        ("p", &f.p),
        ("p-prime", &f.p_prime),
        ("s", &f.s),
        ("z", &f.z),
        ("s0", &f.s0),
    ];
    for (name, val) in flags {
        if let Some(v) = val {
            assign_flag(target, name, &parse_list(v)?, &mut out).map_err(CliError::Usage)?;
        }
    }
    for kv in &f.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got '{}'", kv)))?;
        if !target.accepts(k) {
            return Err(CliError::Usage(format!(
                "'{}' is not a parameter of {}",
                k,
                target.name()
            )));
        }
        out.insert(k.to_string(), parse_complex(v).map_err(CliError::Usage)?);
    }
    Ok(out)
}

fn settings(tol: f64) -> Result<QuadSettings, CliError> {
    QuadSettings::new(
        tol,
        QuadSettings::default().abs_tol,
        QuadSettings::default().max_subdivisions,
    )
    .map_err(|e| CliError::Usage(e.to_string()))
}

fn liouville(gamma: f64) -> Result<LiouvilleParams, CliError> {
    LiouvilleParams::new(gamma).map_err(CliError::Eval)
}

#[derive(Serialize)]
struct EvalOutput {
    target: &'static str,
    params: BTreeMap<String, Cx>,
    value: Cx,
    err_est: f64,
}

/// `eval`: prints the value on `out`.
pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut params = collect_params(a.target, &a.params)?;
    check_params(a.target, &params).map_err(CliError::Usage)?;
    let s = settings(a.params.tol)?;
    let p = liouville(a.params.gamma)?;
    let e = evaluate(a.target, &params, &p, &s).map_err(CliError::Eval)?;
    params.insert("gamma".into(), C::new(p.gamma, 0.0));
    let io = |e: io::Error| CliError::Io(e.to_string());
    match a.format {
        Format::Json => {
            let o = EvalOutput {
                target: a.target.name(),
                params: params.into_iter().map(|(k, v)| (k, v.into())).collect(),
                value: e.value.into(),
                err_est: e.err_est,
            };
            let s = serde_json::to_string(&o).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(out, "{}", s).map_err(io)
        }
        Format::Text => writeln!(
            out,
            "{} = {}  (err_est {:e})",
            a.target.name(),
            format_complex(e.value),
            e.err_est
        )
        .map_err(io),
    }
}

/// `verify`: writes the report; returns whether every check passed.
pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    if a.cases == 0 {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let tols = match a.tol {
        Some(t) if t > 0.0 => TolMap::uniform(t),
        Some(t) => return Err(CliError::Usage(format!("--tol must be positive, got {}", t))),
        None => TolMap::default(),
    };
    // open the report first so a bad path fails before the suite runs
    let mut file = match &a.report {
        Some(path) => Some(BufWriter::new(
            File::create(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?,
        )),
        None => None,
    };
    let mut reports = run_suite(&a.gamma_list, a.cases, a.seed, &tols);
    if a.no_timing {
        reports.iter_mut().for_each(|r| r.elapsed_s = 0.0);
    }
    let json = serde_json::to_string_pretty(&reports).map_err(|e| CliError::Io(e.to_string()))?;
    let io = |e: io::Error| CliError::Io(e.to_string());
    match file.as_mut() {
        Some(f) => writeln!(f, "{}", json).and_then(|_| f.flush()).map_err(io)?,
        None => writeln!(out, "{}", json).map_err(io)?,
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        let _ = writeln!(
            err,
            "FAIL {} rel_err={:e}{}",
            r.identity_name,
            r.rel_err,
            r.error.as_deref().map(|e| format!(" ({})", e)).unwrap_or_default()
        );
    }
    let _ = writeln!(err, "{} checks, {} failed", reports.len(), failed.len());
    Ok(failed.is_empty())
}

/// One CSV row of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub param: C,
    pub value: Option<C>,
    pub err_est: Option<f64>,
    pub status: &'static str,
}

/// Inclusive linear grid with exact endpoints.
pub fn linear_grid(from: C, to: C, count: usize) -> Vec<C> {
    (0..count)
        .map(|i| {
            if i + 1 == count {
                to
            } else {
                from + (to - from) * (i as f64 / (count - 1) as f64)
            }
        })
        .collect()
}

/// Evaluate the scan in grid order.
pub fn scan_rows(a: &ScanArgs) -> Result<Vec<ScanRow>, CliError> {
    if a.count < 2 {
        return Err(CliError::Usage("--count must be at least 2".into()));
    }
    if !a.target.accepts(&a.vary) {
        return Err(CliError::Usage(format!(
            "'{}' is not a parameter of {}",
            a.vary,
            a.target.name()
        )));
    }
    let fixed = collect_params(a.target, &a.params)?;
    if fixed.contains_key(&a.vary) {
        return Err(CliError::Usage(format!("'{}' is both varied and fixed", a.vary)));
    }
    let mut probe = fixed.clone();
    probe.insert(a.vary.clone(), C::new(0.0, 0.0));
    check_params(a.target, &probe).map_err(CliError::Usage)?;
    let s = settings(a.params.tol)?;
    let p = liouville(a.params.gamma)?;
    let grid = linear_grid(
        parse_complex(&a.from).map_err(CliError::Usage)?,
        parse_complex(&a.to).map_err(CliError::Usage)?,
        a.count,
    );
    if a.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let rows = pool.install(|| {
        grid.par_iter()
            .map(|&x| {
                let mut params = fixed.clone();
                params.insert(a.vary.clone(), x);
                match evaluate(a.target, &params, &p, &s) {
                    Ok(e) => ScanRow {
                        param: x,
                        value: Some(e.value),
                        err_est: Some(e.err_est),
                        status: "ok",
                    },
                    Err(e) => ScanRow {
                        param: x,
                        value: None,
                        err_est: None,
                        status: if e.is_pole() { "pole" } else { "error" },
                    },
                }
            })
            .collect()
    });
    Ok(rows)
}

/// Write rows as `param,value_re,value_im,err_est,status` CSV.
pub fn write_csv(rows: &[ScanRow], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let f = |x: f64| serde_json::to_string(&x).unwrap_or_default();
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["param", "value_re", "value_im", "err_est", "status"])
        .map_err(io)?;
    for r in rows {
        let (re, im, ee) = match (r.value, r.err_est) {
            (Some(v), Some(e)) => (f(v.re), f(v.im), f(e)),
            _ => (String::new(), String::new(), String::new()),
        };
        w.write_record([format_complex(r.param), re, im, ee, r.status.to_string()])
            .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

/// `scan`: writes CSV to `--output` or `out`.
pub fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = scan_rows(a)?;
    match &a.output {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
            write_csv(&rows, &mut BufWriter::new(f))
        }
        None => write_csv(&rows, out),
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let json_errors = !matches!(&cli.command, Command::Eval(a) if a.format == Format::Text);
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &mut out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, &mut out, &mut err),
        Command::Scan(a) => cmd_scan(a, &mut out).map(|_| true),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURES,
        Err(e) => {
            let _ = match &e {
                CliError::Eval(ev) if json_errors => writeln!(err, "{}", error_json(ev)),
                CliError::Eval(ev) => writeln!(err, "error: {}: {}", ev.kind(), ev),
                CliError::Usage(m) => writeln!(err, "usage error: {}", m),
                CliError::Io(m) => writeln!(err, "I/O error: {}", m),
            };
            e.code()
        }
    }
}
