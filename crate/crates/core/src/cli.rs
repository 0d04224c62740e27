//! Command-line front end of the `hyperinv` binary.
//!
//! Every subcommand takes its parameters either as flags or from a TOML file
//! given by `--config` (same keys, flags win). Output is JSON with numbers as
//! 17-significant-digit strings and exact rationals as `"p/q"`, or CSV.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exact::rational;
use crate::laguerre::{build_laguerre_pair, build_laguerre_pair_exact, limit_gap, verify_laguerre_exact};
use crate::matrix::dn::{degenerate_integer_failures, random_comparison};
use crate::matrix::{
    build_a, build_b, float_roundtrip, roundtrip_error, verify_family_criterion, verify_inverse_exact, Precision, TriMatrix,
};
use crate::queue::{egf_e_contour, egf_e_real, ogf_e, solve_e, QueueParams};
use crate::scalar::{parse_rational, rational_to_f64, Field};
use crate::series::sigma::{ode_check_sigma, sigma_coeff, NuBranch, NuParameter};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hyperinv", version, about = "Hypergeometric triangular inversion pairs, generating functions and the queueing solver")]
pub struct Cli {
    /// TOML file with `key = value` parameters for the chosen subcommand;
    /// may also set `format` and `output`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit A(x, nu) and/or B(x, nu). CSV columns: matrix,n,k,re,im (float) or matrix,n,k,value (exact).
    Matrix(MatrixArgs),
    /// Roundtrip S -> A S -> B (A S). CSV columns: n,S,T,S_back.
    Invert(InvertArgs),
    /// Exact product, Laguerre, ODE, D_N and criterion suites; exit 4 on any failure.
    /// CSV columns: suite,passed,detail.
    Verify(VerifyArgs),
    /// sigma_b coefficients and the radius R(nu). CSV columns: b,sigma_b.
    Sigma(SigmaArgs),
    /// Sample generating functions of E on a grid. CSV columns: z_re,z_im,value_re,value_im.
    Gf(GfArgs),
    /// Solve the queueing system. CSV columns: b,E_b,residual_b.
    QueueSolve(QueueArgs),
    /// Laguerre pair and limit gaps. CSV columns: matrix,n,k,value (or nu,gap with --gap-nu).
    Laguerre(LaguerreArgs),
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MatrixArgs {
    #[arg(long)]
    pub n_max: Option<String>,
    /// Real, complex (`a+bi`) or, with --exact, rational (`p/q`).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// a, b or both.
    #[arg(long)]
    pub which: Option<String>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub exact: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct InvertArgs {
    #[arg(long)]
    pub n_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Comma-separated sequence; random in [-1, 1] from --seed when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub seq: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Relative error above which the run fails with exit code 4.
    #[arg(long)]
    pub tol: Option<String>,
    /// double or double-double (default) for the float transforms.
    #[arg(long)]
    pub precision: Option<String>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub exact: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[arg(long)]
    pub n_max: Option<String>,
    #[arg(long)]
    pub ode_order: Option<String>,
    #[arg(long)]
    pub dn_cases: Option<String>,
    #[arg(long)]
    pub dn_tol: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SigmaArgs {
    /// Rational (`p/q`, exact coefficients) or complex (`a+bi`).
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long)]
    pub b_max: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GfArgs {
    /// ogf, egf-real or egf-contour.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub u_minus: Option<String>,
    #[arg(long)]
    pub u_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Exponent of the profile R; setting it allows 0 < nu < 1.
    #[arg(long, allow_hyphen_values = true)]
    pub profile_exponent: Option<String>,
    /// Comma-separated sample points, each real or `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct QueueArgs {
    #[arg(long)]
    pub u_minus: Option<String>,
    #[arg(long)]
    pub u_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub profile_exponent: Option<String>,
    #[arg(long)]
    pub b_max: Option<String>,
}

#[derive(Args, Debug, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct LaguerreArgs {
    #[arg(long)]
    pub n_max: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub exact: Option<String>,
    /// Comma-separated nu values at which to report the limit gap.
    #[arg(long)]
    pub gap_nu: Option<String>,
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub enum RunError {
    Config(String),
    Precondition(String),
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => EXIT_CONFIG,
            RunError::Precondition(_) => EXIT_PRECONDITION,
            RunError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Precondition(m) => write!(f, "precondition violated: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::QuadratureFailure { .. } => RunError::Numerical(e.to_string()),
            _ => RunError::Precondition(e.to_string()),
        }
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

/// Merged parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub params: BTreeMap<String, String>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn toml_to_string(v: &toml::Value) -> RunResult<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => format!("{f:?}"),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => items.iter().map(toml_to_string).collect::<RunResult<Vec<_>>>()?.join(","),
        other => return Err(RunError::Config(format!("unsupported value {other}"))),
    })
}

fn command_parts(cmd: &Command) -> (&'static str, Value) {
    let (name, v) = match cmd {
        Command::Matrix(a) => ("matrix", serde_json::to_value(a)),
        Command::Invert(a) => ("invert", serde_json::to_value(a)),
        Command::Verify(a) => ("verify", serde_json::to_value(a)),
        Command::Sigma(a) => ("sigma", serde_json::to_value(a)),
        Command::Gf(a) => ("gf", serde_json::to_value(a)),
        Command::QueueSolve(a) => ("queue-solve", serde_json::to_value(a)),
        Command::Laguerre(a) => ("laguerre", serde_json::to_value(a)),
    };
    (name, v.expect("argument structs serialize"))
}

impl RunConfig {
    /// Merges flags over the optional config file and validates key names.
    pub fn resolve(cli: &Cli) -> RunResult<Self> {
        let (command, flags) = command_parts(&cli.command);
        let flags = flags.as_object().expect("struct serializes to an object").clone();
        let valid: Vec<&str> = flags.keys().map(String::as_str).collect();

        let mut params = BTreeMap::new();
        let mut format = None;
        let mut output = None;
        if let Some(path) = &cli.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
            let table: toml::Table =
                toml::from_str(&text).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
            for (key, value) in &table {
                let key = key.replace('_', "-");
                match key.as_str() {
                    "format" => {
                        let s = toml_to_string(value)?;
                        format = Some(
                            Format::from_str(&s, true).map_err(|_| RunError::Config(format!("unknown format {s}")))?,
                        );
                    }
                    "output" => output = Some(PathBuf::from(toml_to_string(value)?)),
                    k if valid.contains(&k) => {
                        params.insert(key, toml_to_string(value)?);
                    }
                    _ => {
                        return Err(RunError::Config(format!(
                            "unknown key `{key}` for `{command}`; valid keys: {}",
                            valid.join(", ")
                        )))
                    }
                }
            }
        }
        for (key, value) in flags {
            if let Value::String(s) = value {
                params.insert(key, s);
            }
        }
        Ok(Self {
            command,
            params,
            format: cli.format.or(format).unwrap_or(Format::Json),
            output: cli.output.clone().or(output),
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    fn parsed<T>(&self, key: &str, default: T, parse: impl Fn(&str) -> Option<T>) -> RunResult<T> {
        match self.raw(key) {
            None => Ok(default),
            Some(s) => parse(s.trim()).ok_or_else(|| RunError::Config(format!("cannot parse `{key}` = `{s}`"))),
        }
    }

    fn required<T>(&self, key: &str, parse: impl Fn(&str) -> Option<T>) -> RunResult<T> {
        let s = self.raw(key).ok_or_else(|| RunError::Config(format!("missing required key `{key}`")))?;
        parse(s.trim()).ok_or_else(|| RunError::Config(format!("cannot parse `{key}` = `{s}`")))
    }

    fn usize(&self, key: &str, default: usize) -> RunResult<usize> {
        self.parsed(key, default, |s| s.parse().ok())
    }

    fn f64(&self, key: &str, default: f64) -> RunResult<f64> {
        self.parsed(key, default, parse_real)
    }

    fn flag(&self, key: &str) -> RunResult<bool> {
        self.parsed(key, false, |s| s.parse().ok())
    }
}

/// Real number, accepting `p/q` as well as decimal notation.
fn parse_real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite()).or_else(|| parse_rational(s).map(|r| rational_to_f64(&r)))
}

fn parse_complex(s: &str) -> Option<Complex64> {
    parse_real(s).map(|v| Complex64::new(v, 0.0)).or_else(|| {
        let c = Complex64::from_str(&s.replace(' ', "")).ok()?;
        (c.re.is_finite() && c.im.is_finite()).then_some(c)
    })
}

fn parse_list<T>(s: &str, item: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    s.split(',').map(|p| item(p.trim())).collect()
}

/// `%.16e`: 17 significant digits, fixed layout.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom() == &1.into() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn json_complex(c: Complex64) -> Value {
    if c.im == 0.0 {
        Value::String(fmt_real(c.re))
    } else {
        json!({ "re": fmt_real(c.re), "im": fmt_real(c.im) })
    }
}

fn json_rows<S>(m: &TriMatrix<S>, f: impl Fn(&S) -> Value) -> Value
where
    S: crate::scalar::Scalar,
{
    Value::Array((1..=m.n_max()).map(|n| Value::Array(m.row(n).iter().map(&f).collect())).collect())
}

/// Rendered output: a JSON document and the equivalent CSV table.
struct Artifact {
    json: Value,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
}

fn header(command: &str, config: &RunConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    let params: Map<String, Value> = config.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    m.insert("params".into(), Value::Object(params));
    m
}

fn run_matrix(cfg: &RunConfig) -> RunResult<Artifact> {
    let n_max = cfg.usize("n-max", 5)?;
    if n_max == 0 {
        return Err(RunError::Precondition("n-max must be at least 1".into()));
    }
    let which = cfg.raw("which").unwrap_or("both").to_string();
    let (want_a, want_b) = match which.as_str() {
        "a" => (true, false),
        "b" => (false, true),
        "both" => (true, true),
        other => return Err(RunError::Config(format!("`which` must be a, b or both, got {other}"))),
    };
    let mut doc = header("matrix", cfg);
    let mut rows = Vec::new();
    let exact = cfg.flag("exact")?;
    let names = [("A", want_a), ("B", want_b)];
    if exact {
        let x = cfg.parsed("x", rational(0, 1), parse_rational)?;
        let nu = cfg.parsed("nu", rational(1, 2), parse_rational)?;
        doc.insert("mode".into(), "exact".into());
        for (name, want) in names {
            if !want {
                continue;
            }
            let m = if name == "A" { build_a(n_max, &x, &nu) } else { build_b(n_max, &x, &nu) };
            doc.insert(name.into(), json_rows(&m, |v| Value::String(fmt_rational(v))));
            rows.extend(m.iter().map(|(n, k, v)| vec![name.into(), n.to_string(), k.to_string(), fmt_rational(v)]));
        }
        return Ok(Artifact { json: Value::Object(doc), csv_header: vec!["matrix", "n", "k", "value"], csv_rows: rows });
    }
    let x = cfg.parsed("x", Complex64::new(0.0, 0.0), parse_complex)?;
    let nu = cfg.parsed("nu", Complex64::new(0.5, 0.0), parse_complex)?;
    doc.insert("mode".into(), "float".into());
    for (name, want) in names {
        if !want {
            continue;
        }
        let m = if name == "A" { build_a(n_max, &x, &nu) } else { build_b(n_max, &x, &nu) };
        doc.insert(name.into(), json_rows(&m, |v| json_complex(*v)));
        rows.extend(
            m.iter().map(|(n, k, v)| vec![name.into(), n.to_string(), k.to_string(), fmt_real(v.re), fmt_real(v.im)]),
        );
    }
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["matrix", "n", "k", "re", "im"], csv_rows: rows })
}

fn roundtrip<S: Field>(n_max: usize, x: &S, nu: &S, seq: &[S]) -> RunResult<(Vec<S>, Vec<S>)> {
    let t = build_a(n_max, x, nu).transform(seq)?;
    let back = build_b(n_max, x, nu).transform(&t)?;
    Ok((t, back))
}

fn run_invert(cfg: &RunConfig) -> RunResult<Artifact> {
    let n_max = cfg.usize("n-max", 20)?;
    if n_max == 0 {
        return Err(RunError::Precondition("n-max must be at least 1".into()));
    }
    let seed = cfg.parsed("seed", 1u64, |s| s.parse().ok())?;
    let mut doc = header("invert", cfg);
    let mut csv_rows = Vec::new();
    if cfg.flag("exact")? {
        let x = cfg.required("x", parse_rational)?;
        let nu = cfg.required("nu", parse_rational)?;
        let seq: Vec<BigRational> = match cfg.raw("seq") {
            Some(s) => parse_list(s, parse_rational).ok_or_else(|| RunError::Config(format!("cannot parse seq `{s}`")))?,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n_max).map(|_| rational(rng.gen_range(-1000..=1000), 1000)).collect()
            }
        };
        let (t, back) = roundtrip(n_max, &x, &nu, &seq)?;
        let exact_ok = back[..n_max] == seq[..n_max];
        doc.insert("mode".into(), "exact".into());
        doc.insert("S".into(), seq[..n_max].iter().map(|v| Value::String(fmt_rational(v))).collect());
        doc.insert("T".into(), t.iter().map(|v| Value::String(fmt_rational(v))).collect());
        doc.insert("S_back".into(), back.iter().map(|v| Value::String(fmt_rational(v))).collect());
        doc.insert("recovered".into(), Value::Bool(exact_ok));
        for i in 0..n_max {
            csv_rows.push(vec![(i + 1).to_string(), fmt_rational(&seq[i]), fmt_rational(&t[i]), fmt_rational(&back[i])]);
        }
        if !exact_ok {
            return Err(RunError::Numerical("exact roundtrip did not recover the sequence".into()));
        }
    } else {
        let x = cfg.required("x", parse_complex)?;
        let nu = cfg.required("nu", parse_complex)?;
        let tol = cfg.f64("tol", 1e-8)?;
        let seq: Vec<Complex64> = match cfg.raw("seq") {
            Some(s) => parse_list(s, parse_complex).ok_or_else(|| RunError::Config(format!("cannot parse seq `{s}`")))?,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n_max).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect()
            }
        };
        let precision = match cfg.raw("precision").unwrap_or("double-double") {
            "double" => Precision::Double,
            "double-double" => Precision::DoubleDouble,
            other => return Err(RunError::Config(format!("`precision` must be double or double-double, got {other}"))),
        };
        if seq.len() < n_max {
            return Err(RunError::Precondition(format!("seq has {} terms, n-max is {n_max}", seq.len())));
        }
        let t = build_a(n_max, &x, &nu).transform(&seq)?;
        let back = float_roundtrip(n_max, x, nu, &seq, precision)?;
        let err = roundtrip_error(&seq[..n_max], &back);
        doc.insert("mode".into(), "float".into());
        doc.insert("precision".into(), cfg.raw("precision").unwrap_or("double-double").into());
        doc.insert("S".into(), seq[..n_max].iter().map(|v| json_complex(*v)).collect());
        doc.insert("T".into(), t.iter().map(|v| json_complex(*v)).collect());
        doc.insert("S_back".into(), back.iter().map(|v| json_complex(*v)).collect());
        doc.insert("max_relative_error".into(), Value::String(fmt_real(err)));
        for i in 0..n_max {
            csv_rows.push(vec![(i + 1).to_string(), fmt_real(seq[i].re), fmt_real(t[i].re), fmt_real(back[i].re)]);
        }
        if !(err <= tol) {
            return Err(RunError::Numerical(format!("roundtrip error {err:e} exceeds {tol:e}")));
        }
    }
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["n", "S", "T", "S_back"], csv_rows })
}

fn run_verify(cfg: &RunConfig) -> RunResult<(Artifact, bool)> {
    let n_max = cfg.usize("n-max", 10)?;
    let ode_order = cfg.usize("ode-order", 30)?;
    let dn_cases = cfg.usize("dn-cases", 1000)?;
    let dn_tol = cfg.f64("dn-tol", 1e-12)?;
    let seed = cfg.parsed("seed", 1u64, |s| s.parse().ok())?;
    if n_max == 0 {
        return Err(RunError::Precondition("n-max must be at least 1".into()));
    }
    let mut suites: Vec<(&str, bool, Value)> = Vec::new();

    let report = verify_inverse_exact(n_max);
    let detail = json!({
        "entries_checked": report.entries_checked,
        "off_diagonal_nonzero": usize::from(report.offending.is_some()),
        "first_offending": report.offending.as_ref().map(|(n, k, p)| format!("({n},{k}): {p}")),
    });
    suites.push(("inverse_exact", report.is_identity(), detail));

    let lag = verify_laguerre_exact(n_max);
    let detail = json!({
        "entries_checked": lag.entries_checked,
        "first_offending": lag.offending.as_ref().map(|(n, k, p)| format!("({n},{k}): {p}")),
    });
    suites.push(("laguerre_exact", lag.is_identity(), detail));

    let mut ode_ok = true;
    let mut ode_detail = Map::new();
    for nu in [rational(-1, 2), rational(1, 3)] {
        let check = ode_check_sigma(ode_order, &nu);
        ode_ok &= check.holds();
        ode_detail.insert(
            fmt_rational(&nu),
            json!({ "order": check.order, "first_failure": check.failure.map(|(i, _, _)| i) }),
        );
    }
    suites.push(("ode", ode_ok, Value::Object(ode_detail)));

    let cmp = random_comparison(dn_cases, seed);
    let degenerate = degenerate_integer_failures(12);
    let dn_ok = cmp.worst_relative <= dn_tol && degenerate.is_empty();
    let (l, m, n) = cmp.worst_case;
    let detail = json!({
        "cases": cmp.cases,
        "worst_relative": fmt_real(cmp.worst_relative),
        "worst_case": { "lambda": json_complex(l), "mu": json_complex(m), "n": n },
        "tolerance": fmt_real(dn_tol),
        "degenerate_failures": degenerate.len(),
    });
    suites.push(("d_n", dn_ok, detail));

    let crit = verify_family_criterion(n_max);
    let detail = json!({ "first_offending": crit.as_ref().map(|(n, k, p)| format!("({n},{k}): {p}")) });
    suites.push(("criterion", crit.is_none(), detail));

    let all = suites.iter().all(|s| s.1);
    let mut doc = header("verify", cfg);
    let mut suite_map = Map::new();
    let mut csv_rows = Vec::new();
    for (name, ok, detail) in suites {
        csv_rows.push(vec![name.to_string(), ok.to_string(), detail.to_string()]);
        suite_map.insert(name.into(), json!({ "passed": ok, "detail": detail }));
    }
    doc.insert("suites".into(), Value::Object(suite_map));
    doc.insert("passed".into(), Value::Bool(all));
    Ok((Artifact { json: Value::Object(doc), csv_header: vec!["suite", "passed", "detail"], csv_rows }, all))
}

fn run_sigma(cfg: &RunConfig) -> RunResult<Artifact> {
    let b_max = cfg.usize("b-max", 20)?;
    let raw = cfg.raw("nu").unwrap_or("-1/2").to_string();
    let mut doc = header("sigma", cfg);
    let (nu_c, values): (Complex64, Vec<String>) = match parse_rational(raw.trim()) {
        Some(r) => {
            let vals = (1..=b_max).map(|b| fmt_rational(&sigma_coeff(b, &r))).collect();
            doc.insert("mode".into(), "exact".into());
            (Complex64::new(rational_to_f64(&r), 0.0), vals)
        }
        None => {
            let c = parse_complex(&raw).ok_or_else(|| RunError::Config(format!("cannot parse `nu` = `{raw}`")))?;
            doc.insert("mode".into(), "float".into());
            let vals = (1..=b_max)
                .map(|b| {
                    let v = sigma_coeff(b, &c);
                    if v.im == 0.0 {
                        fmt_real(v.re)
                    } else {
                        format!("{}{:+.16e}i", fmt_real(v.re), v.im)
                    }
                })
                .collect();
            (c, vals)
        }
    };
    let param = NuParameter::new(nu_c);
    let branch = match param.branch {
        NuBranch::Complement => "complement",
        NuBranch::Unit => "unit",
        NuBranch::AboveOne => "above-one",
    };
    doc.insert("radius".into(), Value::String(fmt_real(param.radius())));
    doc.insert("branch".into(), Value::String(branch.into()));
    doc.insert("sigma".into(), values.iter().cloned().map(Value::String).collect());
    let csv_rows = values.into_iter().enumerate().map(|(i, v)| vec![(i + 1).to_string(), v]).collect();
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["b", "sigma_b"], csv_rows })
}

fn queue_params(cfg: &RunConfig) -> RunResult<QueueParams> {
    let u_minus = cfg.required("u-minus", parse_real)?;
    let u_plus = cfg.required("u-plus", parse_real)?;
    let nu = cfg.required("nu", parse_real)?;
    let x = cfg.required("x", parse_real)?;
    Ok(match cfg.raw("profile-exponent") {
        Some(_) => {
            let p = cfg.required("profile-exponent", parse_real)?;
            QueueParams::synthetic(u_minus, u_plus, nu, x, p)?
        }
        None => QueueParams::new(u_minus, u_plus, nu, x)?,
    })
}

fn run_gf(cfg: &RunConfig) -> RunResult<Artifact> {
    let p = queue_params(cfg)?;
    let kind = cfg.raw("kind").unwrap_or("ogf").to_string();
    let eval: fn(Complex64, &QueueParams) -> crate::Result<Complex64> = match kind.as_str() {
        "ogf" => ogf_e,
        "egf-real" => egf_e_real,
        "egf-contour" => egf_e_contour,
        other => return Err(RunError::Config(format!("`kind` must be ogf, egf-real or egf-contour, got {other}"))),
    };
    let grid = cfg.required("z", |s| parse_list(s, parse_complex))?;
    let mut samples = Vec::new();
    let mut csv_rows = Vec::new();
    for z in grid {
        let v = eval(z, &p)?;
        samples.push(json!({ "z": json_complex(z), "value": json_complex(v) }));
        csv_rows.push(vec![fmt_real(z.re), fmt_real(z.im), fmt_real(v.re), fmt_real(v.im)]);
    }
    let mut doc = header("gf", cfg);
    doc.insert("kind".into(), Value::String(kind));
    doc.insert("samples".into(), Value::Array(samples));
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["z_re", "z_im", "value_re", "value_im"], csv_rows })
}

fn run_queue(cfg: &RunConfig) -> RunResult<Artifact> {
    let p = queue_params(cfg)?;
    let b_max = cfg.usize("b-max", 15)?;
    if b_max == 0 {
        return Err(RunError::Precondition("b-max must be at least 1".into()));
    }
    let sol = solve_e(b_max, &p)?;
    let mut doc = header("queue-solve", cfg);
    doc.insert("E".into(), sol.e.iter().map(|&v| Value::String(fmt_real(v))).collect());
    doc.insert("K".into(), sol.k.iter().map(|&v| Value::String(fmt_real(v))).collect());
    doc.insert("residuals".into(), sol.residuals.iter().map(|&v| Value::String(fmt_real(v))).collect());
    doc.insert("max_residual".into(), Value::String(fmt_real(sol.max_residual())));
    doc.insert("path_gap".into(), Value::String(fmt_real(sol.path_gap)));
    let csv_rows = (0..b_max)
        .map(|i| vec![(i + 1).to_string(), fmt_real(sol.e[i]), fmt_real(sol.residuals[i])])
        .collect();
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["b", "E_b", "residual_b"], csv_rows })
}

fn run_laguerre(cfg: &RunConfig) -> RunResult<Artifact> {
    let n_max = cfg.usize("n-max", 5)?;
    if n_max == 0 {
        return Err(RunError::Precondition("n-max must be at least 1".into()));
    }
    let mut doc = header("laguerre", cfg);
    if let Some(s) = cfg.raw("gap-nu") {
        let nus = parse_list(s, parse_real).ok_or_else(|| RunError::Config(format!("cannot parse gap-nu `{s}`")))?;
        let x = cfg.f64("x", 0.3)?;
        let gaps: Vec<(f64, f64)> = nus.iter().map(|&nu| (nu, limit_gap(n_max, x, nu))).collect();
        doc.insert(
            "gaps".into(),
            gaps.iter().map(|&(nu, g)| json!({ "nu": fmt_real(nu), "gap": fmt_real(g) })).collect(),
        );
        let csv_rows = gaps.iter().map(|&(nu, g)| vec![fmt_real(nu), fmt_real(g)]).collect();
        return Ok(Artifact { json: Value::Object(doc), csv_header: vec!["nu", "gap"], csv_rows });
    }
    let mut csv_rows = Vec::new();
    if cfg.flag("exact")? {
        // entries as polynomials in x
        let pair = build_laguerre_pair_exact(n_max);
        for (name, m) in [("A_tilde", &pair.a_tilde), ("B_tilde", &pair.b_tilde)] {
            doc.insert(name.into(), json_rows(m, |v| Value::String(v.to_string())));
            csv_rows.extend(m.iter().map(|(n, k, v)| vec![name.into(), n.to_string(), k.to_string(), v.to_string()]));
        }
    } else {
        let x = cfg.f64("x", 0.3)?;
        let pair = build_laguerre_pair(n_max, &x);
        for (name, m) in [("A_tilde", &pair.a_tilde), ("B_tilde", &pair.b_tilde)] {
            doc.insert(name.into(), json_rows(m, |v| Value::String(fmt_real(*v))));
            csv_rows.extend(m.iter().map(|(n, k, v)| vec![name.into(), n.to_string(), k.to_string(), fmt_real(*v)]));
        }
    }
    Ok(Artifact { json: Value::Object(doc), csv_header: vec!["matrix", "n", "k", "value"], csv_rows })
}

fn render(artifact: &Artifact, format: Format) -> RunResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&artifact.json).expect("JSON values serialize");
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| RunError::Numerical(format!("CSV rendering failed: {e}"));
            w.write_record(&artifact.csv_header).map_err(io)?;
            for row in &artifact.csv_rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| RunError::Numerical(format!("CSV rendering failed: {e}")))
        }
    }
}

/// Executes one run; returns the exit status.
pub fn run(cfg: &RunConfig) -> RunResult<Vec<u8>> {
    let (artifact, ok) = match cfg.command {
        "matrix" => (run_matrix(cfg)?, true),
        "invert" => (run_invert(cfg)?, true),
        "verify" => run_verify(cfg)?,
        "sigma" => (run_sigma(cfg)?, true),
        "gf" => (run_gf(cfg)?, true),
        "queue-solve" => (run_queue(cfg)?, true),
        "laguerre" => (run_laguerre(cfg)?, true),
        other => unreachable!("unknown command {other}"),
    };
    let bytes = render(&artifact, cfg.format)?;
    if ok {
        Ok(bytes)
    } else {
        emit(cfg, &bytes)?;
        Err(RunError::Numerical("verification suite failed".into()))
    }
}

fn emit(cfg: &RunConfig, bytes: &[u8]) -> RunResult<()> {
    let res = match &cfg.output {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes),
    };
    res.map_err(|e| RunError::Config(format!("cannot write output: {e}")))
}

/// Caps the global rayon pool by `HYPERINV_THREADS` when set.
fn configure_threads() -> RunResult<()> {
    if let Ok(v) = std::env::var("HYPERINV_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| RunError::Config(format!("HYPERINV_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| RunError::Config(format!("cannot configure threads: {e}")))?;
    }
    Ok(())
}

/// Entry point used by the binary.
pub fn main_with(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|_| RunConfig::resolve(&cli)).and_then(|cfg| {
        let bytes = run(&cfg)?;
        emit(&cfg, &bytes)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hyperinv: {e}");
            e.exit_code()
        }
    }
}
