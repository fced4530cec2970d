//! Command-line front end for the `awb` binary.
//!
//! ```text
//! awb eval     [--params FILE | --d D] [--n 1,0] --z 2,3 [--hat] [--mu] [--kappa] [--j J]
//! awb operator [--params FILE | --d D] [--form shift|delta|z-family|n-family] [--j J] [--at z1,z2]
//! awb verify   [--params FILE] [--d D] [--checks all] [--seed S] [--grid M] [--out FILE]
//! ```
//!
//! All output is pretty-printed JSON with a fixed key order; rationals are
//! strings `p/q` and floats carry 17 significant digits. `verify` exits with
//! 0 when every report passes, 1 when some fail and 2 on an unknown check.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::aw::{mv_poly, normalize_phat, MultiIndex, QParams, QParamsJson};
use crate::duality::{build_ln_family, kappa_eigenvalue};
use crate::error::{Error, Result};
use crate::harness::{self, fmt_f64, SuiteConfig};
use crate::qdiff::{build_ld_delta_form, build_ld_shift_form, build_lz_family, mu_eigenvalue, QDiffOperator};
use crate::rational::{self, Rat};

/// Environment variable overriding the default seed of `verify`.
pub const SEED_ENV: &str = "AWB_SEED";

#[derive(Debug, Parser)]
#[command(name = "awb", version, about = "Multivariable Askey-Wilson polynomials and their bispectral operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate P, P̂ and the eigenvalues at a point.
    Eval(EvalArgs),
    /// Dump an operator's support and coefficients.
    Operator(OperatorArgs),
    /// Run verification checks and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    /// JSON file `{"d": 2, "s": "1/2", "alpha": ["2", "1/3", ...]}`.
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Dimension, when no parameter file is given.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub params: ParamsArgs,
    /// Multi-index, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    /// Point `z`, comma separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub z: Vec<String>,
    /// Also report the normalised value P̂.
    #[arg(long)]
    pub hat: bool,
    /// Report the z-side eigenvalue mu_j (needs --n and --j).
    #[arg(long)]
    pub mu: bool,
    /// Report the n-side eigenvalue kappa_j (needs --j).
    #[arg(long)]
    pub kappa: bool,
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Shift,
    Delta,
    ZFamily,
    NFamily,
}

#[derive(Debug, Args)]
pub struct OperatorArgs {
    #[command(flatten)]
    pub params: ParamsArgs,
    #[arg(long, value_enum, default_value = "shift")]
    pub form: Form,
    /// Family member for `z-family` and `n-family`.
    #[arg(long)]
    pub j: Option<usize>,
    /// Evaluate the coefficients at this point (a lattice point for `n-family`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub at: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Parameters for the exact checks.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Check names, comma separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub checks: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Points per dimension for the numeric checks.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Reads a parameter file. Rationals may be strings or JSON numbers.
pub fn read_params(path: &std::path::Path) -> Result<QParams> {
    let text = std::fs::read_to_string(path)?;
    parse_params(&text)
}

pub fn parse_params(text: &str) -> Result<QParams> {
    let v: Value = serde_json::from_str(text)?;
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
    let as_text = |x: &Value| match x {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    };
    let d = field("d")?
        .as_u64()
        .ok_or_else(|| Error::Parse("d must be a non-negative integer".into()))? as usize;
    let s = as_text(field("s")?)?;
    let alpha = field("alpha")?
        .as_array()
        .ok_or_else(|| Error::Parse("alpha must be an array".into()))?
        .iter()
        .map(as_text)
        .collect::<Result<Vec<_>>>()?;
    QParams::from_json(&QParamsJson { d, s, alpha })
}

fn resolve_params(args: &ParamsArgs, fallback_dim: Option<usize>) -> Result<QParams> {
    if let Some(p) = &args.params {
        let params = read_params(p)?;
        if let Some(d) = args.d {
            if d != params.d() {
                return Err(Error::DimensionMismatch(d, params.d()));
            }
        }
        return Ok(params);
    }
    let d = args
        .d
        .or(fallback_dim)
        .ok_or_else(|| Error::InvalidArgument("give --params or --d".into()))?;
    harness::exact_params(d)
}

fn parse_rats(items: &[String]) -> Result<Vec<Rat>> {
    items.iter().map(|s| rational::parse(s)).collect()
}

fn need_j(j: Option<usize>, d: usize) -> Result<usize> {
    let j = j.ok_or_else(|| Error::InvalidArgument("--j is required".into()))?;
    if j == 0 || j > d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    Ok(j)
}

#[derive(Serialize)]
struct ExactValue {
    exact: String,
    float: String,
}

fn value(v: &Rat) -> ExactValue {
    ExactValue { exact: v.to_string(), float: fmt_f64(rational::to_f64(v)) }
}

#[derive(Serialize)]
struct EvalOutput {
    params: QParamsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<Vec<u32>>,
    z: Vec<String>,
    x: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phat: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kappa: Option<ExactValue>,
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let z = parse_rats(&args.z)?;
    let params = resolve_params(&args.params, Some(z.len()))?;
    let d = params.d();
    if z.len() != d {
        return Err(Error::DimensionMismatch(z.len(), d));
    }
    let n = match &args.n {
        Some(n) if n.len() != d => return Err(Error::DimensionMismatch(n.len(), d)),
        Some(n) => Some(MultiIndex(n.clone())),
        None => None,
    };
    if n.is_none() && !args.kappa {
        return Err(Error::InvalidArgument("nothing to evaluate: give --n or --kappa".into()));
    }
    let p = n.as_ref().map(|n| mv_poly(&params, n, &z)).transpose()?;
    let phat = match (&n, &p, args.hat) {
        (Some(n), Some(p), true) => Some(value(&normalize_phat(&params, n, p)?)),
        _ => None,
    };
    let mu = if args.mu {
        let n = n.as_ref().ok_or_else(|| Error::InvalidArgument("--mu needs --n".into()))?;
        Some(value(&mu_eigenvalue(&params, n, need_j(args.j, d)?)?))
    } else {
        None
    };
    let kappa = if args.kappa {
        Some(value(&kappa_eigenvalue(&params, &z, need_j(args.j, d)?)?))
    } else {
        None
    };
    let x = z
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if v == &Rat::from_integer(0.into()) {
                Err(Error::ZeroComponent(k + 1))
            } else {
                Ok(((v + v.recip()) / rational::int(2)).to_string())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let output = EvalOutput {
        params: params.to_json(),
        n: args.n.clone(),
        z: z.iter().map(|v| v.to_string()).collect(),
        x,
        j: args.j,
        value: p.as_ref().map(value),
        phat,
        mu,
        kappa,
    };
    write_json(out, &output)
}

#[derive(Serialize)]
struct CoefficientValue {
    shift: Vec<i32>,
    value: String,
}

#[derive(Serialize)]
struct BoundaryJson {
    shift: Vec<i32>,
    coordinate: usize,
    divisible: bool,
}

#[derive(Serialize)]
struct OperatorOutput {
    params: QParamsJson,
    form: Form,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    support: Vec<Vec<i32>>,
    terms: Vec<crate::qdiff::OperatorTermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<Vec<BoundaryJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<CoefficientValue>>,
}

pub fn cmd_operator(args: &OperatorArgs, out: &mut dyn Write) -> Result<()> {
    let params = resolve_params(&args.params, None)?;
    let d = params.d();
    let mut boundary = None;
    let op: QDiffOperator = match args.form {
        Form::Shift => build_ld_shift_form(&params)?,
        Form::Delta => build_ld_delta_form(&params)?,
        Form::ZFamily => build_lz_family(&params)?.swap_remove(need_j(args.j, d)? - 1),
        Form::NFamily => {
            let ln = build_ln_family(&params)?.swap_remove(need_j(args.j, d)? - 1);
            boundary = Some(
                ln.boundary()
                    .iter()
                    .map(|b| BoundaryJson { shift: b.shift.clone(), coordinate: b.coordinate, divisible: b.divisible })
                    .collect(),
            );
            ln.operator().clone()
        }
    };
    let (at, values) = match &args.at {
        None => (None, None),
        Some(items) => {
            let pt = parse_rats(items)?;
            if pt.len() != d {
                return Err(Error::DimensionMismatch(pt.len(), d));
            }
            let point: Vec<Rat> = if args.form == Form::NFamily {
                // lattice point n, coefficients live at u = q^n
                pt.iter()
                    .map(|k| {
                        if !k.is_integer() || k < &Rat::from_integer(0.into()) {
                            return Err(Error::InvalidArgument(format!("{k} is not a lattice coordinate")));
                        }
                        let e: i64 = k.to_integer().try_into().map_err(|_| Error::InvalidArgument("too large".into()))?;
                        Ok(params.base().pow(e))
                    })
                    .collect::<Result<_>>()?
            } else {
                pt.clone()
            };
            let vals = op
                .coefficients_at(&point)?
                .into_iter()
                .map(|(shift, v)| CoefficientValue { shift, value: v.to_string() })
                .collect();
            (Some(pt.iter().map(|v| v.to_string()).collect()), Some(vals))
        }
    };
    let output = OperatorOutput {
        params: params.to_json(),
        form: args.form,
        j: args.j,
        support: op.support(),
        terms: op.to_json(),
        boundary,
        at,
        values,
    };
    write_json(out, &output)
}

/// Seed from the flag, then the environment, then the built-in default.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV}={v:?} is not a 64-bit integer"))),
        Err(_) => Ok(harness::DEFAULT_SEED),
    }
}

/// Runs the suite and writes the report; returns whether everything passed.
pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let params = args.params.as_deref().map(read_params).transpose()?;
    let d = params.as_ref().map_or(args.d, |p| p.d());
    let config = SuiteConfig {
        checks: args.checks.iter().map(|c| c.trim().to_string()).collect(),
        d,
        seed: resolve_seed(args.seed)?,
        params,
        grid: args.grid,
    };
    let reports = harness::run_suite(&config)?;
    let text = harness::reports_to_json(&reports)? + "\n";
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(harness::all_pass(&reports))
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(v)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Parses `args` (including the program name) and dispatches; returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out).map(|_| true),
        Command::Operator(a) => cmd_operator(a, out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "awb: {e}");
            match e {
                Error::UnknownCheck(_) => 2,
                _ => 1,
            }
        }
    }
}
