//! Verification suite: quadrature, exact and numeric checks, and a seeded
//! orchestrator producing machine-readable reports.

pub mod checks;
pub mod quadrature;

use std::str::FromStr;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::aw::QParams;
use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rat};

pub use checks::*;
pub use quadrature::{default_points, inner_product, QuadratureGrid, DEFAULT_EPS};

/// How `observed` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Exact rationals (or integers), compared as values.
    Exact,
    /// Floats within `tolerance`.
    Tolerance,
    /// `observed` is an exact rational that must not vanish; `expected` is ignored.
    Nonzero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params_digest: String,
    pub inputs: Value,
    pub comparison: Comparison,
    pub observed: String,
    pub expected: String,
    pub tolerance: Option<String>,
    pub pass: bool,
}

/// Floats are written with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl CheckReport {
    pub fn exact(name: &str, params: &QParams, inputs: Value, observed: &Rat, expected: &Rat) -> Self {
        CheckReport {
            name: name.into(),
            params_digest: params.digest(),
            inputs,
            comparison: Comparison::Exact,
            observed: observed.to_string(),
            expected: expected.to_string(),
            tolerance: None,
            pass: observed == expected,
        }
    }

    /// Exact check where the observed value is a count of failures.
    pub fn count(name: &str, params: &QParams, inputs: Value, failures: usize) -> Self {
        Self::exact(name, params, inputs, &int(failures as i64), &Rat::zero())
    }

    pub fn numeric(name: &str, params: &QParams, inputs: Value, observed: f64, expected: f64, tol: f64) -> Self {
        // round-trip through the stored strings so `pass` is recomputable bit for bit
        let (o, e, t) = (fmt_f64(observed), fmt_f64(expected), fmt_f64(tol));
        let mut r = CheckReport {
            name: name.into(),
            params_digest: params.digest(),
            inputs,
            comparison: Comparison::Tolerance,
            observed: o,
            expected: e,
            tolerance: Some(t),
            pass: false,
        };
        r.pass = r.recompute_pass();
        r
    }

    pub fn nonzero(name: &str, params: &QParams, inputs: Value, observed: &Rat) -> Self {
        CheckReport {
            name: name.into(),
            params_digest: params.digest(),
            inputs,
            comparison: Comparison::Nonzero,
            observed: observed.to_string(),
            expected: "nonzero".into(),
            tolerance: None,
            pass: !observed.is_zero(),
        }
    }

    /// Recomputes the verdict from the stored strings alone.
    pub fn recompute_pass(&self) -> bool {
        match self.comparison {
            Comparison::Exact => match (rational::parse(&self.observed), rational::parse(&self.expected)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            },
            Comparison::Nonzero => rational::parse(&self.observed).map_or(false, |a| !a.is_zero()),
            Comparison::Tolerance => {
                let parse = |s: &Option<String>| s.as_deref().and_then(|s| f64::from_str(s).ok());
                match (
                    f64::from_str(&self.observed).ok(),
                    f64::from_str(&self.expected).ok(),
                    parse(&self.tolerance),
                ) {
                    (Some(o), Some(e), Some(t)) => (o - e).abs() <= t,
                    _ => false,
                }
            }
        }
    }
}

/// Exact rationals as JSON strings.
pub fn rat_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Every check the suite knows, in run order.
pub const ALL_CHECKS: [&str; 11] = [
    "sears",
    "triangularity",
    "form-equivalence",
    "commutativity",
    "eigen-z",
    "duality",
    "bispectral-n",
    "boundary",
    "orthogonality",
    "self-adjointness",
    "qracah-exact",
];

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub checks: Vec<String>,
    pub d: usize,
    pub seed: u64,
    /// Parameters for the exact checks; a generic set is used when absent.
    pub params: Option<QParams>,
    /// Points per dimension for the numeric checks.
    pub grid: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checks: ALL_CHECKS.iter().map(|s| s.to_string()).collect(),
            d: 2,
            seed: DEFAULT_SEED,
            params: None,
            grid: None,
        }
    }
}

impl SuiteConfig {
    /// Expands `all` and rejects unknown names.
    pub fn resolved_checks(&self) -> Result<Vec<&'static str>> {
        let mut out: Vec<&'static str> = Vec::new();
        for c in &self.checks {
            let names: Vec<&'static str> = if c == "all" {
                ALL_CHECKS.to_vec()
            } else {
                vec![*ALL_CHECKS
                    .iter()
                    .find(|k| **k == c.as_str())
                    .ok_or_else(|| Error::UnknownCheck(c.clone()))?]
            };
            for n in names {
                if !out.contains(&n) {
                    out.push(n);
                }
            }
        }
        Ok(out)
    }
}

/// Generic exact parameters: `alpha = (2, 1/3, 1/5, 1/7, ..., 3/2)`, `s = 1/2`.
pub fn exact_params(d: usize) -> Result<QParams> {
    const ODD: [i64; 6] = [3, 5, 7, 11, 13, 17];
    if d == 0 || d > ODD.len() - 1 {
        return Err(Error::InvalidArgument(format!("unsupported dimension {d}")));
    }
    let mut alpha = vec![int(2)];
    alpha.extend(ODD[..=d].iter().map(|&p| rat(1, p)));
    alpha.push(rat(3, 2));
    QParams::new(d, rat(1, 2), alpha)
}

/// Parameters satisfying the weight-positivity chain:
/// `alpha = (2, 1/2, 1/4, ..., 2^{-(d+1)}, 1)`, `q = 1/4`.
pub fn orthogonality_params(d: usize) -> Result<QParams> {
    let mut alpha = vec![int(2)];
    alpha.extend((1..=d + 1).map(|k| rat(1, 1 << k)));
    alpha.push(int(1));
    let p = QParams::new(d, rat(1, 2), alpha)?;
    p.check_chain()?;
    Ok(p)
}

/// Parameters with `alpha_{d+2} = alpha_{d+1} q^N`, finite q-Racah support:
/// `alpha = (3/2, 1/2, 1/4, ..., 2^{-(d+1)}, 2^{-(d+1)} q^N)`.
pub fn racah_params(d: usize, big_n: u32) -> Result<QParams> {
    let mut alpha = vec![rat(3, 2)];
    alpha.extend((1..=d + 1).map(|k| rat(1, 1 << k)));
    let last = alpha[d + 1].clone() * rational::pow(&rat(1, 4), big_n as i64);
    alpha.push(last);
    QParams::new(d, rat(1, 2), alpha)
}

/// Uniform random rational point with numerators and denominators bounded by
/// `bound`; components with `z_j^2 = q^m`, `|m| <= 6`, are redrawn.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, q: &Rat, bound: i64) -> Vec<Rat> {
    let special: Vec<Rat> = (-6..=6).map(|m| rational::pow(q, m)).collect();
    let mut rejected = 0usize;
    let z = (0..d)
        .map(|_| loop {
            let v = rational::random_nonzero(rng, bound);
            if special.contains(&(&v * &v)) {
                rejected += 1;
                continue;
            }
            break v;
        })
        .collect();
    if rejected > 0 {
        log::debug!("random_point: redrew {rejected} special components");
    }
    z
}

/// Draws points until `f` succeeds without hitting a pole.
pub fn sample_point<T, F>(rng: &mut ChaCha8Rng, d: usize, q: &Rat, mut f: F) -> Result<(Vec<Rat>, T)>
where
    F: FnMut(&[Rat]) -> Result<T>,
{
    const BOUND: i64 = 1000;
    const TRIES: usize = 1000;
    for attempt in 0..TRIES {
        let z = random_point(rng, d, q, BOUND);
        match f(&z) {
            Ok(v) => {
                if attempt > 0 {
                    log::debug!("sample_point: {attempt} points rejected at poles");
                }
                return Ok((z, v));
            }
            Err(Error::Pole { shift }) => log::debug!("sample_point: pole at shift {shift:?}, redrawing"),
            Err(Error::ZeroComponent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidArgument("no pole-free point found".into()))
}

/// Runs the configured checks. Each check gets its own generator derived from
/// the seed, runs on its own thread, and its reports keep their position in
/// run order, so output is independent of scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let names = config.resolved_checks()?;
    if names.is_empty() {
        return Ok(Vec::new());
    }
    let d = config.d;
    let exact = match &config.params {
        Some(p) => {
            if p.d() != d {
                return Err(Error::DimensionMismatch(p.d(), d));
            }
            p.clone()
        }
        None => exact_params(d)?,
    };
    let results: Vec<Result<Vec<CheckReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| {
                let exact = &exact;
                let idx = ALL_CHECKS.iter().position(|c| *c == name).unwrap() as u64;
                let seed = config.seed ^ (idx + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    run_check(name, exact, d, config.grid, &mut rng)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::InvalidArgument("check panicked".into()))))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn run_check(
    name: &str,
    exact: &QParams,
    d: usize,
    grid: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckReport>> {
    let small = if d >= 3 { 3 } else { 4 };
    match name {
        "sears" => sears_check(rng, 100, 6),
        "triangularity" => triangularity_check(exact, small),
        "form-equivalence" => form_equivalence_check(exact, rng, 50),
        "commutativity" => commutativity_check(exact, rng, 50, if d >= 3 { 3 } else { 5 }),
        "eigen-z" => eigen_z_check(exact, rng, 20, 3),
        "duality" => duality_check(exact, 2),
        "bispectral-n" => bispectral_n_check(exact, rng, 10, 3),
        "boundary" => boundary_check(exact, 3),
        "orthogonality" => {
            let p = orthogonality_params(d)?;
            let g = QuadratureGrid::new(&p, grid.unwrap_or(default_points(d)), DEFAULT_EPS)?;
            orthogonality_suite(&p, &g, if d >= 3 { 1 } else { 2 }, DEFAULT_EPS)
        }
        "self-adjointness" => {
            let p = orthogonality_params(d)?;
            let g = QuadratureGrid::new(&p, grid.unwrap_or(default_points(d)), DEFAULT_EPS)?;
            self_adjointness_suite(&p, &g, rng, 10)
        }
        "qracah-exact" => qracah_suite(d, 4, 2),
        other => Err(Error::UnknownCheck(other.into())),
    }
}

/// True when every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Canonical JSON for a report list.
pub fn reports_to_json(reports: &[CheckReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Parse(e.to_string()))
}
