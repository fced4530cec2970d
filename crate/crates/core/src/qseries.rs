//! q-shifted factorials and terminating basic hypergeometric series.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rat};

/// The base `q`, always carried together with a square root `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBase {
    s: Rat,
    q: Rat,
    real_mode: bool,
}

impl QBase {
    /// `q = s^2` with no further restriction beyond `q != 0, 1`.
    pub fn new(s: Rat) -> Result<Self> {
        let q = &s * &s;
        if q.is_zero() || q.is_one() {
            return Err(Error::InvalidArgument(format!(
                "q = s^2 must differ from 0 and 1 (s = {s})"
            )));
        }
        Ok(QBase {
            s,
            q,
            real_mode: false,
        })
    }

    /// `q = s^2` with `0 < q < 1` enforced.
    pub fn real(s: Rat) -> Result<Self> {
        let mut b = Self::new(s)?;
        if b.q >= Rat::one() {
            return Err(Error::InvalidArgument(format!(
                "real mode needs 0 < q < 1, got q = {}",
                b.q
            )));
        }
        b.real_mode = true;
        Ok(b)
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn real_mode(&self) -> bool {
        self.real_mode
    }

    /// `q^k`.
    pub fn pow(&self, k: i64) -> Rat {
        rational::pow(&self.q, k)
    }

    /// `q^{k/2} = s^k`.
    pub fn half_pow(&self, k: i64) -> Rat {
        rational::pow(&self.s, k)
    }

    pub fn q_f64(&self) -> f64 {
        rational::to_f64(&self.q)
    }
}

/// `(a;q)_n = prod_{k<n} (1 - a q^k)`.
pub fn q_pochhammer(a: &Rat, n: usize, base: &QBase) -> Rat {
    let mut out = Rat::one();
    let mut t = a.clone();
    for _ in 0..n {
        out *= Rat::one() - &t;
        t *= base.q();
    }
    out
}

/// `(a_1, ..., a_k; q)_n`.
pub fn q_pochhammer_many(params: &[Rat], n: usize, base: &QBase) -> Rat {
    params
        .iter()
        .map(|a| q_pochhammer(a, n, base))
        .fold(Rat::one(), |acc, x| acc * x)
}

/// Number of factors kept when truncating `(a;q)_inf`: the least `N` with
/// `|a| q^N < eps`.
pub fn truncation_index(abs_a: f64, q: f64, eps: f64) -> usize {
    let mut n = 0usize;
    let mut t = abs_a;
    while t >= eps {
        t *= q;
        n += 1;
        assert!(n < 1_000_000, "truncation did not terminate");
    }
    n
}

fn check_inf_args(eps: f64, base: &QBase) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if !base.real_mode() {
        return Err(Error::InvalidArgument(
            "infinite products need a real-mode base with 0 < q < 1".into(),
        ));
    }
    Ok(())
}

/// Truncated `(a;q)_inf`.
pub fn q_pochhammer_inf(a: f64, eps: f64, base: &QBase) -> Result<f64> {
    check_inf_args(eps, base)?;
    q_pochhammer_inf_f64(a, base.q_f64(), eps)
}

/// Float-level truncated `(a;q)_inf` for any `0 < q < 1`.
pub fn q_pochhammer_inf_f64(a: f64, q: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidArgument(format!("need 0 < q < 1, got {q}")));
    }
    let n = truncation_index(a.abs(), q, eps);
    let mut out = 1.0;
    let mut t = a;
    for _ in 0..n {
        out *= 1.0 - t;
        t *= q;
    }
    Ok(out)
}

/// Truncated `(a;q)_inf` for a complex argument.
pub fn q_pochhammer_inf_complex(a: Complex64, eps: f64, base: &QBase) -> Result<Complex64> {
    check_inf_args(eps, base)?;
    let q = base.q_f64();
    let n = truncation_index(a.norm(), q, eps);
    let mut out = Complex64::new(1.0, 0.0);
    let mut t = a;
    for _ in 0..n {
        out *= Complex64::new(1.0, 0.0) - t;
        t *= q;
    }
    Ok(out)
}

/// Argument lists of a terminating `4phi3` whose first upper parameter is
/// `q^{-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phi43Spec {
    pub k: usize,
    pub upper: [Rat; 4],
    pub lower: [Rat; 3],
}

impl Phi43Spec {
    /// Builds the spec with `upper[0] = q^{-k}`.
    pub fn terminating(k: usize, upper: [Rat; 3], lower: [Rat; 3], base: &QBase) -> Self {
        let [a, b, c] = upper;
        Phi43Spec {
            k,
            upper: [base.pow(-(k as i64)), a, b, c],
            lower,
        }
    }

    pub fn validate(&self, base: &QBase) -> Result<()> {
        if &self.upper[0] * base.pow(self.k as i64) != Rat::one() {
            return Err(Error::InvalidArgument(format!(
                "first upper parameter must be q^-{}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Exact value of the terminating sum
/// `sum_{j<=k} (upper;q)_j / (lower;q)_j * z^j / (q;q)_j`.
pub fn phi43(spec: &Phi43Spec, z_arg: &Rat, base: &QBase) -> Result<Rat> {
    spec.validate(base)?;
    let q = base.q();
    let mut total = Rat::one();
    let mut term = Rat::one();
    let mut up: Vec<Rat> = spec.upper.to_vec();
    let mut lo: Vec<Rat> = spec.lower.to_vec();
    let mut qj = q.clone();
    for j in 1..=spec.k {
        let mut num = z_arg.clone();
        for u in &up {
            num *= Rat::one() - u;
        }
        let mut den = Rat::one() - &qj;
        for (i, l) in lo.iter().enumerate() {
            let f = Rat::one() - l;
            if f.is_zero() {
                return Err(Error::SeriesPole {
                    param: format!("lower[{i}]"),
                    term: j,
                });
            }
            den *= f;
        }
        term = term * num / den;
        total += &term;
        for u in up.iter_mut() {
            *u *= q;
        }
        for l in lo.iter_mut() {
            *l *= q;
        }
        qj *= q;
    }
    Ok(total)
}

/// Both sides of the iterated Sears transformation
///
/// `(d,e,f;q)_k 4phi3(q^-k,a,b,c; d,e,f; q,q)
///   = c^k (b, a q^{1-k}/e, e/c; q)_k
///     4phi3(q^-k, q^{1-k}/e, d/b, f/b; q^{1-k}/b, a q^{1-k}/e, c q^{1-k}/e; q,q)`
///
/// valid when `abc = def q^{k-1}`.
#[allow(clippy::too_many_arguments)]
pub fn sears_pair(
    k: usize,
    a: &Rat,
    b: &Rat,
    c: &Rat,
    d: &Rat,
    e: &Rat,
    f: &Rat,
    base: &QBase,
) -> Result<(Rat, Rat)> {
    let ki = k as i64;
    if a * b * c != d * e * f * base.pow(ki - 1) {
        return Err(Error::UnbalancedParameters);
    }
    for (name, v) in [("b", b), ("c", c), ("e", e)] {
        if v.is_zero() {
            return Err(Error::InvalidArgument(format!("{name} must be nonzero")));
        }
    }
    let q = base.q();
    let lhs_spec = Phi43Spec::terminating(
        k,
        [a.clone(), b.clone(), c.clone()],
        [d.clone(), e.clone(), f.clone()],
        base,
    );
    let lhs = q_pochhammer_many(&[d.clone(), e.clone(), f.clone()], k, base)
        * phi43(&lhs_spec, q, base)?;

    let q1k = base.pow(1 - ki);
    let rhs_spec = Phi43Spec::terminating(
        k,
        [&q1k / e, d / b, f / b],
        [&q1k / b, a * &q1k / e, c * &q1k / e],
        base,
    );
    let rhs = rational::pow(c, ki)
        * q_pochhammer_many(&[b.clone(), a * &q1k / e, e / c], k, base)
        * phi43(&rhs_spec, q, base)?;
    Ok((lhs, rhs))
}

/// Right side of `(s;q)_k = (-s)^k q^{k(k-1)/2} (q^{1-k}/s; q)_k`.
pub fn reversed_pochhammer(s: &Rat, k: usize, base: &QBase) -> Rat {
    let ki = k as i64;
    rational::pow(&-s.clone(), ki) * base.pow(ki * (ki - 1) / 2) * q_pochhammer(&(base.pow(1 - ki) / s), k, base)
}
