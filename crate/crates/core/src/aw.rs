//! Askey-Wilson polynomials in one and several variables, their weights and
//! norms, the normalised family `P̂`, and the q-Racah specialisation.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, XPoly};
use crate::qseries::{q_pochhammer, q_pochhammer_inf_complex, q_pochhammer_inf_f64, QBase};
use crate::rational::{self, Rat};

/// Dimension, base and the `d + 3` parameters `alpha_0, ..., alpha_{d+2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QParams {
    d: usize,
    base: QBase,
    alpha: Vec<Rat>,
}

/// Flat JSON form `{d, s, alpha}` with rationals as strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QParamsJson {
    pub d: usize,
    pub s: String,
    pub alpha: Vec<String>,
}

impl QParams {
    /// Picks the real-mode base automatically when `0 < q < 1`.
    pub fn new(d: usize, s: Rat, alpha: Vec<Rat>) -> Result<Self> {
        let base = match QBase::real(s.clone()) {
            Ok(b) => b,
            Err(_) => QBase::new(s)?,
        };
        Self::with_base(d, base, alpha)
    }

    pub fn with_base(d: usize, base: QBase, alpha: Vec<Rat>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if alpha.len() != d + 3 {
            return Err(Error::DimensionMismatch(alpha.len(), d + 3));
        }
        if let Some(j) = alpha.iter().position(|a| a.is_zero()) {
            return Err(Error::InvalidArgument(format!("alpha_{j} must be nonzero")));
        }
        Ok(QParams { d, base, alpha })
    }

    pub fn from_json(j: &QParamsJson) -> Result<Self> {
        let s = rational::parse(&j.s)?;
        let alpha = j.alpha.iter().map(|a| rational::parse(a)).collect::<Result<Vec<_>>>()?;
        Self::new(j.d, s, alpha)
    }

    pub fn to_json(&self) -> QParamsJson {
        QParamsJson {
            d: self.d,
            s: rational::fmt(self.base.s()),
            alpha: self.alpha.iter().map(rational::fmt).collect(),
        }
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(&self.to_json()).expect("params serialise");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn base(&self) -> &QBase {
        &self.base
    }

    pub fn q(&self) -> &Rat {
        self.base.q()
    }

    pub fn s(&self) -> &Rat {
        self.base.s()
    }

    /// `alpha_j`, `0 <= j <= d + 2`.
    pub fn alpha(&self, j: usize) -> &Rat {
        &self.alpha[j]
    }

    pub fn alphas(&self) -> &[Rat] {
        &self.alpha
    }

    /// `z_k` with the conventions `z_0 = alpha_0` and `z_{d+1} = alpha_{d+2}`.
    pub fn z_ext(&self, z: &[Rat], k: usize) -> Rat {
        if k == 0 {
            self.alpha[0].clone()
        } else if k == self.d + 1 {
            self.alpha[self.d + 2].clone()
        } else {
            z[k - 1].clone()
        }
    }

    /// Same parameters with `alpha_{d+2}` replaced.
    pub fn with_trailing(&self, t: Rat) -> Result<Self> {
        let mut alpha = self.alpha.clone();
        alpha[self.d + 2] = t;
        Self::with_base(self.d, self.base.clone(), alpha)
    }

    /// The chain constraints under which the weight is positive on the torus.
    pub fn chain_violation(&self) -> Option<String> {
        let d = self.d;
        let a: Vec<Rat> = self.alpha.iter().map(|x| x.abs()).collect();
        let bound = std::cmp::min(Rat::one(), &a[0] * &a[0]);
        if a[1] >= bound {
            return Some(format!("|alpha_1| = {} must be below min(1, |alpha_0|^2) = {}", a[1], bound));
        }
        for k in 1..=d {
            if a[k + 1] >= a[k] {
                return Some(format!("need |alpha_{}| < |alpha_{}|", k + 1, k));
            }
        }
        let lo = &a[d + 1] / &a[d];
        let hi = &a[d] / &a[d + 1];
        if !(lo < a[d + 2] && a[d + 2] < hi) {
            return Some(format!("|alpha_{}| = {} must lie in ({}, {})", d + 2, a[d + 2], lo, hi));
        }
        if !self.base.real_mode() {
            return Some("orthogonality needs 0 < q < 1".into());
        }
        None
    }

    pub fn satisfies_chain(&self) -> bool {
        self.chain_violation().is_none()
    }

    pub fn check_chain(&self) -> Result<()> {
        match self.chain_violation() {
            None => Ok(()),
            Some(m) => Err(Error::ConstraintViolation(m)),
        }
    }

    fn alpha_f64(&self) -> Vec<f64> {
        self.alpha.iter().map(rational::to_f64).collect()
    }
}

impl fmt::Display for QParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
        write!(f, "d={} s={} alpha=[{}]", self.d, self.base.s(), a.join(", "))
    }
}

/// Multi-index `n` in `N_0^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(n: Vec<u32>) -> Self {
        MultiIndex(n)
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `N_k = n_1 + ... + n_k`, with `N_0 = 0`.
    pub fn partial(&self, k: usize) -> i64 {
        self.0[..k].iter().map(|&x| x as i64).sum()
    }

    pub fn total(&self) -> i64 {
        self.partial(self.0.len())
    }

    /// All indices of dimension `d` with `|n| <= max_total`, ordered by total
    /// degree and then lexicographically.
    pub fn all_up_to(d: usize, max_total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for t in 0..=max_total {
            out.extend(Self::of_total(d, t));
        }
        out
    }

    /// All indices of dimension `d` with `|n| = total`, lexicographic order.
    pub fn of_total(d: usize, total: u32) -> Vec<MultiIndex> {
        fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if cur.len() + 1 == d {
                cur.push(left);
                out.push(MultiIndex(cur.clone()));
                cur.pop();
                return;
            }
            for v in 0..=left {
                cur.push(v);
                rec(d, left - v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        rec(d, total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Lattice point `0 <= y_1 <= ... <= y_d <= N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RacahPoint {
    pub y: Vec<u32>,
    pub big_n: u32,
}

impl RacahPoint {
    pub fn new(y: Vec<u32>, big_n: u32) -> Result<Self> {
        let ok = y.windows(2).all(|w| w[0] <= w[1]) && y.last().map_or(true, |&l| l <= big_n);
        if !ok {
            return Err(Error::InvalidArgument(format!("{y:?} is not a chain below {big_n}")));
        }
        Ok(RacahPoint { y, big_n })
    }

    /// Every monotone chain of length `d` in `0..=N`.
    pub fn chains(d: usize, big_n: u32) -> Vec<RacahPoint> {
        fn rec(d: usize, lo: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<RacahPoint>) {
            if cur.len() == d {
                out.push(RacahPoint { y: cur.clone(), big_n: n });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(d, v, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, 0, big_n, &mut Vec::new(), &mut out);
        out
    }

    /// `y_k` with `y_0 = 0` and `y_{d+1} = N`.
    pub fn y_ext(&self, k: usize) -> i64 {
        if k == 0 {
            0
        } else if k == self.y.len() + 1 {
            self.big_n as i64
        } else {
            self.y[k - 1] as i64
        }
    }
}

/// One-dimensional Askey-Wilson polynomial `p_n(x; a, b, c, d)` at
/// `x = (z + 1/z)/2`.
///
/// The `(ab, ac, ad; q)_n` prefactor is distributed into the sum, so the
/// result is defined for every parameter choice with `a != 0`.
pub fn aw_poly_1d(n: usize, a: &Rat, b: &Rat, c: &Rat, d: &Rat, z: &Rat, base: &QBase) -> Result<Rat> {
    if a.is_zero() {
        return Err(Error::InvalidArgument("a must be nonzero".into()));
    }
    if z.is_zero() {
        return Err(Error::ZeroComponent(1));
    }
    let q = base.q();
    let abcd = a * b * c * d;
    let upper = [base.pow(-(n as i64)), &abcd * base.pow(n as i64 - 1), a * z, a / z];
    let lower = [a * b, a * c, a * d];
    let mut total = Rat::zero();
    let mut head = Rat::one();
    let mut qk = Rat::one();
    for k in 0..=n {
        if k > 0 {
            for u in &upper {
                head *= Rat::one() - u * base.pow(k as i64 - 1);
            }
            head *= q;
            head /= Rat::one() - base.pow(k as i64);
            qk *= q;
        }
        if head.is_zero() {
            break;
        }
        let mut tail = head.clone();
        for l in &lower {
            tail *= q_pochhammer(&(l * &qk), n - k, base);
        }
        total += tail;
    }
    Ok(total / rational::pow(a, n as i64))
}

fn laurent_poch(x: &LaurentPoly, n: usize, base: &QBase) -> LaurentPoly {
    let one = LaurentPoly::one(x.dim());
    let mut out = one.clone();
    let mut qi = Rat::one();
    for _ in 0..n {
        out = &out * &(&one - &x.scale(&qi));
        qi *= base.q();
    }
    out
}

/// `p_n` with Laurent-polynomial parameters; `a` and `z` must be single terms.
pub fn aw_poly_laurent(
    n: usize,
    a: &LaurentPoly,
    b: &LaurentPoly,
    c: &LaurentPoly,
    d: &LaurentPoly,
    z: &LaurentPoly,
    base: &QBase,
) -> Result<LaurentPoly> {
    let ainv = a
        .monomial_inverse()
        .ok_or_else(|| Error::InvalidArgument("parameter a must be a single nonzero term".into()))?;
    let zinv = z
        .monomial_inverse()
        .ok_or_else(|| Error::InvalidArgument("variable must be a single nonzero term".into()))?;
    let dim = a.dim();
    let q = base.q();
    let abcd = &(&(a * b) * c) * d;
    let upper = [
        LaurentPoly::constant(dim, base.pow(-(n as i64))),
        abcd.scale(&base.pow(n as i64 - 1)),
        a * z,
        a * &zinv,
    ];
    let lower = [a * b, a * c, a * d];
    let mut total = LaurentPoly::zero(dim);
    for k in 0..=n {
        let mut coef = Rat::one();
        for j in 0..k {
            coef *= q / (Rat::one() - base.pow(j as i64 + 1));
        }
        let mut t = LaurentPoly::constant(dim, coef);
        for u in &upper {
            t = &t * &laurent_poch(u, k, base);
            if t.is_zero() {
                break;
            }
        }
        if t.is_zero() {
            continue;
        }
        let qk = base.pow(k as i64);
        for l in &lower {
            t = &t * &laurent_poch(&l.scale(&qk), n - k, base);
        }
        total = &total + &t;
    }
    Ok(&total * &ainv.pow(n as u32))
}

fn check_index(params: &QParams, n: &MultiIndex) -> Result<()> {
    if n.dim() != params.d() {
        return Err(Error::DimensionMismatch(n.dim(), params.d()));
    }
    Ok(())
}

/// Parameters `(a, b, c, d)` of factor `j` as rationals, given `z_{j+1}`.
fn factor_params(params: &QParams, n: &MultiIndex, j: usize, z_next: &Rat) -> [Rat; 4] {
    let qn = params.base().pow(n.partial(j - 1));
    let a = params.alpha(j) * &qn;
    let b = &a / (params.alpha(0) * params.alpha(0));
    let r = params.alpha(j + 1) / params.alpha(j);
    [a, b, &r * z_next, r / z_next]
}

/// `P_d(n; x; alpha)` at the point `z`.
pub fn mv_poly(params: &QParams, n: &MultiIndex, z: &[Rat]) -> Result<Rat> {
    check_index(params, n)?;
    if z.len() != params.d() {
        return Err(Error::DimensionMismatch(z.len(), params.d()));
    }
    if let Some(i) = z.iter().position(|v| v.is_zero()) {
        return Err(Error::ZeroComponent(i + 1));
    }
    let mut out = Rat::one();
    for j in 1..=params.d() {
        let [a, b, c, d] = factor_params(params, n, j, &params.z_ext(z, j + 1));
        out *= aw_poly_1d(n.0[j - 1] as usize, &a, &b, &c, &d, &z[j - 1], params.base())?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// `P_d(n)` as a Laurent polynomial in `z_1, ..., z_d`.
pub fn mv_poly_laurent(params: &QParams, n: &MultiIndex) -> Result<LaurentPoly> {
    check_index(params, n)?;
    let dim = params.d();
    let mut out = LaurentPoly::one(dim);
    for j in 1..=dim {
        let qn = params.base().pow(n.partial(j - 1));
        let a = params.alpha(j) * &qn;
        let b = &a / (params.alpha(0) * params.alpha(0));
        let r = params.alpha(j + 1) / params.alpha(j);
        let (c, d) = if j == dim {
            let t = params.alpha(dim + 2);
            (LaurentPoly::constant(dim, &r * t), LaurentPoly::constant(dim, &r / t))
        } else {
            (
                LaurentPoly::var(dim, j + 1).scale(&r),
                LaurentPoly::var_pow(dim, j + 1, -1).scale(&r),
            )
        };
        let f = aw_poly_laurent(
            n.0[j - 1] as usize,
            &LaurentPoly::constant(dim, a),
            &LaurentPoly::constant(dim, b),
            &c,
            &d,
            &LaurentPoly::var(dim, j),
            params.base(),
        )?;
        out = &out * &f;
    }
    Ok(out)
}

/// `P_d(n)` in the `x`-basis.
pub fn mv_poly_symbolic(params: &QParams, n: &MultiIndex) -> Result<XPoly> {
    mv_poly_laurent(params, n)?.to_x_basis()
}

/// Truncated `h_n` of the one-dimensional orthogonality relation.
pub fn aw_norm_1d(n: usize, a: f64, b: f64, c: f64, d: f64, base: &QBase, eps: f64) -> Result<f64> {
    if !base.real_mode() {
        return Err(Error::InvalidArgument("norms need 0 < q < 1".into()));
    }
    if [a, b, c, d].iter().any(|v| v.abs() >= 1.0) {
        return Err(Error::ConstraintViolation("parameters must have modulus < 1".into()));
    }
    let q = base.q_f64();
    let inf = |x: f64| q_pochhammer_inf_f64(x, q, eps);
    let qn = q.powi(n as i32);
    let abcd = a * b * c * d;
    let mut fin = 1.0;
    for k in 0..n {
        fin *= 1.0 - abcd * q.powi(n as i32 - 1) * q.powi(k as i32);
    }
    let mut den = inf(q * qn)?;
    for p in [a * b, a * c, a * d, b * c, b * d, c * d] {
        den *= inf(p * qn)?;
    }
    Ok(fin * inf(abcd * qn * qn)? / den)
}

/// The weight `w(z)` at a point of the unit torus.
pub fn mv_weight(params: &QParams, z: &[Complex64], eps: f64) -> Result<f64> {
    params.check_chain()?;
    let d = params.d();
    if z.len() != d {
        return Err(Error::DimensionMismatch(z.len(), d));
    }
    if z.iter().any(|v| (v.norm() - 1.0).abs() > 1e-12) {
        return Err(Error::InvalidArgument("weight points must lie on the unit torus".into()));
    }
    let a = params.alpha_f64();
    let base = params.base();
    let zz: Vec<Complex64> = (0..=d + 1)
        .map(|k| match k {
            0 => Complex64::new(a[0], 0.0),
            k if k == d + 1 => Complex64::new(a[d + 2], 0.0),
            k => z[k - 1],
        })
        .collect();
    let mut num = Complex64::new(1.0, 0.0);
    for v in z {
        let sq = v * v;
        num *= q_pochhammer_inf_complex(sq, eps, base)? * q_pochhammer_inf_complex(sq.inv(), eps, base)?;
    }
    let mut den = Complex64::new(1.0, 0.0);
    for k in 0..=d {
        let r = a[k + 1] / a[k];
        for e1 in [1, -1] {
            for e2 in [1, -1] {
                den *= q_pochhammer_inf_complex(r * zz[k + 1].powi(e1) * zz[k].powi(e2), eps, base)?;
            }
        }
    }
    Ok((num / den).re)
}

/// Closed-form squared norm `H_n`.
pub fn mv_norm(params: &QParams, n: &MultiIndex, eps: f64) -> Result<f64> {
    params.check_chain()?;
    check_index(params, n)?;
    let d = params.d();
    let q = params.base().q_f64();
    let a = params.alpha_f64();
    let inf = |x: f64| q_pochhammer_inf_f64(x, q, eps);
    let big = |k: usize| n.partial(k) as i32;
    let mut h = 1.0;
    for k in 1..=d {
        let nk = n.0[k - 1] as i32;
        let r = a[k + 1] * a[k + 1] / (a[0] * a[0]);
        let mut fin = 1.0;
        for i in 0..nk {
            fin *= 1.0 - r * q.powi(big(k - 1) + big(k) - 1 + i);
        }
        let num = fin * inf(r * q.powi(2 * big(k)))?;
        let den = inf(q.powi(nk + 1))?
            * inf(a[k] * a[k] / (a[0] * a[0]) * q.powi(big(k - 1) + big(k)))?
            * inf(a[k + 1] * a[k + 1] / (a[k] * a[k]) * q.powi(nk))?;
        h *= num / den;
    }
    let qn = q.powi(big(d));
    for e in [1, -1] {
        let p = a[d + 1] * a[d + 2].powi(e) * qn;
        h /= inf(p)? * inf(p / (a[0] * a[0]))?;
    }
    Ok(h)
}

/// Factor relating `P` to `P̂`; `P̂ = factor * P`.
pub fn phat_factor(params: &QParams, n: &MultiIndex) -> Result<Rat> {
    check_index(params, n)?;
    let d = params.d();
    let base = params.base();
    let big_a = params.alpha(d + 1) * params.alpha(d + 2);
    let total = n.total() as usize;
    let a0sq = params.alpha(0) * params.alpha(0);
    let mut den = q_pochhammer(&big_a, total, base) * q_pochhammer(&(&big_a / &a0sq), total, base);
    for j in 1..=d {
        let nj = n.0[j - 1] as usize;
        let r = params.alpha(j + 1) / params.alpha(j);
        den *= rational::pow(params.alpha(j), nj as i64) * q_pochhammer(&(&r * &r), nj, base);
    }
    if den.is_zero() {
        return Err(Error::DegenerateNormalization);
    }
    Ok(rational::pow(&big_a, total as i64) / den)
}

/// `P̂` from a value of `P`.
pub fn normalize_phat(params: &QParams, n: &MultiIndex, value_of_p: &Rat) -> Result<Rat> {
    Ok(phat_factor(params, n)? * value_of_p)
}

/// `P̂_d(n; x; alpha)` at `z`.
pub fn mv_poly_hat(params: &QParams, n: &MultiIndex, z: &[Rat]) -> Result<Rat> {
    let f = phat_factor(params, n)?;
    Ok(f * mv_poly(params, n, z)?)
}

/// One-dimensional q-Racah polynomial `r_k(y; a, b, c, N)`.
///
/// `(q^N/c)^{1/2}` is taken as `s^N / sqrt(c)` with the positive rational root
/// of `c`; a non-square `c` is rejected.
pub fn qracah_poly_1d(k: usize, a: &Rat, b: &Rat, c: &Rat, big_n: i64, y: i64, base: &QBase) -> Result<Rat> {
    let root_c = rational::sqrt_exact(c).ok_or_else(|| Error::NeedsSquareBase(c.to_string()))?;
    if root_c.is_zero() {
        return Err(Error::InvalidArgument("c must be nonzero".into()));
    }
    let q = base.q();
    let upper = [
        base.pow(-(k as i64)),
        a * b * base.pow(k as i64 + 1),
        base.pow(-y),
        c * base.pow(y - big_n),
    ];
    let lower = [a * q, b * c * q, base.pow(-big_n)];
    let mut total = Rat::zero();
    let mut head = Rat::one();
    let mut qj = Rat::one();
    for j in 0..=k {
        if j > 0 {
            for u in &upper {
                head *= Rat::one() - u * base.pow(j as i64 - 1);
            }
            head *= q;
            head /= Rat::one() - base.pow(j as i64);
            qj *= q;
        }
        if head.is_zero() {
            break;
        }
        let mut tail = head.clone();
        for l in &lower {
            tail *= q_pochhammer(&(l * &qj), k - j, base);
        }
        total += tail;
    }
    let root = base.half_pow(big_n) / root_c;
    Ok(total * rational::pow(&root, k as i64))
}

/// `N` with `alpha_{d+2} / alpha_{d+1} = q^N`, if it exists.
pub fn racah_level(params: &QParams) -> Option<u32> {
    let d = params.d();
    let ratio = params.alpha(d + 2) / params.alpha(d + 1);
    let q = params.q();
    let mut t = Rat::one();
    for n in 0..=256u32 {
        if t == ratio {
            return Some(n);
        }
        t *= q;
    }
    None
}

fn check_racah(params: &QParams, y: &RacahPoint) -> Result<()> {
    if y.y.len() != params.d() {
        return Err(Error::DimensionMismatch(y.y.len(), params.d()));
    }
    match racah_level(params) {
        Some(n) if n == y.big_n => Ok(()),
        _ => Err(Error::ConstraintViolation(format!(
            "alpha_{{d+2}}/alpha_{{d+1}} must equal q^{}",
            y.big_n
        ))),
    }
}

/// Multivariable q-Racah polynomial `R_n(y)`.
pub fn qracah_poly_mv(params: &QParams, n: &MultiIndex, y: &RacahPoint) -> Result<Rat> {
    check_index(params, n)?;
    check_racah(params, y)?;
    let base = params.base();
    let q = params.q();
    let a0sq = params.alpha(0) * params.alpha(0);
    let mut out = Rat::one();
    for k in 1..=params.d() {
        let nk1 = n.partial(k - 1);
        let ak = params.alpha(k) * params.alpha(k);
        let ak1 = params.alpha(k + 1) * params.alpha(k + 1);
        let a = &ak / &a0sq * base.pow(2 * nk1 - 1);
        let b = &ak1 / (q * &ak);
        let c = &ak * base.pow(y.y_ext(k + 1) + nk1);
        out *= qracah_poly_1d(
            n.0[k - 1] as usize,
            &a,
            &b,
            &c,
            y.y_ext(k + 1) - nk1,
            y.y_ext(k) - nk1,
            base,
        )?;
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// The q-Racah weight `rho(y)`.
pub fn qracah_weight(params: &QParams, y: &RacahPoint) -> Result<Rat> {
    check_racah(params, y)?;
    let base = params.base();
    let q = params.q();
    let d = params.d();
    let sq = |j: usize| params.alpha(j) * params.alpha(j);
    let mut rho = Rat::one();
    for k in 0..=d {
        let diff = (y.y_ext(k + 1) - y.y_ext(k)) as usize;
        let sum = (y.y_ext(k + 1) + y.y_ext(k)) as usize;
        rho *= q_pochhammer(&(sq(k + 1) / sq(k)), diff, base) * q_pochhammer(&sq(k + 1), sum, base);
        let den = q_pochhammer(q, diff, base) * q_pochhammer(&(q * sq(k)), sum, base);
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("rho has a vanishing denominator at {:?}", y.y)));
        }
        rho /= den;
    }
    for k in 1..=d {
        let yk = y.y_ext(k);
        rho *= (Rat::one() - sq(k) * base.pow(2 * yk)) * rational::pow(&(sq(k - 1) / sq(k)), yk);
    }
    Ok(rho)
}

/// Point `z_k = alpha_k q^{y_k}` at which `P_d` reduces to `R_n`.
pub fn racah_z(params: &QParams, y: &RacahPoint) -> Vec<Rat> {
    (1..=params.d())
        .map(|k| params.alpha(k) * params.base().pow(y.y_ext(k)))
        .collect()
}
