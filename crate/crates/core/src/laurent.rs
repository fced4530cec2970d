//! Sparse multivariate Laurent polynomials over Q and the `x`-basis.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors ordered
//! graded-lexicographically (total degree first, then lexicographic), so the
//! last entry is always the leading term. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rat};

/// Exponent vector with graded-lexicographic ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn zero(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn add(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// One term in the canonical JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub num: String,
    pub den: String,
}

fn term_json(m: &Monomial, c: &Rat) -> TermJson {
    TermJson {
        exponents: m.0.clone(),
        num: c.numer().to_string(),
        den: c.denom().to_string(),
    }
}

fn term_from_json(t: &TermJson) -> Result<(Monomial, Rat)> {
    let c = rational::parse(&format!("{}/{}", t.num, t.den))?;
    Ok((Monomial(t.exponents.clone()), c))
}

/// Laurent polynomial in `z_1, ..., z_dim` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rat::one())
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Self::monomial(dim, c, vec![0; dim])
    }

    pub fn monomial(dim: usize, c: Rat, exps: Vec<i32>) -> Self {
        assert_eq!(exps.len(), dim, "exponent length must match dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        LaurentPoly { dim, terms }
    }

    /// The variable `z_j` (1-based).
    pub fn var(dim: usize, j: usize) -> Self {
        Self::var_pow(dim, j, 1)
    }

    /// `z_j^e` (1-based).
    pub fn var_pow(dim: usize, j: usize, e: i32) -> Self {
        assert!(j >= 1 && j <= dim, "variable index out of range");
        let mut exps = vec![0; dim];
        exps[j - 1] = e;
        Self::monomial(dim, Rat::one(), exps)
    }

    /// `x_j = (z_j + z_j^{-1})/2`.
    pub fn x(dim: usize, j: usize) -> Self {
        let half = rational::rat(1, 2);
        (&Self::var(dim, j) + &Self::var_pow(dim, j, -1)).scale(&half)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, Rat)>>(dim: usize, it: I) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in it {
            assert_eq!(e.len(), dim);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Largest `sum(exponents)` over the terms, `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.0.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((c, exps))` if the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(&Rat, &[i32])> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, &m.0))
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by `c z^exps`.
    pub fn mul_monomial(&self, c: &Rat, exps: &[i32]) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let shift = Monomial(exps.to_vec());
        LaurentPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.add(&shift), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(
            self.dim,
            c.recip(),
            e.iter().map(|x| -x).collect(),
        ))
    }

    /// Componentwise minimum exponent, zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.dim];
        };
        let mut out = first.0.clone();
        for m in it {
            for (o, &e) in out.iter_mut().zip(&m.0) {
                *o = (*o).min(e);
            }
        }
        out
    }

    /// Applies `z_j -> z_j^{-1}` (1-based `j`).
    pub fn involution(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.dim {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[j - 1] = -e[j - 1];
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn is_i_invariant(&self) -> bool {
        (1..=self.dim).all(|j| self.involution(j).map(|p| &p == self).unwrap_or(false))
    }

    /// Substitutes `z_k -> z_k q^{shift_k}`.
    pub fn q_shift(&self, shift: &[i32], q: &Rat) -> Self {
        assert_eq!(shift.len(), self.dim);
        if shift.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let mut cache: HashMap<i64, Rat> = HashMap::new();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let k: i64 = m
                    .0
                    .iter()
                    .zip(shift)
                    .map(|(&e, &s)| e as i64 * s as i64)
                    .sum();
                let f = cache.entry(k).or_insert_with(|| rational::pow(q, k));
                (m.clone(), c * &*f)
            })
            .collect();
        LaurentPoly {
            dim: self.dim,
            terms,
        }
    }

    /// Ring map sending `z_k` to the single-term polynomial `images[k]`.
    pub fn substitute_monomials(&self, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch(images.len(), self.dim));
        }
        let target = images.first().map(|p| p.dim).unwrap_or(0);
        let mut parts = Vec::with_capacity(self.dim);
        for img in images {
            let (c, e) = img.as_monomial().ok_or_else(|| {
                Error::InvalidArgument("substitution image must be a single term".into())
            })?;
            if img.dim != target {
                return Err(Error::DimensionMismatch(img.dim, target));
            }
            parts.push((c.clone(), e.to_vec()));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = vec![0i32; target];
            for ((ic, ie), &k) in parts.iter().zip(&m.0) {
                if k != 0 {
                    coef *= rational::pow(ic, k as i64);
                    for (x, &y) in exps.iter_mut().zip(ie) {
                        *x += y * k;
                    }
                }
            }
            out.add_term(Monomial(exps), coef);
        }
        Ok(out)
    }

    /// Exact value at a point with nonzero coordinates.
    pub fn evaluate(&self, z: &[Rat]) -> Result<Rat> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch(z.len(), self.dim));
        }
        if let Some(i) = z.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroComponent(i + 1));
        }
        let mut cache: Vec<HashMap<i32, Rat>> = vec![HashMap::new(); self.dim];
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    let p = cache[i]
                        .entry(e)
                        .or_insert_with(|| rational::pow(&z[i], e as i64));
                    t *= &*p;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Inverse of the embedding `P_x -> P_{z^{±1}}`.
    pub fn to_x_basis(&self) -> Result<XPoly> {
        if !self.is_i_invariant() {
            return Err(Error::NotInPx);
        }
        let mut rest = self.clone();
        let mut out = XPoly::zero(self.dim);
        while let Some((m, c)) = rest.leading_term() {
            let m = m.clone();
            let c = c.clone();
            if m.0.iter().any(|&e| e < 0) {
                return Err(Error::NotInPx);
            }
            let k: Vec<u32> = m.0.iter().map(|&e| e as u32).collect();
            let factor = c * rational::pow(&rational::int(2), m.degree());
            let emb = XPoly::monomial(self.dim, Rat::one(), k.clone()).embed();
            rest = &rest - &emb.scale(&factor);
            out.add_term(k, factor);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(m, c)| term_json(m, c)).collect()
    }

    pub fn from_json(dim: usize, terms: &[TermJson]) -> Result<Self> {
        let mut p = Self::zero(dim);
        for t in terms {
            if t.exponents.len() != dim {
                return Err(Error::DimensionMismatch(t.exponents.len(), dim));
            }
            let (m, c) = term_from_json(t)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}

/// Ring arithmetic with a dimension check.
pub fn arith(p: &LaurentPoly, q: &LaurentPoly, op: ArithOp) -> Result<LaurentPoly> {
    p.check_dim(q)?;
    Ok(match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
    })
}

/// Quotient `num / den` in the Laurent ring; fails unless the division is exact.
pub fn exact_divide(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    num.check_dim(den)?;
    if den.is_zero() {
        return Err(Error::InvalidArgument("division by the zero polynomial".into()));
    }
    if num.is_zero() {
        return Ok(LaurentPoly::zero(num.dim));
    }
    if let Some(inv) = den.monomial_inverse() {
        return Ok(num * &inv);
    }
    // Clear negative exponents, then divide in the polynomial ring. A divisor
    // with no monomial factor divides a polynomial in the Laurent ring only if
    // it does so in the polynomial ring.
    let nmin = num.min_exponents();
    let dmin = den.min_exponents();
    let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let mut rest = num.mul_monomial(&Rat::one(), &neg(&nmin));
    let d = den.mul_monomial(&Rat::one(), &neg(&dmin));
    let (dlead_m, dlead_c) = {
        let (m, c) = d.leading_term().unwrap();
        (m.clone(), c.clone())
    };
    let mut quot = LaurentPoly::zero(num.dim);
    while let Some((m, c)) = rest.leading_term() {
        let diff = m.sub(&dlead_m);
        if diff.0.iter().any(|&e| e < 0) {
            return Err(Error::InexactDivision);
        }
        let t = c / &dlead_c;
        let step = d.mul_monomial(&t, &diff.0);
        rest = &rest - &step;
        quot.add_term(diff, t);
    }
    let offset: Vec<i32> = nmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
    Ok(quot.mul_monomial(&Rat::one(), &offset))
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = acc.entry(ma.add(mb)).or_insert_with(Rat::zero);
                *e += ca * cb;
            }
        }
        LaurentPoly {
            dim: self.dim,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// `c*v1^e1*... + ...` with signs folded into the separators and unit
/// coefficients dropped.
fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I, var: &str) -> fmt::Result
where
    I: Iterator<Item = (&'a Monomial, &'a Rat)>,
{
    let mut first = true;
    for (m, c) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let a = c.abs();
        let vars: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { format!("{var}{}", k + 1) } else { format!("{var}{}^{e}", k + 1) })
            .collect();
        if vars.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{}", vars.join("*"))?;
        } else {
            write!(f, "{a}*{}", vars.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev(), "z")
    }
}

/// Polynomial in `x_1, ..., x_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl XPoly {
    pub fn zero(dim: usize) -> Self {
        XPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(dim, Rat::one(), vec![0; dim])
    }

    /// `c x^k`.
    pub fn monomial(dim: usize, c: Rat, k: Vec<u32>) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(k, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rat)>>(dim: usize, it: I) -> Self {
        let mut p = Self::zero(dim);
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: Vec<u32>, c: Rat) {
        assert_eq!(k.len(), self.dim);
        if c.is_zero() {
            return;
        }
        let m = Monomial(k.into_iter().map(|e| e as i32).collect());
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(exponents, coefficient)` in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rat)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.0.iter().map(|&e| e as u32).collect(), c))
    }

    pub fn coefficient(&self, k: &[u32]) -> Rat {
        let m = Monomial(k.iter().map(|&e| e as i32).collect());
        self.terms.get(&m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: i64) -> XPoly {
        XPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        XPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Image in the Laurent ring under `x_j = (z_j + 1/z_j)/2`.
    pub fn embed(&self) -> LaurentPoly {
        let mut powers: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one(self.dim)]; self.dim];
        let mut out = LaurentPoly::zero(self.dim);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(self.dim, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap() * &LaurentPoly::x(self.dim, j + 1);
                    powers[j].push(next);
                }
                if e > 0 {
                    t = &t * &powers[j][e];
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn evaluate(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(x.len(), self.dim));
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= rational::pow(xi, e as i64);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Float view for repeated numeric evaluation.
    pub fn to_f64(&self) -> XPolyF64 {
        XPolyF64 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.0.clone(), rational::to_f64(c)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(m, c)| term_json(m, c)).collect()
    }

    pub fn from_json(dim: usize, terms: &[TermJson]) -> Result<Self> {
        let mut p = Self::zero(dim);
        for t in terms {
            if t.exponents.len() != dim {
                return Err(Error::DimensionMismatch(t.exponents.len(), dim));
            }
            if t.exponents.iter().any(|&e| e < 0) {
                return Err(Error::Parse("negative x-exponent".into()));
            }
            let (m, c) = term_from_json(t)?;
            p.add_term(m.0.iter().map(|&e| e as u32).collect(), c);
        }
        Ok(p)
    }
}

impl std::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self + &rhs.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = XPoly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let k = ma.add(mb).0.iter().map(|&e| e as u32).collect();
                out.add_term(k, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev(), "x")
    }
}

/// Float copy of an [`XPoly`].
#[derive(Debug, Clone)]
pub struct XPolyF64 {
    terms: Vec<(Vec<i32>, f64)>,
}

impl XPolyF64 {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(*c, |acc, (&k, &xi)| acc * xi.powi(k))
            })
            .sum()
    }
}
