//! q-difference operators `sum_nu c_nu(z) E^nu` with `E^nu f(z) = f(z q^nu)`,
//! the operator `L_d` in its Delta/nabla and shift forms, and the commuting
//! family `L^z_1, ..., L^z_d`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::aw::{MultiIndex, QParams};
use crate::coeff::{CoeffFn, CoeffJson};
use crate::error::{Error, Result};
use crate::laurent::{exact_divide, LaurentPoly, XPoly};
use crate::rational::{self, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct QDiffOperator {
    dim: usize,
    q: Rat,
    terms: BTreeMap<Vec<i32>, CoeffFn>,
}

/// One support entry in the JSON dump.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorTermJson {
    pub shift: Vec<i32>,
    #[serde(flatten)]
    pub coeff: CoeffJson,
}

fn shifted_point(z: &[Rat], shift: &[i32], q: &Rat) -> Vec<Rat> {
    z.iter()
        .zip(shift)
        .map(|(v, &s)| if s == 0 { v.clone() } else { v * rational::pow(q, s as i64) })
        .collect()
}

impl QDiffOperator {
    pub fn zero(dim: usize, q: Rat) -> Self {
        QDiffOperator { dim, q, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize, q: Rat) -> Self {
        let mut op = Self::zero(dim, q);
        op.add_term(vec![0; dim], CoeffFn::one(dim));
        op
    }

    /// `c(z) E^shift`.
    pub fn single(dim: usize, q: Rat, shift: Vec<i32>, c: CoeffFn) -> Self {
        let mut op = Self::zero(dim, q);
        op.add_term(shift, c);
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    /// Accumulates `c E^shift`, dropping the entry if it cancels.
    pub fn add_term(&mut self, shift: Vec<i32>, c: CoeffFn) {
        assert_eq!(shift.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&shift) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(shift, s);
                }
            }
            None => {
                self.terms.insert(shift, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &CoeffFn)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Vec<i32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, shift: &[i32]) -> Option<&CoeffFn> {
        self.terms.get(shift)
    }

    pub fn coefficient_mut(&mut self, shift: &[i32]) -> Option<&mut CoeffFn> {
        self.terms.get_mut(shift)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.dim, self.q.clone());
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Coefficients evaluated at `z`.
    pub fn coefficients_at(&self, z: &[Rat]) -> Result<BTreeMap<Vec<i32>, Rat>> {
        let mut out = BTreeMap::new();
        for (s, c) in &self.terms {
            let v = c.evaluate(z).map_err(|e| match e {
                Error::Pole { .. } => Error::Pole { shift: s.clone() },
                other => other,
            })?;
            out.insert(s.clone(), v);
        }
        Ok(out)
    }

    /// `sum_nu c_nu(z) f(z q^nu)`.
    pub fn apply_at_point<F>(&self, f: F, z: &[Rat]) -> Result<Rat>
    where
        F: Fn(&[Rat]) -> Result<Rat>,
    {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch(z.len(), self.dim));
        }
        let mut total = Rat::zero();
        for (s, c) in self.coefficients_at(z)? {
            if c.is_zero() {
                continue;
            }
            total += c * f(&shifted_point(z, &s, &self.q))?;
        }
        Ok(total)
    }

    /// `a b`: coefficient at `mu` is `sum a_{nu1}(z) b_{nu2}(z q^{nu1})`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.q.clone());
        for (s1, a) in &self.terms {
            for (s2, b) in &other.terms {
                let shift: Vec<i32> = s1.iter().zip(s2).map(|(x, y)| x + y).collect();
                out.add_term(shift, a.mul(&b.q_shift(s1, &self.q)));
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Coefficients of `a b` at a point, without building `a b` symbolically.
    pub fn compose_at_point(&self, other: &Self, z: &[Rat]) -> Result<BTreeMap<Vec<i32>, Rat>> {
        self.check_dim(other)?;
        let ca = self.coefficients_at(z)?;
        let mut out: BTreeMap<Vec<i32>, Rat> = BTreeMap::new();
        for (s1, a) in ca {
            let zs = shifted_point(z, &s1, &self.q);
            for (s2, b) in other.coefficients_at(&zs)? {
                let shift: Vec<i32> = s1.iter().zip(&s2).map(|(x, y)| x + y).collect();
                *out.entry(shift).or_insert_with(Rat::zero) += &a * b;
            }
        }
        Ok(out)
    }

    /// Coefficients of `[a, b]` at a point; zero entries are dropped.
    pub fn commutator_at_point(&self, other: &Self, z: &[Rat]) -> Result<BTreeMap<Vec<i32>, Rat>> {
        let mut ab = self.compose_at_point(other, z)?;
        for (s, v) in other.compose_at_point(self, z)? {
            *ab.entry(s).or_insert_with(Rat::zero) -= v;
        }
        ab.retain(|_, v| !v.is_zero());
        Ok(ab)
    }

    /// `I_k`: coefficients get `z_k -> 1/z_k`, shifts are reflected in coordinate `k`.
    pub fn involution(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.dim {
            return Err(Error::IndexOutOfRange { index: k, dim: self.dim });
        }
        let mut out = Self::zero(self.dim, self.q.clone());
        for (s, c) in &self.terms {
            let mut t = s.clone();
            t[k - 1] = -t[k - 1];
            out.add_term(t, c.involution(k)?);
        }
        Ok(out)
    }

    /// Symbolic equality of every coefficient.
    pub fn same_as(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.q == other.q
            && self.sub(other).map(|d| d.terms.is_empty()).unwrap_or(false)
    }

    /// Common-denominator form used by [`apply`](Self::apply).
    pub fn prepare(&self) -> PreparedOperator {
        let mut lcm: Vec<LaurentPoly> = Vec::new();
        for c in self.terms.values() {
            let mut used = vec![false; lcm.len()];
            for f in c.den_factors() {
                match (0..lcm.len()).find(|&i| !used[i] && &lcm[i] == f) {
                    Some(i) => used[i] = true,
                    None => {
                        lcm.push(f.clone());
                        used.push(true);
                    }
                }
            }
        }
        let mut parts = Vec::new();
        for (s, c) in &self.terms {
            let mut avail = vec![true; lcm.len()];
            for f in c.den_factors() {
                let i = (0..lcm.len()).find(|&i| avail[i] && &lcm[i] == f).unwrap();
                avail[i] = false;
            }
            let mut num = c.num().clone();
            for (i, f) in lcm.iter().enumerate() {
                if avail[i] {
                    num = &num * f;
                }
            }
            parts.push((s.clone(), num));
        }
        PreparedOperator {
            dim: self.dim,
            q: self.q.clone(),
            parts,
            den: lcm,
        }
    }

    /// `L(p)` in the Laurent ring.
    pub fn apply_laurent(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        self.prepare().apply_laurent(p)
    }

    /// `L(p)` for `p` in the `x`-basis.
    pub fn apply(&self, p: &XPoly) -> Result<XPoly> {
        self.prepare().apply(p)
    }

    pub fn to_json(&self) -> Vec<OperatorTermJson> {
        self.terms
            .iter()
            .map(|(s, c)| OperatorTermJson { shift: s.clone(), coeff: c.to_json() })
            .collect()
    }
}

/// An operator rewritten over one common denominator.
#[derive(Debug, Clone)]
pub struct PreparedOperator {
    dim: usize,
    q: Rat,
    parts: Vec<(Vec<i32>, LaurentPoly)>,
    den: Vec<LaurentPoly>,
}

impl PreparedOperator {
    pub fn apply_laurent(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch(p.dim(), self.dim));
        }
        let mut total = LaurentPoly::zero(self.dim);
        for (s, num) in &self.parts {
            total = &total + &(num * &p.q_shift(s, &self.q));
        }
        for f in &self.den {
            total = exact_divide(&total, f)?;
        }
        Ok(total)
    }

    pub fn apply(&self, p: &XPoly) -> Result<XPoly> {
        self.apply_laurent(&p.embed())?.to_x_basis()
    }
}

/// `(z + 1/z)/2` for a single-term `z`.
fn x_of(z: &LaurentPoly) -> LaurentPoly {
    let inv = z.monomial_inverse().expect("single-term variable");
    (z + &inv).scale(&rational::rat(1, 2))
}

/// Data for `L_j` acting on the first `j` of `dim` variables, with parameters
/// `alpha_0, ..., alpha_{j+1}` and trailing slot `trailing` (a constant or
/// one of the remaining variables).
#[derive(Debug, Clone)]
pub struct LSpec {
    pub dim: usize,
    pub j: usize,
    pub alpha: Vec<Rat>,
    pub trailing: LaurentPoly,
    pub q: Rat,
}

impl LSpec {
    /// `L_d` itself: trailing slot `alpha_{d+2}`.
    pub fn full(params: &QParams) -> Self {
        let d = params.d();
        LSpec {
            dim: d,
            j: d,
            alpha: params.alphas()[..d + 2].to_vec(),
            trailing: LaurentPoly::constant(d, params.alpha(d + 2).clone()),
            q: params.q().clone(),
        }
    }

    /// `L^z_j`: for `j < d` the trailing slot is the variable `z_{j+1}`.
    pub fn family(params: &QParams, j: usize) -> Self {
        let d = params.d();
        assert!(j >= 1 && j <= d);
        if j == d {
            return Self::full(params);
        }
        LSpec {
            dim: d,
            j,
            alpha: params.alphas()[..j + 2].to_vec(),
            trailing: LaurentPoly::var(d, j + 1),
            q: params.q().clone(),
        }
    }

    fn constant(&self, c: Rat) -> LaurentPoly {
        LaurentPoly::constant(self.dim, c)
    }

    /// `z_0 = alpha_0`, `z_1..z_j` variables, `z_{j+1}` the trailing slot.
    fn zs(&self, k: usize) -> LaurentPoly {
        if k == 0 {
            self.constant(self.alpha[0].clone())
        } else if k == self.j + 1 {
            self.trailing.clone()
        } else {
            LaurentPoly::var(self.dim, k)
        }
    }

    fn check_shift(&self, nu: &[i32]) -> Result<()> {
        if nu.len() != self.dim {
            return Err(Error::DimensionMismatch(nu.len(), self.dim));
        }
        if nu.iter().any(|v| !(-1..=1).contains(v)) {
            return Err(Error::InvalidArgument(format!("shift {nu:?} outside {{-1,0,1}}")));
        }
        if nu[self.j..].iter().any(|&v| v != 0) {
            return Err(Error::InvalidArgument(format!("shift {nu:?} moves a passive variable")));
        }
        Ok(())
    }

    /// `A_nu` for nonzero `nu`.
    pub fn coeff_a(&self, nu: &[i32]) -> Result<CoeffFn> {
        self.check_shift(nu)?;
        let idx: Vec<usize> = (1..=self.j).filter(|&k| nu[k - 1] != 0).collect();
        if idx.is_empty() {
            return Err(Error::InvalidArgument("A_nu needs nu != 0".into()));
        }
        let one = LaurentPoly::one(self.dim);
        let a = &self.alpha;
        let q = &self.q;
        let z = |k: usize| LaurentPoly::var(self.dim, k);
        let i1 = idx[0];
        let is = *idx.last().unwrap();
        let mut num = &(&one - &z(i1).scale(&a[i1])) * &(&one - &z(i1).scale(&(&a[i1] / (&a[0] * &a[0]))));
        for w in idx.windows(2) {
            let (p, c) = (w[0], w[1]);
            let m = &z(c) * &z(p);
            let r = &a[c] / &a[p];
            num = &num * &(&(&one - &m.scale(&r)) * &(&one - &m.scale(&(q * &r))));
        }
        let r = &a[self.j + 1] / &a[is];
        let t = &self.trailing;
        let tinv = t.monomial_inverse().expect("single-term trailing slot");
        num = &num * &(&(&one - &(&z(is) * t).scale(&r)) * &(&one - &(&z(is) * &tinv).scale(&r)));
        let mut den = Vec::new();
        for &k in &idx {
            let sq = LaurentPoly::var_pow(self.dim, k, 2);
            den.push(&one - &sq);
            den.push(&one - &sq.scale(q));
        }
        let mut c = CoeffFn::new(num, den)?;
        for &k in &idx {
            if nu[k - 1] < 0 {
                c = c.involution(k)?;
            }
        }
        Ok(c)
    }

    fn b_big(&self, k: usize, nk: i32, nl: i32) -> LaurentPoly {
        let a = &self.alpha[k + 1] / &self.alpha[k];
        let q = &self.q;
        let one = LaurentPoly::one(self.dim);
        if nk == 0 && nl == 0 {
            let xx = &x_of(&self.zs(k)) * &x_of(&self.zs(k + 1));
            let c = Rat::one() + &a * &a / q;
            let lin = rational::int(4) * &a / (q + Rat::one());
            return &self.constant(c) - &xx.scale(&lin);
        }
        let mut zj = self.zs(k);
        let mut zk = self.zs(k + 1);
        if nk < 0 {
            zj = zj.monomial_inverse().unwrap();
        }
        if nl < 0 {
            zk = zk.monomial_inverse().unwrap();
        }
        let prod = &zj * &zk;
        let first = &one - &prod.scale(&a);
        let second = match (nk != 0, nl != 0) {
            (false, true) => &one - &(&zk * &zj.monomial_inverse().unwrap()).scale(&a),
            (true, false) => &one - &(&zj * &zk.monomial_inverse().unwrap()).scale(&a),
            _ => &one - &prod.scale(&(q * &a)),
        };
        &first * &second
    }

    fn b_small(&self, k: usize, nk: i32) -> Vec<LaurentPoly> {
        let one = LaurentPoly::one(self.dim);
        let e = if nk < 0 { -2 } else { 2 };
        let sq = LaurentPoly::var_pow(self.dim, k, e);
        let q = &self.q;
        if nk == 0 {
            let inv = LaurentPoly::var_pow(self.dim, k, -2);
            vec![&one - &sq.scale(q), &one - &inv.scale(q)]
        } else {
            vec![&one - &sq, &one - &sq.scale(q)]
        }
    }

    /// `C_nu` (no scalar subtraction).
    pub fn coeff_c(&self, nu: &[i32]) -> Result<CoeffFn> {
        self.check_shift(nu)?;
        let j = self.j;
        let ext = |k: usize| if k == 0 || k == j + 1 { 0 } else { nu[k - 1] };
        let nonzero = nu.iter().filter(|&&v| v != 0).count();
        let q = &self.q;
        let pre = rational::pow(&(q * (q + Rat::one())), (j - nonzero) as i64);
        let mut num = self.constant(pre);
        for k in 0..=j {
            num = &num * &self.b_big(k, ext(k), ext(k + 1));
        }
        let mut den = Vec::new();
        for k in 1..=j {
            den.extend(self.b_small(k, ext(k)));
        }
        CoeffFn::new(num, den)
    }

    /// The scalar removed at `nu = 0` in the shift form.
    pub fn scalar_term(&self) -> LaurentPoly {
        let a0 = &self.alpha[0];
        let aj = &self.alpha[self.j + 1];
        let q = &self.q;
        let c = Rat::one() + aj * aj / (q * a0 * a0);
        let lin = rational::int(4) * aj / ((q + Rat::one()) * a0);
        let xx = &x_of(&self.zs(0)) * &x_of(&self.trailing);
        &self.constant(c) - &xx.scale(&lin)
    }

    /// All `nu` in `{-1,0,1}^j x {0}^{dim-j}`.
    pub fn shifts(&self) -> Vec<Vec<i32>> {
        let mut out = vec![vec![0; self.dim]];
        for k in 0..self.j {
            let mut next = Vec::with_capacity(out.len() * 3);
            for v in &out {
                for s in [-1, 0, 1] {
                    let mut w = v.clone();
                    w[k] = s;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// `sum (-1)^{|nu^-|} A_nu Delta^{nu^+} nabla^{nu^-}` expanded in shifts.
    pub fn delta_form(&self) -> Result<QDiffOperator> {
        let mut op = QDiffOperator::zero(self.dim, self.q.clone());
        for nu in self.shifts() {
            if nu.iter().all(|&v| v == 0) {
                continue;
            }
            let a = self.coeff_a(&nu)?;
            let neg = nu.iter().filter(|&&v| v < 0).count();
            let active: Vec<usize> = (0..self.dim).filter(|&k| nu[k] != 0).collect();
            for mask in 0u32..(1 << active.len()) {
                let mut mu = vec![0; self.dim];
                let mut sign = neg % 2 == 1;
                for (bit, &k) in active.iter().enumerate() {
                    let take = mask & (1 << bit) != 0;
                    if nu[k] > 0 {
                        // E - 1
                        if take {
                            mu[k] = 1;
                        } else {
                            sign = !sign;
                        }
                    } else if take {
                        // 1 - E^{-1}
                        mu[k] = -1;
                        sign = !sign;
                    }
                }
                op.add_term(mu, if sign { a.neg() } else { a.clone() });
            }
        }
        Ok(op)
    }

    /// `sum C_nu E^nu` minus the scalar term.
    pub fn shift_form(&self) -> Result<QDiffOperator> {
        let mut op = QDiffOperator::zero(self.dim, self.q.clone());
        for nu in self.shifts() {
            op.add_term(nu.clone(), self.coeff_c(&nu)?);
        }
        op.add_term(vec![0; self.dim], CoeffFn::from_poly(-&self.scalar_term()));
        Ok(op)
    }
}

/// `A_nu` of `L_d`.
pub fn coeff_a(params: &QParams, nu: &[i32]) -> Result<CoeffFn> {
    LSpec::full(params).coeff_a(nu)
}

/// `C_nu` of `L_d`.
pub fn coeff_c(params: &QParams, nu: &[i32]) -> Result<CoeffFn> {
    LSpec::full(params).coeff_c(nu)
}

pub fn build_ld_delta_form(params: &QParams) -> Result<QDiffOperator> {
    LSpec::full(params).delta_form()
}

pub fn build_ld_shift_form(params: &QParams) -> Result<QDiffOperator> {
    LSpec::full(params).shift_form()
}

/// `L^z_1, ..., L^z_d` as `d`-dimensional operators.
pub fn build_lz_family(params: &QParams) -> Result<Vec<QDiffOperator>> {
    (1..=params.d()).map(|j| LSpec::family(params, j).shift_form()).collect()
}

/// `c_k = -(1 - q^{-k})(1 - alpha_{d+1}^2 / alpha_0^2 q^{k-1})`.
pub fn triangular_constant(params: &QParams, k: i64) -> Rat {
    let d = params.d();
    let r = params.alpha(d + 1) * params.alpha(d + 1) / (params.alpha(0) * params.alpha(0));
    -(Rat::one() - params.base().pow(-k)) * (Rat::one() - r * params.base().pow(k - 1))
}

/// `mu_j = -(1 - q^{-N_j})(1 - alpha_{j+1}^2 / alpha_0^2 q^{N_j - 1})`.
pub fn mu_eigenvalue(params: &QParams, n: &MultiIndex, j: usize) -> Result<Rat> {
    if j == 0 || j > params.d() {
        return Err(Error::IndexOutOfRange { index: j, dim: params.d() });
    }
    let nj = n.partial(j);
    let r = params.alpha(j + 1) * params.alpha(j + 1) / (params.alpha(0) * params.alpha(0));
    Ok(-(Rat::one() - params.base().pow(-nj)) * (Rat::one() - r * params.base().pow(nj - 1)))
}

/// One line of a triangularity report.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularityEntry {
    pub monomial: Vec<u32>,
    /// Total degree of `L(x^n) - c_{|n|} x^n`, `None` when it vanishes.
    pub remainder_degree: Option<i64>,
    pub pass: bool,
}

/// Checks `L(x^n) = c_{|n|} x^n` modulo lower degree for all `|n| <= max_total_degree`.
pub fn triangularity_report_for(
    op: &QDiffOperator,
    params: &QParams,
    max_total_degree: u32,
) -> Result<Vec<TriangularityEntry>> {
    let d = params.d();
    let prep = op.prepare();
    let mut out = Vec::new();
    for n in MultiIndex::all_up_to(d, max_total_degree) {
        let xn = XPoly::monomial(d, Rat::one(), n.0.clone());
        let img = prep.apply(&xn)?;
        let c = triangular_constant(params, n.total());
        let rem = &img - &xn.scale(&c);
        let deg = rem.total_degree();
        out.push(TriangularityEntry {
            monomial: n.0.clone(),
            remainder_degree: deg,
            pass: deg.map_or(true, |g| g < n.total()),
        });
    }
    Ok(out)
}

pub fn triangularity_report(params: &QParams, max_total_degree: u32) -> Result<Vec<TriangularityEntry>> {
    triangularity_report_for(&build_ld_shift_form(params)?, params, max_total_degree)
}

/// `L_d` with the `+-e_1` terms of the Delta form doubled; used to show that
/// the triangularity check detects a wrong coefficient.
pub fn mutated_ld(params: &QParams) -> Result<QDiffOperator> {
    let d = params.d();
    let spec = LSpec::full(params);
    let mut op = spec.delta_form()?;
    let mut e1 = vec![0; d];
    e1[0] = 1;
    let a = spec.coeff_a(&e1)?;
    e1[0] = -1;
    let am = spec.coeff_a(&e1)?;
    let mut extra = QDiffOperator::zero(d, params.q().clone());
    let zero = vec![0; d];
    let mut plus = zero.clone();
    plus[0] = 1;
    let mut minus = zero.clone();
    minus[0] = -1;
    extra.add_term(plus, a.clone());
    extra.add_term(zero.clone(), a.neg());
    extra.add_term(zero, am.neg());
    extra.add_term(minus, am);
    op = op.add(&extra)?;
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aw::mv_poly;
    use crate::rational::{int, rat};

    fn p1() -> QParams {
        QParams::new(1, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(3, 2)]).unwrap()
    }

    fn p2() -> QParams {
        QParams::new(2, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(3, 2)]).unwrap()
    }

    fn p3() -> QParams {
        QParams::new(3, rat(1, 2), vec![int(2), rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(3, 2)]).unwrap()
    }

    fn pts(d: usize) -> Vec<Vec<Rat>> {
        let base = [rat(3, 7), rat(5, 11), rat(-7, 13), rat(11, 17), rat(13, 19)];
        (0..4)
            .map(|i| (0..d).map(|k| &base[(i + k) % 5] * rat(i as i64 + 2, 3)).collect())
            .collect()
    }

    #[test]
    fn a_coefficient_d1() {
        let p = p1();
        let a = p.alphas();
        let c = coeff_a(&p, &[1]).unwrap();
        for z in pts(1) {
            let z1 = &z[0];
            let one = Rat::one();
            let q = p.q();
            let expect = (&one - &a[1] * z1) * (&one - &a[1] * z1 / (&a[0] * &a[0])) * (&one - &a[2] * &a[3] * z1 / &a[1])
                * (&one - &a[2] * z1 / (&a[1] * &a[3]))
                / ((&one - z1 * z1) * (&one - q * z1 * z1));
            assert_eq!(c.evaluate(&z).unwrap(), expect);
            let cm = coeff_a(&p, &[-1]).unwrap();
            assert_eq!(cm.evaluate(&z).unwrap(), c.evaluate(&[z1.recip()]).unwrap());
        }
        assert!(coeff_a(&p, &[0]).is_err());
        assert!(coeff_a(&p, &[2]).is_err());
    }

    #[test]
    fn a_degree_count_d2() {
        let c = coeff_a(&p2(), &[1, 1]).unwrap();
        let den = c.den();
        let dm = den.min_exponents();
        let deg = |l: &LaurentPoly, m: &[i32]| l.terms().map(|(e, _)| e.0.iter().zip(m).map(|(a, b)| (a - b) as i64).sum::<i64>()).max().unwrap();
        assert_eq!(deg(&den, &dm), 8);
        let nm = c.num().min_exponents();
        assert_eq!(deg(c.num(), &nm), 8);
    }

    #[test]
    fn c_matches_a_in_d1() {
        let p = p1();
        let c = coeff_c(&p, &[1]).unwrap();
        let a = coeff_a(&p, &[1]).unwrap();
        assert!(c.sub(&a).is_zero());
    }

    #[test]
    fn forms_agree() {
        for p in [p1(), p2(), p3()] {
            let d = p.d();
            let delta = build_ld_delta_form(&p).unwrap();
            let shift = build_ld_shift_form(&p).unwrap();
            assert!(delta.support().len() <= 3usize.pow(d as u32));
            for z in pts(d) {
                assert_eq!(delta.coefficients_at(&z).unwrap(), shift.coefficients_at(&z).unwrap());
            }
        }
    }

    #[test]
    fn ld_is_i_invariant() {
        for p in [p1(), p2()] {
            let op = build_ld_shift_form(&p).unwrap();
            for k in 1..=p.d() {
                assert!(op.involution(k).unwrap().same_as(&op));
                assert!(op.involution(k).unwrap().involution(k).unwrap().same_as(&op));
            }
        }
    }

    #[test]
    fn apply_examples() {
        let p = p1();
        let q = p.q().clone();
        let delta = QDiffOperator::identity(1, q.clone()).scale(&-Rat::one()).add(&QDiffOperator::single(1, q.clone(), vec![1], CoeffFn::one(1))).unwrap();
        let x1 = XPoly::monomial(1, Rat::one(), vec![1]).embed();
        let got = delta.apply_laurent(&x1).unwrap();
        let z = LaurentPoly::var(1, 1);
        let one = LaurentPoly::one(1);
        let num = &(&z.pow(2).scale(&q) - &one) * &LaurentPoly::constant(1, &q - Rat::one());
        let expect = exact_divide(&num, &z.scale(&(int(2) * &q))).unwrap();
        assert_eq!(got, expect);

        let l = build_ld_shift_form(&p).unwrap();
        assert!(l.apply(&XPoly::one(1)).unwrap().is_zero());
        let c1 = -(Rat::one() - q.recip()) * (Rat::one() - p.alpha(2) * p.alpha(2) / int(4));
        let x = XPoly::monomial(1, Rat::one(), vec![1]);
        let rem = &l.apply(&x).unwrap() - &x.scale(&c1);
        assert!(rem.total_degree().map_or(true, |g| g == 0));
    }

    #[test]
    fn apply_agrees_with_pointwise() {
        let p = p2();
        let l = build_ld_shift_form(&p).unwrap();
        let f = XPoly::from_terms(2, [(vec![1, 1], rat(2, 3)), (vec![0, 2], int(-1)), (vec![1, 0], int(5))]);
        let img = l.apply(&f).unwrap().embed();
        let fl = f.embed();
        for z in pts(2) {
            let pt = l.apply_at_point(|w| fl.evaluate(w), &z).unwrap();
            assert_eq!(img.evaluate(&z).unwrap(), pt);
        }
    }

    #[test]
    fn triangular_small() {
        let rep = triangularity_report(&p2(), 2).unwrap();
        assert!(rep.iter().all(|e| e.pass));
        let bad = triangularity_report_for(&mutated_ld(&p2()).unwrap(), &p2(), 2);
        match bad {
            Ok(r) => assert!(r.iter().any(|e| !e.pass)),
            Err(e) => assert_eq!(e, Error::InexactDivision),
        }
    }

    #[test]
    fn family_shape_and_spectrum() {
        let p = p2();
        let fam = build_lz_family(&p).unwrap();
        assert!(fam[1].same_as(&build_ld_shift_form(&p).unwrap()));
        assert!(fam[0].support().iter().all(|s| s[1] == 0));
        let n = MultiIndex(vec![1, 2]);
        for z in pts(2) {
            for j in 1..=2 {
                let lhs = fam[j - 1].apply_at_point(|w| mv_poly(&p, &n, w), &z).unwrap();
                let mu = mu_eigenvalue(&p, &n, j).unwrap();
                assert_eq!(lhs, mu * mv_poly(&p, &n, &z).unwrap());
            }
        }
        assert!(mu_eigenvalue(&p, &MultiIndex::zero(2), 1).unwrap().is_zero());
        assert_eq!(mu_eigenvalue(&p, &n, 2).unwrap(), triangular_constant(&p, 3));
    }

    #[test]
    fn algebra_basics() {
        let p = p2();
        let l = build_ld_shift_form(&p).unwrap();
        let id = QDiffOperator::identity(2, p.q().clone());
        let z = &pts(2)[0];
        assert_eq!(l.compose(&id).unwrap().coefficients_at(z).unwrap(), l.coefficients_at(z).unwrap());
        assert!(l.commutator_at_point(&l, z).unwrap().is_empty());
        let fam = build_lz_family(&p).unwrap();
        for z in pts(2) {
            assert!(fam[0].commutator_at_point(&fam[1], &z).unwrap().is_empty());
        }
        let g = CoeffFn::from_poly(LaurentPoly::var(2, 1));
        let op = QDiffOperator::single(2, p.q().clone(), vec![1, 0], g.clone());
        let inv = op.involution(1).unwrap();
        assert_eq!(inv.support(), vec![vec![-1, 0]]);
        assert_eq!(inv.coefficient(&[-1, 0]).unwrap(), &g.involution(1).unwrap());
    }
}
