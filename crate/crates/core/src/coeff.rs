//! Rational-function coefficients `num / den` over the Laurent ring.
//!
//! The denominator is kept as a list of normalised factors: each factor is a
//! genuine polynomial (all exponents `>= 0`, some exponent of every variable it
//! involves equal to zero) with graded-lex leading coefficient one. Monomial
//! and scalar parts are folded into the numerator, so equal factors compare
//! equal structurally and sums can use a multiset lcm.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{exact_divide, LaurentPoly, TermJson};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffFn {
    num: LaurentPoly,
    den: Vec<LaurentPoly>,
}

/// JSON form: numerator and the expanded denominator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}

/// Splits `f` as `c z^m g` with `g` normalised; returns `(c z^m, g)`, `g = None`
/// when `f` is a single term.
fn normalise_factor(f: &LaurentPoly) -> (LaurentPoly, Option<LaurentPoly>) {
    if f.as_monomial().is_some() {
        return (f.clone(), None);
    }
    let m = f.min_exponents();
    let neg: Vec<i32> = m.iter().map(|x| -x).collect();
    let shifted = f.mul_monomial(&Rat::one(), &neg);
    let lead = shifted.leading_term().unwrap().1.clone();
    let g = shifted.scale(&lead.recip());
    (LaurentPoly::monomial(f.dim(), lead, m), Some(g))
}

impl CoeffFn {
    pub fn from_poly(p: LaurentPoly) -> Self {
        CoeffFn { num: p, den: Vec::new() }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(dim, c))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(dim))
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rat::one())
    }

    /// `num / prod(dens)`; fails on a zero denominator factor.
    pub fn new(num: LaurentPoly, dens: Vec<LaurentPoly>) -> Result<Self> {
        let mut out = Self::from_poly(num);
        for d in dens {
            if d.is_zero() {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            if d.dim() != out.num.dim() {
                return Err(Error::DimensionMismatch(d.dim(), out.num.dim()));
            }
            out.push_den(&d);
        }
        Ok(out)
    }

    fn push_den(&mut self, d: &LaurentPoly) {
        let (unit, g) = normalise_factor(d);
        let inv = unit.monomial_inverse().expect("nonzero unit");
        self.num = &self.num * &inv;
        if let Some(g) = g {
            self.den.push(g);
        }
    }

    fn from_parts(num: LaurentPoly, dens: &[LaurentPoly]) -> Self {
        let mut out = Self::from_poly(num);
        for d in dens {
            out.push_den(d);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[LaurentPoly] {
        &self.den
    }

    /// Expanded denominator.
    pub fn den(&self) -> LaurentPoly {
        self.den
            .iter()
            .fold(LaurentPoly::one(self.dim()), |acc, f| &acc * f)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        CoeffFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn mul(&self, other: &CoeffFn) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dim());
        }
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        CoeffFn {
            num: &self.num * &other.num,
            den,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        CoeffFn {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &CoeffFn) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        // lcm of the two factor multisets
        let mut lcm = self.den.clone();
        let mut other_extra = Vec::new();
        let mut avail: Vec<bool> = vec![true; self.den.len()];
        for f in &other.den {
            match (0..self.den.len()).find(|&i| avail[i] && &self.den[i] == f) {
                Some(i) => avail[i] = false,
                None => other_extra.push(f.clone()),
            }
        }
        let self_extra: Vec<LaurentPoly> = (0..self.den.len())
            .filter(|&i| avail[i])
            .map(|i| self.den[i].clone())
            .collect();
        lcm.extend(other_extra.iter().cloned());
        let prod = |fs: &[LaurentPoly]| fs.iter().fold(LaurentPoly::one(self.dim()), |a, f| &a * f);
        let num = &(&self.num * &prod(&other_extra)) + &(&other.num * &prod(&self_extra));
        if num.is_zero() {
            return Self::zero(self.dim());
        }
        CoeffFn { num, den: lcm }
    }

    pub fn sub(&self, other: &CoeffFn) -> Self {
        self.add(&other.neg())
    }

    /// Drops denominator factors that divide the numerator.
    pub fn simplify(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for f in &self.den {
            match exact_divide(&num, f) {
                Ok(qt) => num = qt,
                Err(_) => den.push(f.clone()),
            }
        }
        if num.is_zero() {
            return Self::zero(self.dim());
        }
        CoeffFn { num, den }
    }

    /// `g(z) -> g(z q^shift)`.
    pub fn q_shift(&self, shift: &[i32], q: &Rat) -> Self {
        let num = self.num.q_shift(shift, q);
        let dens: Vec<LaurentPoly> = self.den.iter().map(|f| f.q_shift(shift, q)).collect();
        Self::from_parts(num, &dens)
    }

    /// `z_j -> 1/z_j`.
    pub fn involution(&self, j: usize) -> Result<Self> {
        let num = self.num.involution(j)?;
        let dens = self
            .den
            .iter()
            .map(|f| f.involution(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(num, &dens))
    }

    /// Ring map sending each variable to a single term.
    pub fn substitute_monomials(&self, images: &[LaurentPoly]) -> Result<Self> {
        let num = self.num.substitute_monomials(images)?;
        let mut dens = Vec::with_capacity(self.den.len());
        for f in &self.den {
            let g = f.substitute_monomials(images)?;
            if g.is_zero() {
                return Err(Error::InvalidArgument("substitution annihilates a denominator".into()));
            }
            dens.push(g);
        }
        Ok(Self::from_parts(num, &dens))
    }

    /// Value at `z`; `Error::Pole` with an empty shift if a factor vanishes.
    pub fn evaluate(&self, z: &[Rat]) -> Result<Rat> {
        let mut den = Rat::one();
        for f in &self.den {
            den *= f.evaluate(z)?;
        }
        if den.is_zero() {
            return Err(Error::Pole { shift: Vec::new() });
        }
        Ok(self.num.evaluate(z)? / den)
    }

    /// True when some denominator factor vanishes at `z`.
    pub fn has_pole_at(&self, z: &[Rat]) -> bool {
        self.den
            .iter()
            .any(|f| f.evaluate(z).map(|v| v.is_zero()).unwrap_or(true))
    }

    pub fn to_json(&self) -> CoeffJson {
        CoeffJson {
            num: self.num.to_json(),
            den: self.den().to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn z1() -> LaurentPoly {
        LaurentPoly::var(1, 1)
    }

    fn lin(c: Rat) -> LaurentPoly {
        &LaurentPoly::one(1) - &z1().scale(&c)
    }

    #[test]
    fn factors_are_normalised() {
        // 1 - 1/z normalises to z - 1 with the unit -1/z moved up
        let f = &LaurentPoly::one(1) - &LaurentPoly::var_pow(1, 1, -1);
        let c = CoeffFn::new(LaurentPoly::one(1), vec![f.clone()]).unwrap();
        assert_eq!(c.den_factors()[0], &z1() - &LaurentPoly::one(1));
        let zv = [rat(3, 5)];
        assert_eq!(c.evaluate(&zv).unwrap(), (Rat::one() - rat(5, 3)).recip());
        let d = CoeffFn::new(LaurentPoly::one(1), vec![lin(int(1))]).unwrap();
        assert_eq!(c.den_factors(), d.den_factors());
    }

    #[test]
    fn sums_share_denominators() {
        let a = CoeffFn::new(LaurentPoly::one(1), vec![lin(int(2))]).unwrap();
        let b = CoeffFn::new(z1(), vec![lin(int(2)), lin(int(3))]).unwrap();
        let s = a.add(&b);
        assert_eq!(s.den_factors().len(), 2);
        let zv = [rat(5, 7)];
        assert_eq!(s.evaluate(&zv).unwrap(), a.evaluate(&zv).unwrap() + b.evaluate(&zv).unwrap());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn shift_and_involution_evaluate_consistently() {
        let q = rat(1, 4);
        let c = CoeffFn::new(&z1() + &LaurentPoly::var_pow(1, 1, -2), vec![lin(int(3))]).unwrap();
        let zv = rat(2, 7);
        let sh = c.q_shift(&[1], &q);
        assert_eq!(sh.evaluate(&[zv.clone()]).unwrap(), c.evaluate(&[&zv * &q]).unwrap());
        let inv = c.involution(1).unwrap();
        assert_eq!(inv.evaluate(&[zv.clone()]).unwrap(), c.evaluate(&[zv.recip()]).unwrap());
    }

    #[test]
    fn pole_and_simplify() {
        let c = CoeffFn::new(&LaurentPoly::var_pow(1, 1, 2) - &LaurentPoly::one(1), vec![lin(int(1))]).unwrap();
        assert!(matches!(c.evaluate(&[int(1)]), Err(Error::Pole { .. })));
        let s = c.simplify();
        assert!(s.is_polynomial());
        assert_eq!(s.evaluate(&[int(1)]).unwrap(), int(-2));
    }
}
