//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let e = i32::try_from(exp).expect("exponent out of range");
    num_traits::Pow::pow(base, e)
}

/// Nonnegative square root when `x` is a square in Q.
pub fn sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Canonical string form: `p/q`, or `p` when the denominator is one.
pub fn fmt(x: &Rat) -> String {
    x.to_string()
}

/// Parses `p/q`, `p`, or a finite decimal like `0.25`.
pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rat::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Nonzero rational with numerator and denominator bounded by `bound`.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n != 0 {
            return rat(n, d);
        }
    }
}

/// Random rational with small numerator and denominator, possibly zero.
pub fn random_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rat {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse("-1.5").unwrap(), rat(-3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-1, 4)), None);
    }

    #[test]
    fn canonical_format() {
        assert_eq!(fmt(&rat(6, 4)), "3/2");
        assert_eq!(fmt(&int(5)), "5");
        assert_eq!(pow(&rat(1, 2), -3), int(8));
    }
}
