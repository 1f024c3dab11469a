//! Arbitrary-precision rationals and their canonical string form.

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Canonical `"num/den"` with the fraction in lowest terms and `den > 0`.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to a shifted quotient for huge numerators/denominators.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let scaled = if shift > 0 {
        Rational::new(n.clone(), d << (shift as u64))
    } else {
        Rational::new(n << ((-shift) as u64), d.clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn snap(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot snap a non-finite value");
    assert!(max_den >= 1);
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let max_den = max_den as u128;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e30 {
            break;
        }
        let a = a as u128;
        let q2 = a * q1 + q0;
        if q2 > max_den {
            // largest semiconvergent that still fits
            let k = (max_den - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let cand = ps as f64 / qs as f64;
            let cur = p1 as f64 / q1 as f64;
            if (cand - x.abs()).abs() < (cur - x.abs()).abs() {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - v.floor();
        if frac < 1e-18 {
            break;
        }
        v = 1.0 / frac;
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

/// Rational `s` with `|s - sqrt(x)| <= 2^-bits` and `s <= sqrt(x)`; `x >= 0`.
pub fn sqrt_floor(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return Rational::zero();
    }
    // sqrt(n/d) = sqrt(n*d*4^bits) / (d*2^bits)
    let n = x.numer();
    let d = x.denom();
    let scaled: BigInt = (n * d) << (2 * bits as u64);
    let root = match scaled.sign() {
        BigSign::Minus => unreachable!(),
        _ => scaled.sqrt(),
    };
    Rational::new(root, d << (bits as u64))
}

pub fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapter writing rationals as canonical strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_opt_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format(&rat(18, 2)), "9/1");
        assert_eq!(format(&rat(3, -6)), "-1/2");
        assert_eq!(parse("27/2").unwrap(), rat(27, 2));
        assert_eq!(parse("-4").unwrap(), int(-4));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn snapping_finds_simple_fractions() {
        assert_eq!(snap(0.5, 100), rat(1, 2));
        assert_eq!(snap(-1.25, 100), rat(-5, 4));
        assert_eq!(snap(std::f64::consts::PI, 1000), rat(355, 113));
    }

    #[test]
    fn sqrt_floor_brackets_the_root() {
        let two = int(2);
        let s = sqrt_floor(&two, 80);
        assert!(&s * &s <= two);
        let up = &s + pow2(-80);
        assert!(&up * &up > two);
        assert_eq!(sqrt_floor(&rat(9, 4), 10), rat(3, 2));
    }

    #[test]
    fn huge_values_convert_to_f64() {
        let big = Rational::new(BigInt::one() << 2000u32, BigInt::one() << 1999u32);
        assert!((to_f64(&big) - 2.0).abs() < 1e-12);
    }
}
