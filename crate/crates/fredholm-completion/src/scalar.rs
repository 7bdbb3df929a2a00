//! Exact complex-rational scalars for the symbolic layer.
//!
//! Equality tests like "does the diagonal entry hit λ" must be exact, so all
//! spectral parameters are rationals; floating point enters only in the
//! truncation verifier.

use nalgebra::{Complex, RealField};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use num_traits::FromPrimitive;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_int(re: i64) -> Self {
        CRat::new(BigRational::from_integer(BigInt::from(re)), BigRational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        CRat::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    /// `re/d + (im/d)i` for quick exact fractions in tests and fixtures.
    pub fn from_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        CRat::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> CRat {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, exact.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact reciprocal; `None` for zero.
    pub fn recip(&self) -> Option<CRat> {
        let d = self.abs_sq();
        if d.is_zero() {
            return None;
        }
        Some(CRat::new(&self.re / &d, -(&self.im / &d)))
    }

    /// Upper bound on `|z|` usable for norm estimates (not exact).
    pub fn abs_upper(&self) -> f64 {
        self.abs_sq().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn to_complex<R: RealField + FromPrimitive>(&self) -> Complex<R> {
        Complex::new(rat_to_float(&self.re), rat_to_float(&self.im))
    }
}

pub fn rat_to_float<R: RealField + FromPrimitive>(r: &BigRational) -> R {
    R::from_f64(r.to_f64().unwrap_or(f64::NAN)).unwrap()
}

impl Add for &CRat {
    type Output = CRat;
    fn add(self, rhs: &CRat) -> CRat {
        CRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &CRat {
    type Output = CRat;
    fn sub(self, rhs: &CRat) -> CRat {
        CRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &CRat {
    type Output = CRat;
    fn mul(self, rhs: &CRat) -> CRat {
        CRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl CRat {
    /// Exact division; `None` when `rhs` is zero.
    pub fn div(&self, rhs: &CRat) -> Option<CRat> {
        rhs.recip().map(|r| self * &r)
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}i", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal like `"0.05"` or `"-2.5"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigRational::new(f, scale);
        let whole = BigRational::from_integer(i);
        return Some(if negative { whole - frac } else { whole + frac });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn rat_one() -> BigRational {
    BigRational::one()
}

/// `1/k` for a 1-based position `k`.
pub fn rat_recip_of(k: usize) -> BigRational {
    rat_one() / BigRational::from_integer(BigInt::from(k as u64))
}

// JSON form: a two-element array [re, im] where each part is an integer or
// a string holding "p/q" or a plain decimal.
impl Serialize for CRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.re.to_string())?;
        t.serialize_element(&self.im.to_string())?;
        t.end()
    }
}

struct PartVisitor;

impl<'de> Visitor<'de> for PartVisitor {
    type Value = BigRational;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a rational/decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(BigInt::from(v)))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(BigInt::from(v)))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigRational, E> {
        parse_rational(v).ok_or_else(|| E::custom(format!("not an exact rational: {v:?}")))
    }
}

#[derive(Debug)]
struct Part(BigRational);

impl<'de> Deserialize<'de> for Part {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(PartVisitor).map(Part)
    }
}

impl<'de> Deserialize<'de> for CRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CRat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a [re, im] pair of exact rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<CRat, A::Error> {
                let re: Part = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: Part = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<serde_json::Value>()?.is_some() {
                    return Err(de::Error::custom("expected exactly two components"));
                }
                Ok(CRat::new(re.0, im.0))
            }
        }
        d.deserialize_seq(V)
    }
}
