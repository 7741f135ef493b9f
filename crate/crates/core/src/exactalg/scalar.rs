//! The three scalar domains: symbolic Laurent polynomials, big rationals and `f64`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::laurent::LaurentQT;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Relative tolerance used for equality in the float domain.
pub const FLOAT_RTOL: f64 = 1e-9;

/// Float pivots below this fraction of the largest diagonal entry count as zero.
pub const PIVOT_RTOL: f64 = 1e-12;

/// A commutative ring element usable as a matrix entry.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(c: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn from_i64(c: i64) -> Self {
        Self::from_bigint(&BigInt::from(c))
    }

    /// Domain equality: structural for exact domains, tolerant for floats.
    fn approx_eq(&self, rhs: &Self) -> bool {
        self == rhs
    }
}

/// A scalar domain with division, ordered so positivity makes sense.
pub trait Field: Scalar {
    fn div_ref(&self, rhs: &Self) -> Self;
    fn is_positive(&self) -> bool;
    /// Magnitude used to pick pivots.
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;

    fn recip(&self) -> Self {
        Self::one().div_ref(self)
    }

    /// Whether a positive-definiteness pivot counts as positive, relative to
    /// the largest diagonal entry `scale`.
    fn is_significant_pivot(&self, _scale: &Self) -> bool {
        self.is_positive()
    }
}

impl Scalar for LaurentQT {
    fn zero() -> Self {
        LaurentQT::zero()
    }
    fn one() -> Self {
        LaurentQT::one()
    }
    fn from_bigint(c: &BigInt) -> Self {
        LaurentQT::monomial(c.clone(), 0, 0)
    }
    fn is_zero(&self) -> bool {
        LaurentQT::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_bigint(c: &BigInt) -> Self {
        Rational::from_integer(c.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Field for Rational {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn magnitude(&self) -> f64 {
        Field::to_f64(self).abs()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_bigint(c: &BigInt) -> Self {
        c.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn approx_eq(&self, rhs: &Self) -> bool {
        let scale = self.abs().max(rhs.abs()).max(1.0);
        (self - rhs).abs() <= FLOAT_RTOL * scale
    }
}

impl Field for f64 {
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_significant_pivot(&self, scale: &Self) -> bool {
        *self > PIVOT_RTOL * scale.abs()
    }
}

/// Parses `"3"`, `"-1/3"` or a finite decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let value = Rational::new(int_part * &den + frac_part, den);
        return Ok(if negative { -value } else { value });
    }
    s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad())
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Conversion between scalars and their JSON form: polynomial term lists,
/// decimal-string rationals, or plain floats.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;
}

impl JsonScalar for LaurentQT {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
    fn from_json(value: &Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
            other => Err(Error::Parse(format!("expected a rational string, got {other}"))),
        }
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad float {n}"))),
            Value::String(s) => parse_rational(s).map(|r| Field::to_f64(&r)),
            other => Err(Error::Parse(format!("expected a number, got {other}"))),
        }
    }
}
