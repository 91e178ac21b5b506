//! Coefficient fields.
//!
//! Everything polynomial in this crate is generic over [`Scalar`]: exact
//! rationals ([`BigRational`]) for data derived from presentations and exact
//! algebra, and floating values (`f64`, [`Complex64`]) where representations
//! are only known numerically.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A commutative coefficient field.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    /// Whether arithmetic is exact; decides between fraction-free and
    /// pivoting elimination, and between exact gcds and tolerance tests.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn magnitude(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Inverse of [`Scalar::to_complex`] for floating fields; `None` for exact ones.
    fn from_complex(z: Complex64) -> Option<Self>;

    fn is_negligible(&self, eps: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= eps
        }
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    /// Renders the coefficient for polynomial text output. The flag reports a
    /// leading minus sign that the caller may fold into the joining operator.
    fn render(&self) -> (bool, String);
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_complex(_: Complex64) -> Option<Self> {
        None
    }

    fn to_json(&self) -> Value {
        json!(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected \"num/den\" string, got {v}")))?;
        parse_rational(s)
    }

    fn render(&self) -> (bool, String) {
        let a = self.abs();
        let s = if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        (self.is_negative(), s)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        Some(z.re)
    }

    fn to_json(&self) -> Value {
        json!([*self, 0.0])
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(complex_from_json(v)?.re)
    }

    fn render(&self) -> (bool, String) {
        (*self < 0.0, format!("{}", self.abs()))
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn from_complex(z: Complex64) -> Option<Self> {
        Some(z)
    }

    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        complex_from_json(v)
    }

    fn render(&self) -> (bool, String) {
        if self.im == 0.0 {
            (self.re < 0.0, format!("{}", self.re.abs()))
        } else if self.re == 0.0 {
            (self.im < 0.0, format!("{}i", self.im.abs()))
        } else {
            let sign = if self.im < 0.0 { '-' } else { '+' };
            (false, format!("({}{}{}i)", self.re, sign, self.im.abs()))
        }
    }
}

/// Parses `"p"`, `"p/q"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(BigRational::from_integer(n));
    }
    let f: f64 = s.parse().map_err(|_| bad())?;
    BigRational::from_float(f).ok_or_else(bad)
}

/// Exact rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse(format!("expected [re, im], got {v}")))?;
    let part = |x: &Value| {
        x.as_f64()
            .ok_or_else(|| Error::Parse(format!("bad number {x}")))
    };
    Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rational("-13").unwrap(), rat(-13, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = rat(-3, 4);
        assert_eq!(BigRational::from_json(&q.to_json()).unwrap(), q);
        let z = Complex64::new(1.5, -2.0);
        assert_eq!(Complex64::from_json(&z.to_json()).unwrap(), z);
    }

    #[test]
    fn negligibility() {
        assert!(!rat(1, 1_000_000_000).is_negligible(1.0));
        assert!(1e-12f64.is_negligible(1e-10));
        assert!(!Complex64::new(0.0, 1e-9).is_negligible(1e-10));
    }
}
