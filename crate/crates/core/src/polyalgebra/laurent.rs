//! Univariate Laurent polynomials in `t` over a [`Scalar`] field.
//!
//! Storage is dense: `coeffs[i]` is the coefficient of `t^(low + i)`. The
//! representation is canonical, i.e. either `coeffs` is empty (the zero
//! polynomial) or its first and last entries are nonzero, so derived equality
//! is structural equality for exact fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<F> {
    low: i32,
    coeffs: Vec<F>,
}

impl<F: Scalar> LaurentPoly<F> {
    pub fn from_coeffs(low: i32, coeffs: Vec<F>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, F)>>(terms: I) -> Self {
        let terms: Vec<(i32, F)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![F::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    /// Ascending coefficients starting at `t^0`.
    pub fn from_ascending(coeffs: &[i64]) -> Self {
        Self::from_coeffs(0, coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    pub fn monomial(c: F, exp: i32) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(F::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    pub fn low(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Distance between the highest and lowest exponents.
    pub fn span(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> F {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            F::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Coefficients from `low()` upward, zeros included.
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn trailing(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Shifted so that the lowest exponent is 0.
    pub fn normalized(&self) -> Self {
        LaurentPoly {
            low: 0,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(
            self.low,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// Drops coefficients with magnitude at most `eps * max(1, max_abs)`.
    /// Exact fields are returned unchanged.
    pub fn cleaned(&self, eps: f64) -> Self {
        if F::EXACT {
            return self.clone();
        }
        let cut = eps * self.max_abs().max(1.0);
        Self::from_coeffs(
            self.low,
            self.coeffs
                .iter()
                .map(|c| {
                    if c.magnitude() <= cut {
                        F::zero()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        LaurentPoly::from_coeffs(self.low, self.coeffs.iter().map(f).collect())
    }

    pub fn to_complex(&self) -> LaurentPoly<Complex64> {
        self.map(|c| c.to_complex())
    }

    fn pow_scalar(x: &F, e: i32) -> F {
        let mut acc = F::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * x.clone();
        }
        if e < 0 {
            F::one() / acc
        } else {
            acc
        }
    }

    /// Value at `x` (which must be nonzero if negative exponents occur).
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc * Self::pow_scalar(x, self.low)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex();
        }
        acc * z.powi(self.low)
    }

    /// The polynomial `p(lambda * t)`.
    pub fn substitute_scaled(&self, lambda: &F) -> Self {
        Self::from_coeffs(
            self.low,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * Self::pow_scalar(lambda, self.low + i as i32))
                .collect(),
        )
    }

    /// The polynomial `p(t^n)`; `n = 0` gives the constant `p(1)`.
    pub fn substitute_power(&self, n: u32) -> Self {
        if n == 0 {
            return Self::constant(self.coeffs.iter().cloned().fold(F::zero(), |a, b| a + b));
        }
        Self::from_terms(self.terms().map(|(e, c)| (e * n as i32, c.clone())))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, c.clone() * F::from_i64(e as i64))),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder of the polynomial parts: with
    /// `self = t^a p`, `d = t^b q` and `p = q s + r`, returns
    /// `(t^(a-b) s, t^a r)` so that `self = d * quotient + remainder`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::InvalidInput(
                "division by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let dl = d.coeffs.len();
        let lead = d.coeffs[dl - 1].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dl - 1].clone() / lead.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            rem[i + dl - 1] = F::zero();
            quot[i] = c;
        }
        rem.truncate(dl - 1);
        Ok((
            Self::from_coeffs(self.low - d.low, quot),
            Self::from_coeffs(self.low, rem),
        ))
    }

    /// Quotient when `d` divides `self` exactly (up to units `t^k`).
    /// Floating fields accept a remainder below `1e-9` relative to `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.exact_div_tol(d, 1e-9)
    }

    /// Like [`LaurentPoly::exact_div`] with an explicit relative remainder
    /// tolerance for floating fields.
    pub fn exact_div_tol(&self, d: &Self, tol: f64) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        let ok = if F::EXACT {
            r.is_zero()
        } else {
            r.max_abs() <= tol * self.max_abs().max(d.max_abs()).max(1.0)
        };
        ok.then_some(q)
    }

    /// Monic greatest common divisor, normalized to lowest exponent 0.
    /// Meaningful for exact fields; floating inputs use exact zero tests.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalized();
        let mut b = other.normalized();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.normalized();
        }
        a.monic()
    }

    /// Divided by its leading coefficient (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = F::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Square-free factorization (Yun) of the polynomial part:
    /// returns `(factor, multiplicity)` with monic, pairwise coprime,
    /// square-free, nonconstant factors. Exact fields only.
    pub fn square_free_decomposition(&self) -> Vec<(Self, u32)> {
        let p = self.normalized().monic();
        let mut out = Vec::new();
        if p.span().unwrap_or(0) == 0 {
            return out;
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.exact_div(&a).expect("gcd divides");
        let mut c = dp.exact_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.span().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).expect("gcd divides");
            if b.span().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&g).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in self.terms() {
            m.insert(e.to_string(), c.to_json());
        }
        let mut root = Map::new();
        root.insert("coeffs".into(), Value::Object(m));
        Value::Object(root)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("expected {\"coeffs\": {...}}".into()))?;
        let mut terms = Vec::with_capacity(m.len());
        for (k, c) in m {
            let e: i32 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            terms.push((e, F::from_json(c)?));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<F: Scalar> Zero for LaurentPoly<F> {
    fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Scalar> One for LaurentPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<'a, F: Scalar> Add<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;

    fn add(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.high().unwrap().max(rhs.high().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl<'a, F: Scalar> Sub<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;

    fn sub(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<'a, F: Scalar> Mul<&'a LaurentPoly<F>> for &'a LaurentPoly<F> {
    type Output = LaurentPoly<F>;

    fn mul(self, rhs: &LaurentPoly<F>) -> LaurentPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

impl<F: Scalar> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;

    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<F: Scalar> Add for LaurentPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Scalar> Sub for LaurentPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Scalar> Mul for LaurentPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Scalar> Neg for LaurentPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<F: Scalar> fmt::Display for LaurentPoly<F> {
    /// Conventional notation, highest power first: `7*t^2 - 13*t + 7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i32, &F)> = self.terms().collect();
        for (k, (e, c)) in terms.iter().rev().enumerate() {
            let (neg, body) = c.render();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = body == "1";
            match *e {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if *e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type Q = LaurentPoly<BigRational>;

    fn q(c: &[i64]) -> Q {
        Q::from_ascending(c)
    }

    #[test]
    fn canonical_trim() {
        let p = Q::from_coeffs(-2, vec![rat(0, 1), rat(3, 1), rat(0, 1)]);
        assert_eq!(p.low(), Some(-1));
        assert_eq!(p.high(), Some(-1));
        assert!(Q::from_coeffs(5, vec![rat(0, 1)]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[7, -13, 7]).to_string(), "7*t^2 - 13*t + 7");
        assert_eq!(q(&[0, 0, -1]).to_string(), "-t^2");
        assert_eq!(Q::monomial(rat(1, 2), -1).to_string(), "1/2*t^-1");
        assert_eq!(Q::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let p = q(&[-1, 0, 1]);
        let d = q(&[-1, 1]);
        assert_eq!(p.exact_div(&d), Some(q(&[1, 1])));
        assert_eq!(q(&[1, 0, 1]).exact_div(&d), None);
        let (quo, rem) = q(&[1, 0, 1]).div_rem(&d).unwrap();
        assert_eq!(&(&quo * &d) + &rem, q(&[1, 0, 1]));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = q(&[1, -1, 1]);
        let p = a.pow(3).mul(q(&[-1, 2]));
        let g = p.gcd(&p.derivative());
        assert_eq!(g, a.pow(2));
        let sf = p.square_free_decomposition();
        let mults: Vec<u32> = sf.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 3]);
        assert_eq!(sf[1].0, a);
    }

    #[test]
    fn substitutions() {
        let p = q(&[1, -1, 1]);
        assert_eq!(p.substitute_power(2), q(&[1, 0, -1, 0, 1]));
        assert_eq!(p.substitute_power(0), q(&[1]));
        assert_eq!(p.substitute_scaled(&rat(2, 1)), q(&[1, -2, 4]));
        assert_eq!(p.eval(&rat(2, 1)), rat(3, 1));
    }

    #[test]
    fn json_round_trip() {
        let p = Q::from_terms([(-1, rat(1, 2)), (3, rat(-7, 1))]);
        assert_eq!(Q::from_json(&p.to_json()).unwrap(), p);
    }
}
