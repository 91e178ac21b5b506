//! Sparse multivariate (Laurent) polynomials with named variables.
//!
//! Exponent vectors are indexed by position in `vars` and ordered
//! lexicographically, so the first variable is the most significant. Binary
//! operations merge the variable lists of their operands, which lets
//! polynomials built independently (for example by the text parser) be
//! combined freely.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use super::matrix::{ExactDiv, SquareMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct MultiPoly<F> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn zero_in(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(F::one(), &[(name, 1)])
    }

    pub fn monomial(c: F, powers: &[(&str, i32)]) -> Self {
        let mut vars: Vec<String> = Vec::new();
        for (v, _) in powers {
            if !vars.iter().any(|x| x == v) {
                vars.push(v.to_string());
            }
        }
        let mut e = vec![0; vars.len()];
        for (v, k) in powers {
            e[vars.iter().position(|x| x == v).unwrap()] += k;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { vars, terms }
    }

    /// Builds from exponent vectors over `vars`; repeated vectors add up.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<i32>, F)>,
    ) -> Result<Self> {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidInput(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<i32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Variables that actually occur with a nonzero exponent.
    pub fn support_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] != 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Re-expressed over `vars`, which must contain every variable in use.
    pub fn with_vars(&self, vars: &[&str]) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|x| x == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|e| e[i] == 0) => map.push(None),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "variable {v} not in target list"
                    )))
                }
            }
        }
        let mut out = Self::zero_in(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = k;
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.merged_vars(other);
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        (
            self.with_vars(&names).unwrap(),
            other.with_vars(&names).unwrap(),
        )
    }

    /// Highest exponent of `var` (0 if absent); `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<i32> {
        let i = self.index_of(var);
        self.terms.keys().map(|e| i.map_or(0, |i| e[i])).max()
    }

    pub fn min_degree_in(&self, var: &str) -> Option<i32> {
        let i = self.index_of(var);
        self.terms.keys().map(|e| i.map_or(0, |i| e[i])).min()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn leading_term(&self) -> Option<(&Vec<i32>, &F)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero_in(&[]);
        out.vars = self.vars.clone();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Multiplication by a monomial with exponent vector `shift` over `vars`.
    fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.vars.len()];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m.iter()
            .map(|&x| if x == i32::MAX { 0 } else { x })
            .collect()
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative exponents only for single-term polynomials.
    pub fn pow_i(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        if self.terms.len() != 1 {
            return Err(Error::InvalidInput(
                "negative power of a non-monomial".into(),
            ));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let k = -n;
        let mut ci = F::one();
        for _ in 0..k {
            ci = ci * c.clone();
        }
        let mut terms = BTreeMap::new();
        terms.insert(e.iter().map(|x| -x * k).collect(), F::one() / ci);
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Quotient `s` with `self = q * s`, or `None` if `q` does not divide.
    ///
    /// Monomial factors are split off first so Laurent inputs are handled;
    /// the polynomial parts are then divided by leading terms in lex order,
    /// with per-variable degree bounds guaranteeing termination.
    pub fn exact_divide(&self, q: &Self) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let (p, q) = self.align(q);
        if p.is_zero() {
            return Some(p);
        }
        let mp = p.min_exponents();
        let mq = q.min_exponents();
        let neg = |m: &[i32]| m.iter().map(|x| -x).collect::<Vec<_>>();
        let p0 = p.shift(&neg(&mp));
        let q0 = q.shift(&neg(&mq));
        let bound: Vec<i32> = (0..p.vars.len())
            .map(|i| {
                let dp = p0.terms.keys().map(|e| e[i]).max().unwrap();
                let dq = q0.terms.keys().map(|e| e[i]).max().unwrap();
                dp - dq
            })
            .collect();
        if bound.iter().any(|&b| b < 0) {
            return None;
        }
        let (lq_e, lq_c) = q0
            .leading_term()
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut r = p0;
        let mut quot = MultiPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((le, lc)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i32> = le.iter().zip(&lq_e).map(|(a, b)| a - b).collect();
            if diff.iter().zip(&bound).any(|(d, b)| *d < 0 || d > b) {
                return None;
            }
            let c = lc / lq_c.clone();
            let t = MultiPoly {
                vars: p.vars.clone(),
                terms: BTreeMap::from([(diff.clone(), c.clone())]),
            };
            r = &r - &(&q0 * &t);
            if !F::EXACT {
                r.terms.remove(&le);
            }
            quot.add_term(diff, c);
        }
        let back: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        Some(quot.shift(&back))
    }

    /// Coefficients with respect to `var`, as polynomials in the other
    /// variables (the variable list keeps `var`, with exponent 0).
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        let Some(i) = self.index_of(var) else {
            if !self.is_zero() {
                out.insert(0, self.clone());
            }
            return out;
        };
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            out.entry(e[i])
                .or_insert_with(|| MultiPoly {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                })
                .add_term(ne, c.clone());
        }
        out
    }

    /// Drops `var` from the variable list; it must not occur.
    pub fn drop_var(&self, var: &str) -> Result<Self> {
        let keep: Vec<&str> = self
            .vars
            .iter()
            .map(String::as_str)
            .filter(|v| *v != var)
            .collect();
        self.with_vars(&keep)
    }

    /// Replaces `var` by the polynomial `value`. Negative powers of `var`
    /// require `value` to be a monomial.
    pub fn substitute(&self, var: &str, value: &Self) -> Result<Self> {
        let mut out = Self::zero_in(&[]);
        for (k, c) in self.coefficients_in(var) {
            out = &out + &(&c.drop_var(var)? * &value.pow_i(k)?);
        }
        Ok(out)
    }

    pub fn substitute_value(&self, var: &str, value: F) -> Result<Self> {
        self.substitute(var, &Self::constant(value))
    }

    /// Exchanges the names of two variables.
    pub fn swap_vars(&self, a: &str, b: &str) -> Self {
        let mut out = self.clone();
        for v in out.vars.iter_mut() {
            if v == a {
                *v = b.to_string();
            } else if v == b {
                *v = a.to_string();
            }
        }
        out
    }

    /// Value at a complex point given by `(name, value)` pairs; every
    /// variable in use must be assigned.
    pub fn eval_complex(&self, point: &[(&str, Complex64)]) -> Result<Complex64> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match point.iter().find(|(n, _)| n == v) {
                Some((_, z)) => vals.push(*z),
                None if self.terms.keys().all(|e| e[i] == 0) => vals.push(Complex64::zero()),
                None => return Err(Error::InvalidInput(format!("no value for variable {v}"))),
            }
        }
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut m = c.to_complex();
            for (z, &k) in vals.iter().zip(e) {
                m *= z.powi(k);
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Univariate view in `var`; fails if another variable occurs.
    pub fn to_laurent(&self, var: &str) -> Result<LaurentPoly<F>> {
        let mut terms = Vec::new();
        for (k, c) in self.coefficients_in(var) {
            let c = c.drop_var(var)?;
            if c.support_vars().is_empty() {
                terms.push((k, c.constant_term()));
            } else {
                return Err(Error::InvalidInput(format!(
                    "polynomial is not univariate in {var}"
                )));
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    pub fn from_laurent(p: &LaurentPoly<F>, var: &str) -> Self {
        let mut out = Self::zero_in(&[var]);
        for (e, c) in p.terms() {
            out.add_term(vec![e], c.clone());
        }
        out
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> F {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&k| k == 0))
            .map_or(F::zero(), |(_, c)| c.clone())
    }

    /// Resultant with respect to `var` via the Sylvester determinant. The
    /// result no longer mentions `var`.
    pub fn resultant(&self, other: &Self, var: &str) -> Result<Self> {
        let (p, q) = self.align(other);
        for (name, f) in [("first", &p), ("second", &q)] {
            match (f.min_degree_in(var), f.degree_in(var)) {
                (Some(lo), Some(hi)) if lo >= 0 && hi >= 1 => {}
                (Some(lo), _) if lo < 0 => {
                    return Err(Error::InvalidInput(format!(
                        "{name} argument has negative powers of {var}"
                    )))
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "{name} argument has degree zero in {var}"
                    )))
                }
            }
        }
        let m = p.degree_in(var).unwrap() as usize;
        let n = q.degree_in(var).unwrap() as usize;
        let pc = p.coefficients_in(var);
        let qc = q.coefficients_in(var);
        let zero = MultiPoly {
            vars: p.vars.clone(),
            terms: BTreeMap::new(),
        };
        let coeff = |c: &BTreeMap<i32, Self>, k: usize| {
            c.get(&(k as i32)).cloned().unwrap_or_else(|| zero.clone())
        };
        let size = m + n;
        let sylvester = SquareMatrix::from_fn(size, |i, j| {
            if i < n {
                // row i holds p's coefficients, highest first, starting at column i
                if j >= i && j - i <= m {
                    coeff(&pc, m - (j - i))
                } else {
                    zero.clone()
                }
            } else {
                let r = i - n;
                if j >= r && j - r <= n {
                    coeff(&qc, n - (j - r))
                } else {
                    zero.clone()
                }
            }
        });
        sylvester.det_bareiss().drop_var(var)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, c.to_json()]))
            .collect();
        json!({"vars": self.vars, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("polynomial JSON: {m}"));
        let vars: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| bad("variable names must be strings"))
            })
            .collect::<Result<_>>()?;
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let raw = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("term must be [exps, coeff]"))?;
            let e: Vec<i32> = pair[0]
                .as_array()
                .ok_or_else(|| bad("exponents must be an array"))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .map(|k| k as i32)
                        .ok_or_else(|| bad("exponent must be an integer"))
                })
                .collect::<Result<_>>()?;
            terms.push((e, F::from_json(&pair[1])?));
        }
        Self::from_terms(&names, terms)
    }
}

impl MultiPoly<BigRational> {
    /// Primitive integer form with positive lex-leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, (c * BigRational::from_integer(den.clone())).to_integer());
        }
        let mut s = BigRational::new(den, g);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Whether `self = c * other` for some nonzero rational `c`, certified by
    /// exact division in both directions.
    pub fn equal_up_to_scalar(&self, other: &Self) -> bool {
        match (self.exact_divide(other), other.exact_divide(self)) {
            (Some(a), Some(b)) => {
                a.support_vars().is_empty() && b.support_vars().is_empty() && !a.is_zero()
            }
            _ => false,
        }
    }
}

impl<F: Scalar> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.terms == b.terms
    }
}

impl<F: Scalar> Zero for MultiPoly<F> {
    fn zero() -> Self {
        Self::zero_in(&[])
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> One for MultiPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Scalar> Add<&MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn add(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        let (mut a, b) = self.align(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<F: Scalar> Sub<&MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn sub(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self + &(-rhs)
    }
}

fn exponent_sum(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<F: Scalar> Mul<&MultiPoly<F>> for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn mul(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        let (a, b) = self.align(rhs);
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.add_term(exponent_sum(ea, eb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Scalar> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn neg(self) -> MultiPoly<F> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Scalar> $tr for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn neg(self) -> MultiPoly<F> {
        -&self
    }
}

impl<F: Scalar> ExactDiv for MultiPoly<F> {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.exact_divide(divisor)
    }
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.render();
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type P = MultiPoly<BigRational>;

    fn v(name: &str) -> P {
        P::var(name)
    }

    fn c(n: i64) -> P {
        P::constant(rat(n, 1))
    }

    #[test]
    fn merging_and_equality() {
        let a = &v("x") + &v("y");
        let b = &v("y") + &v("x");
        assert_eq!(a, b);
        assert_eq!(&a - &b, P::zero());
        assert_eq!(a.to_string(), "x + y");
    }

    #[test]
    fn exact_division() {
        let y = v("y");
        let num = &(&y * &y) - &c(1);
        assert_eq!(num.exact_divide(&(&y - &c(1))), Some(&y + &c(1)));
        assert_eq!((&(&y * &y) + &c(1)).exact_divide(&(&y - &c(1))), None);
        let laurent = &y.pow_i(-2).unwrap() * &num;
        assert_eq!(
            laurent.exact_divide(&(&y - &c(1))),
            Some(&y.pow_i(-2).unwrap() * &(&y + &c(1)))
        );
    }

    #[test]
    fn resultants() {
        let w = v("w");
        let r = (&w - &v("y")).resultant(&(&w - &v("z")), "w").unwrap();
        assert!(r == &v("y") - &v("z") || r == &v("z") - &v("y"));
        assert!(r.vars().iter().all(|x| x != "w"));
        let p = &(&w * &w) - &v("y");
        assert!(p.resultant(&p, "w").unwrap().is_zero());
        assert!(p.resultant(&v("y"), "w").is_err());
    }

    #[test]
    fn substitution_and_swap() {
        let p = &(&v("a") * &v("a")) + &v("b");
        let s = p.substitute("a", &(&v("b") + &c(1))).unwrap();
        assert_eq!(s, &(&(&v("b") * &v("b")) + &(&c(3) * &v("b"))) + &c(1));
        assert_eq!(p.swap_vars("a", "b"), &(&v("b") * &v("b")) + &v("a"));
    }

    #[test]
    fn primitive_form() {
        let p = (&v("x") * &P::constant(rat(-2, 3))) + P::constant(rat(4, 9));
        assert_eq!(p.primitive(), &(&c(3) * &v("x")) - &c(2));
        assert!(p.equal_up_to_scalar(&p.primitive()));
    }

    #[test]
    fn json_round_trip() {
        let p = &(&v("y") * &v("z")) - &P::constant(rat(1, 2));
        let back = P::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
