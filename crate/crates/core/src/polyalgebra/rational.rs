//! Quotients of Laurent polynomials.

use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `numerator / denominator`, kept reduced.
///
/// Exact fields divide out the gcd. Floating fields cannot compute gcds
/// reliably, so reduction only detects the polynomial case: when the
/// denominator divides the numerator within the tolerance the quotient is
/// stored over `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentRational<F> {
    num: LaurentPoly<F>,
    den: LaurentPoly<F>,
}

impl<F: Scalar> LaurentRational<F> {
    /// Reduced quotient with the default floating tolerance `1e-9`.
    pub fn new(num: LaurentPoly<F>, den: LaurentPoly<F>) -> Result<Self> {
        Self::with_tolerance(num, den, 1e-9)
    }

    pub fn with_tolerance(num: LaurentPoly<F>, den: LaurentPoly<F>, tol: f64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let mut r = LaurentRational { num, den };
        r.reduce(tol);
        Ok(r)
    }

    pub fn from_poly(p: LaurentPoly<F>) -> Self {
        LaurentRational {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    fn reduce(&mut self, tol: f64) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        if F::EXACT {
            let g = self.num.gcd(&self.den);
            self.num = self.num.exact_div(&g).expect("gcd divides");
            self.den = self.den.exact_div(&g).expect("gcd divides");
        } else if let Some(q) = self.num.exact_div_tol(&self.den, tol) {
            self.num = q;
            self.den = LaurentPoly::one();
            return;
        }
        // Move units into the numerator so that a polynomial quotient has
        // denominator exactly 1.
        if self.den.span() == Some(0) {
            let d = self.den.clone();
            let c = d.leading().unwrap().clone();
            let inv = F::one() / c;
            self.num = self.num.scale(&inv).shift(-d.low().unwrap());
            self.den = LaurentPoly::one();
        }
    }

    pub fn numerator(&self) -> &LaurentPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPoly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn to_json(&self) -> Value {
        json!({"numerator": self.num.to_json(), "denominator": self.den.to_json()})
    }
}

impl<F: Scalar> fmt::Display for LaurentRational<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_complex::Complex64;
    use num_rational::BigRational;

    type Q = LaurentPoly<BigRational>;

    #[test]
    fn exact_reduction() {
        let a = Q::from_ascending(&[-1, 1]);
        let b = Q::from_ascending(&[1, 1]);
        let r = LaurentRational::new(&a * &b, &a * &Q::from_ascending(&[2])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &b.scale(&rat(1, 2)));
        assert_eq!(r.denominator(), &Q::one());
        let s = LaurentRational::new(b.clone(), a.clone()).unwrap();
        assert!(!s.is_polynomial());
    }

    #[test]
    fn monomial_denominator_is_a_unit() {
        let r =
            LaurentRational::new(Q::from_ascending(&[1, 2]), Q::monomial(rat(2, 1), 3)).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(
            r.numerator(),
            &Q::from_coeffs(-3, vec![rat(1, 2), rat(1, 1)])
        );
    }

    #[test]
    fn floating_polynomial_detection() {
        let a = Q::from_ascending(&[7, -13, 7]).to_complex();
        let b = Q::from_ascending(&[1, -1, 1]).to_complex();
        let r = LaurentRational::new(&a * &b, b.clone()).unwrap();
        assert!(r.is_polynomial());
        assert!((r.numerator() - &a).max_abs() < 1e-12);
        let s = LaurentRational::new(LaurentPoly::<Complex64>::one(), b).unwrap();
        assert!(!s.is_polynomial());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(LaurentRational::new(Q::one(), Q::zero()).is_err());
    }
}
