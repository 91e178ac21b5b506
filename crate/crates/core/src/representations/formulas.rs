//! Closed-form invariants of reducible representations and satellites.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::Result;
use crate::polyalgebra::{LaurentPoly, LaurentRational};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;
use crate::twisted::TwistedAlex;

/// Whether `lambda^2` is a root of `delta`: `|delta(lambda^2)|` at most
/// `tol` times `sum |c_k| |lambda^2|^k`.
pub fn burde_derham_check<F: Scalar>(delta: &LaurentPoly<F>, lambda: Complex64, tol: f64) -> bool {
    let z = lambda * lambda;
    let scale: f64 = delta
        .terms()
        .map(|(e, c)| c.magnitude() * z.norm().powi(e))
        .sum();
    delta.eval_complex(z).norm() <= tol * scale
}

/// `delta(lambda t) delta(t / lambda) / ((t - lambda)(t - 1/lambda))`,
/// reduced; a nonpolynomial quotient is returned as such.
pub fn reducible_formula<F: Scalar>(
    delta: &LaurentPoly<F>,
    lambda: F,
    tol: &Tolerances,
) -> Result<TwistedAlex<F>> {
    let inv = F::one() / lambda.clone();
    let num = &delta.substitute_scaled(&lambda) * &delta.substitute_scaled(&inv);
    let den = LaurentPoly::from_coeffs(0, vec![F::one(), -(lambda + inv), F::one()]);
    let value = LaurentRational::with_tolerance(num.cleaned(tol.clean), den, tol.division)?;
    Ok(TwistedAlex::from_rational(value, tol))
}

/// `pattern(t) * companion(t^n)`; winding number 0 uses the unit 1 for the
/// companion factor.
pub fn satellite_alexander<F: Scalar>(
    pattern: &LaurentPoly<F>,
    companion: &LaurentPoly<F>,
    n: u32,
) -> LaurentPoly<F> {
    if n == 0 {
        return pattern.clone();
    }
    let c = companion.substitute_power(n);
    if c.is_zero() {
        return LaurentPoly::zero();
    }
    (pattern * &c).normalized()
}
