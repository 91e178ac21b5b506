//! The Wada invariant (twisted Alexander polynomial) of a presentation and
//! a 2-dimensional representation.

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyalgebra::{det_laurent, LaurentPoly, LaurentRational, SquareMatrix};
use crate::presentations::{
    abelianization_exponent, fox_derivative, GroupRingElement, Presentation,
};
use crate::representations::Representation;
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

/// A twisted Alexander invariant together with the data read off from it.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedAlex<F> {
    value: LaurentRational<F>,
    polynomial: Option<LaurentPoly<F>>,
    degree: Option<i32>,
    leading: Complex64,
    monic: bool,
}

impl<F: Scalar> TwistedAlex<F> {
    /// Normalizes a polynomial quotient by a power of `t` (never by `-1`) so
    /// its lowest exponent is 0, after dropping negligible coefficients. A
    /// nonpolynomial quotient gets numerator and denominator starting at `t^0`.
    pub fn from_rational(value: LaurentRational<F>, tol: &Tolerances) -> Self {
        let Some(p) = value.as_polynomial() else {
            let ratio = value
                .numerator()
                .leading()
                .map_or(Complex64::zero(), |c| c.to_complex())
                / value.denominator().leading().unwrap().to_complex();
            // numerator and denominator each start at t^0
            let value = LaurentRational::with_tolerance(
                value.numerator().normalized(),
                value.denominator().normalized(),
                tol.division,
            )
            .expect("nonzero denominator");
            return TwistedAlex {
                value,
                polynomial: None,
                degree: None,
                leading: ratio,
                monic: false,
            };
        };
        let p = p.cleaned(tol.clean).normalized();
        let leading = p.leading().map_or(Complex64::zero(), |c| c.to_complex());
        let monic = match p.leading() {
            None => false,
            Some(c) if F::EXACT => c.is_one(),
            Some(c) => (c.to_complex() - Complex64::new(1.0, 0.0)).norm() <= tol.monic,
        };
        TwistedAlex {
            degree: p.high(),
            polynomial: Some(p.clone()),
            value: LaurentRational::from_poly(p),
            leading,
            monic,
        }
    }

    pub fn from_polynomial(p: LaurentPoly<F>, tol: &Tolerances) -> Self {
        Self::from_rational(LaurentRational::from_poly(p), tol)
    }

    pub fn value(&self) -> &LaurentRational<F> {
        &self.value
    }

    /// The normalized polynomial, when the invariant is one.
    pub fn polynomial(&self) -> Option<&LaurentPoly<F>> {
        self.polynomial.as_ref()
    }

    /// Span of the normalized polynomial; `None` if zero or not polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.degree
    }

    pub fn leading(&self) -> Complex64 {
        self.leading
    }

    pub fn is_monic(&self) -> bool {
        self.monic
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial.is_some()
    }

    pub fn to_json(&self, nontrivial: bool) -> Value {
        let poly = match &self.polynomial {
            Some(p) => p.to_json(),
            None => self.value.to_json(),
        };
        json!({
            "polynomial": poly,
            "text": self.value.to_string(),
            "degree": self.degree,
            "leading": [self.leading.re, self.leading.im],
            "monic": self.monic,
            "genus_lower_bound": genus_lower_bound(self, nontrivial),
        })
    }
}

/// `Phi(e) = sum n_w t^alpha(w) rho(w)` as a 2x2 matrix of Laurent polynomials.
pub fn phi_evaluate<F: Scalar>(
    e: &GroupRingElement,
    rho: &Representation<F>,
) -> Result<SquareMatrix<LaurentPoly<F>>> {
    let mut out: SquareMatrix<LaurentPoly<F>> = SquareMatrix::zeros(2);
    for (w, n) in e.terms() {
        let m = rho.image_of(w)?;
        let exp = abelianization_exponent(w) as i32;
        let c = F::from_i64(n);
        for i in 0..2 {
            for j in 0..2 {
                let term = LaurentPoly::monomial(c.clone() * m.get(i, j).clone(), exp);
                let cur = out.get(i, j).clone();
                out.set(i, j, cur + term);
            }
        }
    }
    Ok(out)
}

/// `Phi` applied to the Fox matrix with column `k` removed: a square matrix
/// of `2 x 2` blocks, rows indexed by relators.
pub fn fox_matrix<F: Scalar>(
    p: &Presentation,
    rho: &Representation<F>,
    k: usize,
) -> Result<SquareMatrix<LaurentPoly<F>>> {
    let n = p.generator_count();
    let cols: Vec<usize> = (0..n).filter(|&j| j != k).collect();
    let size = 2 * cols.len();
    let mut m = SquareMatrix::zeros(size);
    for (bi, r) in p.relators().iter().enumerate() {
        for (bj, &j) in cols.iter().enumerate() {
            let block = phi_evaluate(&fox_derivative(r, j), rho)?;
            for a in 0..2 {
                for b in 0..2 {
                    m.set(2 * bi + a, 2 * bj + b, block.get(a, b).clone());
                }
            }
        }
    }
    Ok(m)
}

/// `det Phi(M_k) / det Phi(gamma_k - 1)`, with `k` defaulting to the last
/// generator.
pub fn wada_invariant<F: Scalar>(
    p: &Presentation,
    rho: &Representation<F>,
    k: Option<usize>,
    tol: &Tolerances,
) -> Result<TwistedAlex<F>> {
    if !p.is_deficiency_one() {
        return Err(Error::InvalidInput(
            "presentation does not have deficiency one".into(),
        ));
    }
    let n = p.generator_count();
    let k = k.unwrap_or(n - 1);
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "column {k} out of range for {n} generators"
        )));
    }
    let num = det_laurent(&fox_matrix(p, rho, k)?).cleaned(tol.clean);
    let g = &rho.images()[k];
    let det = g.get(0, 0).clone() * g.get(1, 1).clone() - g.get(0, 1).clone() * g.get(1, 0).clone();
    let den = LaurentPoly::from_coeffs(0, vec![F::one(), -g.trace(), det]).cleaned(tol.clean);
    if den.is_zero() {
        return Err(Error::VanishingDenominator(k));
    }
    let value = LaurentRational::with_tolerance(num.clone(), den.clone(), tol.division)?;
    if !value.is_polynomial()
        && !rho.is_abelian(if F::EXACT { 0.0 } else { 1e-9 })
        && rho.det_drift() <= 1e-9
    {
        let (_, r) = num.div_rem(&den)?;
        let rel = r.max_abs() / num.max_abs().max(den.max_abs()).max(1.0);
        return Err(Error::NonPolynomial(rel));
    }
    Ok(TwistedAlex::from_rational(value, tol))
}

/// The Alexander polynomial: the Fox matrix under `gamma -> t` with the
/// last column removed, normalized to lowest exponent 0 and positive
/// leading coefficient.
pub fn alexander(p: &Presentation) -> Result<LaurentPoly<num_rational::BigRational>> {
    type Q = num_rational::BigRational;
    if !p.is_deficiency_one() {
        return Err(Error::InvalidInput(
            "presentation does not have deficiency one".into(),
        ));
    }
    let n = p.generator_count();
    let m = SquareMatrix::from_fn(n - 1, |i, j| {
        LaurentPoly::from_terms(
            fox_derivative(&p.relators()[i], j)
                .terms()
                .map(|(w, c)| (abelianization_exponent(w) as i32, Q::from_i64(c))),
        )
    });
    let d = m.det_bareiss();
    if d.is_zero() {
        return Err(Error::ZeroDeterminant(
            "Fox matrix minor vanishes; not a knot group presentation".into(),
        ));
    }
    let d = d.normalized();
    Ok(if d.leading().unwrap() < &Q::zero() {
        -d
    } else {
        d
    })
}

/// Smallest `g` with `4g - 2 >= deg`. Degree 0 (or no degree) gives 1 for
/// inputs flagged as nontrivial knots and 0 otherwise.
pub fn genus_lower_bound<F: Scalar>(ta: &TwistedAlex<F>, nontrivial: bool) -> i32 {
    match ta.degree() {
        Some(d) if d > 0 => (d + 2 + 3) / 4,
        _ => i32::from(nontrivial),
    }
}

/// `deg = 4g - 2`; false for a zero or nonpolynomial invariant.
pub fn determines_genus<F: Scalar>(ta: &TwistedAlex<F>, g: u32) -> bool {
    ta.degree() == Some(4 * g as i32 - 2)
}

/// Coefficients `psi_0 .. psi_{4g-2}` of the normalized invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientProfile {
    pub genus: u32,
    pub psi: Vec<Complex64>,
}

impl CoefficientProfile {
    /// A polynomial of lower degree sits in the middle of the window, where
    /// the symmetry `psi_k = psi_{4g-2-k}` places it.
    pub fn from_twisted<F: Scalar>(ta: &TwistedAlex<F>, g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidInput("genus must be positive".into()));
        }
        let top = 4 * g as i32 - 2;
        let p = ta.polynomial().ok_or(Error::NonPolynomial(f64::NAN))?;
        let mut psi = vec![Complex64::zero(); top as usize + 1];
        if let Some(d) = ta.degree() {
            if d > top {
                return Err(Error::DegreeExceedsBound {
                    degree: d,
                    bound: top,
                });
            }
            let off = (top - d) / 2;
            for (e, c) in p.terms() {
                psi[(e + off) as usize] = c.to_complex();
            }
        }
        Ok(CoefficientProfile { genus: g, psi })
    }

    /// `max_k |psi_k - psi_{4g-2-k}|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.psi.len();
        (0..n)
            .map(|k| (self.psi[k] - self.psi[n - 1 - k]).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({"genus": self.genus, "psi": self.psi.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>()})
    }
}

pub fn coefficient_profile<F: Scalar>(
    p: &Presentation,
    rho: &Representation<F>,
    g: u32,
    tol: &Tolerances,
) -> Result<CoefficientProfile> {
    CoefficientProfile::from_twisted(&wada_invariant(p, rho, None, tol)?, g)
}
