//! Complex roots of univariate polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_CLUSTER_RADIUS: f64 = 1e-8;

const MAX_ITER: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u32,
}

impl Root {
    pub fn to_json(&self) -> Value {
        json!({"value": [self.value.re, self.value.im], "multiplicity": self.multiplicity})
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn magnitude_sum(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// Simultaneous Aberth-Ehrlich iteration on ascending coefficients whose
/// leading and trailing entries are nonzero.
fn aberth(c: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    // Fujiwara-type radius for the starting circle.
    let radius = (0..n)
        .map(|k| (c[k] / lead).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm() <= 1e-3 * tol * magnitude_sum(c, z[i].norm()) {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    for zi in z.iter_mut() {
        // A few Newton steps sharpen simple roots; stop if they stop helping.
        for _ in 0..3 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *zi - p / dp;
            if horner(c, cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
        let (p, _) = horner(c, *zi);
        if p.norm() > tol * magnitude_sum(c, zi.norm()) {
            return Err(Error::NonConvergence(format!(
                "root iteration left residual {:.3e} at {zi}",
                p.norm()
            )));
        }
    }
    Ok(z)
}

/// Merges approximations closer than `radius`, summing multiplicities.
pub fn cluster(points: &[(Complex64, u32)], radius: f64) -> Vec<Root> {
    let mut out: Vec<(Complex64, u32, u32)> = Vec::new();
    for &(z, m) in points {
        match out.iter_mut().find(|(c, _, _)| (*c - z).norm() <= radius) {
            Some(entry) => {
                let count = entry.2 as f64;
                entry.0 = (entry.0 * count + z) / (count + 1.0);
                entry.1 += m;
                entry.2 += 1;
            }
            None => out.push((z, m, 1)),
        }
    }
    let mut roots: Vec<Root> = out
        .into_iter()
        .map(|(value, multiplicity, _)| Root {
            value,
            multiplicity,
        })
        .collect();
    roots.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    roots
}

/// All roots of the polynomial part of `p` (a factor `t^k`, `k > 0`,
/// contributes the root 0 with multiplicity `k`; negative powers are units).
/// Every root satisfies `|p(r)| <= tol * sum |c_k| |r|^k`; approximations
/// within `radius` are merged.
pub fn complex_roots<F: Scalar>(p: &LaurentPoly<F>, tol: f64, radius: f64) -> Result<Vec<Root>> {
    let span = p
        .span()
        .ok_or_else(|| Error::InvalidInput("roots of the zero polynomial".into()))?;
    let low = p.low().unwrap();
    if span == 0 && low <= 0 {
        return Err(Error::InvalidInput(
            "polynomial of degree 0 has no roots".into(),
        ));
    }
    let c: Vec<Complex64> = p.coeffs().iter().map(|x| x.to_complex()).collect();
    let mut pts: Vec<(Complex64, u32)> = Vec::new();
    if low > 0 {
        pts.push((Complex64::zero(), low as u32));
    }
    if span > 0 {
        pts.extend(aberth(&c, tol)?.into_iter().map(|z| (z, 1)));
    }
    Ok(cluster(&pts, radius))
}

/// Roots of an exact polynomial with exact multiplicities: the square-free
/// decomposition separates multiplicities before any numerics.
pub fn exact_roots(p: &LaurentPoly<BigRational>, tol: f64, radius: f64) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    let mut pts = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        for r in complex_roots(&factor, tol, radius)? {
            pts.push((r.value, mult * r.multiplicity));
        }
    }
    Ok(cluster(&pts, radius))
}

/// Square-free structure of a nonzero exact polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleRootCertificate {
    pub has_simple_root: bool,
    /// `(degree, multiplicity)` of each square-free factor.
    pub factors: Vec<(i32, u32)>,
}

/// Whether `p` has a root of multiplicity one, decided exactly from the
/// square-free decomposition (the factor of multiplicity one is nonconstant).
pub fn has_simple_root(p: &LaurentPoly<BigRational>) -> Result<SimpleRootCertificate> {
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let factors: Vec<(i32, u32)> = p
        .square_free_decomposition()
        .iter()
        .map(|(f, m)| (f.span().unwrap(), *m))
        .collect();
    Ok(SimpleRootCertificate {
        has_simple_root: factors.iter().any(|&(d, m)| m == 1 && d > 0),
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    type Q = LaurentPoly<BigRational>;

    fn near(roots: &[Root], z: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r.value - z).norm() <= tol)
    }

    #[test]
    fn imaginary_pair() {
        let r = complex_roots(&Q::from_ascending(&[1, 0, 1]), 1e-10, 1e-8).unwrap();
        assert_eq!(r.len(), 2);
        assert!(near(&r, Complex64::i(), 1e-10));
        assert!(near(&r, -Complex64::i(), 1e-10));
    }

    #[test]
    fn cubic_with_known_factor() {
        let r = complex_roots(&Q::from_ascending(&[5, 6, 6, 1]), 1e-10, 1e-8).unwrap();
        let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        assert!(near(&r, Complex64::new(-5.0, 0.0), 1e-9));
        assert!(near(&r, w, 1e-9) && near(&r, w.conj(), 1e-9));
    }

    #[test]
    fn exact_multiplicities() {
        let a = Q::from_ascending(&[1, -1, 1]);
        let p = &a.pow(3) * &Q::from_ascending(&[-1, 2]);
        let r = exact_roots(&p, 1e-10, 1e-8).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().map(|x| x.multiplicity).sum::<u32>(), 7);
        let zero_root = complex_roots(&Q::monomial(BigRational::one(), 2), 1e-10, 1e-8).unwrap();
        assert_eq!(
            zero_root,
            vec![Root {
                value: Complex64::zero(),
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn simple_root_predicate() {
        assert!(
            has_simple_root(&Q::from_ascending(&[7, -13, 7]))
                .unwrap()
                .has_simple_root
        );
        let a = Q::from_ascending(&[1, -1, 1]);
        assert!(!has_simple_root(&a.pow(2)).unwrap().has_simple_root);
        let c = has_simple_root(&(&a.pow(3) * &Q::from_ascending(&[-1, 2]))).unwrap();
        assert!(c.has_simple_root);
        assert_eq!(c.factors, vec![(1, 1), (2, 3)]);
        assert!(has_simple_root(&Q::zero()).is_err());
        assert!(!has_simple_root(&Q::one()).unwrap().has_simple_root);
    }
}
