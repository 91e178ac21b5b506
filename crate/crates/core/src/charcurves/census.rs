//! Counting the characters on a plane curve at which `psi_2` takes a given
//! value.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::psi2::{psi2_at, psi2_polynomial};
use super::PlaneCurve;
use crate::error::{Error, Result};
use crate::polyalgebra::{complex_roots, exact_roots};
use crate::tolerance::Tolerances;
use crate::{CLaurent, QLaurent, QMultiPoly};

type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum CensusCount {
    Finite(usize),
    /// `psi_2 - c` vanishes on the whole curve.
    IdenticallySatisfied,
}

/// A character `(y, z)` with `psi_2(y^2 - z) = c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub y: C,
    pub z: C,
    pub multiplicity: u32,
    pub curve_residual: f64,
    pub constraint_residual: f64,
}

impl Witness {
    pub fn x(&self) -> C {
        self.y * self.y - self.z
    }

    pub fn to_json(&self) -> Value {
        json!({
            "y": [self.y.re, self.y.im],
            "z": [self.z.re, self.z.im],
            "multiplicity": self.multiplicity,
            "curve_residual": self.curve_residual,
            "constraint_residual": self.constraint_residual,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusResult {
    pub curve: String,
    pub value: C,
    pub count: CensusCount,
    pub witnesses: Vec<Witness>,
}

impl CensusResult {
    pub fn is_identically_satisfied(&self) -> bool {
        self.count == CensusCount::IdenticallySatisfied
    }

    pub fn finite_count(&self) -> Option<usize> {
        match self.count {
            CensusCount::Finite(n) => Some(n),
            CensusCount::IdenticallySatisfied => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let count = match self.count {
            CensusCount::Finite(n) => json!(n),
            CensusCount::IdenticallySatisfied => json!("identically-satisfied"),
        };
        json!({
            "curve": self.curve,
            "value": [self.value.re, self.value.im],
            "count": count,
            "witnesses": self.witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `G(x, y) = curve(y, y^2 - x)`, coefficients in `y` as polynomials in `x`.
fn y_coefficients(curve: &PlaneCurve) -> Result<Vec<QLaurent>> {
    let sub = &QMultiPoly::var("y").pow(2) - &QMultiPoly::var("x");
    let g = curve.poly.substitute("z", &sub)?;
    let Some(deg) = g.degree_in("y") else {
        return Ok(Vec::new());
    };
    let coeffs = g.coefficients_in("y");
    (0..=deg)
        .map(|k| match coeffs.get(&k) {
            Some(c) => c.drop_var("y")?.to_laurent("x"),
            None => Ok(QLaurent::zero()),
        })
        .collect()
}

fn line_error(x0: C) -> Error {
    Error::InvalidInput(format!("curve contains the whole line y^2 - z = {x0}"))
}

/// Roots `x0` of `psi_2 - c` paired with the exact `y`-degree of `G(x0, y)`.
///
/// Writing `q = psi_2 - c`, the factor `q / gcd(q, g_k)` collects the roots
/// at which the `y^k` coefficient `g_k` survives; the gcd is passed on to
/// `g_{k-1}`, and so on down to the constant coefficient.
fn exact_groups(q: &QLaurent, gy: &[QLaurent], tol: &Tolerances) -> Result<Vec<(C, u32, usize)>> {
    let mut out = Vec::new();
    let mut q = q.clone();
    let low = q.low().unwrap_or(0);
    if low > 0 {
        // x = 0 is a unit for Laurent gcds; decide its degree directly.
        let at0: Vec<BigRational> = gy.iter().map(|c| c.coeff(0)).collect();
        let k = at0
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| line_error(C::zero()))?;
        out.push((C::zero(), low as u32, k));
        q = q.shift(-low);
    }
    for k in (0..gy.len()).rev() {
        if q.span().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let g = q.gcd(&gy[k].normalized());
        let piece = q.exact_div(&g).expect("gcd divides");
        if piece.span().unwrap_or(0) > 0 {
            for r in exact_roots(&piece, tol.residual * 1e-4, tol.cluster)? {
                out.push((r.value, r.multiplicity, k));
            }
        }
        q = g;
    }
    if q.span().unwrap_or(0) > 0 {
        let r = exact_roots(&q, tol.residual * 1e-4, tol.cluster)?;
        return Err(line_error(r[0].value));
    }
    Ok(out)
}

fn numeric_groups(q: &CLaurent, gy: &[QLaurent], tol: &Tolerances) -> Result<Vec<(C, u32, usize)>> {
    let mut out = Vec::new();
    for r in complex_roots(q, tol.residual * 1e-4, tol.cluster)? {
        let vals: Vec<C> = gy.iter().map(|c| c.eval_complex(r.value)).collect();
        let scale = vals.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let k = vals
            .iter()
            .rposition(|v| v.norm() > tol.clean * scale)
            .ok_or_else(|| line_error(r.value))?;
        out.push((r.value, r.multiplicity, k));
    }
    Ok(out)
}

/// Distinct points `(y, z)` of `curve` with `psi_2(y^2 - z) = c`, or
/// [`CensusCount::IdenticallySatisfied`] if the curve divides
/// `psi_2(y^2 - z) - c`. Real `c` is handled in exact arithmetic.
pub fn census(curve: &PlaneCurve, c: C, tol: &Tolerances) -> Result<CensusResult> {
    let psi = psi2_polynomial();
    let exact_c = if c.im == 0.0 {
        BigRational::from_float(c.re)
    } else {
        None
    };
    let gy = y_coefficients(curve)?;
    let groups = match &exact_c {
        Some(cq) => {
            let shifted = &psi - &QMultiPoly::constant(cq.clone());
            let x_sub = &QMultiPoly::var("y").pow(2) - &QMultiPoly::var("z");
            let on_curve = shifted.substitute("x", &x_sub)?;
            if on_curve.is_zero() || on_curve.exact_divide(&curve.poly).is_some() {
                return Ok(CensusResult {
                    curve: curve.label.clone(),
                    value: c,
                    count: CensusCount::IdenticallySatisfied,
                    witnesses: Vec::new(),
                });
            }
            exact_groups(&shifted.to_laurent("x")?, &gy, tol)?
        }
        None => {
            let q = psi.to_laurent("x")?.to_complex() - CLaurent::constant(c);
            numeric_groups(&q, &gy, tol)?
        }
    };
    let mut pts: Vec<(C, C, u32)> = Vec::new();
    for (x0, mx, k) in groups {
        if k == 0 {
            continue;
        }
        let slice = CLaurent::from_terms(
            gy[..=k]
                .iter()
                .enumerate()
                .map(|(j, c)| (j as i32, c.eval_complex(x0))),
        );
        for r in complex_roots(&slice, tol.residual * 1e-4, tol.cluster)? {
            pts.push((r.value, r.value * r.value - x0, mx * r.multiplicity));
        }
    }
    let witnesses = merge_points(&pts, tol.cluster)
        .into_iter()
        .map(|(y, z, m)| -> Result<Witness> {
            Ok(Witness {
                y,
                z,
                multiplicity: m,
                curve_residual: curve.residual(y, z)?,
                constraint_residual: (psi2_at(y * y - z) - c).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for w in &witnesses {
        if w.curve_residual > tol.residual || w.constraint_residual > tol.residual {
            return Err(Error::Certification(format!(
                "census witness ({}, {}) has residuals {:.3e}, {:.3e}",
                w.y, w.z, w.curve_residual, w.constraint_residual
            )));
        }
    }
    Ok(CensusResult {
        curve: curve.label.clone(),
        value: c,
        count: CensusCount::Finite(witnesses.len()),
        witnesses,
    })
}

/// Clusters points of `C^2` closer than `radius` (in the max norm),
/// summing multiplicities.
fn merge_points(pts: &[(C, C, u32)], radius: f64) -> Vec<(C, C, u32)> {
    let mut out: Vec<(C, C, u32)> = Vec::new();
    for &(y, z, m) in pts {
        match out
            .iter_mut()
            .find(|(a, b, _)| (*a - y).norm().max((*b - z).norm()) <= radius)
        {
            Some(e) => e.2 += m,
            None => out.push((y, z, m)),
        }
    }
    // Deterministic order by y, then z.
    let key = |p: &(C, C, u32)| (p.0.re, p.0.im, p.1.re, p.1.im);
    out.sort_by(|a, b| {
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn substituted_curve_polynomial() {
        // curve(y, y^2 - x) for C' is (x^2 + x + 1) y^2 - (x + 1)^3
        let gy = y_coefficients(&PlaneCurve::c_prime()).unwrap();
        assert_eq!(gy.len(), 3);
        assert_eq!(gy[2], QLaurent::from_ascending(&[1, 1, 1]));
        assert!(gy[1].is_zero());
        assert_eq!(gy[0], QLaurent::from_ascending(&[-1, -3, -3, -1]));
        let gc = y_coefficients(&PlaneCurve::c()).unwrap();
        assert_eq!(gc, vec![QLaurent::from_ascending(&[-1, 1])]);
    }

    #[test]
    fn counts_on_c_prime() {
        let cp = PlaneCurve::c_prime();
        let monic = census(&cp, C::new(1.0, 0.0), &tol()).unwrap();
        assert_eq!(monic.count, CensusCount::Finite(6));
        let zero = census(&cp, C::new(0.0, 0.0), &tol()).unwrap();
        assert_eq!(zero.count, CensusCount::Finite(2));
        for w in &zero.witnesses {
            assert!((w.x() + 5.0).norm() < 1e-9);
            assert!((w.y * w.y + 64.0 / 21.0).norm() < 1e-9);
        }
    }

    #[test]
    fn counts_on_c() {
        let c = PlaneCurve::c();
        assert!(census(&c, C::new(18.0, 0.0), &tol())
            .unwrap()
            .is_identically_satisfied());
        assert_eq!(
            census(&c, C::new(1.0, 0.0), &tol()).unwrap().count,
            CensusCount::Finite(0)
        );
    }

    #[test]
    fn complex_value_uses_numeric_path() {
        let r = census(&PlaneCurve::c_prime(), C::new(1.0, 0.5), &tol()).unwrap();
        assert_eq!(r.count, CensusCount::Finite(6));
    }

    #[test]
    fn root_at_zero_is_handled() {
        // psi_2(0) = 5, and G(0, y) = y^2 - 1 on C'
        let r = census(&PlaneCurve::c_prime(), C::new(5.0, 0.0), &tol()).unwrap();
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.x().norm() < 1e-12 && (w.y - 1.0).norm() < 1e-9));
    }
}
