//! The highest coefficient `psi_2` of the twisted Alexander polynomial of
//! 9_35 along `C` and `C'`, certified at solved representations.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{pretzel_935, PlaneCurve};
use crate::error::{Error, Result};
use crate::polyalgebra::{complex_roots, SquareMatrix};
use crate::presentations::{FreeWord, Presentation};
use crate::representations::{solve_representation, Representation, SolveOptions, TraceConstraint};
use crate::scalar::rat;
use crate::twisted::fox_matrix;
use crate::QMultiPoly;

type C = Complex64;

/// Largest accepted `|det A - psi_2(x)|`.
pub const CERTIFICATION_BOUND: f64 = 1e-6;

/// `x^3 + 6x^2 + 6x + 5` in the variable `x = y^2 - z`.
pub fn psi2_polynomial() -> QMultiPoly {
    QMultiPoly::from_terms(
        &["x"],
        [3, 2, 1, 0]
            .into_iter()
            .zip([1, 6, 6, 5])
            .map(|(e, c)| (vec![e], rat(c, 1))),
    )
    .expect("valid terms")
}

pub fn psi2_at(x: C) -> C {
    ((x + 6.0) * x + 6.0) * x + 5.0
}

/// Trace targets `tau_a = tau_b = tau_c = y`, `tau_ab = tau_bc = tau_ca = z`.
pub fn symmetric_targets(p: &Presentation, y: C, z: C) -> Result<Vec<TraceConstraint>> {
    let mut out = Vec::new();
    for (w, val) in [
        ("a", y),
        ("b", y),
        ("c", y),
        ("ab", z),
        ("bc", z),
        ("ca", z),
    ] {
        out.push(TraceConstraint {
            word: FreeWord::parse(w, p.names())?,
            value: val,
        });
    }
    Ok(out)
}

/// `det A`, where `A` is the coefficient of `t` in the Fox matrix with the
/// column of `c` removed.
pub fn leading_block_det(p: &Presentation, rho: &Representation<C>) -> Result<C> {
    let m = fox_matrix(p, rho, 2)?;
    let a = SquareMatrix::from_fn(m.dim(), |i, j| m.get(i, j).coeff(1));
    Ok(a.det())
}

/// Trace identities expected along both curves, as `(word, value at x)`.
pub fn trace_identities(x: C) -> Vec<(&'static str, C)> {
    let x2 = x * x;
    vec![
        ("aB", x),
        ("bC", x),
        ("cA", x),
        ("aBaB", x2 - 2.0),
        ("bCbC", x2 - 2.0),
        ("cAcA", x2 - 2.0),
        ("aBaC", x2 - x),
        ("bCbA", x2 - x),
        ("cAcB", x2 - x),
        ("aBcAbC", -x2 * x + 3.0 * x2 - 2.0),
    ]
}

/// A point of `C` or `C'` at which the certification is carried out.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub curve: String,
    pub y: C,
    pub z: C,
}

/// Sample points: `z = y^2 - 1` on `C`; on `C'` the point `(1, 1)` and the
/// roots in `z` of `C'(y, z)` along a path of `y` values.
pub fn default_sample_points(per_curve: usize) -> Result<Vec<SamplePoint>> {
    let ys = |k: usize| C::new(0.45 + 0.21 * k as f64, 0.3 - 0.07 * k as f64);
    let c = PlaneCurve::c();
    let cp = PlaneCurve::c_prime();
    let mut out: Vec<SamplePoint> = (0..per_curve)
        .map(|k| SamplePoint {
            curve: c.label.clone(),
            y: ys(k),
            z: ys(k) * ys(k) - 1.0,
        })
        .collect();
    let mut on_cp = vec![SamplePoint {
        curve: cp.label.clone(),
        y: C::new(1.0, 0.0),
        z: C::new(1.0, 0.0),
    }];
    let mut k = 0;
    while on_cp.len() < per_curve {
        let y = ys(k) + C::new(0.05, 0.13);
        let slice = cp.slice_in_z(y)?;
        for r in complex_roots(&slice, 1e-12, 1e-8)? {
            if on_cp.len() < per_curve {
                on_cp.push(SamplePoint {
                    curve: cp.label.clone(),
                    y,
                    z: r.value,
                });
            }
        }
        k += 1;
    }
    out.extend(on_cp);
    Ok(out)
}

/// Outcome at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct Psi2Sample {
    pub point: SamplePoint,
    pub x: C,
    pub det_a: C,
    pub expected: C,
    pub deviation: f64,
    /// Largest deviation among the trace identities.
    pub trace_defect: f64,
    pub residual: f64,
}

impl Psi2Sample {
    pub fn to_json(&self) -> Value {
        let c = |z: C| json!([z.re, z.im]);
        json!({
            "curve": self.point.curve,
            "y": c(self.point.y),
            "z": c(self.point.z),
            "x": c(self.x),
            "det_a": c(self.det_a),
            "deviation": self.deviation,
            "trace_defect": self.trace_defect,
            "residual": self.residual,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Psi2Certification {
    pub samples: Vec<Psi2Sample>,
    pub max_deviation: f64,
    pub max_trace_defect: f64,
}

impl Psi2Certification {
    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": psi2_polynomial().to_string(),
            "max_deviation": self.max_deviation,
            "max_trace_defect": self.max_trace_defect,
            "samples": self.samples.iter().map(Psi2Sample::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Solves a representation at one point and compares `det A` with
/// `psi_2(y^2 - z)`.
pub fn certify_point(
    p: &Presentation,
    pt: &SamplePoint,
    opts: &SolveOptions,
) -> Result<Psi2Sample> {
    let rho = solve_representation(p, &symmetric_targets(p, pt.y, pt.z)?, opts)?;
    let x = pt.y * pt.y - pt.z;
    let det_a = leading_block_det(p, &rho)?;
    let expected = psi2_at(x);
    let mut trace_defect: f64 = 0.0;
    for (w, val) in trace_identities(x) {
        let tr = rho.image_of(&FreeWord::parse(w, p.names())?)?.trace();
        trace_defect = trace_defect.max((tr - val).norm());
    }
    Ok(Psi2Sample {
        point: pt.clone(),
        x,
        det_a,
        expected,
        deviation: (det_a - expected).norm(),
        trace_defect,
        residual: rho.residual(),
    })
}

/// Certification over the given points; fails at the first point whose
/// deviation or trace defect exceeds [`CERTIFICATION_BOUND`].
pub fn certify_psi2(points: &[SamplePoint], opts: &SolveOptions) -> Result<Psi2Certification> {
    let p = pretzel_935();
    let samples = points
        .par_iter()
        .map(|pt| certify_point(&p, pt, opts))
        .collect::<Result<Vec<_>>>()?;
    for s in &samples {
        if s.deviation > CERTIFICATION_BOUND || s.trace_defect > CERTIFICATION_BOUND {
            return Err(Error::Certification(format!(
                "at (y, z) = ({}, {}) on {}: |det A - psi_2| = {:.3e}, trace defect {:.3e}",
                s.point.y, s.point.z, s.point.curve, s.deviation, s.trace_defect
            )));
        }
    }
    let max_deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let max_trace_defect = samples.iter().map(|s| s.trace_defect).fold(0.0, f64::max);
    Ok(Psi2Certification {
        samples,
        max_deviation,
        max_trace_defect,
    })
}
