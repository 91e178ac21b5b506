//! Character curves of the knot 9_35 and the highest coefficient of its
//! twisted Alexander polynomials along them.
//!
//! The curves `C` and `C'` in the coordinates `y = tau_a` and `z = tau_ab`
//! come out of the trace polynomials `r_m` by a change of variables and the
//! elimination of `w`; [`psi2`] certifies the closed form of the highest
//! coefficient at solved representations and [`census`] counts characters
//! with a prescribed highest coefficient in exact arithmetic.

pub mod census;
pub mod hlm;
pub mod psi2;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentations::{parse_presentation, Presentation};
use crate::representations::{solve_representation, SolveOptions};
use crate::tolerance::Tolerances;
use crate::twisted::{alexander, wada_invariant};
use crate::{CLaurent, QMultiPoly};

pub use census::{census, CensusCount, CensusResult, Witness};
pub use hlm::{change_of_variables, eliminate_w, hlm_r, r6_factorization_holds, Elimination};
pub use psi2::{
    certify_psi2, default_sample_points, leading_block_det, psi2_polynomial, symmetric_targets,
    Psi2Certification, SamplePoint,
};

type C = Complex64;

/// Meridional presentation of 9_35 with its two relators.
pub const PRETZEL_935: &str = "gens: a b c\nrel: aBabAbCbCBcB\nrel: bCbcBcAcACaC\n";

pub fn pretzel_935() -> Presentation {
    parse_presentation(PRETZEL_935).expect("built-in presentation parses")
}

/// A curve in the `(y, z)` plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    pub poly: QMultiPoly,
    pub label: String,
}

impl PlaneCurve {
    /// Normalizes to the primitive integer form with positive leading
    /// coefficient; only `y` and `z` may occur.
    pub fn new(poly: &QMultiPoly, label: &str) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::InvalidInput(
                "zero polynomial does not define a curve".into(),
            ));
        }
        if let Some(v) = poly
            .support_vars()
            .into_iter()
            .find(|v| v != "y" && v != "z")
        {
            return Err(Error::InvalidInput(format!(
                "plane curves use y and z, found {v}"
            )));
        }
        Ok(PlaneCurve {
            poly: poly.with_vars(&["y", "z"])?.primitive(),
            label: label.to_string(),
        })
    }

    /// `y^2 - z - 1 = 0`.
    pub fn c() -> Self {
        Self::new(&hlm::curve_c_poly(), "C").expect("valid curve")
    }

    pub fn c_prime() -> Self {
        Self::new(&hlm::curve_c_prime_poly(), "C'").expect("valid curve")
    }

    pub fn eval(&self, y: C, z: C) -> Result<C> {
        self.poly.eval_complex(&[("y", y), ("z", z)])
    }

    pub fn residual(&self, y: C, z: C) -> Result<f64> {
        Ok(self.eval(y, z)?.norm())
    }

    /// The curve polynomial at fixed `y`, as a polynomial in `z`.
    pub fn slice_in_z(&self, y: C) -> Result<CLaurent> {
        let mut terms = Vec::new();
        for (k, c) in self.poly.coefficients_in("z") {
            terms.push((k, c.eval_complex(&[("y", y)])?));
        }
        Ok(CLaurent::from_terms(terms))
    }

    pub fn to_json(&self) -> Value {
        json!({"label": self.label, "polynomial": self.poly.to_string()})
    }
}

/// A census witness pushed back through the solver and the Wada invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopPoint {
    pub y: C,
    pub z: C,
    pub residual: f64,
    pub leading: C,
    pub degree: Option<i32>,
    pub monic: bool,
}

impl LoopPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "y": [self.y.re, self.y.im],
            "z": [self.z.re, self.z.im],
            "residual": self.residual,
            "leading": [self.leading.re, self.leading.im],
            "degree": self.degree,
            "monic": self.monic,
        })
    }
}

/// Solves a representation at every witness and computes its twisted
/// Alexander polynomial.
pub fn closed_loop(
    witnesses: &[Witness],
    opts: &SolveOptions,
    tol: &Tolerances,
) -> Result<Vec<LoopPoint>> {
    let p = pretzel_935();
    witnesses
        .iter()
        .map(|w| {
            let rho = solve_representation(&p, &symmetric_targets(&p, w.y, w.z)?, opts)?;
            let ta = wada_invariant(&p, &rho, None, tol)?;
            Ok(LoopPoint {
                y: w.y,
                z: w.z,
                residual: rho.residual(),
                leading: ta.leading(),
                degree: ta.degree(),
                monic: ta.is_monic(),
            })
        })
        .collect()
}

/// Settings for [`pipeline`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineOptions {
    /// Certification points on each curve.
    pub samples_per_curve: usize,
    pub solve: SolveOptions,
    pub tol: Tolerances,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            samples_per_curve: 10,
            solve: SolveOptions::default(),
            tol: Tolerances::default(),
        }
    }
}

/// Everything computed by [`pipeline`].
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub alexander: String,
    pub r6_factors: bool,
    pub elimination: Elimination,
    pub curves: Vec<PlaneCurve>,
    pub psi2: Psi2Certification,
    pub monic: CensusResult,
    pub non_genus: CensusResult,
    pub on_c: CensusResult,
    pub closed_loop: Vec<LoopPoint>,
}

impl PipelineReport {
    pub fn to_json(&self) -> Value {
        let c_summary = if self.on_c.is_identically_satisfied() {
            json!("identically 18")
        } else {
            json!(self.on_c.finite_count())
        };
        json!({
            "knot": "9_35",
            "alexander": self.alexander,
            "r6_factorization": self.r6_factors,
            "change_of_variables": change_of_variables().map(|f| f.to_string()).unwrap_or_default(),
            "b_minus_one_factorization": self.elimination.factors_match,
            "resultant": self.elimination.resultant.to_string(),
            "resultant_scalar": self.elimination.scalar.to_string(),
            "curves": self.curves.iter().map(PlaneCurve::to_json).collect::<Vec<_>>(),
            "psi2": self.psi2.to_json(),
            "censuses": {
                "monic": self.monic.finite_count(),
                "non-genus": self.non_genus.finite_count(),
                "C": c_summary,
            },
            "census_details": [self.monic.to_json(), self.non_genus.to_json(), self.on_c.to_json()],
            "closed_loop": self.closed_loop.iter().map(LoopPoint::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The whole computation for 9_35 with every certification; any failed
/// check is returned as an error.
pub fn pipeline(opts: &PipelineOptions) -> Result<PipelineReport> {
    let alex = alexander(&pretzel_935())?;
    if !r6_factorization_holds()? {
        return Err(Error::Certification(
            "r_6 does not factor as expected".into(),
        ));
    }
    let elimination = eliminate_w()?;
    if !elimination.factors_match {
        return Err(Error::Certification(
            "f(y, -1, w) does not factor as expected".into(),
        ));
    }
    let curves = vec![PlaneCurve::c(), PlaneCurve::c_prime()];
    let psi2 = certify_psi2(&default_sample_points(opts.samples_per_curve)?, &opts.solve)?;
    let monic = census(&curves[1], C::new(1.0, 0.0), &opts.tol)?;
    let non_genus = census(&curves[1], C::zero(), &opts.tol)?;
    let on_c = census(&curves[0], C::new(18.0, 0.0), &opts.tol)?;
    let closed_loop = closed_loop(&monic.witnesses, &opts.solve, &opts.tol)?;
    if let Some(bad) = closed_loop.iter().find(|l| (l.leading - 1.0).norm() > 1e-5) {
        return Err(Error::Certification(format!(
            "witness ({}, {}) has leading coefficient {}",
            bad.y, bad.z, bad.leading
        )));
    }
    Ok(PipelineReport {
        alexander: alex.to_string(),
        r6_factors: true,
        elimination,
        curves,
        psi2,
        monic,
        non_genus,
        on_c,
        closed_loop,
    })
}
