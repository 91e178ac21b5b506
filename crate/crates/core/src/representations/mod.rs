//! SL(2,C) representations of knot groups and their characters.

pub mod constraints;
pub mod formulas;
pub mod solve;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyalgebra::SquareMatrix;
use crate::presentations::{FreeWord, Presentation};
use crate::scalar::Scalar;

pub use constraints::{parse_constraints, ConstraintSet, Sample, Sweep, TraceConstraint};
pub use formulas::{burde_derham_check, reducible_formula, satellite_alexander};
pub use solve::{solve_representation, SolveOptions};

/// Images of the generators as 2x2 matrices, with the measured relator
/// residual and determinant drift.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    images: Vec<SquareMatrix<F>>,
    residual: f64,
    det_drift: f64,
}

fn inverse2<F: Scalar>(m: &SquareMatrix<F>) -> Result<SquareMatrix<F>> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let det = a.clone() * d.clone() - b.clone() * c.clone();
    if det.is_zero() {
        return Err(Error::InvalidInput("singular generator image".into()));
    }
    Ok(SquareMatrix::from_rows(vec![
        vec![d.clone() / det.clone(), -b.clone() / det.clone()],
        vec![-c.clone() / det.clone(), a.clone() / det],
    ]))
}

fn det2<F: Scalar>(m: &SquareMatrix<F>) -> F {
    m.get(0, 0).clone() * m.get(1, 1).clone() - m.get(0, 1).clone() * m.get(1, 0).clone()
}

/// Largest singular value of a 2x2 complex matrix.
pub fn operator_norm(m: &SquareMatrix<Complex64>) -> f64 {
    let fro2: f64 = m.entries().iter().map(|z| z.norm_sqr()).sum();
    let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    let disc = (fro2 * fro2 - 4.0 * det.norm_sqr()).max(0.0);
    ((fro2 + disc.sqrt()) / 2.0).sqrt()
}

impl<F: Scalar> Representation<F> {
    /// Validates shapes and measures residual and determinant drift.
    pub fn new(p: &Presentation, images: Vec<SquareMatrix<F>>) -> Result<Self> {
        if images.len() != p.generator_count() {
            return Err(Error::InvalidInput(format!(
                "{} generator images for {} generators",
                images.len(),
                p.generator_count()
            )));
        }
        if images.iter().any(|m| m.dim() != 2) {
            return Err(Error::InvalidInput("generator images must be 2x2".into()));
        }
        let det_drift = images
            .iter()
            .map(|m| (det2(m) - F::one()).magnitude())
            .fold(0.0, f64::max);
        let mut rep = Representation {
            images,
            residual: 0.0,
            det_drift,
        };
        let mut residual = 0.0f64;
        for r in p.relators() {
            let dev = rep
                .image_of(r)?
                .sub(&SquareMatrix::identity(2))
                .to_complex();
            residual = residual.max(operator_norm(&dev));
        }
        rep.residual = residual;
        Ok(rep)
    }

    pub fn images(&self) -> &[SquareMatrix<F>] {
        &self.images
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn det_drift(&self) -> f64 {
        self.det_drift
    }

    pub fn is_valid(&self, threshold: f64) -> bool {
        self.residual <= threshold && self.det_drift <= 1e-9
    }

    /// The image of a word, as the ordered product of generator images.
    pub fn image_of(&self, w: &FreeWord) -> Result<SquareMatrix<F>> {
        let mut acc = SquareMatrix::identity(2);
        for &(g, e) in w.letters() {
            let m = self
                .images
                .get(g)
                .ok_or_else(|| Error::InvalidInput(format!("generator {g} has no image")))?;
            acc = if e > 0 {
                acc.matmul(m)
            } else {
                acc.matmul(&inverse2(m)?)
            };
        }
        Ok(acc)
    }

    /// `g rho g^-1`.
    pub fn conjugate(&self, p: &Presentation, g: &SquareMatrix<F>) -> Result<Self> {
        let gi = inverse2(g)?;
        Representation::new(
            p,
            self.images
                .iter()
                .map(|m| g.matmul(m).matmul(&gi))
                .collect(),
        )
    }

    pub fn to_complex(&self) -> Representation<Complex64> {
        Representation {
            images: self.images.iter().map(|m| m.to_complex()).collect(),
            residual: self.residual,
            det_drift: self.det_drift,
        }
    }

    /// Whether every pair of generator images has commutator trace within
    /// `tol` of 2, i.e. the pairs share an invariant line.
    pub fn is_reducible(&self, tol: f64) -> bool {
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                let (a, b) = (&self.images[i], &self.images[j]);
                let comm = a
                    .matmul(b)
                    .matmul(&inverse2(a).unwrap())
                    .matmul(&inverse2(b).unwrap());
                if (comm.trace().to_complex() - Complex64::new(2.0, 0.0)).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every pair of generator images commutes up to `tol`.
    pub fn is_abelian(&self, tol: f64) -> bool {
        self.images.iter().enumerate().all(|(i, a)| {
            self.images[i + 1..]
                .iter()
                .all(|b| a.matmul(b).sub(&b.matmul(a)).max_abs() <= tol)
        })
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .images
            .iter()
            .map(|m| Value::Array(m.entries().iter().map(|x| x.to_json()).collect()))
            .collect();
        json!({"generators": gens, "residual": self.residual})
    }

    pub fn from_json(p: &Presentation, v: &Value) -> Result<Self> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("representation JSON needs a generators array".into()))?;
        let mut images = Vec::with_capacity(gens.len());
        for g in gens {
            let es = g
                .as_array()
                .filter(|a| a.len() == 4)
                .ok_or_else(|| Error::Parse("each generator needs four entries".into()))?;
            let vals: Vec<F> = es.iter().map(F::from_json).collect::<Result<_>>()?;
            images.push(SquareMatrix::from_rows(vec![
                vals[0..2].to_vec(),
                vals[2..4].to_vec(),
            ]));
        }
        Representation::new(p, images)
    }
}

/// Every generator goes to `diag(lambda, 1/lambda)`.
pub fn abelian_rep<F: Scalar>(p: &Presentation, lambda: F) -> Result<Representation<F>> {
    if lambda.is_zero() {
        return Err(Error::InvalidInput("lambda must be nonzero".into()));
    }
    let inv = F::one() / lambda.clone();
    let m = SquareMatrix::from_rows(vec![vec![lambda, F::zero()], vec![F::zero(), inv]]);
    Representation::new(p, vec![m; p.generator_count()])
}

/// Trace coordinates keyed by the rendered word.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub traces: BTreeMap<String, Complex64>,
}

impl Character {
    pub fn get(&self, word: &str) -> Option<Complex64> {
        self.traces.get(word).copied()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(
            self.traces
                .iter()
                .map(|(k, z)| (k.clone(), json!([z.re, z.im])))
                .collect(),
        )
    }
}

pub fn character_of<F: Scalar>(
    rho: &Representation<F>,
    names: &[String],
    words: &[FreeWord],
) -> Result<Character> {
    let mut traces = BTreeMap::new();
    for w in words {
        traces.insert(w.render(names), rho.image_of(w)?.trace().to_complex());
    }
    Ok(Character { traces })
}

/// Generators and their pairwise products, the minimal trace coordinates.
pub fn standard_words(n: usize) -> Vec<FreeWord> {
    let mut out: Vec<FreeWord> = (0..n).map(FreeWord::generator).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(&FreeWord::generator(i) * &FreeWord::generator(j));
        }
    }
    out
}

impl<F: Scalar> Representation<F> {
    /// The identity representation.
    pub fn trivial(p: &Presentation) -> Result<Self> {
        abelian_rep(p, F::one())
    }
}
