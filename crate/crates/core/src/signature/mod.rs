//! Levine-Tristram signatures from Seifert matrices.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyalgebra::{exact_roots, LaurentPoly, SquareMatrix};
use crate::scalar::Scalar;

/// Eigenvalues of magnitude at most this are counted as zero.
pub const ZERO_EIGENVALUE: f64 = 1e-9;

/// A square integer matrix `V` with `det(V - V^T) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Seifert matrix is not square".into()));
        }
        let v = SeifertMatrix { rows };
        let d = SquareMatrix::from_fn(n, |i, j| BigRational::from_i64(v.rows[i][j] - v.rows[j][i]))
            .det_bareiss();
        if d.abs() != BigRational::one() {
            return Err(Error::InvalidInput(format!(
                "det(V - V^T) = {d}, expected ±1"
            )));
        }
        Ok(v)
    }

    /// Rows of whitespace-separated integers; blank lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let row = line
                .split_whitespace()
                .map(|x| {
                    x.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `det(V - t V^T)` normalized to lowest exponent 0 and positive
    /// leading coefficient.
    pub fn alexander(&self) -> LaurentPoly<BigRational> {
        let n = self.size();
        let m = SquareMatrix::from_fn(n, |i, j| {
            LaurentPoly::from_coeffs(
                0,
                vec![
                    BigRational::from_i64(self.rows[i][j]),
                    BigRational::from_i64(-self.rows[j][i]),
                ],
            )
        });
        let d = m.det_bareiss().normalized();
        match d.leading() {
            Some(c) if c.is_negative() => -d,
            _ => d,
        }
    }

    /// The real symmetric form of the Hermitian matrix
    /// `(1 - w) V + (1 - conj w) V^T`, acting on `C^n = R^2n`.
    fn realified(&self, omega: Complex64) -> DMatrix<f64> {
        let n = self.size();
        let one = Complex64::new(1.0, 0.0);
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let h = (one - omega) * self.rows[i][j] as f64
                    + (one - omega.conj()) * self.rows[j][i] as f64;
                m[(i, j)] = h.re;
                m[(n + i, n + j)] = h.re;
                m[(i, n + j)] = -h.im;
                m[(n + i, j)] = h.im;
            }
        }
        m
    }
}

/// Signature and nullity of the Hermitian form at `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureValue {
    pub signature: i32,
    /// Eigenvalues within [`ZERO_EIGENVALUE`] of zero, excluded from the count.
    pub nullity: usize,
}

fn check_unit(omega: Complex64) -> Result<()> {
    if (omega.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "|omega| = {} is not 1",
            omega.norm()
        )));
    }
    Ok(())
}

fn is_one(omega: Complex64) -> bool {
    (omega - Complex64::new(1.0, 0.0)).norm() <= 1e-12
}

pub fn lt_signature_detail(v: &SeifertMatrix, omega: Complex64) -> Result<SignatureValue> {
    check_unit(omega)?;
    if is_one(omega) || v.size() == 0 {
        return Ok(SignatureValue {
            signature: 0,
            nullity: 0,
        });
    }
    let eig = SymmetricEigen::new(v.realified(omega)).eigenvalues;
    let pos = eig.iter().filter(|&&e| e > ZERO_EIGENVALUE).count() as i32;
    let neg = eig.iter().filter(|&&e| e < -ZERO_EIGENVALUE).count() as i32;
    let zero = eig.len() - (pos + neg) as usize;
    // every eigenvalue of the Hermitian form appears twice in the real form
    Ok(SignatureValue {
        signature: (pos - neg) / 2,
        nullity: zero / 2,
    })
}

/// `sigma(omega)`; `sigma(1) = 0` by convention.
pub fn lt_signature(v: &SeifertMatrix, omega: Complex64) -> Result<i32> {
    Ok(lt_signature_detail(v, omega)?.signature)
}

/// Roots of `delta` on the unit circle: `(angle in [0, 2pi), multiplicity)`.
pub fn circle_roots(delta: &LaurentPoly<BigRational>) -> Result<Vec<(f64, u32)>> {
    if delta.span().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<(f64, u32)> = exact_roots(&delta.normalized(), 1e-9, 1e-8)?
        .into_iter()
        .filter(|r| (r.value.norm() - 1.0).abs() <= 1e-7)
        .map(|r| (r.value.arg().rem_euclid(TAU), r.multiplicity))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Half the smallest angular distance from `omega` to a circle root other
/// than `omega` itself and between distinct circle roots; at most `0.1`.
pub fn safe_epsilon(delta: &LaurentPoly<BigRational>, omega: Complex64) -> Result<f64> {
    let roots = circle_roots(delta)?;
    let theta = omega.arg().rem_euclid(TAU);
    let mut gap: f64 = 0.2;
    for (i, &(a, _)) in roots.iter().enumerate() {
        for &(b, _) in &roots[i + 1..] {
            gap = gap.min(angular_distance(a, b));
        }
        let d = angular_distance(a, theta);
        if d > 1e-9 {
            gap = gap.min(d);
        }
    }
    Ok(gap / 2.0)
}

/// `(sigma(omega e^{i eps}) + sigma(omega e^{-i eps})) / 2`. With `eps`
/// unset a safe value is derived from the roots of `det(V - t V^T)`; an
/// explicit `eps` must be below that bound.
pub fn averaged_signature(v: &SeifertMatrix, omega: Complex64, eps: Option<f64>) -> Result<f64> {
    check_unit(omega)?;
    if is_one(omega) || v.size() == 0 {
        return Ok(0.0);
    }
    let bound = safe_epsilon(&v.alexander(), omega)?;
    let eps = match eps {
        None => bound,
        Some(e) if e > 0.0 && e <= bound => e,
        Some(e) => {
            return Err(Error::InvalidInput(format!(
                "epsilon {e} is not below the verified root gap {bound}"
            )))
        }
    };
    let up = lt_signature(v, omega * Complex64::from_polar(1.0, eps))?;
    let down = lt_signature(v, omega * Complex64::from_polar(1.0, -eps))?;
    Ok((up + down) as f64 / 2.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    /// Angle of the root in `[0, 2pi)`.
    pub angle: f64,
    pub multiplicity: u32,
    /// `sigma` just after minus just before, counterclockwise.
    pub jump: i32,
}

impl Jump {
    pub fn to_json(&self) -> Value {
        json!({"angle": self.angle, "multiplicity": self.multiplicity, "jump": self.jump})
    }
}

fn check_pair(v: &SeifertMatrix, delta: &LaurentPoly<BigRational>) -> Result<()> {
    let mine = v.alexander();
    let theirs = delta.normalized();
    let theirs = if theirs.leading().is_some_and(|c| c.is_negative()) {
        -theirs
    } else {
        theirs
    };
    if mine != theirs {
        return Err(Error::InvalidInput(format!(
            "det(V - tV^T) = {mine} does not match the given Alexander polynomial {theirs}"
        )));
    }
    Ok(())
}

/// Nonzero jumps of the signature function at circle roots of `delta`.
/// A root of odd multiplicity must produce a jump; if none is measured the
/// computation is reported as failed.
pub fn signature_jumps(v: &SeifertMatrix, delta: &LaurentPoly<BigRational>) -> Result<Vec<Jump>> {
    check_pair(v, delta)?;
    let mut out = Vec::new();
    for (angle, multiplicity) in circle_roots(delta)? {
        let w = Complex64::from_polar(1.0, angle);
        let eps = safe_epsilon(delta, w)?;
        let after = lt_signature(v, w * Complex64::from_polar(1.0, eps))?;
        let before = lt_signature(v, w * Complex64::from_polar(1.0, -eps))?;
        let jump = after - before;
        if multiplicity % 2 == 1 && jump == 0 {
            return Err(Error::Certification(format!(
                "root at angle {angle} has odd multiplicity but no measured jump"
            )));
        }
        if jump != 0 {
            out.push(Jump {
                angle,
                multiplicity,
                jump,
            });
        }
    }
    Ok(out)
}

/// Sample angles: one interior point of every arc cut out by the circle
/// roots (avoiding angle 0, where the convention `sigma(1) = 0` applies).
pub fn arc_samples(delta: &LaurentPoly<BigRational>) -> Result<Vec<f64>> {
    let roots = circle_roots(delta)?;
    if roots.is_empty() {
        return Ok(vec![PI / 2.0, PI, 3.0 * PI / 2.0]);
    }
    let mut out = Vec::new();
    for i in 0..roots.len() {
        let a = roots[i].0;
        let b = if i + 1 < roots.len() {
            roots[i + 1].0
        } else {
            roots[0].0 + TAU
        };
        let mut mid = (a + b) / 2.0;
        if angular_distance(mid, 0.0) < 1e-9 {
            mid = a + (b - a) / 4.0;
        }
        out.push(mid.rem_euclid(TAU));
    }
    Ok(out)
}

/// No jumps, and `sigma = 0` on every arc between circle roots.
pub fn is_identically_zero(v: &SeifertMatrix, delta: &LaurentPoly<BigRational>) -> Result<bool> {
    if !signature_jumps(v, delta)?.is_empty() {
        return Ok(false);
    }
    for a in arc_samples(delta)? {
        if lt_signature(v, Complex64::from_polar(1.0, a))? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SeifertMatrix {
    pub fn unknot() -> Self {
        SeifertMatrix { rows: Vec::new() }
    }

    /// The `0 x 0` matrix of the unknot.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}
