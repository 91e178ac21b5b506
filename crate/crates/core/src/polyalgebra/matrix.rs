//! Dense square matrices over commutative rings, with fraction-free
//! (Bareiss) determinants for exact domains and pivoting elimination for
//! floating fields.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use crate::scalar::Scalar;

/// Commutative ring with owned arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Rings where exact quotients can be computed when they exist.
pub trait ExactDiv: Ring {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

impl<F: Scalar> ExactDiv for F {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        (!divisor.is_zero()).then(|| self.clone() / divisor.clone())
    }
}

impl<F: Scalar> ExactDiv for LaurentPoly<F> {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        LaurentPoly::exact_div(self, divisor)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Ring> SquareMatrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { dim, entries }
    }

    /// Panics unless every row has `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix is not square");
        SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Self::from_fn(self.dim, |i, j| {
            (0..self.dim).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(self.dim, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }

    /// Cofactor (Laplace) expansion along the first row. Exponential cost;
    /// kept as an independent check of the elimination routines.
    pub fn det_cofactor(&self) -> T {
        if self.dim == 0 {
            return T::one();
        }
        if self.dim == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = T::zero();
        for j in 0..self.dim {
            let minor = Self::from_fn(self.dim - 1, |r, c| {
                let cc = if c < j { c } else { c + 1 };
                self.get(r + 1, cc).clone()
            });
            let term = self.get(0, j).clone() * minor.det_cofactor();
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
}

impl<T: ExactDiv> SquareMatrix<T> {
    /// Fraction-free Gaussian elimination; every division is exact.
    pub fn det_bareiss(&self) -> T {
        let n = self.dim;
        if n == 0 {
            return T::one();
        }
        let mut m = self.entries.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let num =
                        m[i * n + j].clone() * pivot.clone() - lead.clone() * m[k * n + j].clone();
                    m[i * n + j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i * n + k] = T::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }
}

impl<F: Scalar> SquareMatrix<F> {
    /// Gaussian elimination with partial pivoting by magnitude.
    pub fn det_pivot(&self) -> F {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut det = F::one();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| {
                    m[a * n + k]
                        .magnitude()
                        .total_cmp(&m[b * n + k].magnitude())
                })
                .unwrap();
            if m[p * n + k].is_zero() {
                return F::zero();
            }
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = m[k * n + k].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let f = m[i * n + k].clone() / pivot.clone();
                for j in k + 1..n {
                    m[i * n + j] = m[i * n + j].clone() - f.clone() * m[k * n + j].clone();
                }
            }
        }
        det
    }

    /// Determinant by the method suited to the field.
    pub fn det(&self) -> F {
        if F::EXACT {
            self.det_bareiss()
        } else {
            self.det_pivot()
        }
    }

    /// Gauss-Jordan inverse; `None` when singular (exactly, or below
    /// magnitude `1e-300` for floating fields).
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for k in 0..n {
            let p = (k..n).max_by(|&x, &y| {
                a[x * n + k]
                    .magnitude()
                    .total_cmp(&a[y * n + k].magnitude())
            })?;
            if a[p * n + k].is_zero() || (!F::EXACT && a[p * n + k].magnitude() < 1e-300) {
                return None;
            }
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
                inv.swap(k * n + j, p * n + j);
            }
            let piv = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] = a[k * n + j].clone() / piv.clone();
                inv[k * n + j] = inv[k * n + j].clone() / piv.clone();
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * n + k].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = a[i * n + j].clone() - f.clone() * a[k * n + j].clone();
                    inv[i * n + j] = inv[i * n + j].clone() - f.clone() * inv[k * n + j].clone();
                }
            }
        }
        Some(SquareMatrix {
            dim: n,
            entries: inv,
        })
    }

    pub fn to_complex(&self) -> SquareMatrix<Complex64> {
        self.map(|x| x.to_complex())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|x| x.magnitude())
            .fold(0.0, f64::max)
    }
}

/// Determinant of a matrix of Laurent polynomials.
///
/// Exact fields use Bareiss elimination over the polynomial ring. Floating
/// fields evaluate at roots of unity (with pivoting elimination at each
/// point) and interpolate by an inverse discrete Fourier transform, which is
/// well conditioned on the unit circle.
pub fn det_laurent<F: Scalar>(m: &SquareMatrix<LaurentPoly<F>>) -> LaurentPoly<F> {
    if F::EXACT {
        return m.det_bareiss();
    }
    let n = m.dim();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut lo_sum = 0i32;
    let mut hi_sum = 0i32;
    for i in 0..n {
        let row = (0..n).map(|j| m.get(i, j)).filter(|p| !p.is_zero());
        let lo = row.clone().map(|p| p.low().unwrap()).min();
        let hi = row.map(|p| p.high().unwrap()).max();
        match (lo, hi) {
            (Some(l), Some(h)) => {
                lo_sum += l;
                hi_sum += h;
            }
            _ => return LaurentPoly::zero(),
        }
    }
    let points = (hi_sum - lo_sum + 1) as usize;
    let values: Vec<Complex64> = (0..points)
        .map(|s| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * s as f64 / points as f64);
            let at = m.map(|p| p.eval_complex(z));
            at.det_pivot() * z.powi(-lo_sum)
        })
        .collect();
    let coeffs: Vec<F> = (0..points)
        .map(|k| {
            let mut acc = Complex64::zero();
            for (s, v) in values.iter().enumerate() {
                let angle = -2.0 * PI * (s * k % points) as f64 / points as f64;
                acc += v * Complex64::from_polar(1.0, angle);
            }
            F::from_complex(acc / points as f64).expect("floating field")
        })
        .collect();
    LaurentPoly::from_coeffs(lo_sum, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> SquareMatrix<BigRational> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_det() {
        assert_eq!(SquareMatrix::<BigRational>::identity(2).det(), rat(1, 1));
        assert_eq!(SquareMatrix::<BigRational>::identity(0).det(), rat(1, 1));
    }

    #[test]
    fn bareiss_needs_row_swap() {
        let m = qm(&[&[0, 1, 2], &[3, 0, 1], &[4, 5, 0]]);
        assert_eq!(m.det_bareiss(), m.det_cofactor());
        assert_eq!(m.det_bareiss(), rat(34, 1));
    }

    #[test]
    fn singular() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert!(m.det().is_zero());
        assert!(m.inverse().is_none());
    }

    #[test]
    fn diagonal_laurent_det_is_one() {
        type L = LaurentPoly<BigRational>;
        let m = SquareMatrix::from_rows(vec![
            vec![L::t(), L::zero()],
            vec![L::zero(), L::monomial(rat(1, 1), -1)],
        ]);
        assert_eq!(det_laurent(&m), L::one());
        let mc = m.map(|p| p.to_complex());
        let d = det_laurent(&mc).cleaned(1e-12);
        assert_eq!(d.span(), Some(0));
        assert!((d.coeff(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn evaluation_det_matches_exact() {
        type L = LaurentPoly<BigRational>;
        let e = |c: &[i64], lo: i32| L::from_coeffs(lo, c.iter().map(|&x| rat(x, 1)).collect());
        let m = SquareMatrix::from_rows(vec![
            vec![e(&[1, -2, 3], -1), e(&[4], 0), e(&[0, 1], 0)],
            vec![e(&[2, 1], 0), e(&[-1, 0, 0, 5], 0), e(&[7], 2)],
            vec![e(&[1], -3), e(&[3, 3], 1), e(&[-2, 1], 0)],
        ]);
        let exact = det_laurent(&m);
        assert_eq!(exact, m.det_cofactor());
        let approx = det_laurent(&m.map(|p| p.to_complex())).cleaned(1e-12);
        let diff = &approx - &exact.to_complex();
        assert!(diff.max_abs() < 1e-9, "{diff}");
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.matmul(&m.inverse().unwrap()), SquareMatrix::identity(2));
    }
}
