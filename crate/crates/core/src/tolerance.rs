//! Numerical thresholds shared by the floating-point code paths.

/// Tolerances; every field must be positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Coefficients at most `clean * max(1, max |c|)` are treated as zero.
    pub clean: f64,
    /// Root approximations closer than this are merged.
    pub cluster: f64,
    /// A representation is valid when its relator residual is at most this.
    pub residual: f64,
    /// `|leading - 1| <= monic` decides monicness in floating arithmetic.
    pub monic: f64,
    /// Relative remainder below which a floating quotient of Laurent
    /// polynomials counts as polynomial.
    pub division: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            clean: 1e-10,
            cluster: 1e-8,
            residual: 1e-8,
            monic: 1e-6,
            division: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn is_valid(&self) -> bool {
        [
            self.clean,
            self.cluster,
            self.residual,
            self.monic,
            self.division,
        ]
        .iter()
        .all(|&x| x > 0.0 && x.is_finite())
    }
}
