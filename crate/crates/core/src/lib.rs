//! Twisted Alexander polynomials of knots.
//!
//! The crate is organised bottom-up: [`polyalgebra`] supplies exact and
//! floating polynomial arithmetic, [`presentations`] the free differential
//! calculus on knot group presentations, [`representations`] SL(2,C)
//! representations, [`twisted`] the Wada invariant itself, [`signature`]
//! Levine-Tristram signatures and [`charcurves`] the character-curve
//! computation for the knot 9_35.

pub mod charcurves;
pub mod error;
pub mod polyalgebra;
pub mod presentations;
pub mod representations;
pub mod scalar;
pub mod signature;
pub mod tolerance;
pub mod twisted;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use polyalgebra::{LaurentPoly, LaurentRational, MultiPoly, SquareMatrix};
pub use scalar::Scalar;
pub use tolerance::Tolerances;

/// Laurent polynomials with exact rational coefficients.
pub type QLaurent = LaurentPoly<BigRational>;
/// Laurent polynomials with complex floating coefficients.
pub type CLaurent = LaurentPoly<Complex64>;
pub type QRational = LaurentRational<BigRational>;
pub type CRational = LaurentRational<Complex64>;
pub type QMultiPoly = MultiPoly<BigRational>;
