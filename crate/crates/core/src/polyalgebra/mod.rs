//! Polynomial and matrix algebra over exact and floating coefficient fields.

pub mod laurent;
pub mod matrix;
pub mod multipoly;
pub mod rational;
pub mod roots;
pub mod text;

pub use laurent::LaurentPoly;
pub use matrix::{det_laurent, ExactDiv, Ring, SquareMatrix};
pub use multipoly::MultiPoly;
pub use rational::LaurentRational;
pub use roots::{complex_roots, exact_roots, has_simple_root, Root, SimpleRootCertificate};
pub use text::{parse_laurent, parse_multipoly};
