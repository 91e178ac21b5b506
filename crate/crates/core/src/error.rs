use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero determinant: {0}")]
    ZeroDeterminant(String),

    #[error("vanishing denominator: det of Phi(gamma_{0} - 1) is identically zero")]
    VanishingDenominator(usize),

    #[error("quotient is not a Laurent polynomial (relative remainder {0:.3e})")]
    NonPolynomial(f64),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("only reducible solutions found after {0} restarts")]
    ReducibleSolution(usize),

    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("degree {degree} exceeds 4g-2 = {bound}")]
    DegreeExceedsBound { degree: i32, bound: i32 },
}

impl Error {
    /// Stable machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid-input",
            Error::ZeroDeterminant(_) => "zero-determinant",
            Error::VanishingDenominator(_) => "vanishing-denominator",
            Error::NonPolynomial(_) => "non-polynomial",
            Error::NonConvergence(_) => "non-convergence",
            Error::ReducibleSolution(_) => "reducible-solution",
            Error::InconsistentConstraints(_) => "inconsistent-constraints",
            Error::Certification(_) => "certification",
            Error::DegreeExceedsBound { .. } => "degree-exceeds-bound",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
