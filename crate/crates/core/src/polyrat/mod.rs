//! Univariate polynomial and rational-function algebra over exact rationals.

mod poly;
mod ratfun;

use thiserror::Error;

use crate::exact::{fmt_rational, ExactRational};

pub use poly::{dispersion_set, Polynomial};
pub use ratfun::{InfinityExpansion, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("evaluation at a pole: {}", fmt_rational(.0))]
    Pole(ExactRational),
    #[error("numerator degree {numerator} exceeds denominator degree {denominator} by more than one")]
    DegreeExcess { numerator: usize, denominator: usize },
    #[error("dispersion search bound does not fit in a machine integer")]
    BoundTooLarge,
}
