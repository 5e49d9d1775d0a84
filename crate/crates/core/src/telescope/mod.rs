//! Factorial-quotient kernels, Gosper's algorithm, WZ-style certificate
//! checks (plain and gamma-dual), and first-order recurrence solving.
//!
//! Kernels are instantiated per fixed `n`, so all algebra is univariate in `j`.

mod dual;
mod gosper;
mod kernel;
mod recurrence;
mod wz;

use thiserror::Error;

use crate::exact::ExactError;
use crate::polyrat::PolyError;

pub use dual::{determine_sigma, dual_sides, wz_verify_dual, DualKernel, DualTermSum};
pub use gosper::{gosper, gosper_form, verify_certificate, Certificate, GosperForm, GosperOutcome};
pub use kernel::{
    kernel_asymptotics, kernel_ratio, reciprocal_linear, FactorialPower, LinearFraction, TermKernel, TermSum,
};
pub use recurrence::{solve_recurrence, ClosedForm, RecurrenceSpec};
pub use wz::{telescoped_sum_check, wz_difference, wz_verify, WzRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TelescopeError {
    #[error("kernel is not balanced, so it is not rational in j")]
    Unbalanced,
    #[error("numerator factorial of negative argument {arg} at j = {j}")]
    NegativeFactorialArg { j: i64, arg: i64 },
    #[error("zero input")]
    ZeroInput,
    #[error("term grows faster than linearly in j")]
    DegreeGrowth,
    #[error("Euler's constant does not cancel at n = {n}, j = {j}")]
    GammaContamination { n: i64, j: i64 },
    #[error("leading recurrence coefficient vanishes at n = {n}")]
    VanishingLeading { n: i64 },
    #[error("Gosper produced a certificate that fails verification")]
    UnsoundCertificate,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
