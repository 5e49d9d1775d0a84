use num_traits::Zero;

use super::TelescopeError;
use crate::exact::ExactRational;

pub type ClosedForm = fn(i64) -> ExactRational;

/// `alpha(n)·S(n+1) + beta(n)·S(n) = rhs(n)`.
#[derive(Clone, Copy)]
pub struct RecurrenceSpec {
    pub alpha: ClosedForm,
    pub beta: ClosedForm,
    pub rhs: ClosedForm,
}

impl RecurrenceSpec {
    /// Whether `values[i] = S(start + i)` satisfy the recurrence at `n`.
    pub fn holds_at(&self, n: i64, s_n: &ExactRational, s_next: &ExactRational) -> bool {
        (self.alpha)(n) * s_next + (self.beta)(n) * s_n == (self.rhs)(n)
    }
}

impl std::fmt::Debug for RecurrenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RecurrenceSpec").finish_non_exhaustive()
    }
}

/// `S(start), …, S(last)` by forward substitution from `S(start) = initial`.
pub fn solve_recurrence(
    rec: &RecurrenceSpec,
    start: i64,
    initial: ExactRational,
    last: i64,
) -> Result<Vec<ExactRational>, TelescopeError> {
    let mut out = vec![initial];
    for n in start..last {
        let alpha = (rec.alpha)(n);
        if alpha.is_zero() {
            return Err(TelescopeError::VanishingLeading { n });
        }
        let s = out.last().expect("seeded");
        let next = ((rec.rhs)(n) - (rec.beta)(n) * s) / alpha;
        out.push(next);
    }
    Ok(out)
}
