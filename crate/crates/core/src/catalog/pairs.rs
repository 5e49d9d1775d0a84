use num_traits::Zero;

use super::{record, CatalogError};
use crate::exact::{factorial, int, rat, ExactRational, GammaDual};
use crate::polyrat::{Polynomial, RationalFunction};
use crate::telescope::{
    determine_sigma, reciprocal_linear, solve_recurrence, DualKernel, DualTermSum, RecurrenceSpec, TermKernel, TermSum,
    WzRelation,
};

pub type KernelBuilder = fn(i64) -> TermSum;
pub type DualBuilder = fn(i64) -> DualTermSum;
pub type RelationBuilder = fn(i64) -> WzRelation;

/// Kernel builders `F(n,·)`, `G(n,·)` and the relation coefficients at `n`.
#[derive(Clone, Copy)]
pub struct WzPair {
    pub f: KernelBuilder,
    pub g: KernelBuilder,
    pub relation: RelationBuilder,
}

impl std::fmt::Debug for WzPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WzPair").finish_non_exhaustive()
    }
}

fn lin(c0: i64, c1: i64) -> Polynomial {
    Polynomial::from_i64(&[c0, c1])
}

fn one() -> TermKernel {
    TermKernel::new(int(1))
}

fn f3(n: i64) -> TermSum {
    TermSum::new(vec![
        reciprocal_linear(int(1)),
        TermKernel::new(int(-1))
            .num_fact(0)
            .num_fact(0)
            .den_fact(-n)
            .den_fact(n + 1),
    ])
}

fn g3(n: i64) -> TermSum {
    TermKernel::new(rat(2, n + 1))
        .num_fact(0)
        .num_fact(0)
        .den_fact(-n - 1)
        .den_fact(n + 1)
        .into()
}

fn f4(n: i64) -> TermSum {
    TermSum::new(vec![
        reciprocal_linear(int(1)),
        TermKernel::new(int(-1))
            .num_fact(n)
            .num_fact(n)
            .den_fact(0)
            .den_fact(2 * n + 1),
    ])
}

fn g4(n: i64) -> TermSum {
    TermKernel::new(rat(1, n + 1))
        .with_poly(lin(3 * n + 3, 2))
        .num_fact(n)
        .num_fact(n)
        .den_fact(-1)
        .den_fact(2 * n + 2)
        .into()
}

fn f5(n: i64) -> TermSum {
    TermSum::new(vec![
        reciprocal_linear(int(n * (n + 1))),
        TermKernel::new(int(-1)),
        one().num_fact(0).num_fact(1).den_fact(-n).den_fact(n + 1),
    ])
}

fn g5(n: i64) -> TermSum {
    TermKernel::new(int(2))
        .num_fact(0)
        .num_fact(1)
        .den_fact(-n - 1)
        .den_fact(n + 1)
        .into()
}

fn f6(n: i64) -> TermSum {
    TermSum::new(vec![
        reciprocal_linear(int(n * (n + 1))),
        TermKernel::new(int(-1)),
        one().num_fact(n).num_fact(n + 1).den_fact(0).den_fact(2 * n + 1),
    ])
}

fn g6(n: i64) -> TermSum {
    one()
        .with_poly(lin(3 * n + 4, 2))
        .num_fact(n)
        .num_fact(n + 1)
        .den_fact(-1)
        .den_fact(2 * n + 2)
        .into()
}

fn f7(n: i64) -> TermSum {
    TermSum::new(vec![
        reciprocal_linear(int(n * (n + 1))),
        TermKernel::new(int(1)),
        TermKernel::new(int(-1))
            .num_fact(2 * n + 1)
            .num_fact(0)
            .den_fact(n)
            .den_fact(n + 1),
    ])
}

fn g7(n: i64) -> TermSum {
    TermKernel::new(int(-1))
        .with_poly(lin(3 * n + 2, 2))
        .num_fact(2 * n + 1)
        .num_fact(0)
        .den_fact(n)
        .den_fact(n + 1)
        .into()
}

fn unit_step(_n: i64) -> WzRelation {
    WzRelation {
        alpha: int(1),
        beta: int(-1),
        gamma: ExactRational::zero(),
    }
}

fn weighted_step(gamma: i64) -> impl Fn(i64) -> WzRelation {
    move |n| WzRelation {
        alpha: int(-n),
        beta: int(n + 2),
        gamma: int(gamma),
    }
}

pub fn wz_pair(id: u8) -> Result<WzPair, CatalogError> {
    record(id)?;
    let (f, g, relation): (KernelBuilder, KernelBuilder, RelationBuilder) = match id {
        3 => (f3, g3, unit_step),
        4 => (f4, g4, unit_step),
        5 => (f5, g5, |n| weighted_step(-2)(n)),
        6 => (f6, g6, |n| weighted_step(-2)(n)),
        7 => (f7, g7, |n| weighted_step(2)(n)),
        _ => {
            return Err(CatalogError::NotApplicable {
                id,
                what: "rational WZ pair",
            })
        }
    };
    Ok(WzPair { f, g, relation })
}

// F(n,j) = x/(j+1)² + (j+x)!²/((n+1+j+x)!(j+x-n)!)
fn f8(n: i64) -> DualTermSum {
    let inv_sq = RationalFunction::new(Polynomial::one(), lin(1, 1).pow(2)).expect("nonzero");
    DualTermSum::new(vec![
        DualKernel::new(GammaDual::epsilon()).with_rational(inv_sq),
        DualKernel::new(GammaDual::one())
            .num_fact(0)
            .num_fact(0)
            .den_fact(n + 1)
            .den_fact(-n),
    ])
}

// G(n,j) = 2(j+x)!²/((n+1+j+x)!(j+x-n-1)!)
fn g8(n: i64) -> DualTermSum {
    DualKernel::new(GammaDual::constant(int(2)))
        .num_fact(0)
        .num_fact(0)
        .den_fact(n + 1)
        .den_fact(-n - 1)
        .into()
}

fn rel8(n: i64) -> WzRelation {
    WzRelation {
        alpha: int(n + 1),
        beta: int(-(n + 1)),
        gamma: ExactRational::zero(),
    }
}

/// Dual-number F/G builders and relation for identity 8.
pub fn dual_pair() -> (DualBuilder, DualBuilder, RelationBuilder) {
    (f8, g8, rel8)
}

/// Orientation of the identity-8 relation, fixed at the origin.
pub fn id8_sigma() -> Result<i8, CatalogError> {
    determine_sigma(&f8, &g8, &rel8(0))?.ok_or(CatalogError::SigmaUndetermined)
}

/// A first-order recurrence with its starting point.
#[derive(Debug, Clone)]
pub struct RecurrenceData {
    pub equation: RecurrenceSpec,
    pub start: i64,
    pub initial: ExactRational,
}

fn fact(m: i64) -> ExactRational {
    ExactRational::from_integer(factorial(m).expect("nonnegative argument"))
}

pub fn recurrence(id: u8) -> Result<RecurrenceData, CatalogError> {
    record(id)?;
    let (equation, start, initial) = match id {
        3 | 4 => (
            RecurrenceSpec {
                alpha: |_| int(1),
                beta: |_| int(-1),
                rhs: |n| rat(2, n + 1),
            },
            0,
            0,
        ),
        5 => (
            RecurrenceSpec {
                alpha: |n| int(-n),
                beta: |n| int(n + 2),
                rhs: |n| int(-2 * n * (n + 2)),
            },
            1,
            2,
        ),
        6 => (
            RecurrenceSpec {
                alpha: |n| int(-n),
                beta: |n| int(n + 2),
                rhs: |n| int(-n * (2 * n + 3)),
            },
            1,
            3,
        ),
        7 => (
            RecurrenceSpec {
                alpha: |n| int(-n),
                beta: |n| int(n + 2),
                rhs: |n| int(-(n + 2) * (2 * n + 1)) + fact(2 * n + 1) * int(3 * n + 2) / (fact(n) * fact(n + 1)),
            },
            1,
            0,
        ),
        8 => (
            RecurrenceSpec {
                alpha: |_| int(1),
                beta: |_| int(-1),
                rhs: |n| {
                    let sign = if n % 2 == 0 { 2 } else { -2 };
                    rat(sign, (n + 1) * (n + 1))
                },
            },
            0,
            0,
        ),
        _ => return Err(CatalogError::NotApplicable { id, what: "recurrence" }),
    };
    Ok(RecurrenceData {
        equation,
        start,
        initial: int(initial),
    })
}

/// `S(start), …, S(last)` from the stored recurrence.
pub fn recurrence_solution(id: u8, last: i64) -> Result<Vec<ExactRational>, CatalogError> {
    let data = recurrence(id)?;
    Ok(solve_recurrence(&data.equation, data.start, data.initial, last)?)
}
