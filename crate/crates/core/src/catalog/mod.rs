//! The eight binomial-harmonic identities as data, with evaluators for both
//! sides and a multi-level verifier.
//!
//! Every left side has the shape
//! `Σ_k C(n,k)·C(n+k,k)·(-1)^{n-k}·X(k)` for a weight `X` listed in
//! [`IdentityRecord::weight`].

mod checks;
mod pairs;
mod summand;
mod verify;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{alt_harmonic2, binomial, factorial, int, rat, recip_factorial, ExactError, ExactRational};
use crate::partfrac::PartfracError;
use crate::telescope::TelescopeError;

pub use checks::{
    certificate_check, certificate_sides, decompose_check, derived_recurrence_rhs, gosper_check, recurrence_check,
    telescoped_check, DerivedRhs, Mismatch,
};
pub use pairs::{
    dual_pair, id8_sigma, recurrence, recurrence_solution, wz_pair, DualBuilder, KernelBuilder, RecurrenceData,
    RelationBuilder, WzPair,
};
pub use summand::{extra_kernel, id8_h_form, summand_check, summand_sides};
pub use verify::{alt7_deltas, verify, verify_with, Level, Outcome, VerificationReport, VerifyOptions, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity {0}")]
    UnknownIdentity(u8),
    #[error("identity {id} is defined for n ≥ {min}, got n = {n}")]
    BelowDomain { id: u8, n: i64, min: i64 },
    #[error("identity {id} has no {what}")]
    NotApplicable { id: u8, what: &'static str },
    #[error("j must be at least {min}, got {j}")]
    InvalidJ { j: i64, min: i64 },
    #[error("no orientation of the dual relation holds at the origin")]
    SigmaUndetermined,
    #[error(transparent)]
    Telescope(#[from] TelescopeError),
    #[error(transparent)]
    Partfrac(#[from] PartfracError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityRecord {
    pub id: u8,
    /// Smallest valid `n`.
    pub domain: i64,
    /// First `k` of the sum; the last is always `n`.
    pub k_start: i64,
    pub weight: &'static str,
    pub closed_form: &'static str,
}

const RECORDS: [IdentityRecord; 8] = [
    IdentityRecord {
        id: 1,
        domain: 0,
        k_start: 0,
        weight: "1",
        closed_form: "1",
    },
    IdentityRecord {
        id: 2,
        domain: 1,
        k_start: 0,
        weight: "1/(n+k)^2",
        closed_form: "-(n-1)!^2/(2n)!",
    },
    IdentityRecord {
        id: 3,
        domain: 0,
        k_start: 1,
        weight: "H_k",
        closed_form: "2H_n",
    },
    IdentityRecord {
        id: 4,
        domain: 0,
        k_start: 0,
        weight: "H_{n+k}",
        closed_form: "2H_n",
    },
    IdentityRecord {
        id: 5,
        domain: 0,
        k_start: 1,
        weight: "k*H_k",
        closed_form: "n(n+1)(2H_n-1)",
    },
    IdentityRecord {
        id: 6,
        domain: 0,
        k_start: 1,
        weight: "k*H_{n+k}",
        closed_form: "2n(n+1)H_n-n^2",
    },
    IdentityRecord {
        id: 7,
        domain: 1,
        k_start: 1,
        weight: "k*H_{n-k}",
        closed_form: "2n(n+1)H_n-(n+1)^2-n(n+1)*sum_{k=1}^{n-1}(2k+1)!(3k+2)/((k+1)!(k+2)!k)",
    },
    IdentityRecord {
        id: 8,
        domain: 0,
        k_start: 1,
        weight: "H_k^(2)",
        closed_form: "2*sum_{k=1}^n (-1)^(k-1)/k^2",
    },
];

pub fn records() -> &'static [IdentityRecord] {
    &RECORDS
}

pub fn record(id: u8) -> Result<&'static IdentityRecord, CatalogError> {
    RECORDS
        .get((id as usize).wrapping_sub(1))
        .ok_or(CatalogError::UnknownIdentity(id))
}

fn check_domain(id: u8, n: i64) -> Result<&'static IdentityRecord, CatalogError> {
    let rec = record(id)?;
    if n < rec.domain {
        return Err(CatalogError::BelowDomain { id, n, min: rec.domain });
    }
    Ok(rec)
}

/// `C(n,k)·C(n+k,k)·(-1)^{n-k}`.
pub fn coefficient(n: i64, k: i64) -> ExactRational {
    let c = binomial(n, k) * binomial(n + k, k);
    let c = if (n - k) % 2 == 0 { c } else { -c };
    ExactRational::from_integer(c)
}

/// `[H_0^{(m)}, …, H_top^{(m)}]`.
fn harmonic_table(top: i64, m: u32) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(top.max(0) as usize + 1);
    let mut acc = ExactRational::zero();
    out.push(acc.clone());
    for i in 1..=top {
        acc += ExactRational::new(BigInt::one(), BigInt::from(i).pow(m));
        out.push(acc.clone());
    }
    out
}

fn harmonic_n(n: i64) -> ExactRational {
    harmonic_table(n, 1).pop().expect("nonempty")
}

pub fn lhs(id: u8, n: i64) -> Result<ExactRational, CatalogError> {
    let rec = check_domain(id, n)?;
    Ok(lhs_over(id, n, rec.k_start))
}

/// The left-side sum of `id` started at `k_start` instead of the stored
/// start. Panics on an unknown `id`.
pub fn lhs_over(id: u8, n: i64, k_start: i64) -> ExactRational {
    let h1 = harmonic_table(2 * n, 1);
    let h2 = if id == 8 { harmonic_table(n, 2) } else { Vec::new() };
    let mut sum = ExactRational::zero();
    for k in k_start..=n {
        let x = match id {
            1 => ExactRational::one(),
            2 => rat(1, (n + k) * (n + k)),
            3 => h1[k as usize].clone(),
            4 => h1[(n + k) as usize].clone(),
            5 => int(k) * &h1[k as usize],
            6 => int(k) * &h1[(n + k) as usize],
            7 => int(k) * &h1[(n - k) as usize],
            8 => h2[k as usize].clone(),
            _ => panic!("unknown identity {id}"),
        };
        if !x.is_zero() {
            sum += coefficient(n, k) * x;
        }
    }
    sum
}

fn fact(m: i64) -> ExactRational {
    ExactRational::from_integer(factorial(m).expect("nonnegative argument"))
}

pub fn rhs(id: u8, n: i64) -> Result<ExactRational, CatalogError> {
    check_domain(id, n)?;
    let nn1 = int(n * (n + 1));
    Ok(match id {
        1 => ExactRational::one(),
        2 => -(fact(n - 1) * fact(n - 1) * recip_factorial(2 * n)),
        3 | 4 => int(2) * harmonic_n(n),
        5 => nn1 * (int(2) * harmonic_n(n) - int(1)),
        6 => int(2) * nn1 * harmonic_n(n) - int(n * n),
        7 => {
            let tail = (1..n).fold(ExactRational::zero(), |acc, k| {
                acc + fact(2 * k + 1) * int(3 * k + 2) / (fact(k + 1) * fact(k + 2) * int(k))
            });
            int(2) * &nn1 * harmonic_n(n) - int((n + 1) * (n + 1)) - nn1 * tail
        }
        8 => int(2) * alt_harmonic2(n),
        _ => unreachable!("checked by record"),
    })
}

/// The alternative closed form for identity 7 as it is usually quoted:
/// `2n(n+1)H_n - (n+1)² + (2n+1)·C(2n,n) - (3/2)·n(n+1)·Σ_{k=1..n} (2k)!/(k!(k+1)!)`.
///
/// It does not agree with the left side; see the `alt` verification level.
pub fn rhs_alt7(n: i64) -> Result<ExactRational, CatalogError> {
    check_domain(7, n)?;
    let nn1 = int(n * (n + 1));
    let catalan_sum = (1..=n).fold(ExactRational::zero(), |acc, k| {
        acc + fact(2 * k) / (fact(k) * fact(k + 1))
    });
    Ok(int(2) * &nn1 * harmonic_n(n) - int((n + 1) * (n + 1))
        + int(2 * n + 1) * ExactRational::from_integer(binomial(2 * n, n))
        - rat(3, 2) * nn1 * catalan_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhs_examples() {
        assert_eq!(lhs(1, 3).unwrap(), int(1));
        assert_eq!(lhs(3, 2).unwrap(), int(3));
        assert_eq!(lhs(7, 3).unwrap(), int(-42));
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(rhs(2, 2).unwrap(), rat(-1, 24));
        assert_eq!(rhs(5, 2).unwrap(), int(12));
        assert_eq!(rhs(8, 2).unwrap(), rat(3, 2));
    }

    #[test]
    fn alt7_examples() {
        let alt: Vec<_> = (1..=3).map(|n| rhs_alt7(n).unwrap()).collect();
        assert_eq!(alt, vec![int(3), int(12), int(24)]);
        let primary: Vec<_> = (1..=3).map(|n| rhs(7, n).unwrap()).collect();
        assert_eq!(primary, vec![int(0), int(-6), int(-42)]);
    }

    #[test]
    fn domains_enforced() {
        assert_eq!(lhs(2, 0), Err(CatalogError::BelowDomain { id: 2, n: 0, min: 1 }));
        assert_eq!(rhs(7, 0), Err(CatalogError::BelowDomain { id: 7, n: 0, min: 1 }));
        assert_eq!(lhs(9, 1), Err(CatalogError::UnknownIdentity(9)));
        assert_eq!(lhs(0, 1), Err(CatalogError::UnknownIdentity(0)));
    }

    #[test]
    fn values_agree_small_n() {
        for rec in records() {
            for n in rec.domain..=12 {
                assert_eq!(lhs(rec.id, n).unwrap(), rhs(rec.id, n).unwrap(), "id {} n {n}", rec.id);
            }
        }
    }

    #[test]
    fn id4_needs_k_zero() {
        for n in 1..=6 {
            assert_ne!(lhs_over(4, n, 1), rhs(4, n).unwrap(), "n {n}");
        }
    }
}
