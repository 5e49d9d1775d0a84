//! Fixed-`j` identities obtained from the partial fraction expansions by
//! letting `z → ∞`.

use super::{coefficient, harmonic_table, record, CatalogError};
use crate::exact::{int, rat, ExactRational, GammaDual};
use crate::telescope::{DualKernel, TelescopeError, TermKernel};

/// The weight of `C(n,k)·C(n+k,k)·(-1)^{n-k}` in the summand of `id`.
fn weight(id: u8, n: i64, k: i64, j: i64) -> ExactRational {
    match id {
        3 => rat(k, j * (j + k)),
        4 => rat(n + k, j * (j + n + k)),
        5 => rat(k * k, j * (j + k)),
        6 => rat(k * (n + k), j * (j + n + k)),
        7 => rat(k * (n - k), j * (j + n - k)),
        8 => rat(k * (k + 2 * j), j * j * (j + k) * (j + k)),
        _ => unreachable!("summand ids are 3..=8"),
    }
}

/// The factorial quotient attached to the pole outside `1..n`, as a
/// kernel in `j`. For identity 8 it is the coefficient of the double pole.
pub fn extra_kernel(id: u8, n: i64) -> Result<TermKernel, CatalogError> {
    let one = TermKernel::new(int(1));
    Ok(match id {
        // (j-1)!² / ((j-n-1)!(n+j)!)
        3 | 8 => one.num_fact(-1).num_fact(-1).den_fact(-n - 1).den_fact(n),
        // (n+j-1)!² / ((j-1)!(2n+j)!)
        4 => one.num_fact(n - 1).num_fact(n - 1).den_fact(-1).den_fact(2 * n),
        // (j-1)!j! / ((j-n-1)!(n+j)!)
        5 => one.num_fact(-1).num_fact(0).den_fact(-n - 1).den_fact(n),
        // (n+j-1)!(n+j)! / ((j-1)!(2n+j)!)
        6 => one.num_fact(n - 1).num_fact(n).den_fact(-1).den_fact(2 * n),
        // (2n+j)!(j-1)! / ((n+j-1)!(n+j)!)
        7 => one.num_fact(2 * n).num_fact(-1).den_fact(n - 1).den_fact(n),
        _ => {
            record(id)?;
            return Err(CatalogError::NotApplicable {
                id,
                what: "summand identity",
            });
        }
    })
}

fn check_summand_args(id: u8, n: i64, j: i64) -> Result<(), CatalogError> {
    extra_kernel(id, n)?;
    if n < 1 {
        return Err(CatalogError::BelowDomain { id, n, min: 1 });
    }
    if j < 1 {
        return Err(CatalogError::InvalidJ { j, min: 1 });
    }
    Ok(())
}

fn weighted_sum(id: u8, n: i64, j: i64) -> ExactRational {
    let k_start = if id == 4 { 0 } else { 1 };
    (k_start..=n).fold(ExactRational::default(), |acc, k| {
        acc + coefficient(n, k) * weight(id, n, k, j)
    })
}

/// `d/dx (j-1+x)!² / ((n+j+x)!(j-1+x-n)!)` at `x = 0`.
fn id8_derivative_term(n: i64, j: i64) -> Result<ExactRational, CatalogError> {
    let k = DualKernel::new(GammaDual::one())
        .num_fact(0)
        .num_fact(0)
        .den_fact(n + 1)
        .den_fact(-n);
    let v = k.eval(j - 1)?;
    if !v.is_gamma_free() {
        return Err(TelescopeError::GammaContamination { n, j }.into());
    }
    Ok(v.d)
}

/// Both sides of the fixed-`j` identity for `id ∈ 3..=8`.
///
/// For identity 3 the weight is `k/(j(j+k))`. For identity 8 the
/// harmonic combination on the left is written as a derivative in a
/// shift parameter, which stays meaningful for `j ≤ n`.
pub fn summand_sides(id: u8, n: i64, j: i64) -> Result<(ExactRational, ExactRational), CatalogError> {
    check_summand_args(id, n, j)?;
    let mut left = weighted_sum(id, n, j);
    let e = extra_kernel(id, n)?.eval(j)?;
    let n_term = rat(n * (n + 1), j);
    let right = match id {
        3 | 4 => rat(1, j) - e,
        5 | 6 => n_term - int(1) + e,
        7 => n_term + int(1) - e,
        8 => {
            left -= id8_derivative_term(n, j)?;
            rat(1, j * j)
        }
        _ => unreachable!(),
    };
    Ok((left, right))
}

pub fn summand_check(id: u8, n: i64, j: i64) -> Result<bool, CatalogError> {
    let (l, r) = summand_sides(id, n, j)?;
    Ok(l == r)
}

/// Identity 8 with the explicit harmonic combination
/// `H_{j+n} + H_{j-n-1} - 2H_{j-1}`, defined for `j ≥ n+1`.
pub fn id8_h_form(n: i64, j: i64) -> Result<(ExactRational, ExactRational), CatalogError> {
    check_summand_args(8, n, j)?;
    if j < n + 1 {
        return Err(CatalogError::InvalidJ { j, min: n + 1 });
    }
    let h = harmonic_table(j + n, 1);
    let comb = &h[(j + n) as usize] + &h[(j - n - 1) as usize] - int(2) * &h[(j - 1) as usize];
    let left = weighted_sum(8, n, j) + extra_kernel(8, n)?.eval(j)? * comb;
    Ok((left, rat(1, j * j)))
}
