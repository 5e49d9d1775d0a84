//! Gosper's algorithm for indefinite hypergeometric summation.
//!
//! Given the term ratio `r(j) = t(j+1)/t(j)`, either find a rational
//! certificate `R` with `T(j) = R(j)·t(j)` satisfying `T(j+1) - T(j) = t(j)`,
//! or decide that no hypergeometric antidifference exists.

use num_traits::{Signed, Zero};

use super::TelescopeError;
use crate::exact::ExactRational;
use crate::polyrat::{dispersion_set, Polynomial, RationalFunction};

/// Rational certificate `R(j)` of a Gosper-summable term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub r: RationalFunction,
}

impl Certificate {
    /// The antidifference `T = R·t` when `t` is itself rational.
    pub fn antidifference(&self, t: &RationalFunction) -> RationalFunction {
        &self.r * t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GosperOutcome {
    Summable(Certificate),
    NotSummable,
}

impl GosperOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            GosperOutcome::Summable(c) => Some(c),
            GosperOutcome::NotSummable => None,
        }
    }
}

/// `r = a/b · c(j+1)/c(j)` with `gcd(a(j), b(j+h)) = 1` for all `h ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GosperForm {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

pub fn gosper_form(ratio: &RationalFunction) -> Result<GosperForm, TelescopeError> {
    let mut a = ratio.numer().clone();
    let mut b = ratio.denom().clone();
    let mut c = Polynomial::one();
    for h in dispersion_set(&a, &b)? {
        let g = a.gcd(&b.shift_int(h))?;
        if g.is_constant() {
            continue;
        }
        a = a.exact_div(&g)?;
        b = b.exact_div(&g.shift_int(-h))?;
        for i in 1..=h {
            c = &c * &g.shift_int(-i);
        }
    }
    Ok(GosperForm { a, b, c })
}

/// Candidate degrees for `x` in `A(j)x(j+1) - B(j)x(j) = C(j)`.
fn degree_bound(lhs_a: &Polynomial, lhs_b: &Polynomial, rhs: &Polynomial) -> Option<usize> {
    let da = lhs_a.degree()? as i64;
    let db = lhs_b.degree()? as i64;
    let dc = rhs.degree()? as i64;
    let mut candidates = Vec::new();
    if da != db || lhs_a.leading() != lhs_b.leading() {
        candidates.push(dc - da.max(db));
    } else {
        let k = da as usize;
        let lead = lhs_a.leading().expect("nonzero");
        candidates.push(dc - da + 1);
        if k >= 1 {
            let diff = (lhs_b.coeff(k - 1) - lhs_a.coeff(k - 1)) / lead;
            if diff.is_integer() && !diff.is_negative() {
                if let Ok(d) = i64::try_from(diff.to_integer()) {
                    candidates.push(d);
                }
            }
        }
    }
    candidates.into_iter().filter(|&d| d >= 0).max().map(|d| d as usize)
}

/// Any solution of `M·x = v` over the rationals, free variables set to zero.
pub(crate) fn solve_linear(
    mut rows: Vec<Vec<ExactRational>>,
    mut rhs: Vec<ExactRational>,
    unknowns: usize,
) -> Option<Vec<ExactRational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        rhs.swap(row, p);
        let inv = rows[row][col].recip();
        for x in &mut rows[row][col..unknowns] {
            *x *= &inv;
        }
        rhs[row] *= &inv;
        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            let pivot_row = rows[row][col..unknowns].to_vec();
            for (x, p) in rows[r][col..unknowns].iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
            let delta = &factor * &rhs[row];
            rhs[r] -= delta;
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    if rhs[row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![ExactRational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rhs[r].clone();
    }
    Some(x)
}

pub fn gosper(ratio: &RationalFunction) -> Result<GosperOutcome, TelescopeError> {
    if ratio.is_zero() {
        return Err(TelescopeError::ZeroInput);
    }
    let GosperForm { a, b, c } = gosper_form(ratio)?;
    let b_prev = b.shift_int(-1);
    let Some(d) = degree_bound(&a, &b_prev, &c) else {
        return Ok(GosperOutcome::NotSummable);
    };

    // column i is A(j)(j+1)^i - B(j)j^i
    let var = Polynomial::var();
    let step = var.shift_int(1);
    let columns: Vec<Polynomial> = (0..=d)
        .map(|i| {
            let i = i as u32;
            &(&a * &step.pow(i)) - &(&b_prev * &var.pow(i))
        })
        .collect();
    let height = columns
        .iter()
        .filter_map(Polynomial::degree)
        .chain(c.degree())
        .max()
        .unwrap_or(0)
        + 1;
    let rows: Vec<Vec<ExactRational>> = (0..height)
        .map(|k| columns.iter().map(|col| col.coeff(k)).collect())
        .collect();
    let rhs: Vec<ExactRational> = (0..height).map(|k| c.coeff(k)).collect();
    let Some(sol) = solve_linear(rows, rhs, d + 1) else {
        return Ok(GosperOutcome::NotSummable);
    };
    let x = Polynomial::new(sol);
    let r = RationalFunction::new(&b_prev * &x, c)?;
    if !verify_certificate(ratio, &r) {
        return Err(TelescopeError::UnsoundCertificate);
    }
    Ok(GosperOutcome::Summable(Certificate { r }))
}

/// True iff `r(j)·R(j+1) - R(j) = 1` as rational functions.
pub fn verify_certificate(ratio: &RationalFunction, cert: &RationalFunction) -> bool {
    let lhs = &(ratio * &cert.shift(1)) - cert;
    lhs == RationalFunction::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::telescope::{kernel_ratio, TermKernel};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reciprocal_pair_summable() {
        // t = 1/(j(j+1)), ratio j/(j+2), T = -1/j
        let out = gosper(&rf(&[0, 1], &[2, 1])).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.r, RationalFunction::from_poly(p(&[-1, -1])));
    }

    #[test]
    fn j_times_factorial_summable() {
        // t = j·j!, ratio (j+1)²/j, T = j!
        let out = gosper(&rf(&[1, 2, 1], &[0, 1])).unwrap();
        assert_eq!(out.certificate().unwrap().r, rf(&[1], &[0, 1]));
    }

    #[test]
    fn harmonic_term_not_summable() {
        assert_eq!(gosper(&rf(&[0, 1], &[1, 1])).unwrap(), GosperOutcome::NotSummable);
    }

    #[test]
    fn zero_ratio_rejected() {
        assert_eq!(gosper(&RationalFunction::zero()), Err(TelescopeError::ZeroInput));
    }

    #[test]
    fn verify_examples() {
        let r = rf(&[0, 1], &[2, 1]);
        assert!(verify_certificate(&r, &RationalFunction::from_poly(p(&[-1, -1]))));
        assert!(!verify_certificate(&r, &RationalFunction::from_poly(p(&[0, -1]))));
        assert!(verify_certificate(&rf(&[1, 2, 1], &[0, 1]), &rf(&[1], &[0, 1])));
    }

    #[test]
    fn gosper_form_splits_shift_factor() {
        let form = gosper_form(&rf(&[1, 2, 1], &[0, 1])).unwrap();
        assert_eq!(form.a, p(&[1, 1]));
        assert_eq!(form.b, p(&[1]));
        assert_eq!(form.c, p(&[0, 1]));
    }

    #[test]
    fn classic_summable_terms() {
        // t = j·2^j and t = binomial-like rational terms
        let two_pow = rf(&[2, 2], &[0, 1]);
        let out = gosper(&two_pow).unwrap();
        assert!(out.certificate().is_some());
        // t = (2j+1)/(j²(j+1)²) = 1/j² - 1/(j+1)²
        let t = rf(&[1, 2], &[0, 0, 1, 2, 1]);
        let out = gosper(&kernel_ratio(&t).unwrap()).unwrap();
        let cert = out.certificate().unwrap();
        let big_t = cert.antidifference(&t);
        assert_eq!(&big_t.shift(1) - &big_t, t);
        // t = 1/j² has no rational antidifference
        let t = rf(&[1], &[0, 0, 1]);
        assert_eq!(gosper(&kernel_ratio(&t).unwrap()).unwrap(), GosperOutcome::NotSummable);
    }

    #[test]
    fn factorial_ratio_term() {
        // t = j!/(j+3)! = 1/((j+1)(j+2)(j+3))
        let t = TermKernel::new(int(1)).num_fact(0).den_fact(3).to_rf().unwrap();
        let cert = gosper(&kernel_ratio(&t).unwrap()).unwrap();
        let big_t = cert.certificate().unwrap().antidifference(&t);
        assert_eq!(&big_t.shift(1) - &big_t, t);
        assert_eq!(big_t.eval_int(1).unwrap() - big_t.eval_int(0).unwrap(), rat(1, 6));
    }

    #[test]
    fn solve_linear_inconsistent() {
        let rows = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(solve_linear(rows.clone(), vec![int(1), int(3)], 2), None);
        assert_eq!(solve_linear(rows, vec![int(1), int(2)], 2), Some(vec![int(1), int(0)]));
    }
}
