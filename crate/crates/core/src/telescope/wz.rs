use num_traits::{One, Zero};

use super::{LinearFraction, TelescopeError, TermSum};
use crate::exact::{fmt_rational, ExactRational};
use crate::polyrat::RationalFunction;

/// `alpha·F(n+1,j) + beta·F(n,j) = G(n,j+1) - G(n,j) + gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WzRelation {
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub gamma: ExactRational,
}

impl std::fmt::Display for WzRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})·F(n+1,j) + ({})·F(n,j) = G(n,j+1) - G(n,j) + ({})",
            fmt_rational(&self.alpha),
            fmt_rational(&self.beta),
            fmt_rational(&self.gamma)
        )
    }
}

/// `h_n(j) = alpha·F(n+1,j) + beta·F(n,j) - gamma` as a rational function.
pub fn wz_difference(f: &dyn Fn(i64) -> TermSum, rel: &WzRelation, n: i64) -> Result<RationalFunction, TelescopeError> {
    let next = f(n + 1).to_rf()?.scale(&rel.alpha);
    let here = f(n).to_rf()?.scale(&rel.beta);
    Ok(&(&next + &here) - &RationalFunction::constant(rel.gamma.clone()))
}

/// Checks the relation as an identity of rational functions in `j`.
pub fn wz_verify(
    f: &dyn Fn(i64) -> TermSum,
    g: &dyn Fn(i64) -> TermSum,
    rel: &WzRelation,
    n: i64,
) -> Result<bool, TelescopeError> {
    // alpha·F(n+1) + beta·F(n) - gamma - G(n, j+1) + G(n, j) over one
    // denominator; the identity holds iff the numerator vanishes.
    let g = g(n).linear_fraction()?;
    let parts = [
        f(n + 1).linear_fraction()?.scale(&rel.alpha),
        f(n).linear_fraction()?.scale(&rel.beta),
        LinearFraction::constant(-rel.gamma.clone()),
        g.shift(1).scale(&-ExactRational::one()),
        g,
    ];
    Ok(LinearFraction::sum(&parts).is_zero())
}

/// `Σ_{j=0..J} h_n(j)` against `G(n, J+1) - G(n, 0)`, both evaluated
/// pointwise with the reciprocal-factorial convention.
pub fn telescoped_sum_check(
    f: &dyn Fn(i64) -> TermSum,
    g: &dyn Fn(i64) -> TermSum,
    rel: &WzRelation,
    n: i64,
    upper: i64,
) -> Result<(ExactRational, ExactRational), TelescopeError> {
    let (f_next, f_here, g_n) = (f(n + 1), f(n), g(n));
    let mut sum = ExactRational::zero();
    for j in 0..=upper {
        sum += &rel.alpha * f_next.eval(j)? + &rel.beta * f_here.eval(j)? - &rel.gamma;
    }
    let telescoped = g_n.eval(upper + 1)? - g_n.eval(0)?;
    Ok((sum, telescoped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::telescope::{reciprocal_linear, TermKernel};

    // F(n,j) = 1/(j+1) - j!²/((j-n)!(n+1+j)!)
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

    // G(n,j) = 2 j!² / ((j-n-1)!(n+1+j)!(n+1))
    fn g3(n: i64) -> TermSum {
        TermKernel::new(rat(2, n + 1))
            .num_fact(0)
            .num_fact(0)
            .den_fact(-n - 1)
            .den_fact(n + 1)
            .into()
    }

    fn rel3() -> WzRelation {
        WzRelation {
            alpha: int(1),
            beta: int(-1),
            gamma: int(0),
        }
    }

    #[test]
    fn pair_three_at_n_one() {
        assert!(wz_verify(&f3, &g3, &rel3(), 1).unwrap());
        let lhs = f3(2).eval(2).unwrap() - f3(1).eval(2).unwrap();
        let rhs = g3(1).eval(3).unwrap() - g3(1).eval(2).unwrap();
        assert_eq!(lhs, rat(2, 15));
        assert_eq!(rhs, rat(2, 15));
    }

    #[test]
    fn wrong_gamma_fails() {
        let rel = WzRelation {
            gamma: int(1),
            ..rel3()
        };
        assert!(!wz_verify(&f3, &g3, &rel, 1).unwrap());
    }

    #[test]
    fn telescoped_sums_agree() {
        for n in 1..6 {
            let (s, t) = telescoped_sum_check(&f3, &g3, &rel3(), n, 40).unwrap();
            assert_eq!(s, t);
        }
    }
}
