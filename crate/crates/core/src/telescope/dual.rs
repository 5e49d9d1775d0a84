//! Kernels carrying a parameter `x` inside every factorial, evaluated as
//! first-order jets at `x = 0`.
//!
//! A factor `(j+s+x)!^{±1}` becomes a [`GammaDual`] whose `dgamma` slot
//! tracks Euler's constant from `ψ(j+s+1) = H_{j+s} - γ`. Balanced kernels
//! cancel γ exactly, which is checked rather than assumed.

use num_traits::Zero;

use super::kernel::{factorial_quotient, FactorialPower};
use super::{TelescopeError, WzRelation};
use crate::exact::{gdual_factorial, gdual_recip_factorial, int, ExactRational, GammaDual};
use crate::polyrat::{Polynomial, RationalFunction};

/// `constant · rational(j) · ∏ (j + sᵢ + x)!^{±1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualKernel {
    pub constant: GammaDual,
    pub rational: RationalFunction,
    pub factorials: Vec<FactorialPower>,
}

impl DualKernel {
    pub fn new(constant: GammaDual) -> Self {
        Self {
            constant,
            rational: RationalFunction::one(),
            factorials: Vec::new(),
        }
    }

    pub fn with_rational(mut self, r: RationalFunction) -> Self {
        self.rational = &self.rational * &r;
        self
    }

    pub fn num_fact(mut self, shift: i64) -> Self {
        self.factorials.push(FactorialPower { shift, exponent: 1 });
        self
    }

    pub fn den_fact(mut self, shift: i64) -> Self {
        self.factorials.push(FactorialPower { shift, exponent: -1 });
        self
    }

    pub fn is_balanced(&self) -> bool {
        self.factorials.iter().map(|f| f.exponent as i64).sum::<i64>() == 0
    }

    pub fn eval(&self, j: i64) -> Result<GammaDual, TelescopeError> {
        let r = self.rational.eval_int(j)?;
        let mut acc = self.constant.scale(&r);
        for f in &self.factorials {
            let m = j + f.shift;
            let factor = if f.exponent > 0 {
                gdual_factorial(m).map_err(|_| TelescopeError::NegativeFactorialArg { j, arg: m })?
            } else {
                gdual_recip_factorial(m)
            };
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    /// Coefficients of `j^t`, `t ≥ 0`, in the expansion at infinity of each
    /// jet slot. With `base = q(j) + O(1/j)` and the log-derivative
    /// `L = Σ ℓ_m j^{-m}`, only `q·L` reaches nonnegative powers.
    fn growth_coeffs(&self) -> Result<[Vec<ExactRational>; 3], TelescopeError> {
        if !self.is_balanced() {
            return Err(TelescopeError::Unbalanced);
        }
        let (num, den) = factorial_quotient(&self.factorials);
        let (q, _) = (self.rational.numer() * &num).divmod(&(self.rational.denom() * &den))?;
        let q = q.coeffs();
        let terms = self.log_derivative_terms();
        // ℓ_m = Σ cᵢ (-i)^{m-1}, from 1/(j+i) = Σ (-i)^{m-1} j^{-m}.
        let ell: Vec<ExactRational> = (0..q.len())
            .map(|m| {
                terms
                    .iter()
                    .map(|&(i, c)| int(c) * num_traits::pow(int(-i), m.saturating_sub(1)))
                    .sum()
            })
            .collect();
        let c = &self.constant;
        let mut value = Vec::with_capacity(q.len());
        let mut d = Vec::with_capacity(q.len());
        let mut dgamma = Vec::with_capacity(q.len());
        for t in 0..q.len() {
            let lq: ExactRational = ((t + 1)..q.len()).map(|m| &q[m] * &ell[m - t]).sum();
            value.push(&c.value * &q[t]);
            d.push(&c.d * &q[t] + &c.value * &lq);
            dgamma.push(&c.dgamma * &q[t]);
        }
        Ok([value, d, dgamma])
    }

    /// `(i, ±1)` with `Σ ψ` over numerator factorials minus denominator ones
    /// equal to `Σ ±1/(j+i)`; γ cancels pairwise.
    fn log_derivative_terms(&self) -> Vec<(i64, i64)> {
        let mut ups: Vec<i64> = self
            .factorials
            .iter()
            .filter(|f| f.exponent > 0)
            .map(|f| f.shift)
            .collect();
        let mut downs: Vec<i64> = self
            .factorials
            .iter()
            .filter(|f| f.exponent < 0)
            .map(|f| f.shift)
            .collect();
        ups.sort_unstable();
        downs.sort_unstable();
        let mut terms = Vec::new();
        for (&a, &b) in ups.iter().zip(&downs) {
            let (lo, hi, sign) = if a >= b { (b, a, 1) } else { (a, b, -1) };
            terms.extend(((lo + 1)..=hi).map(|i| (i, sign)));
        }
        terms
    }

    /// The three jet slots `(value, d, dgamma)` as rational functions of `j`,
    /// valid once every factorial argument is nonnegative.
    pub fn jet_rfs(&self) -> Result<[RationalFunction; 3], TelescopeError> {
        if !self.is_balanced() {
            return Err(TelescopeError::Unbalanced);
        }
        let (num, den) = factorial_quotient(&self.factorials);
        let base = &self.rational * &RationalFunction::new(num, den)?;

        let mut log_derivative = RationalFunction::zero();
        for (i, sign) in self.log_derivative_terms() {
            let term = RationalFunction::new(Polynomial::constant(int(sign)), Polynomial::linear_root(&int(-i)))?;
            log_derivative = &log_derivative + &term;
        }
        let value = base.scale(&self.constant.value);
        let d = &base.scale(&self.constant.d) + &(&value * &log_derivative);
        let dgamma = base.scale(&self.constant.dgamma);
        Ok([value, d, dgamma])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualTermSum {
    pub terms: Vec<DualKernel>,
}

impl DualTermSum {
    pub fn new(terms: Vec<DualKernel>) -> Self {
        Self { terms }
    }

    pub fn eval(&self, j: i64) -> Result<GammaDual, TelescopeError> {
        self.terms
            .iter()
            .try_fold(GammaDual::zero(), |acc, t| Ok(&acc + &t.eval(j)?))
    }

    /// Limit of each jet slot as `j → ∞`.
    pub fn limit_at_infinity(&self) -> Result<GammaDual, TelescopeError> {
        let mut slots: [Vec<ExactRational>; 3] = Default::default();
        for t in &self.terms {
            for (acc, coeffs) in slots.iter_mut().zip(t.growth_coeffs()?) {
                if acc.len() < coeffs.len() {
                    acc.resize(coeffs.len(), ExactRational::zero());
                }
                for (a, c) in acc.iter_mut().zip(coeffs) {
                    *a += c;
                }
            }
        }
        let mut limits = Vec::with_capacity(3);
        for coeffs in &slots {
            if coeffs.iter().skip(1).any(|c| !c.is_zero()) {
                return Err(TelescopeError::DegreeGrowth);
            }
            limits.push(coeffs.first().cloned().unwrap_or_else(ExactRational::zero));
        }
        let dgamma = limits.pop().expect("three slots");
        let d = limits.pop().expect("three slots");
        let value = limits.pop().expect("three slots");
        Ok(GammaDual::new(value, d, dgamma))
    }
}

impl From<DualKernel> for DualTermSum {
    fn from(k: DualKernel) -> Self {
        Self::new(vec![k])
    }
}

/// Both sides of `alpha·F(n+1,j) + beta·F(n,j) - gamma = sigma·[G(n,j+1) - G(n,j)]`
/// at one grid point.
pub fn dual_sides(
    f: &dyn Fn(i64) -> DualTermSum,
    g: &dyn Fn(i64) -> DualTermSum,
    rel: &WzRelation,
    n: i64,
    j: i64,
    sigma: i8,
) -> Result<(GammaDual, GammaDual), TelescopeError> {
    let lhs = &(&f(n + 1).eval(j)?.scale(&rel.alpha) + &f(n).eval(j)?.scale(&rel.beta))
        - &GammaDual::constant(rel.gamma.clone());
    let g_n = g(n);
    let rhs = (&g_n.eval(j + 1)? - &g_n.eval(j)?).scale(&int(sigma as i64));
    Ok((lhs, rhs))
}

/// Relation check in all three jet slots; γ left over on either side is an
/// error, not a mismatch.
pub fn wz_verify_dual(
    f: &dyn Fn(i64) -> DualTermSum,
    g: &dyn Fn(i64) -> DualTermSum,
    rel: &WzRelation,
    n: i64,
    j: i64,
    sigma: i8,
) -> Result<bool, TelescopeError> {
    let (lhs, rhs) = dual_sides(f, g, rel, n, j, sigma)?;
    if !lhs.is_gamma_free() || !rhs.is_gamma_free() {
        return Err(TelescopeError::GammaContamination { n, j });
    }
    Ok(lhs == rhs)
}

/// The orientation `sigma ∈ {+1, -1}` under which the relation holds at
/// `(n, j) = (0, 0)`, if exactly one does.
pub fn determine_sigma(
    f: &dyn Fn(i64) -> DualTermSum,
    g: &dyn Fn(i64) -> DualTermSum,
    rel: &WzRelation,
) -> Result<Option<i8>, TelescopeError> {
    let plus = wz_verify_dual(f, g, rel, 0, 0, 1)?;
    let minus = wz_verify_dual(f, g, rel, 0, 0, -1)?;
    Ok(match (plus, minus) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ExactRational};

    // F(n,j) = x/(j+1)² + (j+x)!²/((n+1+j+x)!(j+x-n)!)
    fn f8(n: i64) -> DualTermSum {
        let inv_sq = RationalFunction::new(Polynomial::one(), Polynomial::from_i64(&[1, 1]).pow(2)).unwrap();
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

    fn rel(n: i64) -> WzRelation {
        WzRelation {
            alpha: int(n + 1),
            beta: int(-(n + 1)),
            gamma: ExactRational::zero(),
        }
    }

    #[test]
    fn origin_oracle() {
        let (lhs, rhs) = dual_sides(&f8, &g8, &rel(0), 0, 0, 1).unwrap();
        assert_eq!((lhs.value.clone(), lhs.d.clone()), (int(-1), rat(3, 2)));
        assert_eq!((rhs.value, rhs.d), (int(1), rat(-3, 2)));
        assert!(wz_verify_dual(&f8, &g8, &rel(0), 0, 0, -1).unwrap());
        assert!(!wz_verify_dual(&f8, &g8, &rel(0), 0, 0, 1).unwrap());
        assert_eq!(determine_sigma(&f8, &g8, &rel(0)).unwrap(), Some(-1));
    }

    #[test]
    fn grid_points_from_symbolic_oracle() {
        // left sides frozen from an independent symbolic differentiation
        let cases = [
            (1, 2, rat(-4, 15), rat(17, 225)),
            (2, 1, int(0), rat(-3, 20)),
            (3, 5, rat(-4, 63), rat(-347, 39690)),
        ];
        for (n, j, v, d) in cases {
            let (lhs, rhs) = dual_sides(&f8, &g8, &rel(n), n, j, -1).unwrap();
            assert_eq!((lhs.value.clone(), lhs.d.clone()), (v, d));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gamma_contamination_reported() {
        // an unbalanced G leaks γ
        let leaky = |_n: i64| -> DualTermSum { DualKernel::new(GammaDual::one()).den_fact(1).into() };
        assert_eq!(
            wz_verify_dual(&f8, &leaky, &rel(0), 0, 0, 1),
            Err(TelescopeError::GammaContamination { n: 0, j: 0 })
        );
    }

    #[test]
    fn jets_match_pointwise_eval() {
        for n in 0..4 {
            for k in [f8(n), g8(n)] {
                for t in &k.terms {
                    let [v, d, g] = t.jet_rfs().unwrap();
                    for j in (n + 1)..20 {
                        let e = t.eval(j).unwrap();
                        assert_eq!(e.value, v.eval_int(j).unwrap());
                        assert_eq!(e.d, d.eval_int(j).unwrap());
                        assert_eq!(e.dgamma, g.eval_int(j).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn limit_of_g() {
        for n in 0..5 {
            assert_eq!(g8(n).limit_at_infinity().unwrap(), GammaDual::constant(int(2)));
        }
    }

    fn limit_via_jets(s: &DualTermSum) -> Result<GammaDual, TelescopeError> {
        let mut slots = [
            RationalFunction::zero(),
            RationalFunction::zero(),
            RationalFunction::zero(),
        ];
        for t in &s.terms {
            for (acc, rf) in slots.iter_mut().zip(t.jet_rfs()?) {
                *acc = &*acc + &rf;
            }
        }
        let mut out = Vec::new();
        for rf in &slots {
            let e = rf.infinity_expansion().map_err(|_| TelescopeError::DegreeGrowth)?;
            if !e.slope.is_zero() {
                return Err(TelescopeError::DegreeGrowth);
            }
            out.push(e.constant);
        }
        Ok(GammaDual::new(out[0].clone(), out[1].clone(), out[2].clone()))
    }

    #[test]
    fn limit_matches_jet_functions() {
        for n in 0..6 {
            assert_eq!(g8(n).limit_at_infinity(), limit_via_jets(&g8(n)), "g n {n}");
            assert_eq!(f8(n).limit_at_infinity(), limit_via_jets(&f8(n)), "f n {n}");
        }
        let growing = DualTermSum::from(DualKernel::new(GammaDual::constant(int(1))).num_fact(2).den_fact(0));
        assert_eq!(growing.limit_at_infinity(), Err(TelescopeError::DegreeGrowth));
        let shifted = DualTermSum::from(
            DualKernel::new(GammaDual::new(int(2), int(3), int(0)))
                .num_fact(-1)
                .den_fact(0)
                .num_fact(4)
                .den_fact(3),
        );
        assert_eq!(shifted.limit_at_infinity(), limit_via_jets(&shifted));
    }
}
