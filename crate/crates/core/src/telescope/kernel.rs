use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::TelescopeError;
use crate::exact::{factorial, fmt_rational, int, recip_factorial, ExactRational};
use crate::polyrat::{InfinityExpansion, Polynomial, RationalFunction};

/// `(j + shift)!^exponent`, exponent ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorialPower {
    pub shift: i64,
    pub exponent: i8,
}

/// `constant · polyfactor(j) · ∏ (j + sᵢ)!^{±1}` for one fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermKernel {
    pub constant: ExactRational,
    pub polyfactor: Polynomial,
    pub factorials: Vec<FactorialPower>,
}

impl TermKernel {
    pub fn new(constant: ExactRational) -> Self {
        Self {
            constant,
            polyfactor: Polynomial::one(),
            factorials: Vec::new(),
        }
    }

    pub fn with_poly(mut self, p: Polynomial) -> Self {
        self.polyfactor = &self.polyfactor * &p;
        self
    }

    /// Multiplies by `(j + shift)!`.
    pub fn num_fact(mut self, shift: i64) -> Self {
        self.factorials.push(FactorialPower { shift, exponent: 1 });
        self
    }

    /// Divides by `(j + shift)!`.
    pub fn den_fact(mut self, shift: i64) -> Self {
        self.factorials.push(FactorialPower { shift, exponent: -1 });
        self
    }

    pub fn is_balanced(&self) -> bool {
        self.factorials.iter().map(|f| f.exponent as i64).sum::<i64>() == 0
    }

    /// Value at an integer `j ≥ 0`, with `1/m! = 0` for `m < 0`.
    pub fn eval(&self, j: i64) -> Result<ExactRational, TelescopeError> {
        let mut acc = &self.constant * self.polyfactor.eval(&int(j));
        for f in &self.factorials {
            if acc.is_zero() {
                break;
            }
            let m = j + f.shift;
            if f.exponent > 0 {
                let v = factorial(m).map_err(|_| TelescopeError::NegativeFactorialArg { j, arg: m })?;
                acc *= ExactRational::from_integer(v);
            } else {
                acc *= recip_factorial(m);
            }
        }
        Ok(acc)
    }

    /// Rational closed form in `j`, pairing each `(j+a)!` with a `1/(j+b)!`.
    pub fn to_rf(&self) -> Result<RationalFunction, TelescopeError> {
        self.linear_fraction()?.to_rf()
    }

    /// Unreduced closed form with the denominator kept as linear factors.
    pub fn linear_fraction(&self) -> Result<LinearFraction, TelescopeError> {
        if !self.is_balanced() {
            return Err(TelescopeError::Unbalanced);
        }
        let (num, den) = factorial_shifts(&self.factorials);
        let mut num = num.iter().fold(self.polyfactor.scale(&self.constant), |acc, &i| {
            &acc * &Polynomial::linear_root(&int(-i))
        });
        let mut den_map = BTreeMap::new();
        for i in den {
            *den_map.entry(i).or_insert(0u32) += 1;
        }
        if num.is_zero() {
            den_map.clear();
            num = Polynomial::zero();
        }
        Ok(LinearFraction { num, den: den_map })
    }
}

/// `num(j) / ∏ (j + i)^{mᵢ}`, not reduced. Sums take the lcm of the
/// factor multisets, so no polynomial gcd is ever needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFraction {
    pub num: Polynomial,
    pub den: BTreeMap<i64, u32>,
}

impl LinearFraction {
    pub fn constant(c: ExactRational) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: BTreeMap::new(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `j → j + a`.
    pub fn shift(&self, a: i64) -> Self {
        Self {
            num: self.num.shift_int(a),
            den: self.den.iter().map(|(&i, &m)| (i + a, m)).collect(),
        }
    }

    pub fn den_poly(&self) -> Polynomial {
        factors_poly(&self.den)
    }

    /// Sum over the least common multiple of the denominators.
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a LinearFraction>) -> Self {
        let parts: Vec<&LinearFraction> = parts.into_iter().collect();
        let mut lcm: BTreeMap<i64, u32> = BTreeMap::new();
        for p in &parts {
            for (&i, &m) in &p.den {
                let e = lcm.entry(i).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let num = parts.iter().fold(Polynomial::zero(), |acc, p| {
            let missing: BTreeMap<i64, u32> = lcm
                .iter()
                .map(|(&i, &m)| (i, m - p.den.get(&i).copied().unwrap_or(0)))
                .filter(|&(_, m)| m > 0)
                .collect();
            &acc + &(&p.num * &factors_poly(&missing))
        });
        Self { num, den: lcm }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_rf(&self) -> Result<RationalFunction, TelescopeError> {
        Ok(RationalFunction::new(self.num.clone(), self.den_poly())?)
    }
}

fn factors_poly(factors: &BTreeMap<i64, u32>) -> Polynomial {
    factors.iter().fold(Polynomial::one(), |acc, (&i, &m)| {
        &acc * &Polynomial::linear_root(&int(-i)).pow(m)
    })
}

/// Shifts `i` of the linear factors `(j+i)` above and below the line in a
/// balanced factorial product.
pub(crate) fn factorial_shifts(factorials: &[FactorialPower]) -> (Vec<i64>, Vec<i64>) {
    let mut ups: Vec<i64> = factorials.iter().filter(|f| f.exponent > 0).map(|f| f.shift).collect();
    let mut downs: Vec<i64> = factorials.iter().filter(|f| f.exponent < 0).map(|f| f.shift).collect();
    ups.sort_unstable();
    downs.sort_unstable();
    let (mut num, mut den) = (Vec::new(), Vec::new());
    for (&a, &b) in ups.iter().zip(&downs) {
        // (j+a)!/(j+b)!
        if a >= b {
            num.extend((b + 1)..=a);
        } else {
            den.extend((a + 1)..=b);
        }
    }
    (num, den)
}

/// Numerator and denominator polynomials of a balanced factorial product.
pub(crate) fn factorial_quotient(factorials: &[FactorialPower]) -> (Polynomial, Polynomial) {
    let (num, den) = factorial_shifts(factorials);
    let poly = |shifts: Vec<i64>| {
        shifts
            .iter()
            .fold(Polynomial::one(), |acc, &i| &acc * &Polynomial::linear_root(&int(-i)))
    };
    (poly(num), poly(den))
}

impl fmt::Display for TermKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.constant))?;
        if !self.polyfactor.is_one() {
            write!(f, "·({})", self.polyfactor)?;
        }
        for fp in &self.factorials {
            let arg = match fp.shift {
                0 => "j".to_string(),
                s if s > 0 => format!("j+{s}"),
                s => format!("j{s}"),
            };
            if fp.exponent > 0 {
                write!(f, "·({arg})!")?;
            } else {
                write!(f, "/({arg})!")?;
            }
        }
        Ok(())
    }
}

/// Linear combination of kernels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermSum {
    pub terms: Vec<TermKernel>,
}

impl TermSum {
    pub fn new(terms: Vec<TermKernel>) -> Self {
        Self { terms }
    }

    pub fn is_balanced(&self) -> bool {
        self.terms.iter().all(TermKernel::is_balanced)
    }

    pub fn eval(&self, j: i64) -> Result<ExactRational, TelescopeError> {
        self.terms
            .iter()
            .try_fold(ExactRational::zero(), |acc, t| Ok(acc + t.eval(j)?))
    }

    pub fn to_rf(&self) -> Result<RationalFunction, TelescopeError> {
        self.linear_fraction()?.to_rf()
    }

    pub fn linear_fraction(&self) -> Result<LinearFraction, TelescopeError> {
        let parts = self
            .terms
            .iter()
            .map(TermKernel::linear_fraction)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearFraction::sum(&parts))
    }

    /// Every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &ExactRational) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|t| TermKernel {
                    constant: &t.constant * c,
                    ..t.clone()
                })
                .collect(),
        )
    }
}

impl From<TermKernel> for TermSum {
    fn from(t: TermKernel) -> Self {
        Self::new(vec![t])
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `f(j+1)/f(j)` in reduced form.
pub fn kernel_ratio(f: &RationalFunction) -> Result<RationalFunction, TelescopeError> {
    if f.is_zero() {
        return Err(TelescopeError::ZeroInput);
    }
    Ok(f.shift(1).checked_div(f)?)
}

/// `(a, c)` with `t(j) = a·j + c + O(1/j)`.
pub fn kernel_asymptotics(t: &TermSum) -> Result<(ExactRational, ExactRational), TelescopeError> {
    let rf = t.to_rf()?;
    let InfinityExpansion { slope, constant, .. } =
        rf.infinity_expansion().map_err(|_| TelescopeError::DegreeGrowth)?;
    Ok((slope, constant))
}

/// `1/(j+1)` as a balanced kernel, `c·j!/(j+1)!`.
pub fn reciprocal_linear(c: ExactRational) -> TermKernel {
    TermKernel::new(c).num_fact(0).den_fact(1)
}
