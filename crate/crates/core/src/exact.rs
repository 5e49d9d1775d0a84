//! Exact scalars and combinatorics.
//!
//! Every value in the crate is an [`ExactRational`]. Factorials follow the
//! reciprocal-Gamma convention: `1/m! = 0` for every negative integer `m`.
//! [`GammaDual`] carries first-order jets in a parameter `x` with Euler's
//! constant kept as a formal symbol, so that γ-cancellation is checkable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision reduced fraction.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("reciprocal of a gamma-dual number with zero value part")]
    ZeroDualReciprocal,
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &ExactRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

fn factorial_unchecked(m: usize) -> BigInt {
    {
        let table = factorial_table().read().expect("factorial table poisoned");
        if let Some(v) = table.get(m) {
            return v.clone();
        }
    }
    // Append-only: entries are never rewritten once present.
    let mut table = factorial_table().write().expect("factorial table poisoned");
    while table.len() <= m {
        let next = table.last().expect("table seeded with 0!") * BigInt::from(table.len());
        table.push(next);
    }
    table[m].clone()
}

pub fn factorial(m: i64) -> Result<BigInt, ExactError> {
    if m < 0 {
        return Err(ExactError::NegativeFactorial(m));
    }
    Ok(factorial_unchecked(m as usize))
}

/// `1/m!`, with `1/m! = 0` for negative `m`.
pub fn recip_factorial(m: i64) -> ExactRational {
    if m < 0 {
        ExactRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial_unchecked(m as usize))
    }
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    assert!(n >= 0, "binomial: n must be nonnegative, got {n}");
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized harmonic number `H_n^{(m)} = Σ_{i=1..n} 1/i^m`.
pub fn harmonic(n: i64, m: u32) -> ExactRational {
    assert!(m >= 1, "harmonic: order must be at least 1");
    (1..=n.max(0))
        .map(|i| BigRational::new(BigInt::one(), BigInt::from(i).pow(m)))
        .fold(ExactRational::zero(), |acc, t| acc + t)
}

/// `Σ_{k=1..n} (-1)^{k-1}/k²`.
pub fn alt_harmonic2(n: i64) -> ExactRational {
    (1..=n.max(0))
        .map(|k| {
            let t = BigRational::new(BigInt::one(), BigInt::from(k * k));
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        })
        .fold(ExactRational::zero(), |acc, t| acc + t)
}

/// `value + ε·(d + dgamma·γ)` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaDual {
    pub value: ExactRational,
    pub d: ExactRational,
    pub dgamma: ExactRational,
}

impl GammaDual {
    pub fn new(value: ExactRational, d: ExactRational, dgamma: ExactRational) -> Self {
        Self { value, d, dgamma }
    }

    pub fn constant(value: ExactRational) -> Self {
        Self::new(value, ExactRational::zero(), ExactRational::zero())
    }

    /// The parameter `x` itself: `0 + ε`.
    pub fn epsilon() -> Self {
        Self::new(ExactRational::zero(), ExactRational::one(), ExactRational::zero())
    }

    pub fn zero() -> Self {
        Self::constant(ExactRational::zero())
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn is_gamma_free(&self) -> bool {
        self.dgamma.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.d.is_zero() && self.dgamma.is_zero()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(&self.value * c, &self.d * c, &self.dgamma * c)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.value.is_zero() {
            return Err(ExactError::ZeroDualReciprocal);
        }
        let inv = self.value.recip();
        let inv2 = &inv * &inv;
        Ok(Self::new(inv, -(&self.d * &inv2), -(&self.dgamma * &inv2)))
    }
}

impl fmt::Display for GammaDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_rational(&self.value),
            fmt_rational(&self.d),
            fmt_rational(&self.dgamma)
        )
    }
}

impl<'a> Add<&'a GammaDual> for &'a GammaDual {
    type Output = GammaDual;
    fn add(self, rhs: &'a GammaDual) -> GammaDual {
        GammaDual::new(&self.value + &rhs.value, &self.d + &rhs.d, &self.dgamma + &rhs.dgamma)
    }
}

impl<'a> Sub<&'a GammaDual> for &'a GammaDual {
    type Output = GammaDual;
    fn sub(self, rhs: &'a GammaDual) -> GammaDual {
        GammaDual::new(&self.value - &rhs.value, &self.d - &rhs.d, &self.dgamma - &rhs.dgamma)
    }
}

impl<'a> Mul<&'a GammaDual> for &'a GammaDual {
    type Output = GammaDual;
    fn mul(self, rhs: &'a GammaDual) -> GammaDual {
        GammaDual::new(
            &self.value * &rhs.value,
            &self.value * &rhs.d + &rhs.value * &self.d,
            &self.value * &rhs.dgamma + &rhs.value * &self.dgamma,
        )
    }
}

impl Add for GammaDual {
    type Output = GammaDual;
    fn add(self, rhs: GammaDual) -> GammaDual {
        &self + &rhs
    }
}

impl Sub for GammaDual {
    type Output = GammaDual;
    fn sub(self, rhs: GammaDual) -> GammaDual {
        &self - &rhs
    }
}

impl Mul for GammaDual {
    type Output = GammaDual;
    fn mul(self, rhs: GammaDual) -> GammaDual {
        &self * &rhs
    }
}

impl Neg for GammaDual {
    type Output = GammaDual;
    fn neg(self) -> GammaDual {
        GammaDual::new(-self.value, -self.d, -self.dgamma)
    }
}

/// First-order jet of `x ↦ 1/(m+x)!` at `x = 0`.
///
/// For `m ≥ 0` this is `(1/m!, -H_m/m!, 1/m!)` since `ψ(m+1) = H_m - γ`.
/// For `m < 0` the reciprocal Gamma has a simple zero and the jet is
/// `(0, (-1)^k k!, 0)` with `k = -m-1`.
pub fn gdual_recip_factorial(m: i64) -> GammaDual {
    if m >= 0 {
        let r = recip_factorial(m);
        GammaDual::new(r.clone(), -(harmonic(m, 1) * &r), r)
    } else {
        let k = -m - 1;
        let mut d = BigRational::from_integer(factorial_unchecked(k as usize));
        if k % 2 == 1 {
            d = -d;
        }
        GammaDual::new(ExactRational::zero(), d, ExactRational::zero())
    }
}

/// First-order jet of `x ↦ (m+x)!`; only defined where the value is nonzero.
pub fn gdual_factorial(m: i64) -> Result<GammaDual, ExactError> {
    if m < 0 {
        return Err(ExactError::NegativeFactorial(m));
    }
    gdual_recip_factorial(m).recip()
}
