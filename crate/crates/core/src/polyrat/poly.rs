use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::exact::{fmt_rational, int, ExactRational};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing zeros are never stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// The formal variable.
    pub fn var() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `z - root`.
    pub fn linear_root(root: &ExactRational) -> Self {
        Self::new(vec![-root.clone(), ExactRational::one()])
    }

    /// `∏ (z - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a ExactRational>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `p(z + a)`, expanded.
    pub fn shift(&self, a: &ExactRational) -> Self {
        let step = Self::new(vec![a.clone(), ExactRational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }

    pub fn shift_int(&self, a: i64) -> Self {
        self.shift(&int(a))
    }

    /// Euclidean division: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = b.coeffs[db].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![ExactRational::zero(); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (k, bk) in b.coeffs.iter().enumerate() {
                rem[i + k] -= &c * bk;
            }
            quot[i] = c;
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `b` is known to divide `self`.
    pub fn exact_div(&self, b: &Polynomial) -> Result<Polynomial, PolyError> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                if negative && out == "-" {
                    // "-j" is not a valid literal; keep an explicit factor
                    out.push_str("1*");
                }
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Smallest nonnegative integer bounding every complex root's modulus
    /// (Fujiwara's bound). Zero for constants.
    pub fn root_bound(&self) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        if d == 0 {
            return BigInt::zero();
        }
        let lead = self.coeffs[d].abs();
        let mut best = BigInt::zero();
        for k in 1..=d {
            let mut ratio = self.coeffs[d - k].abs() / &lead;
            if k == d {
                ratio /= int(2);
            }
            let r = ceil_root(&ratio, k as u32);
            if r > best {
                best = r;
            }
        }
        best * 2
    }
}

/// Smallest integer `u ≥ 0` with `u^k ≥ r`, for `r ≥ 0`.
fn ceil_root(r: &ExactRational, k: u32) -> BigInt {
    if r.is_zero() {
        return BigInt::zero();
    }
    let fits = |u: &BigInt| ExactRational::from_integer(u.pow(k)) >= *r;
    let mut hi = BigInt::one();
    while !fits(&hi) {
        hi *= 2;
    }
    let mut lo = &hi / 2;
    // invariant: !fits(lo) or lo == 0, fits(hi)
    while &hi - &lo > BigInt::one() {
        let mid = (&lo + &hi) / 2;
        if fits(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// All `k ≥ 0` with `deg gcd(a(j), b(j+k)) ≥ 1`.
///
/// Candidates are scanned from zero up to the sum of the two root bounds,
/// which covers every integer difference of roots.
pub fn dispersion_set(a: &Polynomial, b: &Polynomial) -> Result<BTreeSet<i64>, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let bound = a.root_bound() + b.root_bound();
    let bound: i64 = bound.try_into().map_err(|_| PolyError::BoundTooLarge)?;
    let mut out = BTreeSet::new();
    if a.is_constant() || b.is_constant() {
        return Ok(out);
    }
    for k in 0..=bound {
        let g = a.gcd(&b.shift_int(k))?;
        if g.degree().unwrap_or(0) >= 1 {
            out.insert(k);
        }
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("j"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64(c)
    }

    #[test]
    fn zero_is_distinct() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), Polynomial::zero());
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(p(&[2, 3, 1]).divmod(&p(&[1, 1])).unwrap(), (p(&[2, 1]), p(&[])));
        assert_eq!(p(&[0, 0, 1]).divmod(&p(&[1, 1])).unwrap(), (p(&[-1, 1]), p(&[1])));
        assert_eq!(
            p(&[0, -1, 0, 2]).divmod(&p(&[1, 0, 1])).unwrap(),
            (p(&[0, 2]), p(&[0, -3]))
        );
        assert_eq!(p(&[1, 2]).divmod(&Polynomial::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 2, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[0, 1]).gcd(&p(&[1, 1])).unwrap(), p(&[1]));
        // j^3 - j = j(j-1)(j+1), j^2 - j = j(j-1)
        assert_eq!(p(&[0, -1, 0, 1]).gcd(&p(&[0, -1, 1])).unwrap(), p(&[0, -1, 1]));
        assert_eq!(Polynomial::zero().gcd(&Polynomial::zero()), Err(PolyError::GcdOfZeros));
        assert_eq!(
            Polynomial::zero().gcd(&p(&[2, 4])).unwrap(),
            Polynomial::new(vec![rat(1, 2), int(1)])
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift_int(1), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).shift_int(-1), p(&[0, 1]));
        assert_eq!(p(&[0, -1, 1]).shift_int(2), p(&[2, 3, 1]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[7]).derivative(), Polynomial::zero());
        assert_eq!(p(&[4, 5, 1]).derivative(), p(&[5, 2]));
    }

    #[test]
    fn dispersion_examples() {
        let j = p(&[0, 1]);
        assert_eq!(dispersion_set(&j, &j).unwrap(), BTreeSet::from([0]));
        assert!(dispersion_set(&j, &p(&[3, 1])).unwrap().is_empty());
        assert_eq!(dispersion_set(&j, &p(&[-3, 1])).unwrap(), BTreeSet::from([3]));
        assert!(dispersion_set(&p(&[4]), &j).unwrap().is_empty());
    }

    #[test]
    fn root_bound_covers_roots() {
        let roots: Vec<ExactRational> = [-12, 3, 7, 0, -1].iter().map(|&r| int(r)).collect();
        let poly = Polynomial::from_roots(&roots).scale(&rat(-3, 5));
        let bound = ExactRational::from_integer(poly.root_bound());
        assert!(roots.iter().all(|r| r.abs() <= bound));
        assert_eq!(ceil_root(&int(27), 3), BigInt::from(3));
        assert_eq!(ceil_root(&int(28), 3), BigInt::from(4));
        assert_eq!(ceil_root(&rat(1, 9), 2), BigInt::from(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, -3, 2]).to_string(), "2*j^2 - 3*j + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-1*j");
        assert_eq!(Polynomial::new(vec![rat(1, 2), rat(-1, 3)]).to_string(), "-1/3*j + 1/2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn poly_strategy() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..6)
            .prop_map(|cs| Polynomial::new(cs.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    /// Dispersion oracle for products of integer linear factors:
    /// every nonnegative difference `β - α` of roots α of `a`, β of `b`.
    fn dispersion_from_roots(ra: &[i64], rb: &[i64]) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for &alpha in ra {
            for &beta in rb {
                if beta - alpha >= 0 {
                    out.insert(beta - alpha);
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn shift_roundtrip(a in poly_strategy(), s in -20i64..20) {
            prop_assert_eq!(a.shift_int(s).shift_int(-s), a);
        }

        #[test]
        fn gcd_divides_both(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assume!(!c.is_zero());
            let (a, b) = (&a * &c, &b * &c);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.divmod(&g).unwrap().1.is_zero());
            prop_assert!(b.divmod(&g).unwrap().1.is_zero());
            prop_assert!(c.degree() <= g.degree());
        }

        #[test]
        fn dispersion_matches_root_enumeration(
            ra in prop::collection::vec(-8i64..8, 1..4),
            rb in prop::collection::vec(-8i64..8, 1..4),
        ) {
            let a = Polynomial::from_roots(&ra.iter().map(|&r| int(r)).collect::<Vec<_>>());
            let b = Polynomial::from_roots(&rb.iter().map(|&r| int(r)).collect::<Vec<_>>());
            // roots of b(j+k) are β - k
            prop_assert_eq!(dispersion_set(&a, &b).unwrap(), dispersion_from_roots(&ra, &rb));
        }
    }
}
