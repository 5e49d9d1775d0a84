use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{PolyError, Polynomial};
use crate::exact::{int, ExactRational};

/// Reduced quotient of polynomials with a monic denominator.
///
/// Under this normal form structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// `R(z) = slope·z + constant + inv_coeff/z + O(1/z²)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InfinityExpansion {
    pub slope: ExactRational,
    pub constant: ExactRational,
    pub inv_coeff: ExactRational,
}

impl RationalFunction {
    /// Reduces `num/den` to normal form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lead = den.leading().expect("nonzero denominator").recip();
        Ok(Self {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn var() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<ExactRational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn eval(&self, x: &ExactRational) -> Result<ExactRational, PolyError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(PolyError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Result<ExactRational, PolyError> {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        // powers of coprime polynomials stay coprime; den stays monic
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `R(z + a)`.
    pub fn shift(&self, a: i64) -> Self {
        Self {
            num: self.num.shift_int(a),
            den: self.den.shift_int(a),
        }
    }

    /// Coefficients of `R` at infinity, up to the `1/z` term.
    pub fn infinity_expansion(&self) -> Result<InfinityExpansion, PolyError> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().expect("denominator is nonzero");
        if self.num.degree().is_some() && dn > dd + 1 {
            return Err(PolyError::DegreeExcess {
                numerator: dn,
                denominator: dd,
            });
        }
        let (q, r) = self.num.divmod(&self.den)?;
        // den is monic, so r/den = r_{dd-1}/z + O(1/z²)
        let inv_coeff = if dd == 0 {
            ExactRational::zero()
        } else {
            r.coeff(dd - 1)
        };
        Ok(InfinityExpansion {
            slope: q.coeff(1),
            constant: q.coeff(0),
            inv_coeff,
        })
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_in(var)
        } else {
            format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("j"))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        if rhs.den.is_one() {
            // already coprime: gcd(a + c·b, b) = gcd(a, b) = 1
            return RationalFunction {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return rhs + self;
        }
        RationalFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
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

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[1, 1]), RationalFunction::from_poly(p(&[-1, 1])));
        let half = rf(&[2, 2], &[4]);
        assert_eq!(half.numer(), &Polynomial::new(vec![rat(1, 2), rat(1, 2)]));
        assert!(half.denom().is_one());
        let r = rf(&[4, 5, 1], &[-4, 4]);
        assert_eq!(r.denom(), &p(&[-1, 1]));
        assert_eq!(r.numer(), &Polynomial::new(vec![int(1), rat(5, 4), rat(1, 4)]));
        assert_eq!(
            RationalFunction::new(p(&[1]), Polynomial::zero()),
            Err(PolyError::ZeroDenominator)
        );
    }

    #[test]
    fn eval_examples() {
        // (z+1)/(z(z-1))
        let r = rf(&[1, 1], &[0, -1, 1]);
        assert_eq!(r.eval_int(3).unwrap(), rat(2, 3));
        assert_eq!(r.eval_int(0), Err(PolyError::Pole(int(0))));
        assert_eq!(rf(&[0, 1], &[2, 1]).eval_int(2).unwrap(), rat(1, 2));
    }

    #[test]
    fn infinity_expansion_examples() {
        let e = rf(&[1, 1], &[0, -1, 1]).infinity_expansion().unwrap();
        assert_eq!((e.slope, e.constant, e.inv_coeff), (int(0), int(0), int(1)));
        // 2j(j-1)/(j+2)
        let e = rf(&[0, -2, 2], &[2, 1]).infinity_expansion().unwrap();
        assert_eq!((e.slope, e.constant, e.inv_coeff), (int(2), int(-6), int(12)));
        // (z²+z)/(z²+z-2)
        let e = rf(&[0, 1, 1], &[-2, 1, 1]).infinity_expansion().unwrap();
        assert_eq!((e.slope, e.constant, e.inv_coeff), (int(0), int(1), int(0)));
        assert!(matches!(
            rf(&[0, 0, 0, 1], &[1, 1]).infinity_expansion(),
            Err(PolyError::DegreeExcess { .. })
        ));
    }

    fn poly_strategy(max_len: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-9i64..10, 1i64..4), 0..max_len)
            .prop_map(|cs| Polynomial::new(cs.into_iter().map(|(a, b)| rat(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn reduce_idempotent_and_eval_consistent(
            n in poly_strategy(5),
            d in poly_strategy(5),
            x in -10i64..10,
        ) {
            prop_assume!(!d.is_zero());
            let r = RationalFunction::new(n.clone(), d.clone()).unwrap();
            let again = RationalFunction::new(r.numer().clone(), r.denom().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            let xv = int(x);
            let dv = d.eval(&xv);
            if !dv.is_zero() {
                prop_assert_eq!(r.eval(&xv).unwrap(), n.eval(&xv) / dv);
            }
        }

        #[test]
        fn infinity_remainder_is_bounded(n in poly_strategy(5), d in poly_strategy(5)) {
            prop_assume!(!d.is_zero());
            let r = RationalFunction::new(n, d).unwrap();
            prop_assume!(r.numer().degree().unwrap_or(0) <= r.denom().degree().unwrap() + 1);
            let e = r.infinity_expansion().unwrap();
            let z = RationalFunction::var();
            let tail = &(&r - &(&z * &RationalFunction::constant(e.slope.clone())))
                - &RationalFunction::constant(e.constant.clone());
            let tail = &tail - &RationalFunction::new(Polynomial::constant(e.inv_coeff.clone()), Polynomial::var()).unwrap();
            let scaled = &tail * &(&z * &z);
            prop_assert!(scaled.numer().degree().unwrap_or(0) <= scaled.denom().degree().unwrap());
        }

        #[test]
        fn field_ops_agree_with_pointwise(
            a in poly_strategy(4), b in poly_strategy(4),
            c in poly_strategy(4), d in poly_strategy(4),
            x in -6i64..6,
        ) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let r = RationalFunction::new(a, b).unwrap();
            let s = RationalFunction::new(c, d).unwrap();
            let xv = int(x);
            if let (Ok(rv), Ok(sv)) = (r.eval(&xv), s.eval(&xv)) {
                if let Ok(v) = (&r + &s).eval(&xv) { prop_assert_eq!(v, &rv + &sv); }
                if let Ok(v) = (&r * &s).eval(&xv) { prop_assert_eq!(v, &rv * &sv); }
                if let Ok(v) = (&r - &s).eval(&xv) { prop_assert_eq!(v, &rv - &sv); }
            }
        }
    }
}
