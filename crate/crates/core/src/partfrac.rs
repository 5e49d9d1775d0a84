//! Partial fraction decomposition against known poles, and the eight
//! rational-function families in `z` that generate the catalog identities.
//!
//! Poles are never discovered by root finding. The family builders know
//! their poles by construction and hand them to [`decompose`], which only
//! checks that the pole list accounts for the whole denominator.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{fmt_rational, int, ExactRational};
use crate::polyrat::{PolyError, Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartfracError {
    #[error("unknown identity id {0}")]
    UnknownIdentity(u8),
    #[error("identity {0} needs a j parameter")]
    MissingJ(u8),
    #[error("n must be at least 1, got {0}")]
    InvalidN(i64),
    #[error("j must be at least 1, got {0}")]
    InvalidJ(i64),
    #[error("identity 8 needs j ≥ n+1 for a double pole at -j (n = {n}, j = {j})")]
    DoublePoleCancelled { n: i64, j: i64 },
    #[error("pole order must be 1 or 2, got {0}")]
    InvalidOrder(u8),
    #[error("pole list does not match the denominator")]
    PoleMismatch,
    #[error("deflated function still has a pole at {}", fmt_rational(.0))]
    UnexpectedPole(ExactRational),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleSpec {
    location: ExactRational,
    order: u8,
}

impl PoleSpec {
    pub fn new(location: ExactRational, order: u8) -> Result<Self, PartfracError> {
        if !(1..=2).contains(&order) {
            return Err(PartfracError::InvalidOrder(order));
        }
        Ok(Self { location, order })
    }

    pub fn simple(location: i64) -> Self {
        Self {
            location: int(location),
            order: 1,
        }
    }

    pub fn location(&self) -> &ExactRational {
        &self.location
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    fn factor(&self) -> Polynomial {
        Polynomial::linear_root(&self.location).pow(self.order as u32)
    }
}

/// Laurent coefficients at one pole, highest order first:
/// `[c₋₂, c₋₁]` for a double pole, `[c₋₁]` for a simple one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolePart {
    pub pole: PoleSpec,
    pub coefficients: Vec<ExactRational>,
}

impl PolePart {
    pub fn residue(&self) -> &ExactRational {
        self.coefficients.last().expect("at least one coefficient")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub polynomial_part: Polynomial,
    pub parts: Vec<PolePart>,
}

impl Decomposition {
    pub fn part_at(&self, location: i64) -> Option<&PolePart> {
        let loc = int(location);
        self.parts.iter().find(|p| p.pole.location == loc)
    }

    /// `c₋₁` at `location`; zero when there is no pole there.
    pub fn residue_at(&self, location: i64) -> ExactRational {
        self.part_at(location)
            .map(|p| p.residue().clone())
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn total_residue(&self) -> ExactRational {
        self.parts
            .iter()
            .fold(ExactRational::zero(), |acc, p| acc + p.residue())
    }
}

/// A rational function in `z` together with its poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub function: RationalFunction,
    pub poles: Vec<PoleSpec>,
}

/// Product of linear factors `(z - root)^mult` in numerator and
/// denominator, with a scalar in front.
#[derive(Default)]
struct Factored {
    scalar: ExactRational,
    num: BTreeMap<i64, u32>,
    den: BTreeMap<i64, u32>,
}

impl Factored {
    fn new() -> Self {
        Self {
            scalar: ExactRational::one(),
            ..Default::default()
        }
    }

    fn num_root(&mut self, root: i64) -> &mut Self {
        *self.num.entry(root).or_default() += 1;
        self
    }

    fn den_root(&mut self, root: i64, mult: u32) -> &mut Self {
        *self.den.entry(root).or_default() += mult;
        self
    }

    fn scale(&mut self, c: ExactRational) -> &mut Self {
        self.scalar *= c;
        self
    }

    fn build(mut self) -> Family {
        for (root, m) in self.den.iter_mut() {
            if let Some(k) = self.num.get_mut(root) {
                let common = (*k).min(*m);
                *k -= common;
                *m -= common;
            }
        }
        self.num.retain(|_, m| *m > 0);
        self.den.retain(|_, m| *m > 0);
        let expand = |roots: &BTreeMap<i64, u32>| {
            roots.iter().fold(Polynomial::one(), |acc, (&r, &m)| {
                &acc * &Polynomial::linear_root(&int(r)).pow(m)
            })
        };
        let function = RationalFunction::new(expand(&self.num).scale(&self.scalar), expand(&self.den))
            .expect("nonzero denominator");
        let poles = self
            .den
            .iter()
            .map(|(&r, &m)| PoleSpec {
                location: int(r),
                order: m as u8,
            })
            .collect();
        Family { function, poles }
    }
}

/// The rational function heading identity `id` at parameters `n`, `j`.
///
/// Common factors between numerator and denominator are cancelled, and
/// cancelled poles are dropped from the pole list.
pub fn build_family(id: u8, n: i64, j: Option<i64>) -> Result<Family, PartfracError> {
    if !(1..=8).contains(&id) {
        return Err(PartfracError::UnknownIdentity(id));
    }
    if n < 1 {
        return Err(PartfracError::InvalidN(n));
    }
    let j = if id >= 3 {
        let j = j.ok_or(PartfracError::MissingJ(id))?;
        if j < 1 {
            return Err(PartfracError::InvalidJ(j));
        }
        j
    } else {
        0
    };
    if id == 8 && j <= n {
        return Err(PartfracError::DoublePoleCancelled { n, j });
    }

    let mut f = Factored::new();
    // (z+1)…(z+n), or (z+1)…(z+n-1) for the second family
    let top = if id == 2 { n - 1 } else { n };
    for i in 1..=top {
        f.num_root(-i);
    }
    // z(z-1)…(z-n) or (z-1)…(z-n)
    let first = if matches!(id, 1 | 2 | 4) { 0 } else { 1 };
    for i in first..=n {
        f.den_root(i, 1);
    }
    let jr = int(j);
    match id {
        1 => {}
        2 => {
            f.den_root(-n, 1);
        }
        // 1/(j(j+z))
        3 => {
            f.scale(jr.recip()).den_root(-j, 1);
        }
        // (n+z)/(j(j+n+z))
        4 | 6 => {
            f.num_root(-n).scale(jr.recip()).den_root(-n - j, 1);
        }
        // z/(j(j+z))
        5 => {
            f.num_root(0).scale(jr.recip()).den_root(-j, 1);
        }
        // (n-z)/(j(j+n-z)) = (z-n)/(j(z-(n+j)))
        7 => {
            f.num_root(n).scale(jr.recip()).den_root(n + j, 1);
        }
        // (2j+z)/(j²(j+z)²)
        8 => {
            f.num_root(-2 * j).scale((&jr * &jr).recip()).den_root(-j, 2);
        }
        _ => unreachable!(),
    }
    Ok(f.build())
}

/// Decomposes `r` over the supplied poles by deflation.
///
/// For each pole `p` of order `m`, `φ(z) = (z-p)^m·r(z)` has no pole at `p`;
/// `c₋m = φ(p)` and, for a double pole, `c₋₁ = φ'(p)`.
pub fn decompose(r: &RationalFunction, poles: &[PoleSpec]) -> Result<Decomposition, PartfracError> {
    let product = poles.iter().fold(Polynomial::one(), |acc, p| &acc * &p.factor());
    if &product != r.denom() {
        return Err(PartfracError::PoleMismatch);
    }
    let num = r.numer();
    let den = r.denom();
    let (polynomial_part, _) = num.divmod(den)?;

    let mut parts = Vec::with_capacity(poles.len());
    for pole in poles {
        let p = &pole.location;
        let deflated = den.exact_div(&pole.factor())?;
        let dv = deflated.eval(p);
        if dv.is_zero() {
            return Err(PartfracError::UnexpectedPole(p.clone()));
        }
        let nv = num.eval(p);
        let lead = &nv / &dv;
        let coefficients = match pole.order {
            1 => vec![lead],
            2 => {
                // quotient rule on num/deflated
                let dnv = num.derivative().eval(p);
                let ddv = deflated.derivative().eval(p);
                let next = (dnv * &dv - &nv * ddv) / (&dv * &dv);
                vec![lead, next]
            }
            o => return Err(PartfracError::InvalidOrder(o)),
        };
        parts.push(PolePart {
            pole: pole.clone(),
            coefficients,
        });
    }
    Ok(Decomposition { polynomial_part, parts })
}

/// True iff `polynomial_part + Σ c₋ₘ/(z-p)ᵐ` equals `r` exactly.
pub fn verify_decomposition(r: &RationalFunction, d: &Decomposition) -> bool {
    let common = d.parts.iter().fold(Polynomial::one(), |acc, p| &acc * &p.pole.factor());
    let mut numerator = &d.polynomial_part * &common;
    for part in &d.parts {
        let linear = Polynomial::linear_root(&part.pole.location);
        let order = part.pole.order as u32;
        if part.coefficients.len() != order as usize {
            return false;
        }
        for (idx, c) in part.coefficients.iter().enumerate() {
            // coefficients[idx] multiplies 1/(z-p)^(order-idx)
            let power = order - idx as u32;
            let Ok(cofactor) = common.exact_div(&linear.pow(power)) else {
                return false;
            };
            numerator = &numerator + &cofactor.scale(c);
        }
    }
    &numerator * r.denom() == r.numer() * &common
}
