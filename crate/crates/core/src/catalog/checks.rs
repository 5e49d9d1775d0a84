use num_traits::{One, Zero};

use super::pairs::{dual_pair, id8_sigma, recurrence, wz_pair};
use super::summand::extra_kernel;
use super::{coefficient, harmonic_table, lhs, record, CatalogError};
use crate::exact::{int, rat, recip_factorial, ExactRational};
use crate::partfrac::{build_family, decompose, verify_decomposition, Decomposition};
use crate::polyrat::RationalFunction;
use crate::telescope::{
    gosper, kernel_asymptotics, kernel_ratio, telescoped_sum_check, wz_difference, wz_verify, GosperOutcome,
    TelescopeError,
};

/// One disagreement found by a structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub what: String,
    pub expected: ExactRational,
    pub actual: ExactRational,
}

fn decomposition_at(d: &Decomposition, z: &ExactRational) -> ExactRational {
    let mut acc = d.polynomial_part.eval(z);
    for part in &d.parts {
        let t = z - part.pole.location();
        let mut power = ExactRational::one();
        for c in part.coefficients.iter().rev() {
            power /= &t;
            acc += c * &power;
        }
    }
    acc
}

/// `(pole location, [c₋ₘ, …, c₋₁])` per pole.
type LaurentParts = Vec<(i64, Vec<ExactRational>)>;

/// Expected Laurent coefficients `(location, [c₋ₘ, …, c₋₁])` and the
/// constant polynomial part of the family of `id` at `(n, j)`.
fn expected_parts(id: u8, n: i64, j: i64) -> Result<(LaurentParts, ExactRational), CatalogError> {
    let rec = record(id)?;
    let mut parts = Vec::new();
    for k in rec.k_start..=n {
        let c = coefficient(n, k);
        let w = match id {
            1 => int(1),
            2 => rat(1, (n + k) * (n + k)),
            3 => rat(k, j * (j + k)),
            4 => rat(n + k, j * (j + n + k)),
            5 => rat(k * k, j * (j + k)),
            6 => rat(k * (n + k), j * (j + n + k)),
            7 => rat(k * (n - k), j * (j + n - k)),
            8 => rat(k * (k + 2 * j), j * j * (j + k) * (j + k)),
            _ => unreachable!(),
        };
        parts.push((k, vec![c * w]));
    }
    match id {
        1 => {}
        2 => {
            let f = recip_factorial(2 * n) * ExactRational::from_integer(crate::exact::factorial(n - 1)?.pow(2));
            parts.push((-n, vec![f]));
        }
        3..=7 => {
            let e = extra_kernel(id, n)?.eval(j)?;
            let (loc, coeff) = match id {
                3 => (-j, e),
                4 => (-n - j, e),
                5 => (-j, -e),
                6 => (-n - j, -e),
                // +E/(z-(n+j)), i.e. -E/(j+n-z)
                _ => (n + j, e),
            };
            parts.push((loc, vec![coeff]));
        }
        _ => {
            let e = extra_kernel(8, n)?.eval(j)?;
            let h = harmonic_table(j + n, 1);
            let comb = &h[(j + n) as usize] + &h[(j - n - 1) as usize] - int(2) * &h[(j - 1) as usize];
            let c1 = &e * comb;
            parts.push((-j, vec![e, c1]));
        }
    }
    let poly = if matches!(id, 5..=7) {
        rat(1, j)
    } else {
        ExactRational::zero()
    };
    Ok((parts, poly))
}

/// Decomposes the family of `id` at `(n, j)` and compares every Laurent
/// coefficient with its closed form. An empty result means all agree.
///
/// Identities 1 and 2 ignore `j`.
pub fn decompose_check(id: u8, n: i64, j: Option<i64>) -> Result<Vec<Mismatch>, CatalogError> {
    let family = build_family(id, n, j)?;
    let d = decompose(&family.function, &family.poles)?;
    let mut out = Vec::new();
    if !verify_decomposition(&family.function, &d) {
        let z = rat(1, 2);
        out.push(Mismatch {
            what: "reconstruction at z = 1/2".into(),
            expected: family.function.eval(&z).map_err(crate::partfrac::PartfracError::from)?,
            actual: decomposition_at(&d, &z),
        });
    }
    let (parts, poly) = expected_parts(id, n, j.unwrap_or(0))?;
    let actual_poly = d.polynomial_part.coeff(0);
    if d.polynomial_part.degree().unwrap_or(0) > 0 || actual_poly != poly {
        out.push(Mismatch {
            what: "polynomial part".into(),
            expected: poly,
            actual: actual_poly,
        });
    }
    for (loc, coeffs) in parts {
        let actual: Vec<ExactRational> = match d.part_at(loc) {
            Some(p) => p.coefficients.clone(),
            None => vec![ExactRational::zero(); coeffs.len()],
        };
        let order = coeffs.len();
        for (i, (e, a)) in coeffs.into_iter().zip(actual).enumerate() {
            if e != a {
                out.push(Mismatch {
                    what: format!("coefficient c_-{} at z = {loc}", order - i),
                    expected: e,
                    actual: a,
                });
            }
        }
    }
    Ok(out)
}

/// `h_n(j)` and `G(n,j+1) - G(n,j)` evaluated pointwise.
pub fn certificate_sides(id: u8, n: i64, j: i64) -> Result<(ExactRational, ExactRational), CatalogError> {
    let p = wz_pair(id)?;
    let rel = (p.relation)(n);
    let h = &rel.alpha * (p.f)(n + 1).eval(j)? + &rel.beta * (p.f)(n).eval(j)? - &rel.gamma;
    let g = (p.g)(n);
    Ok((h, g.eval(j + 1)? - g.eval(j)?))
}

pub fn certificate_check(id: u8, n: i64) -> Result<bool, CatalogError> {
    let p = wz_pair(id)?;
    Ok(wz_verify(&p.f, &p.g, &(p.relation)(n), n)?)
}

/// `Σ_{j=0..upper} h_n(j)` against `G(n, upper+1) - G(n, 0)`.
pub fn telescoped_check(id: u8, n: i64, upper: i64) -> Result<(ExactRational, ExactRational), CatalogError> {
    let p = wz_pair(id)?;
    Ok(telescoped_sum_check(&p.f, &p.g, &(p.relation)(n), n, upper)?)
}

/// Runs Gosper on `h_n` and returns `T - G(n,·)` for the antidifference
/// `T` it finds, or `None` when it reports the term not summable.
pub fn gosper_check(id: u8, n: i64) -> Result<Option<RationalFunction>, CatalogError> {
    let p = wz_pair(id)?;
    let h = wz_difference(&p.f, &(p.relation)(n), n)?;
    match gosper(&kernel_ratio(&h)?)? {
        GosperOutcome::NotSummable => Ok(None),
        GosperOutcome::Summable(cert) => {
            let t = cert.antidifference(&h);
            Ok(Some(&t - &(p.g)(n).to_rf()?))
        }
    }
}

/// The right side of the `n`-recurrence recovered from the certificate:
/// `G(n,j) = slope·j + constant + o(1)`, and the recurrence right side is
/// `constant - G(n,0)` provided `slope = -gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedRhs {
    pub slope: ExactRational,
    pub expected_slope: ExactRational,
    pub value: ExactRational,
}

pub fn derived_recurrence_rhs(id: u8, n: i64) -> Result<DerivedRhs, CatalogError> {
    if id == 8 {
        // (n+1)(T(n+1) - T(n)) = sigma·(lim G - G(n,0)) in the ε-slot
        let (_, g, _) = dual_pair();
        let sigma = id8_sigma()?;
        let g = g(n);
        let lim = g.limit_at_infinity()?;
        let boundary = g.eval(0)?;
        if !lim.is_gamma_free() || !boundary.is_gamma_free() {
            return Err(TelescopeError::GammaContamination { n, j: 0 }.into());
        }
        return Ok(DerivedRhs {
            slope: ExactRational::zero(),
            expected_slope: ExactRational::zero(),
            value: int(sigma as i64) * (lim.d - boundary.d) / int(n + 1),
        });
    }
    let p = wz_pair(id)?;
    let g = (p.g)(n);
    let (slope, constant) = kernel_asymptotics(&g)?;
    Ok(DerivedRhs {
        slope,
        expected_slope: -(p.relation)(n).gamma,
        value: constant - g.eval(0)?,
    })
}

/// The derived right side matches the stored recurrence, and the directly
/// summed values satisfy it.
pub fn recurrence_check(id: u8, n: i64) -> Result<bool, CatalogError> {
    let data = recurrence(id)?;
    if n < data.start {
        return Err(CatalogError::BelowDomain { id, n, min: data.start });
    }
    let derived = derived_recurrence_rhs(id, n)?;
    let stored = (data.equation.rhs)(n);
    Ok(derived.slope == derived.expected_slope
        && derived.value == stored
        && data.equation.holds_at(n, &lhs(id, n)?, &lhs(id, n + 1)?))
}
