use proptest::prelude::*;
use telesum::catalog::{self, CatalogError, Level};
use telesum::exact::{int, rat};
use telesum::partfrac::{build_family, decompose, verify_decomposition};
use telesum::telescope::{
    gosper, kernel_ratio, solve_recurrence, verify_certificate, wz_difference, wz_verify_dual, GosperOutcome,
};
use telesum::{ExactRational, Polynomial, RationalFunction};

fn domain(id: u8) -> i64 {
    catalog::record(id).unwrap().domain
}

#[test]
fn closed_forms_hold_through_n_forty() {
    for id in 1..=8 {
        for n in domain(id)..=40 {
            assert_eq!(
                catalog::lhs(id, n).unwrap(),
                catalog::rhs(id, n).unwrap(),
                "id {id} n {n}"
            );
        }
    }
}

#[test]
fn id3_and_id4_share_left_side() {
    for n in 0..=30 {
        assert_eq!(catalog::lhs(3, n).unwrap(), catalog::lhs(4, n).unwrap(), "n {n}");
    }
}

#[test]
fn domains_are_enforced() {
    assert!(matches!(
        catalog::lhs(2, 0),
        Err(CatalogError::BelowDomain { id: 2, n: 0, min: 1 })
    ));
    assert!(matches!(
        catalog::rhs(7, 0),
        Err(CatalogError::BelowDomain { id: 7, .. })
    ));
    assert!(matches!(catalog::lhs(9, 1), Err(CatalogError::UnknownIdentity(9))));
    assert!(matches!(
        catalog::id8_h_form(3, 3),
        Err(CatalogError::InvalidJ { j: 3, min: 4 })
    ));
}

#[test]
fn families_reconstruct_exactly() {
    for id in 3..=8u8 {
        for n in 1..=5 {
            let j_min = if id == 8 { n + 1 } else { 1 };
            for j in j_min..j_min + 6 {
                let fam = build_family(id, n, Some(j)).unwrap();
                let d = decompose(&fam.function, &fam.poles).unwrap();
                assert!(verify_decomposition(&fam.function, &d), "id {id} n {n} j {j}");
                assert!(catalog::decompose_check(id, n, Some(j)).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn summands_and_h_form_agree() {
    for n in 1..=6 {
        for j in (n + 1)..=(n + 8) {
            let (l, r) = catalog::id8_h_form(n, j).unwrap();
            assert_eq!(l, r, "n {n} j {j}");
            assert!(catalog::summand_check(8, n, j).unwrap());
        }
    }
}

#[test]
fn certificates_and_gosper_agree_with_stored_g() {
    for id in 3..=7u8 {
        let pair = catalog::wz_pair(id).unwrap();
        for n in 1..=6 {
            assert!(catalog::certificate_check(id, n).unwrap(), "id {id} n {n}");
            let h = wz_difference(&pair.f, &(pair.relation)(n), n).unwrap();
            let ratio = kernel_ratio(&h).unwrap();
            let GosperOutcome::Summable(cert) = gosper(&ratio).unwrap() else {
                panic!("id {id} n {n} not summable");
            };
            assert!(verify_certificate(&ratio, &cert.r));
            let diff = catalog::gosper_check(id, n).unwrap().unwrap();
            assert!(diff.as_constant().is_some(), "id {id} n {n}: {diff}");
        }
    }
}

#[test]
fn recurrences_reproduce_direct_values() {
    for id in 3..=8u8 {
        let data = catalog::recurrence(id).unwrap();
        let solved = solve_recurrence(&data.equation, data.start, data.initial.clone(), 25).unwrap();
        for (i, s) in solved.iter().enumerate() {
            let n = data.start + i as i64;
            assert_eq!(s, &catalog::lhs(id, n).unwrap(), "id {id} n {n}");
        }
    }
}

#[test]
fn dual_relation_needs_negative_sigma() {
    let (f, g, rel) = catalog::dual_pair();
    assert_eq!(catalog::id8_sigma().unwrap(), -1);
    for n in 0..=4 {
        for j in 0..=8 {
            assert!(wz_verify_dual(&f, &g, &rel(n), n, j, -1).unwrap(), "n {n} j {j}");
        }
    }
    assert!(!wz_verify_dual(&f, &g, &rel(1), 1, 1, 1).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let a = catalog::verify(5, 8, &Level::STANDARD).unwrap();
    let b = catalog::verify(5, 8, &Level::STANDARD).unwrap();
    assert!(a.pass());
    assert_eq!(a.levels, b.levels);
    assert_eq!(a.findings, b.findings);
}

#[test]
fn alt_level_reports_deltas() {
    assert_eq!(catalog::alt7_deltas(3).unwrap(), vec![int(3), int(18), int(66)]);
    let r = catalog::verify(7, 3, &[Level::Alt]).unwrap();
    assert_eq!(r.failures(), 3);
}

#[test]
fn telescoped_sums_close() {
    for id in 3..=7u8 {
        for n in [1, 4, 9] {
            let (sum, boundary) = catalog::telescoped_check(id, n, 40).unwrap();
            assert_eq!(sum, boundary, "id {id} n {n}");
        }
    }
}

#[test]
fn gosper_classics() {
    // t = 1/(j(j+1)), T = -1/j
    let ratio = RationalFunction::new(Polynomial::from_i64(&[0, 1]), Polynomial::from_i64(&[2, 1])).unwrap();
    let cert = gosper(&ratio).unwrap().certificate().cloned().unwrap();
    assert_eq!(cert.r.eval_int(3).unwrap(), int(-4));
    // t = j·j!, T = j!
    let ratio = RationalFunction::new(Polynomial::from_i64(&[1, 2, 1]), Polynomial::from_i64(&[0, 1])).unwrap();
    let cert = gosper(&ratio).unwrap().certificate().cloned().unwrap();
    assert_eq!(cert.r.eval_int(2).unwrap(), rat(1, 2));
    // t = 1/j
    let ratio = RationalFunction::new(Polynomial::from_i64(&[0, 1]), Polynomial::from_i64(&[1, 1])).unwrap();
    assert_eq!(gosper(&ratio).unwrap(), GosperOutcome::NotSummable);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    /// Polynomial terms always have a polynomial antidifference.
    #[test]
    fn polynomial_terms_are_summable(coeffs in prop::collection::vec(-5i64..=5, 1..5), shift in 1i64..6) {
        let mut c = coeffs;
        c.push(1);
        let p = Polynomial::from_i64(&c).shift_int(shift);
        let t = RationalFunction::from_poly(p);
        let ratio = t.shift(1).checked_div(&t);
        prop_assume!(ratio.is_ok());
        let ratio = ratio.unwrap();
        let cert = gosper(&ratio).unwrap().certificate().cloned();
        prop_assert!(cert.is_some());
        let cert = cert.unwrap();
        prop_assert!(verify_certificate(&ratio, &cert.r));
        let big_t = cert.antidifference(&t);
        for j in 0..4 {
            let lhs = big_t.eval_int(j + 1);
            let rhs = big_t.eval_int(j);
            if let (Ok(a), Ok(b)) = (lhs, rhs) {
                prop_assert_eq!(a - b, t.eval_int(j).unwrap());
            }
        }
    }

    #[test]
    fn summand_identities_hold(id in 3u8..=7, n in 1i64..=10, j in 1i64..=30) {
        let (l, r) = catalog::summand_sides(id, n, j).unwrap();
        prop_assert_eq!(l, r);
    }
}

#[test]
fn exact_rational_is_reexported() {
    let x: ExactRational = rat(1, 2);
    assert_eq!(x + rat(1, 2), int(1));
}
