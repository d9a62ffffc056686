use std::collections::BTreeSet;

use num_bigint::BigInt;
use resheight::sylvester::{
    antidiagonal_monomial, build_matrix, diagonal_monomial, expand_resultant,
    expand_resultant_restricted, expand_with, height_upper_bound, naive_determinant, Engine,
    Envelope,
};
use resheight::{Error, SylvesterSpec};

#[test]
fn laplace_agrees_with_naive() {
    let env = Envelope::default();
    for m in 1..=4 {
        for n in 1..=(9 - m) {
            let spec = SylvesterSpec::new(m, n).unwrap();
            let a = expand_with(spec, Engine::Laplace, &env).unwrap();
            let b = expand_with(spec, Engine::Naive, &env).unwrap();
            assert_eq!(a, b, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn naive_refuses_large_orders() {
    let spec = SylvesterSpec::new(4, 8).unwrap();
    assert!(matches!(
        naive_determinant(&build_matrix(spec)),
        Err(Error::Feasibility { .. })
    ));
}

#[test]
fn bidegree_weight_and_extremes() {
    for m in 1..=3 {
        for n in 1..=8 {
            let spec = SylvesterSpec::new(m, n).unwrap();
            let r = expand_resultant(spec).unwrap();
            let d = r.group_degrees();
            assert_eq!((d.f_degree, d.g_degree, d.homogeneous), (n as u64, m as u64, true));
            assert_eq!(r.omega_degree_set(), BTreeSet::from([(m * n) as u64]));
            assert!(r.height() <= height_upper_bound(spec));
            assert_eq!(r.coefficient_of(&diagonal_monomial(spec)).unwrap(), BigInt::from(1));
            let anti = r.coefficient_of(&antidiagonal_monomial(spec)).unwrap();
            assert!(anti == BigInt::from(1) || anti == BigInt::from(-1));
        }
    }
}

#[test]
fn restriction_matches_substitution() {
    // setting g_j = 0 after expanding gives the same polynomial as expanding with g_j absent
    let env = Envelope::default();
    for (m, n) in [(2, 5), (3, 6), (3, 7)] {
        let spec = SylvesterSpec::new(m, n).unwrap();
        let u = spec.universe();
        let full = expand_resultant(spec).unwrap();
        for support in [BTreeSet::from([0, n]), BTreeSet::from([0, 2, n]), BTreeSet::from([1, n])] {
            let direct = expand_resultant_restricted(spec, &support, &env).unwrap();
            let dead: Vec<usize> = (0..=n).filter(|j| !support.contains(j)).map(|j| u.g(j)).collect();
            let substituted = full.restrict_to(|slot| !dead.contains(&slot));
            assert_eq!(direct, substituted, "m = {m}, n = {n}, support = {support:?}");
        }
    }
}

#[test]
fn binomial_g_for_quadratic_keeps_height() {
    let env = Envelope::default();
    for n in 3..=12 {
        let spec = SylvesterSpec::new(2, n).unwrap();
        let full = expand_resultant(spec).unwrap().height();
        let bin = expand_resultant_restricted(spec, &BTreeSet::from([0, n]), &env).unwrap().height();
        assert_eq!(full, bin, "n = {n}");
    }
}

#[test]
fn envelope_and_domain_errors() {
    assert!(matches!(SylvesterSpec::new(0, 3), Err(Error::Domain(_))));
    let spec = SylvesterSpec::new(3, 31).unwrap();
    assert!(matches!(expand_resultant(spec), Err(Error::Feasibility { .. })));
    let spec = SylvesterSpec::new(5, 2).unwrap();
    assert!(matches!(expand_resultant(spec), Err(Error::Feasibility { .. })));
    let spec = SylvesterSpec::new(2, 4).unwrap();
    assert!(matches!(
        expand_resultant_restricted(spec, &BTreeSet::from([0, 5]), &Envelope::default()),
        Err(Error::Argument(_))
    ));
}
