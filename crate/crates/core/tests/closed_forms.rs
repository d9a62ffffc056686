use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use resheight::cubic::*;
use resheight::quad::*;
use resheight::sylvester::{expand_resultant, expand_resultant_restricted, Envelope};
use resheight::verify::{f_indices, h0_identity_checks, newton_power_sum, table1_expected};
use resheight::SylvesterSpec;

#[test]
fn quad_height_matches_expansion() {
    for n in 3..=25usize {
        let res = expand_resultant(SylvesterSpec::new(2, n).unwrap()).unwrap();
        let q = quad_height(n as u64).unwrap();
        assert_eq!(res.height(), q.height, "n = {n}");
        assert_eq!(res.coefficient_of(&q.extremal_monomial).unwrap().abs(), q.height, "n = {n}");
    }
}

#[test]
fn a_n_table_and_root_formula() {
    for n in 3..=99 {
        assert_eq!(Some(compute_a(n).unwrap()), table1_expected(n), "n = {n}");
    }
    for n in (3..=1_000_000u64).step_by(7) {
        assert_eq!(compute_a(n).unwrap(), a_from_root_formula(n).unwrap(), "n = {n}");
    }
    // the perfect-square cases, where r_n is an integer
    for n in [5u64, 34] {
        let r = (6 + 5 * n - num_integer::Roots::sqrt(&(5 * n * n - 4))) / 10;
        assert_eq!(p_n_eval(n as i64, r as i64), 0);
        assert_eq!(compute_a(n).unwrap(), r);
    }
}

#[test]
fn girard_against_newton() {
    for n in 1..=40 {
        assert_eq!(girard_power_sum(n).unwrap(), newton_power_sum(n), "n = {n}");
    }
}

#[test]
fn f_three_ways() {
    for idx in f_indices(12) {
        let r = f_rec(idx);
        assert_eq!(r, f_closed(idx), "{idx}");
        assert_eq!(r, f_det_oracle(idx).unwrap(), "{idx}");
    }
    assert_eq!(f_rec(FIndex::new(1, 0, 0, 2)), BigInt::from(1));
    assert_eq!(f_rec(FIndex::new(0, 1, 1, 1)), BigInt::from(-2));
    assert_eq!(f_rec(FIndex::new(0, 0, 3, 0)), BigInt::from(1));
}

#[test]
fn f_recurrence_and_closed_form_far_out() {
    for idx in [FIndex::balanced(7, 9, 20), FIndex::balanced(12, 5, 11), FIndex::new(3, 4, 30, 10)] {
        assert_eq!(f_rec(idx), f_closed(idx), "{idx}");
    }
}

#[test]
fn h0_closed_equals_both_combinations() {
    let rows = h0_identity_checks(20);
    assert!(rows.len() > 100);
    for (idx, closed, by_cases, by_table) in rows {
        assert_eq!(closed, by_cases, "{idx}");
        assert_eq!(closed, by_table, "{idx}");
    }
}

#[test]
fn hl_rows_match_expansion_from_their_threshold() {
    let env = Envelope::default();
    for l in 0..=MAX_FORMULA_L {
        for n in FORMULA_MIN_N[l]..=14 {
            let c = check_formula_against_expansion(l, n, &env).unwrap();
            assert_eq!(c.sign, Some(formula_sign(l)), "l = {l}, n = {n}: {:?}", c.mismatches);
        }
    }
}

#[test]
fn hl_rows_fail_just_below_threshold() {
    let env = Envelope::default();
    for l in 2..=MAX_FORMULA_L {
        let n = FORMULA_MIN_N[l] - 1;
        if n < l {
            continue;
        }
        let c = check_formula_against_expansion(l, n, &env).unwrap();
        assert_eq!(c.sign, None, "l = {l}, n = {n}");
    }
}

/// The first-row recurrence carries over to the expansion coefficients
/// `H_l(m, k, k', m')`, whose degree `n` is the index sum.
#[test]
fn hl_recurrence_on_expansions() {
    let env = Envelope::default();
    for l in 0..=3usize {
        let coeffs: Vec<_> = (0..=12)
            .map(|n| if n > l + 1 { Some(hl_oracle_coefficients(l, n, &env).unwrap()) } else { None })
            .collect();
        let get = |idx: FIndex| -> BigInt {
            if !idx.is_nonnegative() {
                return BigInt::from(0);
            }
            let n = idx.sum() as usize;
            coeffs[n].as_ref().and_then(|c| c.get(&idx).cloned()).unwrap_or_default()
        };
        for n in (l + 5)..=12 {
            for (idx, v) in coeffs[n].as_ref().unwrap() {
                let rhs = get(idx.shifted([0, 0, 1, 0])) - get(idx.shifted([0, 1, 0, 1]))
                    + get(idx.shifted([1, 0, 0, 2]));
                assert_eq!(*v, rhs, "l = {l}, {idx}");
            }
        }
    }
}

#[test]
fn hl_symmetry_and_argmax_rows() {
    let env = Envelope::default();
    for n in 3..=12 {
        let res = expand_resultant(SylvesterSpec::new(3, n).unwrap()).unwrap();
        for l in 0..=n {
            let a = hl_coefficients_from(&res, l, n);
            let b = hl_coefficients_from(&res, n - l, n);
            for (idx, v) in &a {
                assert_eq!(b[&idx.reversed()].abs(), v.abs(), "n = {n}, l = {l}, {idx}");
            }
        }
        let row = hl_argmax_table(n, HlMethod::Expand, &env).unwrap();
        assert_eq!(row.max, res.height(), "n = {n}");
    }
    let five = hl_argmax_table(5, HlMethod::Expand, &env).unwrap();
    assert_eq!(five.canonical, BTreeSet::from([1, 2]));
}

#[test]
fn h0_fast_path_at_large_n() {
    for n in [61, 100, 150] {
        assert_eq!(h0_max_closed(n).unwrap().value, hl_max_formula(0, n).unwrap().value, "n = {n}");
    }
}

#[test]
fn binomial_g_cubic_reads_h0() {
    // with g = g_0 + g_n x^n, only H_0-type monomials survive
    let env = Envelope::default();
    for n in 4..=10 {
        let spec = SylvesterSpec::new(3, n).unwrap();
        let bin = expand_resultant_restricted(spec, &BTreeSet::from([0, n]), &env).unwrap();
        let h0 = hl_max(0, n, &env).unwrap().value;
        assert!(bin.height() >= h0, "n = {n}");
    }
}

#[test]
fn tribonacci_prefix() {
    let t = tribonacci_bounds(10).unwrap();
    let a: Vec<i64> = (1..=8).map(|m| t.a(m).try_into().unwrap()).collect();
    assert_eq!(a, vec![1, 2, 4, 7, 13, 24, 44, 81]);
}
