//! Quadratic `f`: the closed-form height of `Res(f_0 + f_1 x + f_2 x^2, g)`.
//!
//! The height is `n (n - A_n - 1)! / ((n - 2 A_n)! A_n!)`, attained at
//! `g_0 g_n f_0^{A_n} f_1^{n - 2 A_n} f_2^{A_n}`, where `A_n` is the floor of
//! the root in `[0, n/2]` of `p_n(z) = (n - 2z + 1)(n - 2z + 2) - z(n - z)`.
//! Everything here is exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;
use serde::Serialize;

use crate::bigpoly::{Monomial, SparsePoly, Universe};
use crate::error::{Error, Result};
use crate::factorial::factorial;

pub fn p_n_eval(n: i64, z: i64) -> i128 {
    let (n, z) = (n as i128, z as i128);
    (n - 2 * z + 1) * (n - 2 * z + 2) - z * (n - z)
}

fn check_n(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain(format!("A_n is defined for n >= 3, got {n}")));
    }
    Ok(())
}

/// `A_n`: the largest integer `z` in `[0, n/2]` with `p_n(z) >= 0`.
///
/// `p_n` is positive left of its smaller root and `p_n(0) > 0`, so a binary
/// search on the sign is exact.
pub fn compute_a(n: u64) -> Result<u64> {
    check_n(n)?;
    let (mut lo, mut hi) = (0i64, (n / 2) as i64);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if p_n_eval(n as i64, mid) >= 0 {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo as u64)
}

/// `floor((6 + 5n - sqrt(5n^2 - 4)) / 10)` with an integer square root.
///
/// When `5n^2 - 4` is not a perfect square the true root lies strictly
/// between `isqrt` and `isqrt + 1`, which shifts the floor down by one exactly
/// when `6 + 5n - isqrt` is a multiple of 10.
pub fn a_from_root_formula(n: u64) -> Result<u64> {
    check_n(n)?;
    let n = n as u128;
    let disc = 5 * n * n - 4;
    let s = disc.sqrt();
    let top = 6 + 5 * n - s;
    let a = if s * s == disc { top / 10 } else { (top - 1) / 10 };
    Ok(a as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadHeightResult {
    pub n: u64,
    pub a_n: u64,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub height: BigInt,
    #[serde(skip)]
    pub extremal_monomial: Monomial,
    pub extremal_display: String,
}

/// `n * P(z) = n (n - z - 1)! / ((n - 2z)! z!)`; always an integer.
pub fn scaled_p(n: u64, z: u64) -> BigInt {
    assert!(2 * z <= n && n >= 1);
    let (n, z) = (n as usize, z as usize);
    BigInt::from(n) * factorial(n - z - 1) / (factorial(n - 2 * z) * factorial(z))
}

pub fn quad_height(n: u64) -> Result<QuadHeightResult> {
    let a = compute_a(n)?;
    let height = scaled_p(n, a);
    let u = Universe::sylvester(2, n as usize);
    let extremal_monomial = Monomial::from_powers(
        u,
        &[
            (u.g(0), 1),
            (u.g(n as usize), 1),
            (u.f(0), a as u32),
            (u.f(1), (n - 2 * a) as u32),
            (u.f(2), a as u32),
        ],
    );
    Ok(QuadHeightResult {
        n,
        a_n: a,
        height,
        extremal_display: extremal_monomial.display(u),
        extremal_monomial,
    })
}

/// Power sum `x_1^n + x_2^n` of the roots of `x^2 + f_1 x + f_0`, written out
/// with the classical Girard coefficients
/// `(-1)^n n sum_{i_1 + 2 i_0 = n} (-1)^{2 i_1 + i_0} (i_1 + i_0 - 1)! / (i_1! i_0!)`.
/// The result lives in the universe `(f_0, f_1)`.
pub fn girard_power_sum(n: u64) -> Result<SparsePoly> {
    if n == 0 {
        return Err(Error::Domain("power sums are taken for n >= 1".into()));
    }
    let u = Universe::new(2, 0);
    let mut out = SparsePoly::zero(u);
    for i0 in 0..=n / 2 {
        let i1 = n - 2 * i0;
        // (i1 + i0 - 1)! / (i1! i0!) times n is integral
        let magnitude = BigInt::from(n) * factorial((i1 + i0 - 1) as usize)
            / (factorial(i1 as usize) * factorial(i0 as usize));
        let odd = (n + 2 * i1 + i0) % 2 == 1;
        let c = if odd { -magnitude } else { magnitude };
        let mon = Monomial::from_exponents(vec![i0 as u32, i1 as u32]);
        out.add_term(mon, c);
    }
    Ok(out)
}

/// The values `n P(0), ..., n P(floor(n/2))` and where they peak.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PProfile {
    pub n: u64,
    #[serde(serialize_with = "crate::verify::ser_bigint_vec")]
    pub scaled_values: Vec<BigInt>,
    /// Largest index attaining the maximum.
    pub argmax: u64,
    /// Non-decreasing up to `argmax`, strictly decreasing after it.
    pub unimodal: bool,
}

/// `P(z)` is not integral in general, so the profile carries `n P(z)`; the
/// ordering and the peak are the same.
pub fn p_profile(n: u64) -> Result<PProfile> {
    check_n(n)?;
    let values: Vec<BigInt> = (0..=n / 2).map(|z| scaled_p(n, z)).collect();
    let max = values.iter().max().cloned().unwrap_or_else(BigInt::zero);
    let argmax = values.iter().rposition(|v| *v == max).unwrap_or(0);
    let rising = values[..=argmax].windows(2).all(|w| w[0] <= w[1]);
    let falling = values[argmax..].windows(2).all(|w| w[0] > w[1]);
    Ok(PProfile {
        n,
        scaled_values: values,
        argmax: argmax as u64,
        unimodal: rising && falling,
    })
}

/// The right-hand side of the `H(n) > H(n-1)` step: `n P_n(A_{n-1})`.
pub fn height_lower_bound_from_previous(n: u64) -> Result<BigInt> {
    let a_prev = compute_a(n - 1)?;
    Ok(scaled_p(n, a_prev))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_n_values() {
        for n in 3..50 {
            assert_eq!(p_n_eval(n, 0), ((n + 1) * (n + 2)) as i128);
            assert!(p_n_eval(n, 0) > 0);
            if n % 2 == 0 && n >= 4 {
                assert!(p_n_eval(n, n / 2) < 0, "n = {n}");
            }
        }
        assert_eq!(p_n_eval(3, 1), 4);
    }

    #[test]
    fn printed_a_values() {
        assert_eq!(compute_a(3).unwrap(), 1);
        assert_eq!(compute_a(34).unwrap(), 10);
        assert_eq!(compute_a(99).unwrap(), 27);
        assert!(compute_a(2).is_err());
        assert!(a_from_root_formula(1).is_err());
    }

    #[test]
    fn both_routes_agree() {
        for n in 3..20_000 {
            assert_eq!(compute_a(n).unwrap(), a_from_root_formula(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn height_three() {
        let r = quad_height(3).unwrap();
        assert_eq!(r.height, BigInt::from(3));
        assert_eq!(r.a_n, 1);
        assert_eq!(r.extremal_display, "f0*f1*f2*g0*g3");
        assert!(quad_height(2).is_err());
    }

    #[test]
    fn a_n_below_half() {
        for n in 3..2000 {
            let a = compute_a(n).unwrap();
            assert!(2 * a < n, "n = {n}");
        }
    }

    #[test]
    fn girard_small_cases() {
        assert_eq!(girard_power_sum(1).unwrap().to_string(), "-f1");
        assert_eq!(girard_power_sum(2).unwrap().to_string(), "f1^2 - 2*f0");
        assert!(girard_power_sum(0).is_err());
    }

    #[test]
    fn girard_peak_is_at_a_n() {
        for n in 3..60u64 {
            let p = girard_power_sum(n).unwrap();
            let h = p.height();
            let a = compute_a(n).unwrap();
            assert_eq!(h, quad_height(n).unwrap().height);
            let at_a = Monomial::from_exponents(vec![a as u32, (n - 2 * a) as u32]);
            use num_traits::Signed;
            assert_eq!(p.coefficient_of(&at_a).unwrap().abs(), h);
        }
    }

    #[test]
    fn profile_three_and_ties() {
        let p = p_profile(3).unwrap();
        assert_eq!(p.scaled_values, vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(p.argmax, 1);
        // r_5 = 2 exactly, so P(1) = P(2)
        let p = p_profile(5).unwrap();
        assert_eq!(p.scaled_values[1], p.scaled_values[2]);
        assert_eq!(p.argmax, 2);
        assert!(p.unimodal);
    }

    #[test]
    fn profile_peaks_at_a_n() {
        for n in 3..=500 {
            let p = p_profile(n).unwrap();
            assert!(p.unimodal, "n = {n}");
            assert_eq!(p.argmax, compute_a(n).unwrap(), "n = {n}");
            assert_eq!(p.scaled_values[p.argmax as usize], quad_height(n).unwrap().height);
        }
    }

    #[test]
    fn heights_increase() {
        let mut prev = quad_height(3).unwrap().height;
        for n in 4..=400 {
            let h = quad_height(n).unwrap().height;
            assert!(h > prev, "n = {n}");
            assert!(height_lower_bound_from_previous(n).unwrap() > prev, "n = {n}");
            prev = h;
        }
    }
}
