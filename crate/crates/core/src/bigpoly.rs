//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables live in a [`Universe`] of `f_0..f_{F-1}` followed by `g_0..g_{G-1}`.
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic on the exponents with the f-variables first. No stored
//! coefficient is ever zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ordered variable set `f_0..f_{f_vars-1}, g_0..g_{g_vars-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Universe {
    pub f_vars: usize,
    pub g_vars: usize,
}

impl Universe {
    pub fn new(f_vars: usize, g_vars: usize) -> Self {
        Universe { f_vars, g_vars }
    }

    /// Variables of `Res(f, g)` with `deg f = m`, `deg g = n`.
    pub fn sylvester(m: usize, n: usize) -> Self {
        Universe::new(m + 1, n + 1)
    }

    pub fn arity(&self) -> usize {
        self.f_vars + self.g_vars
    }

    /// Slot of `f_i`.
    pub fn f(&self, i: usize) -> usize {
        debug_assert!(i < self.f_vars);
        i
    }

    /// Slot of `g_j`.
    pub fn g(&self, j: usize) -> usize {
        debug_assert!(j < self.g_vars);
        self.f_vars + j
    }

    pub fn var_name(&self, slot: usize) -> String {
        if slot < self.f_vars {
            format!("f{slot}")
        } else {
            format!("g{}", slot - self.f_vars)
        }
    }

    /// Weight of a slot under `omega = (0..F-1, 0..G-1)`.
    pub fn weight(&self, slot: usize) -> u64 {
        if slot < self.f_vars {
            slot as u64
        } else {
            (slot - self.f_vars) as u64
        }
    }

    fn check(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f0..f{}, g0..g{})", self.f_vars as isize - 1, self.g_vars as isize - 1)
    }
}

/// Exponent vector, one slot per variable of the owning universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(universe: Universe) -> Self {
        Monomial(vec![0; universe.arity()])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// Builds a monomial from `(slot, exponent)` pairs; repeated slots accumulate.
    pub fn from_powers(universe: Universe, powers: &[(usize, u32)]) -> Self {
        let mut e = vec![0; universe.arity()];
        for &(slot, p) in powers {
            e[slot] += p;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, slot: usize) -> Monomial {
        let mut e = self.0.clone();
        e[slot] += 1;
        Monomial(e)
    }

    pub fn display(&self, universe: Universe) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(slot, &e)| match e {
                1 => universe.var_name(slot),
                _ => format!("{}^{}", universe.var_name(slot), e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Group totals of a polynomial: maximum total degree in the f- and g-variables,
/// and whether every term has exactly those totals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDegrees {
    pub f_degree: u64,
    pub g_degree: u64,
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    universe: Universe,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(universe: Universe) -> Self {
        SparsePoly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: Universe) -> Self {
        Self::constant(universe, BigInt::one())
    }

    pub fn constant(universe: Universe, c: BigInt) -> Self {
        Self::term(universe, Monomial::one(universe), c)
    }

    /// The single variable at `slot`.
    pub fn var(universe: Universe, slot: usize) -> Self {
        Self::term(universe, Monomial::one(universe).mul_var(slot), BigInt::one())
    }

    pub fn term(universe: Universe, mon: Monomial, coeff: BigInt) -> Self {
        assert_eq!(mon.arity(), universe.arity(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mon, coeff);
        }
        SparsePoly { universe, terms }
    }

    /// Collects terms, combining repeats and dropping zeros.
    pub fn from_terms<I>(universe: Universe, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut p = SparsePoly::zero(universe);
        for (mon, c) in terms {
            if mon.arity() != universe.arity() {
                return Err(Error::UniverseMismatch {
                    left: universe.to_string(),
                    right: format!("monomial of arity {}", mon.arity()),
                });
            }
            p.add_term(mon, c);
        }
        Ok(p)
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += other`, universes assumed equal.
    pub(crate) fn add_assign_unchecked(&mut self, other: &SparsePoly) {
        for (mon, c) in &other.terms {
            self.add_term(mon.clone(), c.clone());
        }
    }

    /// `self += sign * slot * other`, the inner step of the band sweeps.
    pub(crate) fn add_var_multiple(&mut self, other: &SparsePoly, slot: usize, negate: bool) {
        for (mon, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            self.add_term(mon.mul_var(slot), c);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.universe.check(&other.universe)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero(self.universe);
        }
        SparsePoly {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.universe.check(&other.universe)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.universe);
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// All monomials whose coefficient has absolute value equal to the height.
    pub fn height_witnesses(&self) -> Vec<Monomial> {
        let h = self.height();
        if h.is_zero() {
            return Vec::new();
        }
        self.terms
            .iter()
            .filter(|(_, c)| c.abs() == h)
            .map(|(m, _)| m.clone())
            .collect()
    }

    pub fn coefficient_of(&self, mon: &Monomial) -> Result<BigInt> {
        if mon.arity() != self.universe.arity() {
            return Err(Error::UniverseMismatch {
                left: self.universe.to_string(),
                right: format!("monomial of arity {}", mon.arity()),
            });
        }
        Ok(self.terms.get(mon).cloned().unwrap_or_else(BigInt::zero))
    }

    pub fn group_degrees(&self) -> GroupDegrees {
        let fv = self.universe.f_vars;
        let mut totals = self.terms.keys().map(|mon| {
            let e = mon.exponents();
            let f: u64 = e[..fv].iter().map(|&x| x as u64).sum();
            let g: u64 = e[fv..].iter().map(|&x| x as u64).sum();
            (f, g)
        });
        let Some(first) = totals.next() else {
            return GroupDegrees {
                f_degree: 0,
                g_degree: 0,
                homogeneous: true,
            };
        };
        let (mut f_max, mut g_max) = first;
        let mut homogeneous = true;
        for (f, g) in totals {
            if (f, g) != first {
                homogeneous = false;
            }
            f_max = f_max.max(f);
            g_max = g_max.max(g);
        }
        GroupDegrees {
            f_degree: f_max,
            g_degree: g_max,
            homogeneous,
        }
    }

    /// The set of weighted degrees `sum i*alpha_i + sum j*beta_j` over all terms.
    pub fn omega_degree_set(&self) -> BTreeSet<u64> {
        self.terms
            .keys()
            .map(|mon| {
                mon.exponents()
                    .iter()
                    .enumerate()
                    .map(|(slot, &e)| self.universe.weight(slot) * e as u64)
                    .sum()
            })
            .collect()
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict_to(&self, keep: impl Fn(usize) -> bool) -> SparsePoly {
        SparsePoly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .filter(|(mon, _)| {
                    mon.exponents()
                        .iter()
                        .enumerate()
                        .all(|(slot, &e)| e == 0 || keep(slot))
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                exps: m.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("terms serialize")
    }

    pub fn from_json_terms(universe: Universe, terms: Vec<JsonTerm>) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|e| Error::Parse(format!("coefficient `{}`: {e}", t.coeff)))?;
            out.push((Monomial::from_exponents(t.exps), c));
        }
        SparsePoly::from_terms(universe, out)
    }

    pub fn from_json(universe: Universe, s: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_terms(universe, terms)
    }
}

/// One term of the JSON wire format. The coefficient is a decimal string so
/// that consumers with 64-bit JSON numbers do not truncate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exps: Vec<u32>,
    pub coeff: String,
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mon, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = mon.display(self.universe);
            match (abs.is_one(), body.as_str()) {
                (true, _) => write!(f, "{body}")?,
                (false, "1") => write!(f, "{abs}")?,
                (false, _) => write!(f, "{abs}*{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Universe {
        Universe::sylvester(2, 3)
    }

    fn var(slot: usize) -> SparsePoly {
        SparsePoly::var(u(), slot)
    }

    #[test]
    fn additive_inverse_cancels() {
        let f0 = var(u().f(0));
        let sum = f0.add(&f0.neg()).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn like_terms_combine() {
        let f0 = var(u().f(0));
        let a = f0.scale(&BigInt::from(2));
        let b = f0.scale(&BigInt::from(3));
        assert_eq!(a.add(&b).unwrap(), f0.scale(&BigInt::from(5)));
    }

    #[test]
    fn disjoint_supports_keep_both_terms() {
        let f0g0 = var(u().f(0)).mul(&var(u().g(0))).unwrap();
        let s = f0g0.add(&var(u().f(1))).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn difference_of_squares() {
        let f0 = var(u().f(0));
        let f1 = var(u().f(1));
        let p = f0.add(&f1).unwrap().mul(&f0.sub(&f1).unwrap()).unwrap();
        let expect = f0.mul(&f0).unwrap().sub(&f1.mul(&f1).unwrap()).unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "-f1^2 + f0^2");
    }

    #[test]
    fn zero_annihilates() {
        let p = var(u().f(0)).add(&var(u().g(2))).unwrap();
        assert!(p.mul(&SparsePoly::zero(u())).unwrap().is_zero());
    }

    #[test]
    fn universe_mismatch_is_reported() {
        let a = SparsePoly::var(Universe::sylvester(2, 3), 0);
        let b = SparsePoly::var(Universe::sylvester(3, 3), 0);
        assert!(matches!(a.add(&b), Err(Error::UniverseMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::UniverseMismatch { .. })));
        let bad = Monomial::from_exponents(vec![1, 0]);
        assert!(a.coefficient_of(&bad).is_err());
    }

    #[test]
    fn height_and_coefficients() {
        let p = var(u().f(0))
            .scale(&BigInt::from(3))
            .sub(&var(u().f(1)).mul(&var(u().g(0))).unwrap().scale(&BigInt::from(2)))
            .unwrap();
        assert_eq!(p.height(), BigInt::from(3));
        let absent = Monomial::from_powers(u(), &[(u().g(3), 1)]);
        assert_eq!(p.coefficient_of(&absent).unwrap(), BigInt::zero());
        assert_eq!(SparsePoly::zero(u()).height(), BigInt::zero());
    }

    #[test]
    fn group_and_omega_degrees() {
        let c = SparsePoly::constant(u(), BigInt::from(5));
        let gd = c.group_degrees();
        assert_eq!((gd.f_degree, gd.g_degree, gd.homogeneous), (0, 0, true));

        let f1g2 = var(u().f(1)).mul(&var(u().g(2))).unwrap();
        assert_eq!(f1g2.omega_degree_set(), BTreeSet::from([3]));

        let mixed = f1g2.add(&var(u().f(0))).unwrap();
        let gd = mixed.group_degrees();
        assert_eq!((gd.f_degree, gd.g_degree, gd.homogeneous), (1, 1, false));
        assert_eq!(mixed.omega_degree_set(), BTreeSet::from([0, 3]));
    }

    #[test]
    fn json_is_canonical_and_string_coefficients() {
        let p = var(u().g(0))
            .add(&var(u().f(0)).scale(&BigInt::from(-7)))
            .unwrap();
        let s = p.to_json();
        assert_eq!(
            s,
            r#"[{"exps":[0,0,0,1,0,0,0],"coeff":"1"},{"exps":[1,0,0,0,0,0,0],"coeff":"-7"}]"#
        );
        assert_eq!(SparsePoly::from_json(u(), &s).unwrap(), p);
        assert!(SparsePoly::from_json(u(), r#"[{"exps":[1],"coeff":"1"}]"#).is_err());
        assert!(SparsePoly::from_json(u(), r#"[{"exps":[0,0,0,0,0,0,0],"coeff":"x"}]"#).is_err());
    }

    #[test]
    fn huge_coefficients_survive_round_trip() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let p = SparsePoly::term(u(), Monomial::one(u()).mul_var(2), big.clone());
        let q = SparsePoly::from_json(u(), &p.to_json()).unwrap();
        assert_eq!(q.height(), big);
    }
}
