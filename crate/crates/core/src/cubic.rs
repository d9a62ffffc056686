//! Cubic `f`: the banded-determinant counts `F(m, k, k', m')` and the
//! coefficients `H_l(m, k, k', m')` of `f_0^m f_1^k f_2^{k'} f_3^{m'} g_0 g_l g_n`
//! in `Res(f_0 + f_1 x + f_2 x^2 + f_3 x^3, g)`.
//!
//! `F` is available three ways: the first-row recurrence ([`f_rec`]), the
//! binomial closed form ([`f_closed`]) and direct expansion of the banded
//! determinant ([`f_det_oracle`]). `H_l` for `l <= 5` is a fixed integer
//! combination of shifted `F` values; for other `l` it is read off an
//! expansion of the resultant with `g` restricted to `g_0 + g_l x^l + g_n x^n`,
//! or obtained from `H_l(n) = H_{n-l}(n)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bigpoly::{SparsePoly, Universe};
use crate::error::{Error, Result};
use crate::factorial::{binomial, factorial};
use crate::sylvester::{
    cofactor_determinant, expand_resultant_restricted, Entry, Envelope, SylvesterSpec,
    SymbolicMatrix,
};

/// Exponents of `f_0, f_1, f_2, f_3`. Components may be negative in shifted
/// lookups, where every function here returns zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FIndex {
    pub m: i64,
    pub k: i64,
    pub kp: i64,
    pub mp: i64,
}

impl FIndex {
    pub const fn new(m: i64, k: i64, kp: i64, mp: i64) -> Self {
        FIndex { m, k, kp, mp }
    }

    /// The index `(m, k, k', 2m + k)` used by `H_0`.
    pub const fn balanced(m: i64, k: i64, kp: i64) -> Self {
        FIndex::new(m, k, kp, 2 * m + k)
    }

    pub fn sum(&self) -> i64 {
        self.m + self.k + self.kp + self.mp
    }

    pub fn is_nonnegative(&self) -> bool {
        self.m >= 0 && self.k >= 0 && self.kp >= 0 && self.mp >= 0
    }

    pub fn shifted(&self, d: [i64; 4]) -> FIndex {
        FIndex::new(self.m - d[0], self.k - d[1], self.kp - d[2], self.mp - d[3])
    }

    /// `(m, k, k', m') -> (m', k', k, m)`, the image under `f_i -> f_{3-i}`.
    pub fn reversed(&self) -> FIndex {
        FIndex::new(self.mp, self.kp, self.k, self.m)
    }

    fn exponents(&self) -> [u32; 4] {
        [self.m as u32, self.k as u32, self.kp as u32, self.mp as u32]
    }
}

impl std::fmt::Display for FIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.m, self.k, self.kp, self.mp)
    }
}

/// Dense table of the recurrence over all indices with component sum at most
/// `bound`.
pub struct FRecTable {
    bound: usize,
    values: Vec<BigInt>,
}

impl FRecTable {
    pub fn new(bound: usize) -> Self {
        let side = bound + 1;
        let mut values = vec![BigInt::zero(); side.pow(4)];
        let at = |i: FIndex| -> usize {
            (((i.m as usize) * side + i.k as usize) * side + i.kp as usize) * side + i.mp as usize
        };
        let b = bound as i64;
        // lexicographic order visits every dependency before its dependents
        for m in 0..=b {
            for k in 0..=b - m {
                for kp in 0..=b - m - k {
                    for mp in 0..=b - m - k - kp {
                        let idx = FIndex::new(m, k, kp, mp);
                        let v = if idx == FIndex::new(0, 0, 0, 0) {
                            BigInt::one()
                        } else {
                            let get = |j: FIndex, values: &Vec<BigInt>| {
                                if j.is_nonnegative() {
                                    values[at(j)].clone()
                                } else {
                                    BigInt::zero()
                                }
                            };
                            get(idx.shifted([0, 0, 1, 0]), &values)
                                - get(idx.shifted([0, 1, 0, 1]), &values)
                                + get(idx.shifted([1, 0, 0, 2]), &values)
                        };
                        values[at(idx)] = v;
                    }
                }
            }
        }
        FRecTable { bound, values }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `None` when the index sum exceeds the table bound.
    pub fn get(&self, idx: FIndex) -> Option<BigInt> {
        if !idx.is_nonnegative() {
            return Some(BigInt::zero());
        }
        if idx.sum() as usize > self.bound {
            return None;
        }
        let side = self.bound + 1;
        let at = (((idx.m as usize) * side + idx.k as usize) * side + idx.kp as usize) * side
            + idx.mp as usize;
        Some(self.values[at].clone())
    }
}

/// Dense tables are cubic-quartic in size; past this sum the recurrence is
/// memoized sparsely per call instead.
const DENSE_BOUND_CAP: usize = 40;

static F_TABLE: OnceLock<RwLock<Arc<FRecTable>>> = OnceLock::new();

fn shared_table(bound: usize) -> Arc<FRecTable> {
    let lock = F_TABLE.get_or_init(|| RwLock::new(Arc::new(FRecTable::new(12))));
    {
        let t = lock.read().unwrap();
        if t.bound() >= bound {
            return Arc::clone(&t);
        }
    }
    let mut t = lock.write().unwrap();
    if t.bound() < bound {
        *t = Arc::new(FRecTable::new(bound.max(2 * t.bound()).min(DENSE_BOUND_CAP)));
    }
    Arc::clone(&t)
}

/// `F(m, k, k', m')` from the first-row recurrence
/// `F = F(m, k, k'-1, m') - F(m, k-1, k', m'-1) + F(m-1, k, k', m'-2)`,
/// `F(0, 0, 0, 0) = 1`, zero at negative indices.
pub fn f_rec(idx: FIndex) -> BigInt {
    if !idx.is_nonnegative() {
        return BigInt::zero();
    }
    let s = idx.sum() as usize;
    if s <= DENSE_BOUND_CAP {
        return shared_table(s).get(idx).expect("table covers index");
    }
    fn go(idx: FIndex, memo: &mut HashMap<FIndex, BigInt>) -> BigInt {
        if !idx.is_nonnegative() {
            return BigInt::zero();
        }
        if idx == FIndex::new(0, 0, 0, 0) {
            return BigInt::one();
        }
        if let Some(v) = memo.get(&idx) {
            return v.clone();
        }
        let v = go(idx.shifted([0, 0, 1, 0]), memo) - go(idx.shifted([0, 1, 0, 1]), memo)
            + go(idx.shifted([1, 0, 0, 2]), memo);
        memo.insert(idx, v.clone());
        v
    }
    go(idx, &mut HashMap::new())
}

/// `(-1)^k C(m + k, k) C(k' + k + m, k + m)` when `m' = 2m + k`, else zero.
pub fn f_closed(idx: FIndex) -> BigInt {
    if !idx.is_nonnegative() || idx.mp != 2 * idx.m + idx.k {
        return BigInt::zero();
    }
    let FIndex { m, k, kp, .. } = idx;
    let v = binomial(m + k, k) * binomial(kp + k + m, k + m);
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Largest dimension expanded by [`f_det_oracle`].
pub const F_ORACLE_MAX_DIM: usize = 12;

/// The `d x d` banded matrix with `f_2` on the diagonal, `f_1` and `f_0` on the
/// two superdiagonals and `f_3` on the subdiagonal.
pub fn f_matrix(d: usize) -> SymbolicMatrix {
    let u = Universe::new(4, 0);
    let mut mat = SymbolicMatrix::zeros(u, d);
    for r in 0..d {
        if r >= 1 {
            mat.set(r, r - 1, Entry::Var(3));
        }
        mat.set(r, r, Entry::Var(2));
        if r + 1 < d {
            mat.set(r, r + 1, Entry::Var(1));
        }
        if r + 2 < d {
            mat.set(r, r + 2, Entry::Var(0));
        }
    }
    mat
}

static F_DETERMINANTS: OnceLock<Mutex<HashMap<usize, Arc<SparsePoly>>>> = OnceLock::new();

/// Expanded determinant of [`f_matrix`]`(d)`, cached per dimension.
pub fn f_determinant(d: usize) -> Result<Arc<SparsePoly>> {
    if d > F_ORACLE_MAX_DIM {
        return Err(Error::feasibility("banded determinant dimension", F_ORACLE_MAX_DIM, d));
    }
    let cache = F_DETERMINANTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(cofactor_determinant(&f_matrix(d)));
    cache.lock().unwrap().insert(d, Arc::clone(&p));
    Ok(p)
}

/// `F` read off the expanded banded determinant. Dimension zero is the
/// convention `F(0, 0, 0, 0) = 1`.
pub fn f_det_oracle(idx: FIndex) -> Result<BigInt> {
    if !idx.is_nonnegative() {
        return Ok(BigInt::zero());
    }
    let d = idx.sum() as usize;
    if d == 0 {
        return Ok(BigInt::one());
    }
    let det = f_determinant(d)?;
    let mon = crate::bigpoly::Monomial::from_exponents(idx.exponents().to_vec());
    det.coefficient_of(&mon)
}

/// `(-1)^k (3m + 2k + k') (m + k + k' - 1)! / (k! m! k'!)`.
pub fn h0_closed(m: i64, k: i64, kp: i64) -> Result<BigInt> {
    if m < 0 || k < 0 || kp < 0 {
        return Err(Error::Domain(format!("negative exponent in ({m}, {k}, {kp})")));
    }
    if m + k + kp == 0 {
        return Err(Error::Domain("H_0 closed form needs m + k + k' >= 1".into()));
    }
    let (mu, ku, kpu) = (m as usize, k as usize, kp as usize);
    let v = BigInt::from(3 * m + 2 * k + kp) * factorial(mu + ku + kpu - 1)
        / (factorial(ku) * factorial(mu) * factorial(kpu));
    Ok(if k % 2 == 1 { -v } else { v })
}

/// `H_0(n)` from [`h0_closed`] over `3m + 2k + k' = n`.
///
/// A first pass walks every tuple in floating point: along fixed `m`, stepping
/// `k -> k + 1` takes `k' -> k' - 2` and multiplies the magnitude by
/// `k'(k'-1) / ((m + k + k' - 1)(k + 1))`. Tuples within `1e-6` of the largest
/// logarithm are then evaluated exactly, so ties and the maximum are decided
/// on integers.
pub fn h0_max_closed(n: usize) -> Result<HlMax> {
    if n == 0 {
        return Err(Error::Domain("H_0(n) needs n >= 1".into()));
    }
    let ln_int: Vec<f64> = (0..=n).map(|i| (i as f64).ln()).collect();
    let mut ln_fact = vec![0.0f64; n + 1];
    for i in 1..=n {
        ln_fact[i] = ln_fact[i - 1] + ln_int[i];
    }
    let walk = |visit: &mut dyn FnMut(usize, usize, usize, f64)| {
        for m in 0..=n / 3 {
            let mut kp = n - 3 * m;
            let mut k = 0usize;
            let mut s = m + kp;
            let mut lv = (n as f64).ln() + ln_fact[s - 1] - ln_fact[m] - ln_fact[kp];
            loop {
                visit(m, k, kp, lv);
                if kp < 2 {
                    break;
                }
                lv += ln_int[kp] + ln_int[kp - 1] - ln_int[s - 1] - ln_int[k + 1];
                kp -= 2;
                k += 1;
                s -= 1;
            }
        }
    };
    let mut top = f64::NEG_INFINITY;
    walk(&mut |_, _, _, lv| top = top.max(lv));
    let mut candidates = Vec::new();
    walk(&mut |m, k, kp, lv| {
        if lv >= top - 1e-6 {
            candidates.push((m as i64, k as i64, kp as i64));
        }
    });
    let values = candidates.into_iter().map(|(m, k, kp)| {
        let v = h0_closed(m, k, kp).expect("non-negative tuple with positive sum");
        (FIndex::balanced(m, k, kp), v)
    });
    Ok(max_of(0, n, HlSource::Formula, values))
}

/// An integer combination `sum c * F(idx - shift)`.
pub type FCombination = &'static [(i64, [i64; 4])];

/// `H_0` as obtained from the three placements of `g_0 g_0 g_n`, before the
/// recurrence is applied to it.
pub const H0_BY_CASES: FCombination = &[(1, [0, 0, 0, 0]), (-1, [0, 1, 0, 1]), (2, [1, 0, 0, 2])];

/// Shifts are `(dm, dk, dk', dm')` for `F(m - dm, k - dk, k' - dk', m' - dm')`.
pub const HL_TABLE: [FCombination; 6] = [
    &[(1, [1, 0, 0, 2]), (-1, [0, 0, 1, 0]), (2, [0, 0, 0, 0])],
    &[(2, [1, 0, 1, 1]), (-1, [0, 1, 1, 0]), (2, [0, 1, 0, 0]), (-3, [1, 0, 0, 1])],
    &[
        (2, [1, 0, 2, 0]),
        (-4, [1, 0, 1, 0]),
        (-1, [2, 1, 0, 3]),
        (-3, [2, 0, 0, 2]),
        (1, [1, 2, 0, 2]),
        (-1, [0, 2, 1, 0]),
        (2, [0, 2, 0, 0]),
    ],
    &[
        (-2, [2, 0, 2, 1]),
        (3, [1, 1, 2, 0]),
        (-6, [1, 1, 1, 0]),
        (1, [3, 0, 0, 3]),
        (5, [2, 0, 0, 1]),
        (-2, [2, 1, 0, 2]),
        (-1, [2, 2, 0, 3]),
        (1, [1, 3, 0, 2]),
        (-1, [0, 3, 1, 0]),
        (2, [0, 3, 0, 0]),
    ],
    &[
        (-2, [5, 0, 0, 6]),
        (-1, [4, 0, 0, 4]),
        (3, [3, 1, 1, 3]),
        (-9, [2, 2, 1, 2]),
        (1, [2, 3, 0, 3]),
        (-7, [2, 2, 0, 2]),
        (13, [3, 1, 0, 3]),
        (6, [3, 0, 2, 2]),
        (2, [2, 0, 3, 0]),
        (1, [1, 4, 0, 2]),
        (-1, [0, 4, 1, 0]),
        (2, [0, 4, 0, 0]),
        (4, [1, 2, 2, 0]),
        (-8, [1, 2, 1, 0]),
    ],
    &[
        (2, [3, 0, 3, 1]),
        (18, [3, 1, 2, 2]),
        (-7, [3, 0, 2, 1]),
        (12, [4, 1, 1, 4]),
        (-13, [4, 0, 1, 3]),
        (-1, [5, 1, 0, 6]),
        (-3, [5, 0, 0, 5]),
        (5, [2, 1, 2, 0]),
        (2, [1, 5, 0, 2]),
        (1, [0, 5, 0, 0]),
        (-1, [0, 6, 0, 1]),
        (5, [1, 4, 1, 1]),
        (-5, [1, 3, 1, 0]),
        (-15, [2, 4, 0, 3]),
        (-25, [2, 3, 0, 2]),
        (10, [3, 2, 1, 3]),
        (15, [4, 2, 0, 5]),
    ],
];

pub const MAX_FORMULA_L: usize = 5;

/// Smallest `n` from which the `H_l` row of [`HL_TABLE`] reproduces the
/// expansion coefficients. Below it the `g_0`, `g_l`, `g_n` placements overlap
/// and the row over- or under-counts.
pub const FORMULA_MIN_N: [usize; 6] = [1, 2, 4, 5, 9, 10];

/// Whether the table row for `H_l` is exact at degree `n`.
pub fn formula_applies(l: usize, n: usize) -> bool {
    l <= MAX_FORMULA_L && l <= n && n >= FORMULA_MIN_N[l]
}

/// Sign relating the table rows to the determinant convention of
/// [`crate::sylvester::build_matrix`]: coefficient `= (-1)^l * formula`.
pub fn formula_sign(l: usize) -> i8 {
    if l % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn hl_combination(l: usize) -> Result<FCombination> {
    HL_TABLE.get(l).copied().ok_or(Error::UnsupportedL(l))
}

pub fn eval_combination(comb: FCombination, idx: FIndex, f: impl Fn(FIndex) -> BigInt) -> BigInt {
    comb.iter()
        .map(|&(c, shift)| BigInt::from(c) * f(idx.shifted(shift)))
        .sum()
}

/// `H_l(m, k, k', m')` from the table of `F` combinations, using the closed
/// form of `F`.
pub fn hl_formula(l: usize, idx: FIndex) -> Result<BigInt> {
    Ok(eval_combination(hl_combination(l)?, idx, f_closed))
}

/// Indices `(m, k, k', m')` of degree `n` whose weight matches `g_0 g_l g_n`,
/// i.e. `m' = 2m + k - l`. All other indices have zero coefficient.
pub fn weighted_indices(l: usize, n: usize) -> Vec<FIndex> {
    let (l, n) = (l as i64, n as i64);
    let mut out = Vec::new();
    for m in 0..=n {
        for k in 0..=n - m {
            let mp = 2 * m + k - l;
            let kp = n - m - k - mp;
            if mp >= 0 && kp >= 0 {
                out.push(FIndex::new(m, k, kp, mp));
            }
        }
    }
    out
}

/// Coefficients of every `f`-monomial times `g_0 g_l g_n` in `res`, an
/// expansion of `Res(3, n)` (full or restricted to a support containing
/// `{0, l, n}`).
pub fn hl_coefficients_from(res: &SparsePoly, l: usize, n: usize) -> BTreeMap<FIndex, BigInt> {
    let u = res.universe();
    assert_eq!(u, Universe::sylvester(3, n), "expected an expansion of Res(3, {n})");
    let mut g_target = vec![0u32; n + 1];
    g_target[0] += 1;
    g_target[l] += 1;
    g_target[n] += 1;
    res.terms()
        .filter(|(mon, _)| mon.exponents()[4..] == g_target[..])
        .map(|(mon, c)| {
            let e = mon.exponents();
            (
                FIndex::new(e[0] as i64, e[1] as i64, e[2] as i64, e[3] as i64),
                c.clone(),
            )
        })
        .collect()
}

/// The `g`-support `{0, l, n}` that keeps every `g_0 g_l g_n` term.
pub fn hl_support(l: usize, n: usize) -> BTreeSet<usize> {
    BTreeSet::from([0, l, n])
}

/// `H_l` coefficients from an expansion of `Res(f, g_0 + g_l x^l + g_n x^n)`.
pub fn hl_oracle_coefficients(
    l: usize,
    n: usize,
    envelope: &Envelope,
) -> Result<BTreeMap<FIndex, BigInt>> {
    if l > n {
        return Err(Error::Argument(format!("l = {l} exceeds n = {n}")));
    }
    let spec = SylvesterSpec::new(3, n)?;
    let res = expand_resultant_restricted(spec, &hl_support(l, n), envelope)?;
    Ok(hl_coefficients_from(&res, l, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HlSource {
    Formula,
    /// Formula for `H_{n-l}`, mapped back through `f_i -> f_{3-i}`.
    Symmetry,
    Expansion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HlMax {
    pub l: usize,
    pub n: usize,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub value: BigInt,
    pub argmax: BTreeSet<FIndex>,
    pub source: HlSource,
}

fn max_of(
    l: usize,
    n: usize,
    source: HlSource,
    values: impl Iterator<Item = (FIndex, BigInt)>,
) -> HlMax {
    let mut best = BigInt::zero();
    let mut argmax = BTreeSet::new();
    for (idx, v) in values {
        let a = v.abs();
        if a.is_zero() {
            continue;
        }
        match a.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = a;
                argmax.clear();
                argmax.insert(idx);
            }
            std::cmp::Ordering::Equal => {
                argmax.insert(idx);
            }
            std::cmp::Ordering::Less => {}
        }
    }
    HlMax {
        l,
        n,
        value: best,
        argmax,
        source,
    }
}

/// `H_l(n)` from the `F` table, directly when the row for `l` applies at
/// degree `n`, or through the reciprocal symmetry when the row for `n - l` does.
pub fn hl_max_formula(l: usize, n: usize) -> Result<HlMax> {
    if l > n {
        return Err(Error::Argument(format!("l = {l} exceeds n = {n}")));
    }
    if formula_applies(l, n) {
        let comb = hl_combination(l)?;
        let values = weighted_indices(l, n)
            .into_iter()
            .map(|idx| (idx, eval_combination(comb, idx, f_closed)));
        Ok(max_of(l, n, HlSource::Formula, values))
    } else if formula_applies(n - l, n) {
        let mirror = hl_max_formula(n - l, n)?;
        Ok(HlMax {
            l,
            n,
            value: mirror.value,
            argmax: mirror.argmax.iter().map(FIndex::reversed).collect(),
            source: HlSource::Symmetry,
        })
    } else {
        Err(Error::UnsupportedL(l))
    }
}

pub fn hl_max_oracle(l: usize, n: usize, envelope: &Envelope) -> Result<HlMax> {
    let coeffs = hl_oracle_coefficients(l, n, envelope)?;
    Ok(max_of(l, n, HlSource::Expansion, coeffs.into_iter()))
}

/// `H_l(n)` by formula or symmetry where available, otherwise by restricted
/// expansion inside `envelope`.
pub fn hl_max(l: usize, n: usize, envelope: &Envelope) -> Result<HlMax> {
    match hl_max_formula(l, n) {
        Err(Error::UnsupportedL(_)) => hl_max_oracle(l, n, envelope),
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlMethod {
    /// Table formulas plus symmetry, restricted expansions for the rest.
    Formula,
    /// One full expansion of `Res(3, n)`.
    Expand,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArgmaxRow {
    pub n: usize,
    pub per_l: Vec<HlMax>,
    #[serde(serialize_with = "crate::verify::ser_bigint")]
    pub max: BigInt,
    /// Every `l` attaining the maximum.
    pub argmax: BTreeSet<usize>,
    /// The same set folded by `l -> min(l, n - l)`.
    pub canonical: BTreeSet<usize>,
}

pub fn hl_all(n: usize, method: HlMethod, envelope: &Envelope) -> Result<Vec<HlMax>> {
    match method {
        HlMethod::Formula => (0..=n).map(|l| hl_max(l, n, envelope)).collect(),
        HlMethod::Expand => {
            let spec = SylvesterSpec::new(3, n)?;
            let res = crate::sylvester::expand_resultant_within(spec, envelope)?;
            Ok((0..=n)
                .map(|l| {
                    max_of(
                        l,
                        n,
                        HlSource::Expansion,
                        hl_coefficients_from(&res, l, n).into_iter(),
                    )
                })
                .collect())
        }
    }
}

/// Which `H_l(n)` are largest.
pub fn hl_argmax_table(n: usize, method: HlMethod, envelope: &Envelope) -> Result<ArgmaxRow> {
    let per_l = hl_all(n, method, envelope)?;
    let max = per_l.iter().map(|h| h.value.clone()).max().unwrap_or_default();
    let argmax: BTreeSet<usize> = per_l.iter().filter(|h| h.value == max).map(|h| h.l).collect();
    let canonical = argmax.iter().map(|&l| l.min(n - l)).collect();
    Ok(ArgmaxRow {
        n,
        per_l,
        max,
        argmax,
        canonical,
    })
}

/// Result of comparing the `H_l` formula with expansion coefficients for one
/// `(l, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignCheck {
    pub l: usize,
    pub n: usize,
    /// The single sign with `oracle = sign * formula` on every index, if any.
    pub sign: Option<i8>,
    pub compared: usize,
    pub mismatches: Vec<FIndex>,
}

pub fn compare_formula_with(
    l: usize,
    n: usize,
    oracle: &BTreeMap<FIndex, BigInt>,
) -> Result<SignCheck> {
    let comb = hl_combination(l)?;
    let mut sign: Option<i8> = None;
    let mut mismatches = Vec::new();
    let mut keys: BTreeSet<FIndex> = weighted_indices(l, n).into_iter().collect();
    keys.extend(oracle.keys().copied());
    for idx in &keys {
        let formula = eval_combination(comb, *idx, f_closed);
        let actual = oracle.get(idx).cloned().unwrap_or_default();
        let ok = match sign {
            _ if formula.is_zero() && actual.is_zero() => true,
            None if formula == actual => {
                sign = Some(1);
                true
            }
            None if formula == -&actual => {
                sign = Some(-1);
                true
            }
            Some(1) => formula == actual,
            Some(_) => formula == -&actual,
            None => false,
        };
        if !ok {
            mismatches.push(*idx);
        }
    }
    let sign = if mismatches.is_empty() {
        sign.or(Some(1))
    } else {
        None
    };
    Ok(SignCheck {
        l,
        n,
        sign,
        compared: keys.len(),
        mismatches,
    })
}

/// Compares [`hl_formula`] with the coefficients of a restricted expansion.
pub fn check_formula_against_expansion(
    l: usize,
    n: usize,
    envelope: &Envelope,
) -> Result<SignCheck> {
    let oracle = hl_oracle_coefficients(l, n, envelope)?;
    compare_formula_with(l, n, &oracle)
}

/// Coupled bounding sequences `A_m = A_{m-1} + B_{m-1}`, `B_m = A_{m-1} + C_{m-1}`,
/// `C_m = A_{m-1}` with `A_1 = B_1 = C_1 = 1`. Entry `i` holds index `m = i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TribonacciBounds {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub c: Vec<BigInt>,
}

impl TribonacciBounds {
    pub fn a(&self, m: usize) -> &BigInt {
        &self.a[m - 1]
    }
    pub fn b(&self, m: usize) -> &BigInt {
        &self.b[m - 1]
    }
    pub fn c(&self, m: usize) -> &BigInt {
        &self.c[m - 1]
    }
    pub fn len(&self) -> usize {
        self.a.len()
    }
    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

pub fn tribonacci_bounds(max_m: usize) -> Result<TribonacciBounds> {
    if max_m < 3 {
        return Err(Error::Domain(format!("need at least 3 terms, got {max_m}")));
    }
    let mut a = vec![BigInt::one()];
    let mut b = vec![BigInt::one()];
    let mut c = vec![BigInt::one()];
    for i in 1..max_m {
        let (pa, pb, pc) = (&a[i - 1], &b[i - 1], &c[i - 1]);
        let na = pa + pb;
        let nb = pa + pc;
        let nc = pa.clone();
        a.push(na);
        b.push(nb);
        c.push(nc);
    }
    Ok(TribonacciBounds { a, b, c })
}
