//! Symbolic Sylvester matrices and exact expansion of their determinants.
//!
//! The matrix has order `m + n`. Column `c < n` holds `f_{r-c}` at row `r`,
//! column `n + c'` holds `g_{r-c'}`. `Res(f, g)` is literally the determinant
//! of this matrix; no sign is dropped anywhere.
//!
//! Two engines are provided. [`expand_resultant`] uses a Laplace expansion
//! along the `m` g-columns and evaluates each complementary f-minor with a
//! column sweep over the band ([`f_band_minor`]). [`naive_determinant`] is a
//! plain cofactor expansion kept as an oracle for small orders.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::bigpoly::{SparsePoly, Universe};
use crate::error::{Error, Result};

/// Largest order accepted by [`naive_determinant`].
pub const NAIVE_MAX_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SylvesterSpec {
    m: usize,
    n: usize,
}

impl SylvesterSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain(format!(
                "degrees must be positive, got m = {m}, n = {n}"
            )));
        }
        Ok(SylvesterSpec { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m + self.n
    }

    pub fn universe(&self) -> Universe {
        Universe::sylvester(self.m, self.n)
    }
}

/// Size limits for the Laplace engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Envelope {
    pub max_m: usize,
    pub max_n: usize,
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope { max_m: 4, max_n: 30 }
    }
}

impl Envelope {
    pub fn with_max_n(max_n: usize) -> Self {
        Envelope {
            max_n,
            ..Envelope::default()
        }
    }

    pub fn check(&self, spec: SylvesterSpec) -> Result<()> {
        if spec.m > self.max_m {
            return Err(Error::feasibility("degree m of f", self.max_m, spec.m));
        }
        if spec.n > self.max_n {
            return Err(Error::feasibility("degree n of g", self.max_n, spec.n));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    /// A variable, by slot in the matrix universe.
    Var(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    universe: Universe,
    order: usize,
    entries: Vec<Entry>,
}

impl SymbolicMatrix {
    pub fn zeros(universe: Universe, order: usize) -> Self {
        SymbolicMatrix {
            universe,
            order,
            entries: vec![Entry::Zero; order * order],
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> Entry {
        self.entries[row * self.order + col]
    }

    pub fn set(&mut self, row: usize, col: usize, e: Entry) {
        self.entries[row * self.order + col] = e;
    }

    /// The square submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<SymbolicMatrix> {
        if rows.len() != cols.len() {
            return Err(Error::Argument(format!(
                "submatrix must be square, got {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.iter().chain(cols).any(|&i| i >= self.order) {
            return Err(Error::Argument("submatrix index out of range".into()));
        }
        let mut out = SymbolicMatrix::zeros(self.universe, rows.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|c| match self.get(r, c) {
                    Entry::Zero => "0".to_string(),
                    Entry::Var(slot) => self.universe.var_name(slot),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn build_matrix(spec: SylvesterSpec) -> SymbolicMatrix {
    let u = spec.universe();
    let (m, n) = (spec.m, spec.n);
    let mut mat = SymbolicMatrix::zeros(u, spec.order());
    for c in 0..n {
        for i in 0..=m {
            mat.set(c + i, c, Entry::Var(u.f(i)));
        }
    }
    for c in 0..m {
        for j in 0..=n {
            mat.set(c + j, n + c, Entry::Var(u.g(j)));
        }
    }
    mat
}

/// Which engine computes a full expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Laplace,
    Naive,
}

pub fn expand_with(spec: SylvesterSpec, engine: Engine, envelope: &Envelope) -> Result<SparsePoly> {
    match engine {
        Engine::Laplace => expand_resultant_within(spec, envelope),
        Engine::Naive => naive_determinant(&build_matrix(spec)),
    }
}

/// Exact expansion of `Res(f, g)` within the default envelope.
pub fn expand_resultant(spec: SylvesterSpec) -> Result<SparsePoly> {
    expand_resultant_within(spec, &Envelope::default())
}

pub fn expand_resultant_within(spec: SylvesterSpec, envelope: &Envelope) -> Result<SparsePoly> {
    envelope.check(spec)?;
    Ok(laplace_expand(spec, |_| true))
}

/// Expansion of `Res(f, g)` with `g_j` set to zero for every `j` outside
/// `g_support`. With support `{0, n}` this is `Res(f, g_0 + g_n x^n)`.
pub fn expand_resultant_restricted(
    spec: SylvesterSpec,
    g_support: &BTreeSet<usize>,
    envelope: &Envelope,
) -> Result<SparsePoly> {
    envelope.check(spec)?;
    if let Some(&j) = g_support.iter().find(|&&j| j > spec.n) {
        return Err(Error::Argument(format!(
            "g_{j} is not a coefficient of a degree-{} polynomial",
            spec.n
        )));
    }
    Ok(laplace_expand(spec, |j| g_support.contains(&j)))
}

fn laplace_expand(spec: SylvesterSpec, g_live: impl Fn(usize) -> bool + Sync) -> SparsePoly {
    let u = spec.universe();
    let (m, n) = (spec.m, spec.n);
    let g_col_sum: usize = (0..m).map(|j| n + j).sum();

    let subsets: Vec<Vec<usize>> = combinations(spec.order(), m);
    subsets
        .par_iter()
        .fold(
            || SparsePoly::zero(u),
            |mut acc, rows| {
                let g_minor = g_block_minor(spec, rows, &g_live);
                if g_minor.is_zero() {
                    return acc;
                }
                let f_minor = band_minor(spec, rows);
                if f_minor.is_zero() {
                    return acc;
                }
                let mut term = g_minor.mul_unchecked(&f_minor);
                if (rows.iter().sum::<usize>() + g_col_sum) % 2 == 1 {
                    term = term.neg();
                }
                acc.add_assign_unchecked(&term);
                acc
            },
        )
        .reduce(
            || SparsePoly::zero(u),
            |mut a, b| {
                a.add_assign_unchecked(&b);
                a
            },
        )
}

/// Determinant of the `m x m` block of g-columns restricted to `rows`.
fn g_block_minor(spec: SylvesterSpec, rows: &[usize], g_live: &impl Fn(usize) -> bool) -> SparsePoly {
    let u = spec.universe();
    let m = spec.m;
    let mut mat = SymbolicMatrix::zeros(u, m);
    for (a, &r) in rows.iter().enumerate() {
        for b in 0..m {
            if r >= b && r - b <= spec.n && g_live(r - b) {
                mat.set(a, b, Entry::Var(u.g(r - b)));
            }
        }
    }
    cofactor_determinant(&mat)
}

/// Determinant of the f-block (first `n` columns) with `removed_rows` deleted.
pub fn f_band_minor(spec: SylvesterSpec, removed_rows: &[usize]) -> Result<SparsePoly> {
    if removed_rows.len() != spec.m {
        return Err(Error::Argument(format!(
            "expected {} removed rows, got {}",
            spec.m,
            removed_rows.len()
        )));
    }
    if removed_rows.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(
            "removed rows must be strictly increasing".into(),
        ));
    }
    if let Some(&r) = removed_rows.iter().find(|&&r| r >= spec.order()) {
        return Err(Error::Argument(format!(
            "row {r} outside matrix of order {}",
            spec.order()
        )));
    }
    Ok(band_minor(spec, removed_rows))
}

/// Column sweep over the f-block. Column `c` touches rows `c..=c+m`; the state
/// is the mask of rows in that window already taken by earlier columns.
/// Removed rows are never taken and do not count toward the permutation sign.
fn band_minor(spec: SylvesterSpec, removed: &[usize]) -> SparsePoly {
    let u = spec.universe();
    let (m, n) = (spec.m, spec.n);
    let rows = spec.order();
    let removed_at = |start: usize| -> u32 {
        removed
            .iter()
            .filter(|&&r| r >= start && r <= start + m)
            .fold(0u32, |acc, &r| acc | (1 << (r - start)))
    };

    let mut states: BTreeMap<u32, SparsePoly> = BTreeMap::new();
    states.insert(0, SparsePoly::one(u));
    for c in 0..n {
        let rem = removed_at(c);
        let mut next: BTreeMap<u32, SparsePoly> = BTreeMap::new();
        for (&taken, poly) in &states {
            for i in 0..=m {
                if c + i >= rows {
                    break;
                }
                let bit = 1u32 << i;
                if (taken | rem) & bit != 0 {
                    continue;
                }
                let now = taken | bit;
                // row c leaves the window for good
                if (now | rem) & 1 == 0 {
                    continue;
                }
                let inversions = (taken >> (i + 1)).count_ones();
                next.entry(now >> 1)
                    .or_insert_with(|| SparsePoly::zero(u))
                    .add_var_multiple(poly, u.f(i), inversions % 2 == 1);
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }

    let full = (1u32 << m) - 1;
    let rem = removed_at(n);
    let mut out = SparsePoly::zero(u);
    for (taken, poly) in states {
        if (taken | rem) & full == full {
            out.add_assign_unchecked(&poly);
        }
    }
    out
}

/// Cofactor-expansion determinant, exact. Orders above [`NAIVE_MAX_ORDER`]
/// are refused.
pub fn naive_determinant(matrix: &SymbolicMatrix) -> Result<SparsePoly> {
    if matrix.order() > NAIVE_MAX_ORDER {
        return Err(Error::feasibility(
            "order of naive determinant",
            NAIVE_MAX_ORDER,
            matrix.order(),
        ));
    }
    Ok(cofactor_determinant(matrix))
}

/// Expansion along successive rows; minors are shared by the mask of columns
/// still free, so the cost is bounded by `order * 2^order` minor lookups.
pub(crate) fn cofactor_determinant(matrix: &SymbolicMatrix) -> SparsePoly {
    fn go(
        mat: &SymbolicMatrix,
        row: usize,
        free: u32,
        memo: &mut HashMap<u32, SparsePoly>,
    ) -> SparsePoly {
        let u = mat.universe();
        if row == mat.order() {
            return SparsePoly::one(u);
        }
        if let Some(p) = memo.get(&free) {
            return p.clone();
        }
        let mut acc = SparsePoly::zero(u);
        let mut position = 0usize;
        for col in 0..mat.order() {
            if free & (1 << col) == 0 {
                continue;
            }
            if let Entry::Var(slot) = mat.get(row, col) {
                let minor = go(mat, row + 1, free & !(1 << col), memo);
                acc.add_var_multiple(&minor, slot, position % 2 == 1);
            }
            position += 1;
        }
        memo.insert(free, acc.clone());
        acc
    }
    assert!(matrix.order() < 32, "cofactor expansion limited to order < 32");
    let free = if matrix.order() == 0 {
        0
    } else {
        (1u32 << matrix.order()) - 1
    };
    let mut memo = HashMap::new();
    go(matrix, 0, free, &mut memo)
}

/// All strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The monomial `f_0^n g_n^m`, the product of the main diagonal.
pub fn diagonal_monomial(spec: SylvesterSpec) -> crate::bigpoly::Monomial {
    let u = spec.universe();
    crate::bigpoly::Monomial::from_powers(u, &[(u.f(0), spec.n as u32), (u.g(spec.n), spec.m as u32)])
}

/// The monomial `f_m^n g_0^m`.
pub fn antidiagonal_monomial(spec: SylvesterSpec) -> crate::bigpoly::Monomial {
    let u = spec.universe();
    crate::bigpoly::Monomial::from_powers(u, &[(u.f(spec.m), spec.n as u32), (u.g(0), spec.m as u32)])
}

/// `(m + 1)^n (n + 1)^m`, the classical upper bound for the height.
pub fn height_upper_bound(spec: SylvesterSpec) -> BigInt {
    let mut b = BigInt::one();
    for _ in 0..spec.n {
        b *= spec.m + 1;
    }
    for _ in 0..spec.m {
        b *= spec.n + 1;
    }
    b
}
