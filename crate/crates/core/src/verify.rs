//! Verification suites, table reproduction and the two observational probes.
//!
//! Every suite is a list of independent checks run in parallel and reported
//! in key order, so a report depends only on its options.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::asymptotics::{
    beta_l_spot_check, constants, defect_slope, error_series, identity_checks, top_half_slope,
    tribonacci_check, Case,
};
use crate::bigpoly::{Monomial, SparsePoly};
use crate::cubic::{
    f_closed, f_det_oracle, f_rec, h0_closed, hl_argmax_table, hl_coefficients_from,
    FIndex, HlMethod, HlSource, H0_BY_CASES, HL_TABLE,
};
use crate::error::{Error, Result};
use crate::quad::{a_from_root_formula, compute_a, girard_power_sum, quad_height};
use crate::sylvester::{
    antidiagonal_monomial, diagonal_monomial, expand_resultant_restricted, expand_resultant_within,
    height_upper_bound, Envelope, SylvesterSpec,
};

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub const SUITES: [&str; 7] = [
    "quad-oracle",
    "cubic-oracle",
    "f-sweep",
    "homogeneity",
    "tables",
    "asymptotics",
    "symmetry",
];

/// What a check's expected value rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// A value or table printed in the literature.
    Published,
    /// Agreement between two independent computations.
    Oracle,
    /// An elementary consequence of the definitions.
    Elementary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub basis: Basis,
}

/// A measured value that is reported but not judged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub case: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub observations: Vec<Observation>,
    /// Kept out of the JSON so reports compare byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One judged case.
#[derive(Clone, Debug)]
struct Check {
    key: String,
    inputs: String,
    expected: String,
    actual: String,
    basis: Basis,
    ok: bool,
}

impl Check {
    fn eq(key: impl Into<String>, inputs: impl Into<String>, expected: impl Display, actual: impl Display, basis: Basis) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            key: key.into(),
            inputs: inputs.into(),
            ok: expected == actual,
            expected,
            actual,
            basis,
        }
    }

    fn cond(
        key: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Display,
        ok: bool,
        basis: Basis,
    ) -> Check {
        Check {
            key: key.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            actual: actual.to_string(),
            basis,
            ok,
        }
    }
}

#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    observations: Vec<Observation>,
}

impl Outcome {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn observe(&mut self, case: impl Into<String>, value: impl Display) {
        self.observations.push(Observation {
            case: case.into(),
            value: value.to_string(),
        });
    }

    fn extend(&mut self, other: Outcome) {
        self.checks.extend(other.checks);
        self.observations.extend(other.observations);
    }

    fn into_report(mut self, suite: &str, wall_time: Duration) -> SuiteReport {
        self.checks.sort_by(|a, b| a.key.cmp(&b.key));
        self.observations.sort_by(|a, b| a.case.cmp(&b.case));
        SuiteReport {
            suite: suite.to_string(),
            cases: self.checks.len(),
            failures: self
                .checks
                .into_iter()
                .filter(|c| !c.ok)
                .map(|c| Failure {
                    case: c.key,
                    inputs: c.inputs,
                    expected: c.expected,
                    actual: c.actual,
                    basis: c.basis,
                })
                .collect(),
            observations: self.observations,
            wall_time,
        }
    }
}

fn par_outcomes<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Outcome> + Sync + Send) -> Result<Outcome> {
    let parts: Vec<Outcome> = items.par_iter().map(f).collect::<Result<_>>()?;
    let mut out = Outcome::default();
    for p in parts {
        out.extend(p);
    }
    Ok(out)
}

/// Envelopes for the suites. `n_max` is the largest degree a suite expands
/// or tabulates; `None` takes each suite's default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    pub n_max: Option<usize>,
}

pub const NMAX_ENV: &str = "RESHEIGHT_NMAX";

impl SuiteOptions {
    /// `n_max` from `RESHEIGHT_NMAX` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(NMAX_ENV) {
            Ok(v) => {
                let n = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{NMAX_ENV}={v} is not a non-negative integer")))?;
                Ok(SuiteOptions { n_max: Some(n) })
            }
            Err(_) => Ok(SuiteOptions::default()),
        }
    }

    fn n_max_or(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }
}

pub fn default_n_max(suite: &str) -> Result<usize> {
    Ok(match suite {
        "quad-oracle" => 25,
        "cubic-oracle" | "homogeneity" | "symmetry" | "f-sweep" => 12,
        "tables" => 19,
        "asymptotics" => 2000,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let n_max = opts.n_max_or(default_n_max(name)?);
    let start = Instant::now();
    let outcome = match name {
        "quad-oracle" => quad_oracle(n_max)?,
        "cubic-oracle" => cubic_oracle(n_max)?,
        "f-sweep" => f_sweep(n_max)?,
        "homogeneity" => homogeneity(n_max)?,
        "tables" => tables(n_max)?,
        "asymptotics" => asymptotics_suite(n_max)?,
        "symmetry" => symmetry(n_max)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(outcome.into_report(name, start.elapsed()))
}

fn key(prefix: &str, nums: &[i64]) -> String {
    let parts: Vec<String> = nums.iter().map(|v| format!("{v:04}")).collect();
    format!("{prefix}[{}]", parts.join(","))
}

/// Envelope wide enough for degree `n`.
fn envelope_for(n: usize) -> Envelope {
    Envelope::with_max_n(n.max(Envelope::default().max_n))
}

fn quad_oracle(n_max: usize) -> Result<Outcome> {
    let env = envelope_for(n_max);
    let ns: Vec<usize> = (3..=n_max).collect();
    let mut out = par_outcomes(&ns, |&n| {
        let mut o = Outcome::default();
        let res = expand_resultant_within(SylvesterSpec::new(2, n)?, &env)?;
        let q = quad_height(n as u64)?;
        let inputs = format!("m=2 n={n}");
        o.push(Check::eq(key("height", &[n as i64]), inputs.clone(), &q.height, res.height(), Basis::Oracle));
        let at = res.coefficient_of(&q.extremal_monomial)?.abs();
        o.push(Check::eq(key("extremal", &[n as i64]), inputs, &q.height, at, Basis::Oracle));
        Ok(o)
    })?;
    for n in 1..=60u64 {
        let p = girard_power_sum(n)?;
        let newton = newton_power_sum(n);
        out.push(Check::eq(key("girard", &[n as i64]), format!("n={n}"), newton, p, Basis::Oracle));
    }
    let first_mismatch = (3..=100_000u64).find(|&n| compute_a(n).ok() != a_from_root_formula(n).ok());
    out.push(Check::cond(
        "a-routes",
        "3 <= n <= 100000",
        "binary search and root formula agree",
        format!("first mismatch {first_mismatch:?}"),
        first_mismatch.is_none(),
        Basis::Oracle,
    ));
    let mono = monotonic_probe(Case::Quad, n_max.max(3))?;
    out.push(Check::cond(
        "monotonic",
        format!("quad n <= {}", mono.n_max),
        "strictly increasing",
        format!("first violation {:?}", mono.first_violation),
        mono.first_violation.is_none(),
        Basis::Published,
    ));
    Ok(out)
}

/// `x_1^n + x_2^n` for the roots of `x^2 + f_1 x + f_0`, from
/// `p_n = -f_1 p_{n-1} - f_0 p_{n-2}`, `p_0 = 2`, `p_1 = -f_1`.
pub fn newton_power_sum(n: u64) -> SparsePoly {
    let u = crate::bigpoly::Universe::new(2, 0);
    let f0 = SparsePoly::var(u, u.f(0));
    let f1 = SparsePoly::var(u, u.f(1));
    let mut prev = SparsePoly::constant(u, BigInt::from(2));
    let mut cur = f1.neg();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = f1.mul(&cur).unwrap().neg().sub(&f0.mul(&prev).unwrap()).unwrap();
        prev = cur;
        cur = next;
    }
    cur
}

fn cubic_oracle(n_max: usize) -> Result<Outcome> {
    let env = envelope_for(n_max);
    let ns: Vec<usize> = (6..=n_max).collect();
    let mut out = par_outcomes(&ns, |&n| {
        let mut o = Outcome::default();
        let full = expand_resultant_within(SylvesterSpec::new(3, n)?, &env)?.height();
        let row = hl_argmax_table(n, HlMethod::Formula, &env)?;
        o.push(Check::eq(key("max-hl", &[n as i64]), format!("m=3 n={n}"), full, &row.max, Basis::Oracle));
        let expanded: Vec<usize> = row
            .per_l
            .iter()
            .filter(|h| h.source == HlSource::Expansion)
            .map(|h| h.l)
            .collect();
        if !expanded.is_empty() {
            o.observe(key("restricted-expansion-l", &[n as i64]), format!("{expanded:?}"));
        }
        Ok(o)
    })?;
    let mono = monotonic_probe(Case::Cubic, n_max)?;
    out.push(Check::cond(
        "monotonic",
        format!("cubic n <= {}", mono.n_max),
        "strictly increasing",
        format!("first violation {:?}", mono.first_violation),
        mono.first_violation.is_none(),
        Basis::Published,
    ));
    Ok(out)
}

/// All `F` indices with non-negative components summing to at most `bound`.
pub fn f_indices(bound: i64) -> Vec<FIndex> {
    let mut v = Vec::new();
    for m in 0..=bound {
        for k in 0..=bound - m {
            for kp in 0..=bound - m - k {
                for mp in 0..=bound - m - k - kp {
                    v.push(FIndex::new(m, k, kp, mp));
                }
            }
        }
    }
    v
}

fn f_sweep(bound: usize) -> Result<Outcome> {
    let idx = f_indices(bound as i64);
    let mut out = par_outcomes(&idx, |&i| {
        let mut o = Outcome::default();
        let rec = f_rec(i);
        let inputs = format!("{i}");
        let k = key("F", &[i.m, i.k, i.kp, i.mp]);
        o.push(Check::eq(format!("{k}/closed"), inputs.clone(), &rec, f_closed(i), Basis::Oracle));
        o.push(Check::eq(format!("{k}/det"), inputs, &rec, f_det_oracle(i)?, Basis::Oracle));
        Ok(o)
    })?;
    for (i, v) in PRINTED_F {
        out.push(Check::eq(key("printed-F", &[i.m, i.k, i.kp, i.mp]), format!("{i}"), v, f_rec(i), Basis::Published));
    }
    Ok(out)
}

pub const PRINTED_F: [(FIndex, i64); 3] = [
    (FIndex::new(1, 0, 0, 2), 1),
    (FIndex::new(0, 1, 1, 1), -2),
    (FIndex::new(0, 0, 3, 0), 1),
];

/// `H0_closed` against the case-split combination and the table row for
/// `l = 0`, over `3m + 2k + k' <= bound`.
pub fn h0_identity_checks(bound: i64) -> Vec<(FIndex, BigInt, BigInt, BigInt)> {
    let mut v = Vec::new();
    for m in 0..=bound / 3 {
        for k in 0..=(bound - 3 * m) / 2 {
            for kp in 0..=bound - 3 * m - 2 * k {
                if m + k + kp == 0 {
                    continue;
                }
                let idx = FIndex::balanced(m, k, kp);
                let closed = h0_closed(m, k, kp).expect("non-negative tuple");
                let by_cases = crate::cubic::eval_combination(H0_BY_CASES, idx, f_closed);
                let by_table = crate::cubic::eval_combination(HL_TABLE[0], idx, f_closed);
                v.push((idx, closed, by_cases, by_table));
            }
        }
    }
    v
}

fn homogeneity(n_max: usize) -> Result<Outcome> {
    let env = envelope_for(n_max);
    let specs: Vec<(usize, usize)> = (1..=3).flat_map(|m| (1..=n_max).map(move |n| (m, n))).collect();
    par_outcomes(&specs, |&(m, n)| {
        let mut o = Outcome::default();
        let spec = SylvesterSpec::new(m, n)?;
        let res = expand_resultant_within(spec, &env)?;
        let inputs = format!("m={m} n={n}");
        let k = |what: &str| key(what, &[m as i64, n as i64]);
        let d = res.group_degrees();
        o.push(Check::eq(
            k("bidegree"),
            inputs.clone(),
            format!("({n}, {m}, homogeneous)"),
            format!("({}, {}, {})", d.f_degree, d.g_degree, if d.homogeneous { "homogeneous" } else { "mixed" }),
            Basis::Elementary,
        ));
        let omega: BTreeSet<u64> = res.omega_degree_set();
        o.push(Check::eq(k("omega"), inputs.clone(), format!("{:?}", BTreeSet::from([(m * n) as u64])), format!("{omega:?}"), Basis::Elementary));
        let bound = height_upper_bound(spec);
        let h = res.height();
        o.push(Check::cond(k("height-bound"), inputs.clone(), format!("<= {bound}"), &h, h <= bound, Basis::Elementary));
        let diag = res.coefficient_of(&diagonal_monomial(spec))?;
        o.push(Check::eq(k("diagonal"), inputs.clone(), 1, diag, Basis::Elementary));
        let anti = res.coefficient_of(&antidiagonal_monomial(spec))?;
        o.push(Check::eq(k("antidiagonal"), inputs, 1, anti.abs(), Basis::Elementary));
        Ok(o)
    })
}

/// Published table of `A_n`: each value with its inclusive range of `n`.
pub const TABLE1: [(u64, u64, u64); 27] = [
    (1, 3, 4),
    (2, 5, 8),
    (3, 9, 12),
    (4, 13, 15),
    (5, 16, 19),
    (6, 20, 23),
    (7, 24, 26),
    (8, 27, 30),
    (9, 31, 33),
    (10, 34, 37),
    (11, 38, 41),
    (12, 42, 44),
    (13, 45, 48),
    (14, 49, 52),
    (15, 53, 55),
    (16, 56, 59),
    (17, 60, 62),
    (18, 63, 66),
    (19, 67, 70),
    (20, 71, 73),
    (21, 74, 77),
    (22, 78, 81),
    (23, 82, 84),
    (24, 85, 88),
    (25, 89, 91),
    (26, 92, 95),
    (27, 96, 99),
];

/// Printed `A_n`, if `n` is in the table.
pub fn table1_expected(n: u64) -> Option<u64> {
    TABLE1.iter().find(|(_, lo, hi)| (*lo..=*hi).contains(&n)).map(|(a, _, _)| *a)
}

/// Published table of maximizing `l`, with `l` and `n - l` identified.
pub const TABLE2: [(usize, &[usize]); 20] = [
    (1, &[0]),
    (2, &[1]),
    (3, &[0]),
    (4, &[1]),
    (5, &[1, 2]),
    (6, &[3]),
    (7, &[3]),
    (8, &[0]),
    (9, &[3]),
    (10, &[3]),
    (11, &[0]),
    (12, &[0]),
    (13, &[3]),
    (14, &[3]),
    (15, &[3]),
    (16, &[3]),
    (17, &[3]),
    (18, &[0]),
    (19, &[0]),
    (72, &[0]),
];

pub fn table2_expected(n: usize) -> Option<BTreeSet<usize>> {
    TABLE2.iter().find(|(m, _)| *m == n).map(|(_, ls)| ls.iter().copied().collect())
}

/// Largest `n` tabulated by full expansion; larger rows use the formulas.
pub const TABLE2_EXPANSION_MAX: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub n: usize,
    pub method: &'static str,
    #[serde(serialize_with = "ser_bigint")]
    pub max: BigInt,
    pub argmax: BTreeSet<usize>,
    pub canonical: BTreeSet<usize>,
    pub printed: Option<BTreeSet<usize>>,
}

pub fn table2_row(n: usize) -> Result<Table2Row> {
    let env = envelope_for(n);
    let (method, label) = if n <= TABLE2_EXPANSION_MAX {
        (HlMethod::Expand, "expansion")
    } else {
        (HlMethod::Formula, "formula")
    };
    let row = hl_argmax_table(n, method, &env)?;
    Ok(Table2Row {
        n,
        method: label,
        max: row.max,
        argmax: row.argmax,
        canonical: row.canonical,
        printed: table2_expected(n),
    })
}

pub fn table2_rows(n_max: usize) -> Result<Vec<Table2Row>> {
    (1..=n_max).into_par_iter().map(table2_row).collect()
}

fn tables(n_max: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &(a, lo, hi) in TABLE1.iter() {
        for n in lo..=hi {
            out.push(Check::eq(key("A", &[n as i64]), format!("n={n}"), a, compute_a(n)?, Basis::Published));
        }
    }
    for row in table2_rows(n_max)? {
        let k = key("Hl-argmax", &[row.n as i64]);
        match &row.printed {
            Some(p) => out.push(Check::eq(
                k,
                format!("n={} via {}", row.n, row.method),
                format!("{p:?}"),
                format!("{:?}", row.canonical),
                Basis::Published,
            )),
            None => out.observe(k, format!("{:?} (max {})", row.canonical, row.max)),
        }
        if row.n <= 2 {
            out.observe(
                key("degenerate-row", &[row.n as i64]),
                "g_0 g_l g_n with repeated indices read as the matching degree-3 g-monomial",
            );
        }
    }
    Ok(out)
}

fn asymptotics_suite(n_max: usize) -> Result<Outcome> {
    let mut out = Outcome::default();
    let c = constants();
    for a in &c.algebraic {
        let r = a.residual();
        out.push(Check::cond(format!("residual/{}", a.name), a.name, "< 1e-12", r, r < 1e-12, Basis::Elementary));
        if let (Some(p), Some(ok)) = (a.printed, a.matches_printed()) {
            out.push(Check::cond(format!("printed/{}", a.name), a.name, p, a.value.to_decimal(12), ok, Basis::Published));
        }
    }
    let id = identity_checks();
    out.push(Check::cond(
        "identity/ratios",
        "m_hat, k_hat, k_hat_prime",
        "1 within 1e-9",
        format!("{} {}", id.ratio_cube, id.ratio_square),
        id.ratios_hold,
        Basis::Published,
    ));
    out.push(Check::cond("identity/constraint", "3m+2k+k'", "1 within 1e-10", id.constraint, id.constraint_holds, Basis::Elementary));
    out.push(Check::cond(
        "identity/perturbed",
        "m_hat + 1e-3",
        "ratios move off 1",
        format!("{} {}", id.perturbed_ratio_cube, id.perturbed_ratio_square),
        id.perturbation_detected,
        Basis::Elementary,
    ));
    out.push(Check::cond(
        "identity/a-over-n",
        "n = 1e2..1e7",
        format!("-> {}", id.a_over_n_limit),
        format!("{:?}", id.a_over_n.last()),
        id.a_over_n_converges,
        Basis::Published,
    ));

    let hi = n_max.max(201) as u64;
    let cubic = error_series(Case::Cubic, 100, hi, 1)?;
    let at100 = &cubic.rows[0];
    out.push(Check::cond(
        "cubic/rho-100",
        "n=100",
        "|1 - rho| < 0.15",
        at100.ratio,
        at100.defect().abs() < 0.15,
        Basis::Published,
    ));
    let slope = defect_slope(&cubic, 200, hi).unwrap_or(f64::NAN);
    out.push(Check::cond(
        "cubic/slope",
        format!("200 <= n <= {hi}"),
        "in [-1.5, -0.5]",
        slope,
        (-1.5..=-0.5).contains(&slope),
        Basis::Published,
    ));
    if let Some(s) = top_half_slope(&cubic) {
        out.observe("cubic/top-half-slope", s);
    }
    let quad = error_series(Case::Quad, hi, hi, 1)?;
    out.push(Check::cond(
        format!("quad/rho-{hi}"),
        format!("n={hi}"),
        "|1 - rho| < 0.01",
        quad.rows[0].ratio,
        quad.rows[0].defect().abs() < 0.01,
        Basis::Published,
    ));

    let t = tribonacci_check(200)?;
    out.push(Check::cond(
        "tribonacci/bounds",
        "m <= 200",
        "no violation",
        format!("{:?} {:?} {:?}", t.a_violation, t.b_violation, t.c_violation),
        t.a_violation.is_none() && t.b_violation.is_none() && t.c_violation.is_none(),
        Basis::Published,
    ));
    out.push(Check::cond("tribonacci/growth", "A_61 / A_60", "alpha within 1e-6", t.growth_error, t.growth_error <= 1e-6, Basis::Elementary));

    for b in beta_l_spot_check(BETA_FORMULA_N, BETA_ORACLE_N, &envelope_for(BETA_ORACLE_N))? {
        out.observe(
            key("beta-l", &[b.l as i64]),
            format!(
                "n={} {:?} ratio {:.5} shifted {:.5} within 5%: {}",
                b.n, b.source, b.ratio, b.shifted_ratio, b.within_tol
            ),
        );
    }
    Ok(out)
}

/// Degrees used for the `beta_l` spot check.
pub const BETA_FORMULA_N: usize = 480;
pub const BETA_ORACLE_N: usize = 80;

/// Map `f_i -> f_{m-i}`, `g_j -> g_{n-j}` on a resultant in the
/// `(m, n)` Sylvester universe.
pub fn reverse_variables(p: &SparsePoly, m: usize, n: usize) -> SparsePoly {
    let u = p.universe();
    let mut out = SparsePoly::zero(u);
    for (mon, c) in p.terms() {
        let e = mon.exponents();
        let mut r = vec![0u32; e.len()];
        for i in 0..=m {
            r[u.f(m - i)] = e[u.f(i)];
        }
        for j in 0..=n {
            r[u.g(n - j)] = e[u.g(j)];
        }
        out.add_term(Monomial::from_exponents(r), c.clone());
    }
    out
}

fn symmetry(n_max: usize) -> Result<Outcome> {
    let env = envelope_for(n_max);
    let specs: Vec<(usize, usize)> = (1..=3).flat_map(|m| (1..=n_max).map(move |n| (m, n))).collect();
    par_outcomes(&specs, |&(m, n)| {
        let mut o = Outcome::default();
        let res = expand_resultant_within(SylvesterSpec::new(m, n)?, &env)?;
        let rev = reverse_variables(&res, m, n);
        let same = rev == res || rev == res.neg();
        o.push(Check::cond(
            key("reciprocal", &[m as i64, n as i64]),
            format!("m={m} n={n}"),
            "Res equals +-Res with f_i -> f_{m-i}, g_j -> g_{n-j}",
            same,
            same,
            Basis::Elementary,
        ));
        if m == 3 {
            for l in 0..=n {
                let a = hl_coefficients_from(&res, l, n);
                let b = hl_coefficients_from(&res, n - l, n);
                let mirrored = a.iter().all(|(idx, v)| b.get(&idx.reversed()).map(|w| w.abs() == v.abs()).unwrap_or(false))
                    && a.len() == b.len();
                o.push(Check::cond(
                    key("Hl-mirror", &[n as i64, l as i64]),
                    format!("n={n} l={l}"),
                    "|H_l(idx)| = |H_{n-l}(reversed idx)|",
                    mirrored,
                    mirrored,
                    Basis::Published,
                ));
            }
        }
        Ok(o)
    })
}

/// Largest degree the conjecture probe expands.
pub const PROBE_ENVELOPE: Envelope = Envelope { max_m: 4, max_n: 12 };

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureProbe {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub full_height: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub binomial_height: BigInt,
    pub equal: bool,
}

/// Height of `Res(f, g)` against `Res(f, g_0 + g_n x^n)`, both expanded.
pub fn conjecture_probe(m: usize, n: usize) -> Result<ConjectureProbe> {
    let spec = SylvesterSpec::new(m, n)?;
    PROBE_ENVELOPE.check(spec)?;
    let full = expand_resultant_within(spec, &PROBE_ENVELOPE)?.height();
    let support: BTreeSet<usize> = [0, n].into_iter().collect();
    let binomial = expand_resultant_restricted(spec, &support, &PROBE_ENVELOPE)?.height();
    Ok(ConjectureProbe {
        m,
        n,
        equal: full == binomial,
        full_height: full,
        binomial_height: binomial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicReport {
    pub case: Case,
    pub n_max: usize,
    #[serde(serialize_with = "ser_bigint_vec")]
    pub heights: Vec<BigInt>,
    /// Degree of the first entry of `heights`.
    pub n_min: usize,
    pub first_violation: Option<usize>,
}

/// Heights for `3 <= n <= n_max` and the first `n` with `H(n) <= H(n-1)`.
/// Cubic heights come from full expansion.
pub fn monotonic_probe(case: Case, n_max: usize) -> Result<MonotonicReport> {
    let ns: Vec<usize> = (3..=n_max).collect();
    let env = envelope_for(n_max);
    let heights: Vec<BigInt> = ns
        .par_iter()
        .map(|&n| match case {
            Case::Quad => Ok(quad_height(n as u64)?.height),
            Case::Cubic => Ok(expand_resultant_within(SylvesterSpec::new(3, n)?, &env)?.height()),
        })
        .collect::<Result<_>>()?;
    let first_violation = heights.windows(2).position(|w| w[1] <= w[0]).map(|i| i + 4);
    Ok(MonotonicReport {
        case,
        n_max,
        heights,
        n_min: 3,
        first_violation,
    })
}
