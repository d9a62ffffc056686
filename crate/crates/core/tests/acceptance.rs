//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use resheight::asymptotics::{
    constants, defect_slope, error_series, identity_checks, tribonacci_check, Case, CONSTRAINT_TOL,
    IDENTITY_TOL,
};
use resheight::cubic::{f_closed, f_det_oracle, f_rec, hl_argmax_table, FIndex, HlMethod, HlSource};
use resheight::quad::{compute_a, quad_height};
use resheight::sylvester::{
    diagonal_monomial, expand_resultant, height_upper_bound, Envelope,
};
use resheight::verify::{
    conjecture_probe, f_indices, h0_identity_checks, table1_expected, table2_expected,
};
use resheight::SylvesterSpec;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn quadratic_exactness() -> Verdict {
    for n in 3..=25usize {
        let res = expand_resultant(SylvesterSpec::new(2, n).unwrap()).map_err(|e| e.to_string())?;
        let q = quad_height(n as u64).unwrap();
        ensure(res.height() == q.height, format!("n={n}: expansion {} vs closed form {}", res.height(), q.height))?;
        let at = res.coefficient_of(&q.extremal_monomial).unwrap().abs();
        ensure(at == q.height, format!("n={n}: extremal monomial carries {at}"))?;
    }
    Ok("n = 3..=25 exact, extremal monomial attains the height".into())
}

fn table1() -> Verdict {
    for n in 3..=99u64 {
        let a = compute_a(n).unwrap();
        ensure(Some(a) == table1_expected(n), format!("n={n}: A_n = {a}, printed {:?}", table1_expected(n)))?;
    }
    Ok("97 entries".into())
}

fn f_three_way() -> Verdict {
    let idx = f_indices(12);
    for &i in &idx {
        let r = f_rec(i);
        ensure(r == f_closed(i), format!("{i}: rec {r} closed {}", f_closed(i)))?;
        let d = f_det_oracle(i).map_err(|e| e.to_string())?;
        ensure(r == d, format!("{i}: rec {r} det {d}"))?;
    }
    for (i, v) in [(FIndex::new(1, 0, 0, 2), 1), (FIndex::new(0, 1, 1, 1), -2), (FIndex::new(0, 0, 3, 0), 1)] {
        ensure(f_rec(i) == BigInt::from(v), format!("printed F{i} = {v}, got {}", f_rec(i)))?;
    }
    Ok(format!("{} indices plus 3 printed values", idx.len()))
}

fn cubic_oracle() -> Verdict {
    let env = Envelope::default();
    let mut expanded = Vec::new();
    for n in 5..=12usize {
        let row = hl_argmax_table(n, HlMethod::Formula, &env).map_err(|e| e.to_string())?;
        if n >= 6 {
            let full = expand_resultant(SylvesterSpec::new(3, n).unwrap()).unwrap().height();
            ensure(full == row.max, format!("n={n}: height {full}, max_l H_l {}", row.max))?;
        }
        let printed = table2_expected(n).unwrap();
        ensure(row.canonical == printed, format!("n={n}: argmax {:?}, printed {:?}", row.canonical, printed))?;
        for h in row.per_l.iter().filter(|h| h.source == HlSource::Expansion) {
            expanded.push(format!("H_{}({n})", h.l));
        }
    }
    ensure(
        hl_argmax_table(5, HlMethod::Formula, &env).unwrap().canonical == BTreeSet::from([1, 2]),
        "n=5 tie",
    )?;
    Ok(format!(
        "n = 6..=12 heights and n = 5..=12 argmax rows; no formula or mirror for {}, read from restricted expansion",
        expanded.join(", ")
    ))
}

fn main_identity() -> Verdict {
    let rows = h0_identity_checks(20);
    for (idx, closed, by_cases, by_table) in &rows {
        ensure(closed == by_cases && closed == by_table, format!("{idx}: {closed} {by_cases} {by_table}"))?;
    }
    Ok(format!("{} tuples with 3m+2k+k' <= 20", rows.len()))
}

fn homogeneity() -> Verdict {
    let mut count = 0;
    for m in 1..=3usize {
        for n in 1..=12usize {
            let spec = SylvesterSpec::new(m, n).unwrap();
            let r = expand_resultant(spec).unwrap();
            let d = r.group_degrees();
            ensure(d.homogeneous && d.f_degree == n as u64 && d.g_degree == m as u64, format!("m={m} n={n}: {d:?}"))?;
            ensure(r.omega_degree_set() == BTreeSet::from([(m * n) as u64]), format!("m={m} n={n}: weights"))?;
            ensure(r.height() <= height_upper_bound(spec), format!("m={m} n={n}: height bound"))?;
            let c = r.coefficient_of(&diagonal_monomial(spec)).unwrap();
            ensure(c == BigInt::from(1), format!("m={m} n={n}: f_0^n g_n^m coefficient {c}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} resultants"))
}

fn asymptotic_constants() -> Verdict {
    let c = constants();
    let mut shown = Vec::new();
    for name in ["alpha_quad", "beta_quad", "alpha_cubic", "beta_cubic", "c"] {
        let a = c.algebraic(name).unwrap();
        ensure(a.residual() < 1e-12, format!("{name}: residual {}", a.residual()))?;
        ensure(a.matches_printed() == Some(true), format!("{name} = {} vs printed {:?}", a.value, a.printed))?;
        shown.push(format!("{name}={}", a.value.to_decimal(11)));
    }
    let id = identity_checks();
    ensure(
        (id.ratio_cube - 1.0).abs() <= IDENTITY_TOL && (id.ratio_square - 1.0).abs() <= IDENTITY_TOL,
        format!("ratios {} {}", id.ratio_cube, id.ratio_square),
    )?;
    ensure((id.constraint - 1.0).abs() <= CONSTRAINT_TOL, format!("3m+2k+k' = {}", id.constraint))?;
    Ok(format!("{}; ratios {:.3e} {:.3e} off 1", shown.join(" "), id.ratio_cube - 1.0, id.ratio_square - 1.0))
}

fn convergence() -> Verdict {
    let cubic = error_series(Case::Cubic, 100, 2000, 1).map_err(|e| e.to_string())?;
    let r100 = &cubic.rows[0];
    ensure(r100.defect().abs() < 0.15, format!("cubic rho(100) = {}", r100.ratio))?;
    let slope = defect_slope(&cubic, 200, 2000).unwrap();
    ensure((-1.5..=-0.5).contains(&slope), format!("slope {slope}"))?;
    let quad = error_series(Case::Quad, 2000, 2000, 1).unwrap();
    ensure(quad.rows[0].defect().abs() < 0.01, format!("quad rho(2000) = {}", quad.rows[0].ratio))?;
    Ok(format!(
        "cubic rho(100)={:.4}, slope {:.3} over n=200..=2000, quad rho(2000)={:.5}",
        r100.ratio, slope, quad.rows[0].ratio
    ))
}

fn tribonacci() -> Verdict {
    let t = tribonacci_check(200).map_err(|e| e.to_string())?;
    ensure(
        t.a_violation.is_none() && t.b_violation.is_none() && t.c_violation.is_none(),
        format!("violations {:?} {:?} {:?}", t.a_violation, t.b_violation, t.c_violation),
    )?;
    Ok(format!("m <= 200; A_61/A_60 off alpha by {:.2e}", t.growth_error))
}

fn conjecture() -> Verdict {
    for n in 3..=12 {
        let p = conjecture_probe(2, n).map_err(|e| e.to_string())?;
        ensure(p.equal, format!("m=2 n={n}: {} vs {}", p.full_height, p.binomial_height))?;
    }
    let mut status = Vec::new();
    for n in 1..=12 {
        let p = conjecture_probe(3, n).map_err(|e| e.to_string())?;
        status.push(format!("{n}:{}", if p.equal { "=" } else { "<" }));
    }
    Ok(format!("m=2 equal for n=3..=12; m=3 observed [{}]", status.join(" ")))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("quadratic exactness", quadratic_exactness),
        ("A_n table", table1),
        ("F three-way agreement", f_three_way),
        ("cubic oracle equivalence", cubic_oracle),
        ("H_0 closed form identity", main_identity),
        ("homogeneity", homogeneity),
        ("asymptotic constants", asymptotic_constants),
        ("convergence", convergence),
        ("tribonacci bounds", tribonacci),
        ("conjecture probe", conjecture),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = f();
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
