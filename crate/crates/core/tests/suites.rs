use resheight::verify::*;
use resheight::Error;

#[test]
fn every_suite_passes_at_defaults() {
    for s in SUITES {
        let r = run_suite(s, &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{s}: {:?}", r.failures);
        assert!(r.cases > 0, "{s}");
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = SuiteOptions { n_max: Some(9) };
    for s in ["tables", "homogeneity", "cubic-oracle"] {
        let a = serde_json::to_string(&run_suite(s, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(s, &opts).unwrap()).unwrap();
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(run_suite("speed", &SuiteOptions::default()), Err(Error::UnknownSuite(_))));
    assert!(default_n_max("speed").is_err());
}

#[test]
fn oversized_envelope_is_a_feasibility_error() {
    let r = run_suite("f-sweep", &SuiteOptions { n_max: Some(13) });
    assert!(matches!(r, Err(Error::Feasibility { .. })), "{r:?}");
}

#[test]
fn table2_rows_through_nineteen() {
    let rows = table2_rows(19).unwrap();
    for r in &rows {
        assert_eq!(Some(&r.canonical), r.printed.as_ref(), "n = {}", r.n);
    }
    assert_eq!(rows[11].method, "expansion");
    assert_eq!(rows[12].method, "formula");
}

#[test]
fn conjecture_probe_envelope() {
    let p = conjecture_probe(3, 10).unwrap();
    assert!(!p.equal);
    assert!(p.full_height > p.binomial_height);
    assert!(matches!(conjecture_probe(2, 13), Err(Error::Feasibility { .. })));
}

#[test]
fn monotonic_cubic_to_twelve() {
    let r = monotonic_probe(resheight::asymptotics::Case::Cubic, 12).unwrap();
    assert_eq!(r.first_violation, None);
    assert_eq!(r.heights.len(), 10);
}
