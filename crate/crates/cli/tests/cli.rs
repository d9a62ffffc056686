use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resheight"))
        .args(args)
        .env_remove("RESHEIGHT_NMAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_json_header_and_terms() {
    let o = run(&["expand", "--m", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["n"], 3);
    assert_eq!(v["height"], "3");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 13);
    assert!(terms.iter().all(|t| t["coeff"].is_string() && t["exps"].as_array().unwrap().len() == 7));
}

#[test]
fn engines_print_the_same_polynomial() {
    let a = run(&["expand", "--m", "3", "--n", "4", "--engine", "laplace"]);
    let b = run(&["expand", "--m", "3", "--n", "4", "--engine", "naive"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn expand_csv() {
    let o = run(&["--out", "csv", "expand", "--m", "1", "--n", "2"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("f0,f1,g0,g1,g2,coeff"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn quad_outputs() {
    let o = run(&["quad", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["a_n"], 1);
    assert_eq!(v["height"], "3");
    assert_eq!(v["extremal_display"], "f0*f1*f2*g0*g3");
    let o = run(&["quad", "--n", "5", "--profile", "--out", "csv"]);
    assert_eq!(stdout(&o), "z,n_times_p\n0,1\n1,5\n2,5\n");
}

#[test]
fn cubic_all_l() {
    let o = run(&["cubic", "--n", "9", "--all-l", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 11);
    assert!(s.contains("\n3,9,63,formula,"));
    let o = run(&["cubic", "--n", "8", "--l", "4", "--method", "expand"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["source"], "Expansion");
}

#[test]
fn tables() {
    let o = run(&["tables", "an", "--max", "12"]);
    assert_eq!(stdout(&o), "A_n,n\n1,3 4\n2,5 6 7 8\n3,9 10 11 12\n");
    let o = run(&["--quiet", "tables", "hl", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("n,max_at_l,all_l,height,method,printed\n"));
    assert!(s.contains("\n5,1 2,1 2 3 4,7,expansion,1 2\n"));
}

#[test]
fn asym_csv() {
    let o = run(&["asym", "--case", "cubic", "--n-min", "100", "--n-max", "102"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 4);
    assert!(s.starts_with("n,exact,ln_estimate,ratio\n100,"));
}

#[test]
fn constants_json() {
    let o = run(&["constants"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["constants"]["algebraic"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["alpha_quad", "beta_quad", "alpha_cubic", "beta_cubic", "c"]);
    assert!(v["constants"]["algebraic"][4]["value"].as_str().unwrap().starts_with("0.61841992231"));
    assert_eq!(v["identities"]["ratios_hold"], true);
}

#[test]
fn verify_and_exit_codes() {
    let o = run(&["--quiet", "verify", "--suite", "homogeneity", "--suite", "f-sweep", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(o.stderr.is_empty());

    let again = run(&["--quiet", "verify", "--suite", "homogeneity", "--suite", "f-sweep", "--n-max", "6"]);
    assert_eq!(o.stdout, again.stdout);

    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "--m", "3", "--n", "31"]).status.code(), Some(3));
    assert_eq!(run(&["expand", "--m", "0", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["conjecture", "--m", "3", "--n-max", "13"]).status.code(), Some(3));
}

#[test]
fn env_override_widens_the_envelope() {
    let o = Command::new(env!("CARGO_BIN_EXE_resheight"))
        .args(["expand", "--m", "1", "--n", "31"])
        .env("RESHEIGHT_NMAX", "40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn conjecture_rows() {
    let o = run(&["--out", "csv", "conjecture", "--m", "2", "--n-max", "5"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 6);
    assert!(s.contains("\n2,5,5,5,true\n"));
}
