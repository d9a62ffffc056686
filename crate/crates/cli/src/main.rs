use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use resheight::asymptotics::{self, Case};
use resheight::cubic::{self, HlMethod};
use resheight::quad;
use resheight::sylvester::{self, Engine, Envelope};
use resheight::verify::{self, SuiteOptions};
use resheight::{Error, SylvesterSpec};

#[derive(Parser)]
#[command(name = "resheight", version, about = "Heights of generic Sylvester resultants")]
struct Cli {
    /// Output format; tables and asym default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    out: Option<Format>,

    /// Suppress progress and summary lines on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand Res(f, g) for generic f of degree m and g of degree n.
    Expand {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "laplace")]
        engine: EngineArg,
        #[command(flatten)]
        env: NMax,
    },
    /// Closed-form height for quadratic f.
    Quad {
        #[arg(long)]
        n: u64,
        /// Emit n P(z) for every z instead of the height.
        #[arg(long)]
        profile: bool,
    },
    /// H_l(n) for cubic f.
    Cubic {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "all_l")]
        l: Option<usize>,
        #[arg(long)]
        all_l: bool,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        #[command(flatten)]
        env: NMax,
    },
    /// Reproduce the A_n table or the maximal H_l table.
    Tables {
        #[command(subcommand)]
        which: TableCmd,
    },
    /// Exact heights against the leading asymptotic term.
    Asym {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 3)]
        n_min: u64,
        #[arg(long, default_value_t = 2000, env = "RESHEIGHT_NMAX")]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
    },
    /// Algebraic constants and the identity checks.
    Constants,
    /// Run verification suites; all of them when none is named.
    Verify {
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Degree envelope for every selected suite (default: per suite).
        #[arg(long, env = "RESHEIGHT_NMAX")]
        n_max: Option<usize>,
    },
    /// Full against binomial-g heights, reported without judgement.
    Conjecture {
        #[arg(long = "m", default_values_t = [1usize, 2, 3])]
        ms: Vec<usize>,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

#[derive(Args)]
struct NMax {
    /// Largest n the expansion engine will accept.
    #[arg(long, env = "RESHEIGHT_NMAX")]
    n_max: Option<usize>,
}

impl NMax {
    fn envelope(&self) -> Envelope {
        match self.n_max {
            Some(n) => Envelope::with_max_n(n),
            None => Envelope::default(),
        }
    }
}

#[derive(Subcommand)]
enum TableCmd {
    /// A_n for 3 <= n <= max, grouped by value.
    An {
        #[arg(long, default_value_t = 99)]
        max: u64,
    },
    /// The maximizing l for 1 <= n <= max.
    Hl {
        #[arg(long, default_value_t = 19)]
        max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Laplace,
    Naive,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Formula,
    Expand,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Quad,
    Cubic,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

type Res = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Feasibility { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Res {
    let json_default = cli.out.unwrap_or(Format::Json);
    let csv_default = cli.out.unwrap_or(Format::Csv);
    match &cli.cmd {
        Cmd::Expand { m, n, engine, env } => expand(*m, *n, *engine, &env.envelope(), json_default),
        Cmd::Quad { n, profile } => quad_cmd(*n, *profile, json_default),
        Cmd::Cubic {
            n,
            l,
            all_l,
            method,
            env,
        } => cubic_cmd(*n, *l, *all_l, *method, &env.envelope(), json_default),
        Cmd::Tables { which } => match which {
            TableCmd::An { max } => table_an(*max, csv_default),
            TableCmd::Hl { max } => table_hl(*max, csv_default, cli.quiet),
        },
        Cmd::Asym {
            case,
            n_min,
            n_max,
            step,
        } => asym(*case, *n_min, *n_max, *step, csv_default),
        Cmd::Constants => constants_cmd(json_default),
        Cmd::Verify { suites, n_max } => verify_cmd(suites, *n_max, json_default, cli.quiet),
        Cmd::Conjecture { ms, n_max } => conjecture(ms, *n_max, json_default),
    }
}

fn print_json(v: &impl serde::Serialize) -> Res {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

fn expand(m: usize, n: usize, engine: EngineArg, env: &Envelope, fmt: Format) -> Res {
    let spec = SylvesterSpec::new(m, n)?;
    let engine = match engine {
        EngineArg::Laplace => Engine::Laplace,
        EngineArg::Naive => Engine::Naive,
    };
    let res = sylvester::expand_with(spec, engine, env)?;
    match fmt {
        Format::Json => print_json(&json!({
            "m": m,
            "n": n,
            "height": res.height().to_string(),
            "terms": res.to_json_terms(),
        })),
        Format::Csv => {
            let u = res.universe();
            let mut w = csv_writer();
            let mut header: Vec<String> = (0..u.arity()).map(|s| u.var_name(s)).collect();
            header.push("coeff".into());
            w.write_record(&header)?;
            for (mon, c) in res.terms() {
                let mut row: Vec<String> = mon.exponents().iter().map(|e| e.to_string()).collect();
                row.push(c.to_string());
                w.write_record(&row)?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn quad_cmd(n: u64, profile: bool, fmt: Format) -> Res {
    if profile {
        let p = quad::p_profile(n)?;
        return match fmt {
            Format::Json => print_json(&p),
            Format::Csv => {
                let mut w = csv_writer();
                w.write_record(["z", "n_times_p"])?;
                for (z, v) in p.scaled_values.iter().enumerate() {
                    w.write_record([z.to_string(), v.to_string()])?;
                }
                w.flush()?;
                Ok(())
            }
        };
    }
    let r = quad::quad_height(n)?;
    match fmt {
        Format::Json => print_json(&r),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["n", "a_n", "height", "extremal"])?;
            w.write_record([r.n.to_string(), r.a_n.to_string(), r.height.to_string(), r.extremal_display])?;
            w.flush()?;
            Ok(())
        }
    }
}

fn cubic_cmd(n: usize, l: Option<usize>, all_l: bool, method: MethodArg, env: &Envelope, fmt: Format) -> Res {
    let method = match method {
        MethodArg::Formula => HlMethod::Formula,
        MethodArg::Expand => HlMethod::Expand,
    };
    let rows = match (l, all_l) {
        (Some(l), _) => match method {
            HlMethod::Formula => vec![cubic::hl_max(l, n, env)?],
            HlMethod::Expand => {
                if l > n {
                    return Err(Error::Argument(format!("l = {l} exceeds n = {n}")).into());
                }
                vec![cubic::hl_max_oracle(l, n, env)?]
            }
        },
        (None, true) => cubic::hl_all(n, method, env)?,
        (None, false) => vec![cubic::hl_max(0, n, env)?],
    };
    match fmt {
        Format::Json => print_json(&rows),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["l", "n", "value", "source", "argmax"])?;
            for h in &rows {
                let argmax: Vec<String> = h.argmax.iter().map(|i| i.to_string()).collect();
                w.write_record([
                    h.l.to_string(),
                    h.n.to_string(),
                    h.value.to_string(),
                    format!("{:?}", h.source).to_lowercase(),
                    argmax.join(";"),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn table_an(max: u64, fmt: Format) -> Res {
    let mut groups: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for n in 3..=max {
        groups.entry(quad::compute_a(n)?).or_default().push(n);
    }
    match fmt {
        Format::Json => {
            let rows: Vec<_> = groups.iter().map(|(a, ns)| json!({"a_n": a, "n": ns})).collect();
            print_json(&rows)
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["A_n", "n"])?;
            for (a, ns) in &groups {
                let list: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                w.write_record([a.to_string(), list.join(" ")])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn join_set(s: &std::collections::BTreeSet<usize>) -> String {
    let v: Vec<String> = s.iter().map(|l| l.to_string()).collect();
    v.join(" ")
}

fn table_hl(max: usize, fmt: Format, quiet: bool) -> Res {
    let rows = verify::table2_rows(max)?;
    let mismatches = rows
        .iter()
        .filter(|r| r.printed.as_ref().is_some_and(|p| *p != r.canonical))
        .count();
    match fmt {
        Format::Json => print_json(&rows)?,
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["n", "max_at_l", "all_l", "height", "method", "printed"])?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    join_set(&r.canonical),
                    join_set(&r.argmax),
                    r.max.to_string(),
                    r.method.to_string(),
                    r.printed.as_ref().map(join_set).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    if !quiet {
        eprintln!("{} rows, {} differ from the printed table", rows.len(), mismatches);
    }
    if mismatches > 0 {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn asym(case: CaseArg, n_min: u64, n_max: u64, step: u64, fmt: Format) -> Res {
    let case = match case {
        CaseArg::Quad => Case::Quad,
        CaseArg::Cubic => Case::Cubic,
    };
    let n_min = match case {
        Case::Quad => n_min.max(3),
        Case::Cubic => n_min.max(1),
    };
    let s = asymptotics::error_series(case, n_min, n_max, step)?;
    match fmt {
        Format::Json => print_json(&s),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["n", "exact", "ln_estimate", "ratio"])?;
            for r in &s.rows {
                w.write_record([
                    r.n.to_string(),
                    r.exact.to_string(),
                    format!("{:.12}", r.ln_estimate),
                    format!("{:.12}", r.ratio),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn constants_cmd(fmt: Format) -> Res {
    let c = asymptotics::constants();
    let id = asymptotics::identity_checks();
    match fmt {
        Format::Json => print_json(&json!({"constants": c, "identities": id})),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["name", "value", "printed", "matches_printed"])?;
            for a in &c.algebraic {
                w.write_record([
                    a.name.to_string(),
                    a.value.to_decimal(30),
                    a.printed.unwrap_or("").to_string(),
                    a.matches_printed().map(|b| b.to_string()).unwrap_or_default(),
                ])?;
            }
            for r in &c.radical {
                w.write_record([r.name.to_string(), r.value.to_decimal(30), String::new(), String::new()])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn verify_cmd(suites: &[String], n_max: Option<usize>, fmt: Format, quiet: bool) -> Res {
    let names: Vec<String> = if suites.is_empty() {
        verify::SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    let opts = SuiteOptions { n_max };
    let mut reports = Vec::new();
    for name in &names {
        let r = verify::run_suite(name, &opts)?;
        if !quiet {
            eprintln!(
                "{}: {} cases, {} failures, {:.2}s",
                r.suite,
                r.cases,
                r.failures.len(),
                r.wall_time.as_secs_f64()
            );
        }
        reports.push(r);
    }
    match fmt {
        Format::Json => print_json(&reports)?,
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["suite", "case", "inputs", "expected", "actual", "basis"])?;
            for r in &reports {
                for f in &r.failures {
                    w.write_record([
                        r.suite.as_str(),
                        &f.case,
                        &f.inputs,
                        &f.expected,
                        &f.actual,
                        &format!("{:?}", f.basis).to_lowercase(),
                    ])?;
                }
            }
            w.flush()?;
        }
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn conjecture(ms: &[usize], n_max: usize, fmt: Format) -> Res {
    let mut rows = Vec::new();
    for &m in ms {
        for n in 1..=n_max {
            rows.push(verify::conjecture_probe(m, n)?);
        }
    }
    match fmt {
        Format::Json => print_json(&rows),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["m", "n", "full_height", "binomial_height", "equal"])?;
            for r in &rows {
                w.write_record([
                    r.m.to_string(),
                    r.n.to_string(),
                    r.full_height.to_string(),
                    r.binomial_height.to_string(),
                    r.equal.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}
