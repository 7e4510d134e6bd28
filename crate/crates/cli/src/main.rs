//! `thetaprod`: expand theta functions, verify product identities and
//! representation-count relations, count and scan.
//!
//! Exit status is 0 when every requested check passes, 1 on a mathematical
//! mismatch and 2 on a usage or input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use thetaprod::catalog::RelationCatalog;
use thetaprod::corollary::{verify_corollary, CorollaryId};
use thetaprod::identity::{parse_signs, thm1_verify, thm2_verify};
use thetaprod::repcount::{
    classical_check, count_enumerate, count_series, nonrep_scan, verify_relation, ClassicalId, CountCache, Status,
};
use thetaprod::suite::{verify_all_with, SuiteConfig};
use thetaprod::theta::{theta_expand, theta_special};
use thetaprod::{HalfExp, IdentityReport, MixedSumSpec, Sign, SpecialTheta, ThetaArg, Thm1Params, Thm2Params};

#[derive(Parser)]
#[command(name = "thetaprod", version, about = "Verify theta-product identities and representation-count relations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// JSON file of extra relations, appended to the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a theta function through q^order.
    Expand(ExpandArgs),
    /// Check an identity, relation or classical fact.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Count representations by a ternary form.
    Count(CountArgs),
    /// List the numbers in a residue class that a form represents.
    Scan(ScanArgs),
}

#[derive(Args, Serialize)]
struct ExpandArgs {
    /// EPS,G,H for f(eps q^G, eps q^H), whole powers of q.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["name", "scale"], required_unless_present = "name")]
    theta: Option<String>,
    /// phi, psi, f, X or Y.
    #[arg(long, requires = "scale")]
    name: Option<String>,
    #[arg(long)]
    scale: Option<i64>,
    #[arg(long)]
    order: i64,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "target", rename_all = "snake_case")]
enum VerifyCmd {
    /// The three-factor decomposition at explicit parameters.
    Thm1(Thm1Args),
    /// The two-factor decomposition at explicit parameters.
    Thm2(Thm2Args),
    /// A corollary: cor1..cor4 with --k --r, or clp2.1..clp2.8 with --m.
    Corollary(CorollaryArgs),
    /// A catalog relation, or every relation in a group such as Athm1.
    Relation(RelationArgs),
    /// A classical representation fact.
    Classical(ClassicalArgs),
    /// Every catalog and grid.
    All(AllArgs),
}

#[derive(Args, Serialize)]
struct Thm1Args {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    r: i64,
    #[arg(long, allow_hyphen_values = true)]
    g: i64,
    #[arg(long, allow_hyphen_values = true)]
    h: i64,
    #[arg(long, allow_hyphen_values = true)]
    u: i64,
    #[arg(long, allow_hyphen_values = true)]
    v: i64,
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    #[arg(long, allow_hyphen_values = true)]
    j: i64,
    /// E1,E2,E3 with each 1 or -1.
    #[arg(long, allow_hyphen_values = true, default_value = "1,1,1")]
    eps: String,
    #[arg(long, default_value_t = 100)]
    order: i64,
}

#[derive(Args, Serialize)]
struct Thm2Args {
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    #[arg(long, allow_hyphen_values = true)]
    r: i64,
    #[arg(long, allow_hyphen_values = true)]
    s: i64,
    #[arg(long, allow_hyphen_values = true)]
    t: i64,
    #[arg(long, allow_hyphen_values = true)]
    i: i64,
    #[arg(long, allow_hyphen_values = true)]
    j: i64,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    eps: String,
    #[arg(long, default_value_t = 100)]
    order: i64,
}

#[derive(Args, Serialize)]
struct CorollaryArgs {
    #[arg(long)]
    id: String,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, default_value_t = 100)]
    order: i64,
}

#[derive(Args, Serialize)]
struct RelationArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 1000)]
    nmax: i64,
}

#[derive(Args, Serialize)]
struct ClassicalArgs {
    #[arg(long)]
    id: String,
    /// Defaults to the bound used by `verify all`.
    #[arg(long)]
    nmax: Option<i64>,
}

#[derive(Args, Serialize)]
struct AllArgs {
    #[arg(long, default_value_t = 150)]
    order: i64,
    #[arg(long, default_value_t = 1000)]
    nmax: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Method {
    Enumerate,
    Series,
    Both,
}

#[derive(Args, Serialize)]
struct CountArgs {
    /// e.g. "rT(1,1,1)"
    #[arg(long)]
    form: String,
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    n: Option<i64>,
    /// A..B, both ends included.
    #[arg(long)]
    range: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Enumerate)]
    method: Method,
}

#[derive(Args, Serialize)]
struct ScanArgs {
    #[arg(long)]
    form: String,
    #[arg(long)]
    modulus: i64,
    #[arg(long)]
    residue: i64,
    #[arg(long)]
    nmax: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status3 {
    Pass,
    Fail,
    Error,
}

struct Outcome {
    status: Status3,
    payload: Value,
    text: String,
}

impl Outcome {
    fn new(passed: bool, payload: Value, text: String) -> Self {
        Outcome { status: if passed { Status3::Pass } else { Status3::Fail }, payload, text }
    }
}

#[derive(Serialize)]
struct Record<'a> {
    cmd: &'a str,
    params: Value,
    status: Status3,
    payload: &'a Value,
    elapsed_ms: f64,
}

type Res<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Integral exponents as numbers, others as "p/2".
fn exp_json(e: HalfExp) -> Value {
    if e.is_whole() {
        json!(e.0 / 2)
    } else {
        json!(format!("{}/2", e.0))
    }
}

fn report_json(r: &IdentityReport<i64>) -> Value {
    json!({
        "equal": r.equal,
        "checked_through": exp_json(r.checked_through),
        "mismatch": r.mismatch.map(|m| json!({"exp": exp_json(m.exp), "lhs": m.lhs, "rhs": m.rhs})),
        "negative_support": r.negative_support.map(exp_json),
        "rhs_term_count": r.rhs_term_count,
    })
}

fn report_outcome(label: String, r: &IdentityReport<i64>) -> Outcome {
    let text = format!("{label}\n  {} right-hand terms; {}\n", r.rhs_term_count, r.summary());
    Outcome::new(r.passed(), report_json(r), text)
}

fn cmd_expand(a: &ExpandArgs) -> Res<Outcome> {
    let arg = match (&a.theta, &a.name) {
        (Some(t), _) => {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            let [e, g, h] = parts[..] else {
                return Err(format!("--theta expects EPS,G,H, got `{t}`"));
            };
            let eps: Sign = e.parse().map_err(err)?;
            let g: i64 = g.parse().map_err(|_| format!("bad exponent `{g}`"))?;
            let h: i64 = h.parse().map_err(|_| format!("bad exponent `{h}`"))?;
            ThetaArg::whole(eps, g, h)
        }
        (None, Some(name)) => {
            let name: SpecialTheta = name.parse().map_err(err)?;
            theta_special(name, a.scale.unwrap_or(1)).map_err(err)?
        }
        (None, None) => return Err("give --theta or --name".into()),
    };
    let s = theta_expand::<i64>(arg, HalfExp::whole(a.order)).map_err(err)?;
    let terms: Vec<Value> = s.terms().map(|(e, c)| json!([exp_json(e), c])).collect();
    let mut text = format!("{arg} through q^{}\n", a.order);
    if terms.is_empty() {
        text.push_str("  (zero series)\n");
    }
    for (e, c) in s.terms() {
        let _ = writeln!(text, "  q^{e:<6} {c}");
    }
    Ok(Outcome::new(true, json!({"arg": arg.to_string(), "order": a.order, "coefficients": terms}), text))
}

fn cmd_thm1(a: &Thm1Args) -> Res<Outcome> {
    let p = Thm1Params::new(a.k, a.r, a.g, a.h, a.u, a.v, a.i, a.j, parse_signs(&a.eps).map_err(err)?);
    let r = thm1_verify::<i64>(&p, HalfExp::whole(a.order)).map_err(err)?;
    Ok(report_outcome(p.to_string(), &r))
}

fn cmd_thm2(a: &Thm2Args) -> Res<Outcome> {
    let eps: Sign = a.eps.parse().map_err(err)?;
    let p = Thm2Params { k: a.k, r: a.r, s: a.s, t: a.t, i: a.i, j: a.j, eps };
    let r = thm2_verify::<i64>(&p, HalfExp::whole(a.order)).map_err(err)?;
    Ok(report_outcome(p.to_string(), &r))
}

fn cmd_corollary(a: &CorollaryArgs) -> Res<Outcome> {
    let id: CorollaryId = a.id.parse().map_err(err)?;
    let c = id.with(a.k, a.r, a.m).map_err(err)?;
    let r = verify_corollary(c, HalfExp::whole(a.order)).map_err(err)?;
    let mut text = format!("{c}\n  displayed identity: {}\n", r.displayed.summary());
    for s in &r.steps {
        let _ = writeln!(text, "  {:<13} {}  {}", s.step, if s.passed { "ok  " } else { "FAIL" }, s.detail);
    }
    let steps: Vec<Value> =
        r.steps.iter().map(|s| json!({"step": s.step, "passed": s.passed, "detail": s.detail})).collect();
    let payload = json!({"corollary": c.to_string(), "displayed": report_json(&r.displayed), "steps": steps});
    Ok(Outcome::new(r.passed(), payload, text))
}

fn load_relations(extra: &Option<PathBuf>) -> Res<RelationCatalog> {
    let mut cat = RelationCatalog::builtin();
    if let Some(path) = extra {
        cat.extend_from_file(path).map_err(err)?;
    }
    Ok(cat)
}

fn cmd_relation(a: &RelationArgs, catalog: &Option<PathBuf>) -> Res<Outcome> {
    let cat = load_relations(catalog)?;
    let rels = cat.select(&a.id);
    if rels.is_empty() {
        return Err(format!("no relation `{}` in the catalog", a.id));
    }
    let mut cache = CountCache::new();
    let mut passed = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for rel in rels {
        let bad = verify_relation(rel, a.nmax, &mut cache);
        let ok = bad.is_empty();
        passed &= ok || rel.status == Status::Empirical;
        let smallest = bad.first().map(|c| json!({"n": c.n, "lhs": c.lhs, "rhs": c.rhs}));
        let _ = writeln!(text, "{:<14} {:<9} {}  {}", rel.id, rel.status, if ok { "pass" } else { "FAIL" }, rel);
        if let Some(c) = bad.first() {
            let _ =
                writeln!(text, "{:<25}{} counterexamples; smallest N={}: {} vs {}", "", bad.len(), c.n, c.lhs, c.rhs);
        }
        rows.push(json!({
            "id": rel.id,
            "relation": rel.to_string(),
            "status": rel.status,
            "passed": ok,
            "counterexamples": bad.len(),
            "smallest_counterexample": smallest,
        }));
    }
    Ok(Outcome::new(passed, json!({"nmax": a.nmax, "relations": rows}), text))
}

fn cmd_classical(a: &ClassicalArgs) -> Res<Outcome> {
    let id: ClassicalId = a.id.parse().map_err(err)?;
    let nmax = a.nmax.unwrap_or(id.default_nmax());
    if nmax < 0 {
        return Err("--nmax must be nonnegative".into());
    }
    let r = classical_check(id, nmax);
    let mut text =
        format!("{id} through N={nmax}: {} forms checked, {} discrepancies\n", r.forms_checked, r.discrepancies.len());
    for d in &r.discrepancies {
        let _ = writeln!(text, "  {} at N={} (count {})", d.form, d.n, d.count);
    }
    Ok(Outcome::new(r.passed(), serde_json::to_value(&r).map_err(err)?, text))
}

fn cmd_all(a: &AllArgs, catalog: &Option<PathBuf>) -> Res<Outcome> {
    let relations = load_relations(catalog)?;
    let cfg = SuiteConfig { order: a.order, nmax: a.nmax, ..SuiteConfig::default() };
    let report = verify_all_with(&cfg, &relations, &thetaprod::catalog::IdentityCatalog::builtin());
    let mut text = String::new();
    for r in &report.rows {
        let mark = match (r.passed, r.status) {
            (true, _) => "pass",
            (false, Status::Pinned) => "FAIL",
            (false, Status::Empirical) => "info",
        };
        let _ = writeln!(text, "{:<10} {:<4} {:<44} {}", r.group, mark, r.id, r.detail);
    }
    let failed = report.failures().count();
    let informational = report.rows.iter().filter(|r| !r.passed && r.status == Status::Empirical).count();
    let _ = writeln!(
        text,
        "{} checks, {failed} failed, {informational} empirical relations do not hold",
        report.rows.len()
    );
    Ok(Outcome::new(report.passed(), serde_json::to_value(&report).map_err(err)?, text))
}

fn parse_range(s: &str) -> Res<(i64, i64)> {
    let bad = || format!("--range expects A..B, got `{s}`");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn cmd_count(a: &CountArgs) -> Res<Outcome> {
    let spec: MixedSumSpec = a.form.parse().map_err(err)?;
    let (lo, hi) = match (a.n, &a.range) {
        (Some(n), _) => (n, n),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => return Err("give --n or --range".into()),
    };
    let series = match a.method {
        Method::Enumerate => None,
        _ => Some(count_series::<i64>(&spec, hi.max(0)).map_err(err)?),
    };
    let by_series = |n: i64| match &series {
        Some(s) if n >= 0 => s.coeff(HalfExp::whole(n)).unwrap_or(0),
        _ => 0,
    };
    let mut agree = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    for n in lo..=hi {
        let row = match a.method {
            Method::Enumerate => {
                let c = count_enumerate(&spec, n);
                let _ = writeln!(text, "{spec} N={n}: {c}");
                json!({"n": n, "count": c})
            }
            Method::Series => {
                let c = by_series(n);
                let _ = writeln!(text, "{spec} N={n}: {c}");
                json!({"n": n, "count": c})
            }
            Method::Both => {
                let (e, s) = (count_enumerate(&spec, n), by_series(n));
                agree &= e == s;
                let note = if e == s { "methods agree" } else { "METHODS DISAGREE" };
                let _ = writeln!(text, "{spec} N={n}: {e} (series {s}, {note})");
                json!({"n": n, "count": e, "series": s, "agree": e == s})
            }
        };
        rows.push(row);
    }
    Ok(Outcome::new(agree, json!({"form": spec.to_string(), "method": a.method, "values": rows}), text))
}

fn cmd_scan(a: &ScanArgs) -> Res<Outcome> {
    let spec: MixedSumSpec = a.form.parse().map_err(err)?;
    let hits = nonrep_scan(&spec, a.modulus, a.residue, a.nmax).map_err(err)?;
    let text = match hits.first() {
        None => format!("{spec}: nothing in {}N+{} up to {} is represented\n", a.modulus, a.residue, a.nmax),
        Some(n) => format!(
            "{spec}: {} represented in {}N+{} up to {}, smallest {n}\n  {hits:?}\n",
            hits.len(),
            a.modulus,
            a.residue,
            a.nmax
        ),
    };
    let payload = json!({"form": spec.to_string(), "modulus": a.modulus, "residue": a.residue, "nmax": a.nmax, "represented": hits});
    Ok(Outcome::new(hits.is_empty(), payload, text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (cmd, params, result) = match &cli.command {
        Command::Expand(a) => ("expand", json!(a), cmd_expand(a)),
        Command::Count(a) => ("count", json!(a), cmd_count(a)),
        Command::Scan(a) => ("scan", json!(a), cmd_scan(a)),
        Command::Verify(v) => {
            let params = json!(v);
            let (cmd, result) = match v {
                VerifyCmd::Thm1(a) => ("verify thm1", cmd_thm1(a)),
                VerifyCmd::Thm2(a) => ("verify thm2", cmd_thm2(a)),
                VerifyCmd::Corollary(a) => ("verify corollary", cmd_corollary(a)),
                VerifyCmd::Relation(a) => ("verify relation", cmd_relation(a, &cli.catalog)),
                VerifyCmd::Classical(a) => ("verify classical", cmd_classical(a)),
                VerifyCmd::All(a) => ("verify all", cmd_all(a, &cli.catalog)),
            };
            (cmd, params, result)
        }
    };
    let outcome = result.unwrap_or_else(|e| Outcome {
        status: Status3::Error,
        payload: json!({"error": e}),
        text: format!("error: {e}\n"),
    });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    match cli.format {
        Format::Text => {
            let out = outcome.text.trim_end();
            if outcome.status == Status3::Error {
                eprintln!("{out}");
            } else {
                println!("{out}");
                println!("{}", if outcome.status == Status3::Pass { "PASS" } else { "FAIL" });
            }
        }
        Format::Json => {
            let rec = Record { cmd, params, status: outcome.status, payload: &outcome.payload, elapsed_ms };
            println!("{}", serde_json::to_string(&rec).expect("records serialize"));
        }
    }
    ExitCode::from(match outcome.status {
        Status3::Pass => 0,
        Status3::Fail => 1,
        Status3::Error => 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_render_as_integers_or_halves() {
        assert_eq!(exp_json(HalfExp(6)), json!(3));
        assert_eq!(exp_json(HalfExp(-2)), json!(-1));
        assert_eq!(exp_json(HalfExp(7)), json!("7/2"));
        assert_eq!(exp_json(HalfExp(-1)), json!("-1/2"));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..9"), Ok((3, 9)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("3-9").is_err());
    }
}
