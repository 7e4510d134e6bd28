//! One pass/fail line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use thetaprod::catalog::{IdentityCatalog, RelationCatalog};
use thetaprod::identity::admissible_pairs;
use thetaprod::repcount::Status;
use thetaprod::suite::{verify_all, SuiteConfig, SuiteReport, SuiteRow};
use thetaprod::theta::{jacobi_triple_product, theta_expand};
use thetaprod::{HalfExp, Series, Sign, ThetaArg};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_rows<'a>(rows: impl Iterator<Item = &'a SuiteRow>) -> Outcome {
    let rows: Vec<_> = rows.collect();
    let bad: Vec<_> = rows.iter().filter(|r| r.fails_run()).collect();
    match bad.first() {
        None if rows.is_empty() => Outcome { passed: false, detail: "no checks ran".into() },
        None => Outcome { passed: true, detail: format!("{} checks", rows.len()) },
        Some(r) => Outcome {
            passed: false,
            detail: format!("{} failing, first {} {}: {}", bad.len(), r.group, r.id, r.detail),
        },
    }
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Outcome { passed: a.passed && b.passed, detail: format!("{}; {}", a.detail, b.detail) }
}

fn require(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let hi = HalfExp(600);
    let mut n = 0;
    for eps in [Sign::Plus, Sign::Minus] {
        for a in 0..=24 {
            for b in a..=24 {
                if a + b == 0 {
                    continue;
                }
                let arg = ThetaArg::new(eps, a, b);
                let x: Series = theta_expand(arg, hi).unwrap();
                let y: Series = jacobi_triple_product(arg, hi).unwrap();
                if !x.compare(&y, hi).unwrap().is_equal() {
                    return require(false, format!("{arg} differs"));
                }
                n += 1;
            }
        }
    }
    let t = start.elapsed();
    require(t < Duration::from_secs(10), format!("{n} arguments agree in {:.2}s", t.as_secs_f64()))
}

fn criterion_3(report: &SuiteReport) -> Outcome {
    let rows = from_rows(report.group("thm1"));
    let grid_ids: Vec<_> = report.group("thm1").map(|r| r.id.clone()).collect();
    let thin: Vec<_> = admissible_pairs(6)
        .into_iter()
        .filter(|(k, r)| grid_ids.iter().filter(|id| id.starts_with(&format!("k={k} r={r} "))).count() < 3)
        .collect();
    let quoted = ["Athm1", "Athm2", "Athm3", "Athm4", "Athm7", "Athm8", "Athm9", "Athm10", "Athm11", "Athm12"];
    let cat = IdentityCatalog::builtin();
    let missing: Vec<_> = quoted.iter().filter(|q| !cat.thm1.iter().any(|e| e.id == **q)).collect();
    both(
        rows,
        require(
            thin.is_empty() && missing.is_empty(),
            format!("pairs with < 3 tuples: {thin:?}; quoted sets missing: {missing:?}"),
        ),
    )
}

fn criterion_4(report: &SuiteReport) -> Outcome {
    let clp2 = report.group("corollary").filter(|r| r.id.starts_with("clp2")).count();
    both(
        from_rows(report.group("thm2").chain(report.group("corollary"))),
        require(clp2 == 48, format!("{clp2} clp2 instances")),
    )
}

fn criterion_7(report: &SuiteReport) -> Outcome {
    let cat = RelationCatalog::builtin();
    let required = ["Athm1", "Athm2", "Athm3", "Athm4", "Athm7", "Athm8", "Athm9", "Athm10", "Athm11", "Athm12"];
    let mut gaps: Vec<String> = required
        .iter()
        .filter(|g| !cat.select(g).iter().any(|r| r.status == Status::Pinned))
        .map(|g| g.to_string())
        .collect();
    for g in ["AAthm71", "AAthm18"] {
        let zero: Vec<_> = cat.select(g).into_iter().filter(|r| r.rhs.is_empty()).collect();
        if zero.is_empty() || zero.iter().any(|r| r.status != Status::Pinned) {
            gaps.push(format!("{g} zero-relations"));
        }
    }
    let empirical = report.group("relation").filter(|r| r.status == Status::Empirical);
    let (e_pass, e_total) = empirical.fold((0, 0), |(p, t), r| (p + r.passed as usize, t + 1));
    both(
        from_rows(report.group("relation").filter(|r| r.status == Status::Pinned)),
        require(gaps.is_empty(), format!("unpinned: {gaps:?}; empirical {e_pass}/{e_total} hold")),
    )
}

fn criterion_10(elapsed: Duration) -> Outcome {
    let hi = HalfExp(600);
    let a: Series = theta_expand(ThetaArg::new(Sign::Plus, 1, 1), hi).unwrap();
    let b: Series = theta_expand(ThetaArg::new(Sign::Minus, 1, 2), hi).unwrap();
    let dense = a.mul(&a).unwrap().mul(&b).unwrap();
    let start = Instant::now();
    let reps = 20;
    for _ in 0..reps {
        std::hint::black_box(dense.mul(&dense).unwrap());
    }
    let per = start.elapsed() / reps;
    require(
        elapsed < Duration::from_secs(300) && per < Duration::from_millis(50),
        format!(
            "verify all {:.1}s; dense product at half-order 600 {:.2}ms",
            elapsed.as_secs_f64(),
            per.as_secs_f64() * 1e3
        ),
    )
}

fn main() -> ExitCode {
    let c1 = criterion_1();
    let start = Instant::now();
    let report = verify_all(&SuiteConfig::default());
    let elapsed = start.elapsed();

    let results = [
        c1,
        from_rows(report.group("theta")),
        criterion_3(&report),
        criterion_4(&report),
        from_rows(report.group("worked")),
        from_rows(report.group("count")),
        criterion_7(&report),
        from_rows(report.group("classical")),
        from_rows(report.group("nonrep")),
        criterion_10(elapsed),
    ];
    let mut ok = true;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {} ({})", i + 1, if r.passed { "PASS" } else { "FAIL" }, r.detail);
        ok &= r.passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
