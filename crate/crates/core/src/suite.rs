//! The full verification run behind `verify all`: every catalog and grid
//! checked in a fixed order, one row per check.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::catalog::{IdentityCatalog, RelationCatalog};
use crate::corollary::{corollary_grid, verify_corollary};
use crate::error::Result;
use crate::exp::HalfExp;
use crate::identity::{expand_sum, thm1_grid, thm1_lhs, thm1_verify, thm2_grid, thm2_verify, verify_identity};
use crate::repcount::{
    classical_check, count_enumerate, count_series, nonrep_scan, verify_relation, ClassicalId, CountCache, CountTable,
    FormName, MixedSumSpec, Status, NONREP_COROLLARIES,
};
use crate::series::Comparison;
use crate::theta::{
    entry31_dissect, jacobi_triple_product, theta_expand, theta_normalize, theta_special, Sign, SpecialTheta, ThetaArg,
};
use crate::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Identities are compared through `q^order`.
    pub order: i64,
    /// Relations are checked for `N <= nmax`.
    pub nmax: i64,
    /// Bound for the count-method comparison.
    pub count_nmax: i64,
    /// Bound for the non-representability scans.
    pub scan_nmax: i64,
    /// Largest `k` in the decomposition grids.
    pub kmax: i64,
    /// Largest `m` for the `clp2` family.
    pub mmax: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { order: 150, nmax: 1000, count_nmax: 500, scan_nmax: 10_000, kmax: 6, mmax: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub group: &'static str,
    pub id: String,
    /// Empirical rows are informational and never fail the run.
    pub status: Status,
    pub passed: bool,
    pub detail: String,
}

impl SuiteRow {
    fn new(group: &'static str, id: impl Into<String>, outcome: Result<(bool, String)>) -> Self {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        SuiteRow { group, id: id.into(), status: Status::Pinned, passed, detail }
    }

    pub fn fails_run(&self) -> bool {
        self.status == Status::Pinned && !self.passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.rows.iter().any(SuiteRow::fails_run)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| r.fails_run())
    }

    pub fn group(&self, name: &str) -> impl Iterator<Item = &SuiteRow> + '_ {
        let name = name.to_owned();
        self.rows.iter().filter(move |r| r.group == name)
    }
}

/// Runs everything against the embedded catalogs.
pub fn verify_all(config: &SuiteConfig) -> SuiteReport {
    verify_all_with(config, &RelationCatalog::builtin(), &IdentityCatalog::builtin())
}

pub fn verify_all_with(config: &SuiteConfig, relations: &RelationCatalog, identities: &IdentityCatalog) -> SuiteReport {
    let mut rows = theta_properties(config.order);
    rows.extend(identity_rows(config, identities));
    rows.extend(worked_examples());
    rows.extend(count_method_rows(relations, config.count_nmax));
    rows.extend(relation_rows(relations, config.nmax));
    rows.extend(classical_rows());
    rows.extend(nonrep_rows(config.scan_nmax));
    SuiteReport { config: *config, rows }
}

fn compare(a: &Series, b: &Series, through: HalfExp) -> Result<Option<String>> {
    Ok(match a.compare(b, through)? {
        Comparison::Equal => None,
        Comparison::Mismatch { exp, left, right } => Some(format!("q^{exp}: {left} vs {right}")),
    })
}

/// Runs `check` on every case and reports the first failure.
fn all_cases<T, I, F>(cases: I, mut check: F) -> Result<(bool, String)>
where
    I: IntoIterator<Item = T>,
    T: std::fmt::Debug,
    F: FnMut(&T) -> Result<Option<String>>,
{
    let mut n = 0;
    for case in cases {
        n += 1;
        if let Some(why) = check(&case)? {
            return Ok((false, format!("{case:?}: {why}")));
        }
    }
    Ok((true, format!("{n} cases")))
}

fn signs() -> [Sign; 2] {
    [Sign::Plus, Sign::Minus]
}

/// Every elementary theta fact the decompositions rely on, on the
/// half-unit grid and through `q^order`.
pub fn theta_properties(order: i64) -> Vec<SuiteRow> {
    let t = HalfExp::whole(order);
    let g = "theta";
    let args: Vec<ThetaArg> = signs()
        .into_iter()
        .flat_map(|e| (0..=24).flat_map(move |a| (a..=24).map(move |b| ThetaArg::new(e, a, b))))
        .filter(|x| x.a.0 + x.b.0 > 0)
        .collect();
    let mut rows = Vec::new();

    rows.push(SuiteRow::new(
        g,
        "triple-product",
        all_cases(&args, |x| compare(&theta_expand(**x, t)?, &jacobi_triple_product(**x, t)?, t)),
    ));
    rows.push(SuiteRow::new(
        g,
        "symmetry",
        all_cases(&args, |x| compare(&theta_expand(**x, t)?, &theta_expand(x.swapped(), t)?, t)),
    ));
    rows.push(SuiteRow::new(
        g,
        "f(1,a)=2f(a,a^3)",
        all_cases(1..=24, |&b| {
            let lhs: Series = theta_expand(ThetaArg::new(Sign::Plus, 0, b), t)?;
            compare(&lhs, &theta_expand(ThetaArg::new(Sign::Plus, b, 3 * b), t)?.scale(2)?, t)
        }),
    ));
    rows.push(SuiteRow::new(
        g,
        "f(-1,a)=0",
        all_cases(-24..=24, |&b| {
            let s: Series = theta_expand(ThetaArg::new(Sign::Minus, 0, b), t)?;
            Ok((!s.is_zero()).then(|| "nonzero".to_string()))
        }),
    ));

    let quads = (1..=16i64).flat_map(|s| (0..=s).flat_map(move |a| (0..=s).map(move |c| (a, s - a, c, s - c))));
    rows.push(SuiteRow::new(
        g,
        "f(a,b)f(c,d)+f(-a,-b)f(-c,-d), ab=cd",
        all_cases(quads, |&(a, b, c, d)| {
            let f = |e, x, y| theta_expand::<i64>(ThetaArg::new(e, x, y), t);
            let plus = f(Sign::Plus, a, b)?.mul(&f(Sign::Plus, c, d)?)?;
            let minus = f(Sign::Minus, a, b)?.mul(&f(Sign::Minus, c, d)?)?;
            let lhs = plus.add(&minus)?;
            let rhs = f(Sign::Plus, a + c, b + d)?.mul(&f(Sign::Plus, a + d, b + c)?)?.scale(2)?;
            compare(&lhs, &rhs, t)
        }),
    ));

    let pairs: Vec<(i64, i64)> =
        (0..=16).flat_map(|x| (0..=16).map(move |y| (x, y))).filter(|&(x, y)| x + y > 0).collect();
    rows.push(SuiteRow::new(
        g,
        "f(a,ab^2)f(b,a^2b)=f(a,b)psi(ab)",
        all_cases(&pairs, |&&(x, y)| {
            let f = |a, b| theta_expand::<i64>(ThetaArg::new(Sign::Plus, a, b), t);
            let lhs = f(x, x + 2 * y)?.mul(&f(y, 2 * x + y)?)?;
            let rhs = f(x, y)?.mul(&f(x + y, 3 * (x + y))?)?;
            compare(&lhs, &rhs, t)
        }),
    ));
    rows.push(SuiteRow::new(
        g,
        "f(a,b)f(-a,-b)=f(-a^2,-b^2)phi(-ab)",
        all_cases(&pairs, |&&(x, y)| {
            let f = |e, a, b| theta_expand::<i64>(ThetaArg::new(e, a, b), t);
            let lhs = f(Sign::Plus, x, y)?.mul(&f(Sign::Minus, x, y)?)?;
            let rhs = f(Sign::Minus, 2 * x, 2 * y)?.mul(&f(Sign::Minus, x + y, x + y)?)?;
            compare(&lhs, &rhs, t)
        }),
    ));

    let negs = signs().into_iter().flat_map(|e| (0..=24).flat_map(move |s| (0..s).map(move |r| (e, r, s))));
    rows.push(SuiteRow::new(
        g,
        "normalize",
        all_cases(negs, |&(e, r, s)| {
            let arg = ThetaArg::new(e, -r, s);
            let n = theta_normalize(arg)?;
            if n.arg.a.0 < 0 || n.arg.a > n.arg.b {
                return Ok(Some(format!("normalized to {}", n.arg)));
            }
            compare(&theta_expand(arg, t)?, &n.expand(t)?, t)
        }),
    ));

    let both_orders: Vec<ThetaArg> = signs()
        .into_iter()
        .flat_map(|e| (0..=24).flat_map(move |a| (0..=24).map(move |b| ThetaArg::new(e, a, b))))
        .filter(|x| x.a.0 + x.b.0 > 0)
        .collect();
    rows.push(SuiteRow::new(
        g,
        "2-dissection",
        all_cases(&both_orders, |x| {
            let mut sum = Series::zero(t);
            for term in entry31_dissect(**x, 2)? {
                let part: Series = theta_normalize(term.arg)?.expand(t - term.prefactor)?;
                sum = sum.add(&part.shift(term.prefactor).scale(term.sign.value())?.truncate(t)?)?;
            }
            compare(&theta_expand(**x, t)?, &sum, t)
        }),
    ));

    let fixed = [
        (
            "phi=phi(q^4)+2q psi(q^8)",
            SpecialTheta::Phi,
            ThetaArg::new(Sign::Plus, 8, 8),
            2,
            ThetaArg::new(Sign::Plus, 16, 48),
        ),
        (
            "psi=f(q^10,q^6)+q f(q^14,q^2)",
            SpecialTheta::Psi,
            ThetaArg::new(Sign::Plus, 20, 12),
            1,
            ThetaArg::new(Sign::Plus, 28, 4),
        ),
        (
            "X=f(q^7,q^5)+q f(q^11,q)",
            SpecialTheta::X,
            ThetaArg::new(Sign::Plus, 14, 10),
            1,
            ThetaArg::new(Sign::Plus, 22, 2),
        ),
    ];
    for (id, name, even, c, odd) in fixed {
        let outcome = (|| {
            let lhs: Series = theta_expand(theta_special(name, 1)?, t)?;
            let rhs = theta_expand::<i64>(even, t)?
                .add(&theta_expand::<i64>(odd, t)?.shift(HalfExp::whole(1)).scale(c)?.truncate(t)?)?;
            Ok(match compare(&lhs, &rhs, t)? {
                None => (true, format!("equal through q^{t}")),
                Some(why) => (false, why),
            })
        })();
        rows.push(SuiteRow::new(g, id, outcome));
    }
    rows
}

fn identity_rows(config: &SuiteConfig, cat: &IdentityCatalog) -> Vec<SuiteRow> {
    let t = HalfExp::whole(config.order);
    let mut rows = Vec::new();
    let term_count = |k: i64, n: usize, want: i64| {
        if n as i64 == want {
            String::new()
        } else {
            format!(" but {n} terms for k={k}")
        }
    };

    for p in thm1_grid(config.kmax) {
        let outcome = thm1_verify::<i64>(&p, t).map(|r| {
            let extra = term_count(p.k, r.rhs_term_count, 2 * p.k);
            (r.passed() && extra.is_empty(), r.summary() + &extra)
        });
        rows.push(SuiteRow::new("thm1", p.to_string(), outcome));
    }
    for e in &cat.thm1 {
        let outcome = (|| {
            let r = thm1_verify::<i64>(&e.params, t)?;
            let extra = term_count(e.params.k, r.rhs_term_count, 2 * e.params.k);
            if !r.passed() || !extra.is_empty() {
                return Ok((false, r.summary() + &extra));
            }
            // The decomposition's left side is a fixed multiple of the
            // explicit identity's left side.
            let Some(x) = cat.explicit(&e.explicit) else {
                return Ok((false, format!("no explicit identity `{}`", e.explicit)));
            };
            let thm: Series = thm1_lhs(&e.params)?.expand(t)?;
            let explicit: Series = expand_sum(&x.sides()?.0, t)?.scale(e.lhs_constant)?;
            Ok(match compare(&thm, &explicit, t)? {
                None => (true, format!("{}; left side is {} x {}", r.summary(), e.lhs_constant, e.explicit)),
                Some(why) => (false, format!("left side is not {} x {}: {why}", e.lhs_constant, e.explicit)),
            })
        })();
        rows.push(SuiteRow::new("thm1", e.id.clone(), outcome));
    }

    for p in thm2_grid(config.kmax).iter().chain(cat.thm2.iter().map(|e| &e.params)) {
        let outcome = thm2_verify::<i64>(p, t).map(|r| {
            let extra = term_count(p.k, r.rhs_term_count, p.k);
            (r.passed() && extra.is_empty(), r.summary() + &extra)
        });
        rows.push(SuiteRow::new("thm2", p.to_string(), outcome));
    }

    for c in corollary_grid(config.kmax, config.mmax) {
        let outcome = verify_corollary(c, t).map(|r| {
            let failed: Vec<_> =
                r.steps.iter().filter(|s| !s.passed).map(|s| format!("{}: {}", s.step, s.detail)).collect();
            if failed.is_empty() {
                (r.displayed.passed(), format!("{}; {} steps", r.displayed.summary(), r.steps.len()))
            } else {
                (false, failed.join("; "))
            }
        });
        rows.push(SuiteRow::new("corollary", c.to_string(), outcome));
    }

    for e in &cat.explicit {
        let outcome = e.sides().and_then(|(l, r)| verify_identity::<i64>(&l, &r, t)).map(|r| (r.passed(), r.summary()));
        rows.push(SuiteRow::new("explicit", e.id.clone(), outcome));
    }
    rows
}

/// The values worked out by hand, each by both counting methods.
pub const WORKED_EXAMPLES: [(FormName, [i64; 3], i64, i64); 5] = [
    (FormName::RT, [1, 1, 1], 5, 8),
    (FormName::Rt, [2, 2, 2], 5, 0),
    (FormName::T, [2, 4, 4], 4, 2),
    (FormName::RT, [1, 1, 1], 10, 16),
    (FormName::Rt, [2, 2, 2], 10, 16),
];

fn worked_examples() -> Vec<SuiteRow> {
    WORKED_EXAMPLES
        .iter()
        .map(|&(form, coeffs, n, want)| {
            let spec = MixedSumSpec { form, coeffs };
            let outcome = count_series::<i64>(&spec, n).and_then(|s| s.coeff(HalfExp::whole(n))).map(|by_series| {
                let by_enum = count_enumerate(&spec, n);
                (
                    by_enum == want && by_series == want,
                    format!("enumerate {by_enum}, series {by_series}, expected {want}"),
                )
            });
            let [a, b, c] = coeffs;
            SuiteRow::new("worked", format!("{form}({a},{b},{c};{n})"), outcome)
        })
        .collect()
}

/// Every form and coefficient triple the catalog mentions.
pub fn catalog_specs(relations: &RelationCatalog) -> Vec<MixedSumSpec> {
    let set: BTreeSet<(String, [i64; 3])> =
        relations.relations.iter().flat_map(|r| r.counts()).map(|c| (c.spec.form.to_string(), c.spec.coeffs)).collect();
    set.into_iter()
        .map(|(f, coeffs)| MixedSumSpec { form: f.parse().expect("form names round-trip"), coeffs })
        .collect()
}

fn count_method_rows(relations: &RelationCatalog, nmax: i64) -> Vec<SuiteRow> {
    catalog_specs(relations)
        .into_iter()
        .map(|spec| {
            let outcome = count_series::<i64>(&spec, nmax).map(|s| {
                let table = CountTable::build(spec, nmax);
                let bad = (0..=nmax).find(|&n| s.coeff(HalfExp::whole(n)) != Ok(table.get(n)));
                match bad {
                    None => (true, format!("agree for N <= {nmax}")),
                    Some(n) => (
                        false,
                        format!(
                            "N={n}: enumerate {}, series {}",
                            table.get(n),
                            s.coeff(HalfExp::whole(n)).unwrap_or(0)
                        ),
                    ),
                }
            });
            SuiteRow::new("count", spec.to_string(), outcome)
        })
        .collect()
}

fn relation_rows(relations: &RelationCatalog, nmax: i64) -> Vec<SuiteRow> {
    let mut cache = CountCache::new();
    relations
        .relations
        .iter()
        .map(|rel| {
            let bad = verify_relation(rel, nmax, &mut cache);
            let detail = match bad.first() {
                None => format!("holds for N <= {nmax}"),
                Some(c) => format!("{} counterexamples, smallest N={}: lhs {} rhs {}", bad.len(), c.n, c.lhs, c.rhs),
            };
            SuiteRow { group: "relation", id: rel.id.clone(), status: rel.status, passed: bad.is_empty(), detail }
        })
        .collect()
}

fn classical_rows() -> Vec<SuiteRow> {
    ClassicalId::ALL
        .into_iter()
        .map(|id| {
            let r = classical_check(id, id.default_nmax());
            let detail = match r.discrepancies.first() {
                None => format!("{} forms hold for N <= {}", r.forms_checked, r.nmax),
                Some(d) => format!(
                    "{} discrepancies, first {} at N={} (count {})",
                    r.discrepancies.len(),
                    d.form,
                    d.n,
                    d.count
                ),
            };
            SuiteRow::new("classical", id.as_str(), Ok((r.passed(), detail)))
        })
        .collect()
}

fn nonrep_rows(nmax: i64) -> Vec<SuiteRow> {
    NONREP_COROLLARIES
        .iter()
        .map(|c| {
            let outcome = nonrep_scan(&c.spec(), c.modulus, c.residue, nmax).map(|hits| match hits.first() {
                None => (true, format!("no N = {} mod {} up to {nmax}", c.residue, c.modulus)),
                Some(n) => (false, format!("{} represented, first N={n}", hits.len())),
            });
            SuiteRow::new("nonrep", format!("{} ({}N+{})", c.label, c.modulus, c.residue), outcome)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let cfg = SuiteConfig { order: 30, nmax: 60, count_nmax: 60, scan_nmax: 200, kmax: 3, mmax: 2 };
        let report = verify_all(&cfg);
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        for g in
            ["theta", "thm1", "thm2", "corollary", "explicit", "worked", "count", "relation", "classical", "nonrep"]
        {
            assert!(report.group(g).next().is_some(), "group {g} is empty");
        }
    }

    #[test]
    fn catalog_specs_cover_every_form() {
        let specs = catalog_specs(&RelationCatalog::builtin());
        for f in FormName::ALL {
            assert!(specs.iter().any(|s| s.form == f), "{f}");
        }
    }
}
