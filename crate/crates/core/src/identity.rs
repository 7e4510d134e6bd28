use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{invalid, Error, Result};
use crate::exp::HalfExp;
use crate::series::{Comparison, HalfPowerSeries};
use crate::theta::{f_delta, theta_expand, Sign, ThetaArg};

/// Extra half-units each factor is expanded beyond what the bound
/// bookkeeping strictly requires.
const SLACK: i64 = 4;

/// `coeff · q^{monomial/2} · Π factors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaProduct {
    pub coeff: i64,
    pub monomial: HalfExp,
    pub factors: Vec<ThetaArg>,
}

impl ThetaProduct {
    pub fn new(coeff: i64, monomial: HalfExp, factors: Vec<ThetaArg>) -> Self {
        ThetaProduct { coeff, monomial, factors }
    }

    pub fn signed(sign: Sign, monomial: HalfExp, factors: Vec<ThetaArg>) -> Self {
        ThetaProduct { coeff: sign.to_int(), monomial, factors }
    }

    /// Expands the product through `through`.
    ///
    /// Each factor is expanded far enough that, after multiplying by the
    /// monomial and the leading terms of the other factors, the result is
    /// still known through `through`. The validity bound of the final
    /// product is checked rather than assumed.
    pub fn expand<C: Coeff>(&self, through: HalfExp) -> Result<HalfPowerSeries<C>> {
        let mut vals = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            match f.valuation()? {
                Some(v) => vals.push(v),
                None => return Ok(HalfPowerSeries::zero(through)),
            }
        }
        if self.coeff == 0 || self.monomial + vals.iter().fold(HalfExp::ZERO, |a, &v| a + v) > through {
            return Ok(HalfPowerSeries::zero(through));
        }
        let total = vals.iter().fold(HalfExp::ZERO, |a, &v| a + v);
        let mono_hi = (through - total + HalfExp(SLACK)).max(self.monomial);
        let mut acc = HalfPowerSeries::monomial(C::from_int(self.coeff)?, self.monomial, mono_hi)?;
        for (f, &v) in self.factors.iter().zip(&vals) {
            let others = total - v;
            let hi = (through - self.monomial - others + HalfExp(SLACK)).max(v);
            acc = acc.mul(&theta_expand::<C>(*f, hi)?)?;
        }
        acc.truncate(through)
    }
}

impl fmt::Display for ThetaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.monomial != HalfExp::ZERO {
            write!(f, "·q^{}", self.monomial)?;
        }
        for a in &self.factors {
            write!(f, "·{a}")?;
        }
        Ok(())
    }
}

/// Sum of the expansions of `terms`, known through `through`.
pub fn expand_sum<C: Coeff>(terms: &[ThetaProduct], through: HalfExp) -> Result<HalfPowerSeries<C>> {
    let mut acc = HalfPowerSeries::zero(through);
    for t in terms {
        acc = acc.add(&t.expand(through)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch<C> {
    pub exp: HalfExp,
    pub lhs: C,
    pub rhs: C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport<C> {
    /// Both sides agree at every exponent up to `checked_through`.
    pub equal: bool,
    pub checked_through: HalfExp,
    pub mismatch: Option<Mismatch<C>>,
    /// Least negative exponent with a nonzero coefficient on either side.
    pub negative_support: Option<HalfExp>,
    pub rhs_term_count: usize,
}

impl<C> IdentityReport<C> {
    /// Equal, and free of terms at negative exponents.
    pub fn passed(&self) -> bool {
        self.equal && self.negative_support.is_none()
    }

    pub fn summary(&self) -> String
    where
        C: fmt::Display,
    {
        match (&self.mismatch, self.negative_support) {
            (Some(m), _) => format!("mismatch at q^{}: {} vs {}", m.exp, m.lhs, m.rhs),
            (None, Some(e)) => format!("nonzero coefficient at negative exponent q^{e}"),
            (None, None) => format!("equal through q^{}", self.checked_through),
        }
    }
}

/// Expands both sides through `through` and compares them.
pub fn verify_identity<C: Coeff>(
    lhs: &[ThetaProduct],
    rhs: &[ThetaProduct],
    through: HalfExp,
) -> Result<IdentityReport<C>> {
    let l = expand_sum::<C>(lhs, through)?;
    let r = expand_sum::<C>(rhs, through)?;
    Ok(compare_sides(&l, &r, through, rhs.len()))
}

pub(crate) fn compare_sides<C: Coeff>(
    l: &HalfPowerSeries<C>,
    r: &HalfPowerSeries<C>,
    through: HalfExp,
    rhs_term_count: usize,
) -> IdentityReport<C> {
    let negative_support = [l, r].iter().filter_map(|s| s.terms().next().map(|(e, _)| e).filter(|e| e.0 < 0)).min();
    let mismatch = match l.compare(r, through) {
        Ok(Comparison::Equal) => None,
        Ok(Comparison::Mismatch { exp, left, right }) => Some(Mismatch { exp, lhs: left, rhs: right }),
        // Both sides were expanded through `through`.
        Err(_) => unreachable!("sides are known through the comparison bound"),
    };
    IdentityReport { equal: mismatch.is_none(), checked_through: through, mismatch, negative_support, rhs_term_count }
}

/// A named constraint that a parameter set fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum Violation {
    RNotPositive { r: i64 },
    KNotAboveR { k: i64, r: i64 },
    Gcd2kR { gcd: i64 },
    Gcd2kKMinusR { gcd: i64 },
    NotPositive { name: String, value: i64 },
    S1NeS2 { s1: i64, s2: i64 },
    Balance { lhs: i64, rhs: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RNotPositive { r } => write!(f, "r>0 violated (r={r})"),
            Violation::KNotAboveR { k, r } => write!(f, "k>r violated (k={k}, r={r})"),
            Violation::Gcd2kR { gcd } => write!(f, "gcd(2k,r) in {{1,2}} violated (gcd={gcd})"),
            Violation::Gcd2kKMinusR { gcd } => write!(f, "gcd(2k,k-r)=1 violated (gcd={gcd})"),
            Violation::NotPositive { name, value } => write!(f, "{name}>0 violated ({name}={value})"),
            Violation::S1NeS2 { s1, s2 } => write!(f, "S1=S2 violated (S1={s1}, S2={s2})"),
            Violation::Balance { lhs, rhs } => {
                write!(f, "exponent balance violated ({lhs} != r(k-r)S3 = {rhs})")
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn kr_violations(k: i64, r: i64) -> Vec<Violation> {
    let mut v = Vec::new();
    if r <= 0 {
        v.push(Violation::RNotPositive { r });
    }
    if k <= r {
        v.push(Violation::KNotAboveR { k, r });
    }
    if r > 0 && k > r {
        let g = gcd(2 * k, r);
        if g != 1 && g != 2 {
            v.push(Violation::Gcd2kR { gcd: g });
        }
        let g = gcd(2 * k, k - r);
        if g != 1 {
            v.push(Violation::Gcd2kKMinusR { gcd: g });
        }
    }
    v
}

/// Parameters of the three-factor decomposition. Exponents are whole
/// powers of q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm1Params {
    pub k: i64,
    pub r: i64,
    pub g: i64,
    pub h: i64,
    pub u: i64,
    pub v: i64,
    pub i: i64,
    pub j: i64,
    pub eps: [Sign; 3],
}

impl Thm1Params {
    #[allow(clippy::too_many_arguments)]
    pub fn new(k: i64, r: i64, g: i64, h: i64, u: i64, v: i64, i: i64, j: i64, eps: [Sign; 3]) -> Self {
        Thm1Params { k, r, g, h, u, v, i, j, eps }
    }

    /// Same parameters with all three signs positive.
    pub fn plus(k: i64, r: i64, ghuv: [i64; 4], i: i64, j: i64) -> Self {
        let [g, h, u, v] = ghuv;
        Self::new(k, r, g, h, u, v, i, j, [Sign::Plus; 3])
    }

    pub fn validate(&self) -> Result<()> {
        let v = thm1_validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Constraint(v))
        }
    }
}

impl fmt::Display for Thm1Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [e1, e2, e3] = self.eps;
        write!(
            f,
            "k={} r={} g={} h={} u={} v={} i={} j={} eps={}{}{}",
            self.k, self.r, self.g, self.h, self.u, self.v, self.i, self.j, e1, e2, e3
        )
    }
}

/// Every violated constraint; empty when the parameters are admissible.
pub fn thm1_validate(p: &Thm1Params) -> Vec<Violation> {
    let mut v = kr_violations(p.k, p.r);
    let (s1, s2, s3) = (p.g + p.h, p.u + p.v, p.i + p.j);
    for (name, value) in [("S1", s1), ("S2", s2), ("S3", s3)] {
        if value <= 0 {
            v.push(Violation::NotPositive { name: name.into(), value });
        }
    }
    if s1 != s2 {
        v.push(Violation::S1NeS2 { s1, s2 });
    }
    if 2 * s1 != p.r * (p.k - p.r) * s3 {
        v.push(Violation::Balance { lhs: 2 * s1, rhs: p.r * (p.k - p.r) * s3 });
    }
    v
}

/// `f(e1 q^g, e1 q^h) f(e2 q^u, e2 q^v) f(e3 q^i, e3 q^j)`.
pub fn thm1_lhs(p: &Thm1Params) -> Result<ThetaProduct> {
    p.validate()?;
    let [e1, e2, e3] = p.eps;
    Ok(ThetaProduct::new(
        1,
        HalfExp::ZERO,
        vec![ThetaArg::whole(e1, p.g, p.h), ThetaArg::whole(e2, p.u, p.v), ThetaArg::whole(e3, p.i, p.j)],
    ))
}

/// Derived quantities shared by every summand.
struct Ctx {
    k: i64,
    r: i64,
    kr: i64,
    s1: i64,
    d1: i64,
    s2: i64,
    d2: i64,
    s3: i64,
    d3: i64,
    del: [i64; 3],
}

impl Ctx {
    fn new(p: &Thm1Params) -> Self {
        Ctx {
            k: p.k,
            r: p.r,
            kr: p.k - p.r,
            s1: p.g + p.h,
            d1: p.g - p.h,
            s2: p.u + p.v,
            d2: p.u - p.v,
            s3: p.i + p.j,
            d3: p.i - p.j,
            del: p.eps.map(Sign::delta),
        }
    }

    // sign in front of the second and third sums
    fn outer_sign(&self) -> i64 {
        self.del[2] * (self.kr + 1) / 2
    }
}

/// One of the three α-sums: for each α, a sign, a monomial and the two
/// inner factors, all in half-units. The outer factor multiplies every
/// term of the sum. The first inner factor carries `f_{δ1+δ2+rδ3}`, the
/// second `f_{δ1+δ2+δ3}`.
struct SumRow {
    alphas: fn(&Ctx) -> RangeInclusive<i64>,
    outer: fn(&Ctx) -> (i64, i64),
    sign: fn(&Ctx, i64) -> i64,
    monomial: fn(&Ctx, i64) -> i64,
    f1: fn(&Ctx, i64) -> (i64, i64),
    f2: fn(&Ctx, i64) -> (i64, i64),
}

const THM1_ROWS: [SumRow; 3] = [
    SumRow {
        alphas: |c| (2 - c.k).div_euclid(2)..=c.k / 2,
        outer: |c| (c.r * c.kr * c.s3 + c.d1 - c.d2, c.r * c.kr * c.s3 - c.d1 + c.d2),
        sign: |c, a| a * c.del[2],
        monomial: |c, a| a * (a * c.s3 + c.d3),
        f1: |c, a| {
            (c.r * (c.s3 * (c.k + 2 * a) + c.d3) + c.d1 + c.d2, c.r * (c.s3 * (c.k - 2 * a) - c.d3) - c.d1 - c.d2)
        },
        f2: |c, a| {
            (c.kr * (c.s3 * (c.k - 2 * a) - c.d3) + c.d1 + c.d2, c.kr * (c.s3 * (c.k + 2 * a) + c.d3) - c.d1 - c.d2)
        },
    },
    SumRow {
        alphas: |c| 1..=(c.k + 1) / 2,
        outer: |c| (2 * c.r * c.kr * c.s3 + c.d1 - c.d2, -c.d1 + c.d2),
        sign: |c, a| c.outer_sign() + a * c.del[2] + c.del[0],
        monomial: |c, a| {
            let x = -c.k + c.r + 2 * a - 1;
            c.s1 + c.d1 + c.s3 * x * x / 4 + c.d3 * x / 2
        },
        f1: |c, a| {
            (
                c.r * (c.s3 * (c.k + 2 * a - 1) + c.d3) + c.d1 + c.d2,
                c.r * (c.s3 * (c.k - 2 * a + 1) - c.d3) - c.d1 - c.d2,
            )
        },
        f2: |c, a| {
            (
                c.kr * (c.s3 * (2 * c.k - 2 * a + 1) - c.d3) + c.d1 + c.d2,
                c.kr * (c.s3 * (2 * a - 1) + c.d3) - c.d1 - c.d2,
            )
        },
    },
    SumRow {
        alphas: |c| 1..=c.k / 2,
        outer: |c| (2 * c.r * c.kr * c.s3 + c.d1 - c.d2, -c.d1 + c.d2),
        sign: |c, a| c.outer_sign() + a * c.del[2] + c.del[1],
        monomial: |c, a| {
            let y = c.k - c.r - 2 * a + 1;
            c.s2 - c.d2 + c.s3 * y * y / 4 + c.d3 * y / 2
        },
        f1: |c, a| {
            (
                c.r * (c.s3 * (c.k - 2 * a + 1) + c.d3) + c.d1 + c.d2,
                c.r * (c.s3 * (c.k + 2 * a - 1) - c.d3) - c.d1 - c.d2,
            )
        },
        f2: |c, a| {
            (
                c.kr * (c.s3 * (2 * a - 1) - c.d3) + c.d1 + c.d2,
                c.kr * (c.s3 * (2 * c.k - 2 * a + 1) + c.d3) - c.d1 - c.d2,
            )
        },
    },
];

fn arg(delta: i64, (a, b): (i64, i64)) -> ThetaArg {
    f_delta(delta, ThetaArg::new(Sign::Plus, a, b))
}

/// The right-hand side as a flat list of `2k` three-factor products,
/// ordered by sum and then by α.
pub fn thm1_rhs(p: &Thm1Params) -> Result<Vec<ThetaProduct>> {
    p.validate()?;
    let c = Ctx::new(p);
    let [d1, d2, d3] = c.del;
    let mut out = Vec::with_capacity(2 * p.k as usize);
    for row in &THM1_ROWS {
        let outer = arg(d1 + d2, (row.outer)(&c));
        for a in (row.alphas)(&c) {
            out.push(ThetaProduct::signed(
                Sign::from_delta((row.sign)(&c, a)),
                HalfExp((row.monomial)(&c, a)),
                vec![outer, arg(d1 + d2 + c.r * d3, (row.f1)(&c, a)), arg(d1 + d2 + d3, (row.f2)(&c, a))],
            ));
        }
    }
    Ok(out)
}

/// The outer factors `(A, B)` of the first sum and of the second and
/// third sums.
pub fn thm1_outer_factors(p: &Thm1Params) -> Result<(ThetaArg, ThetaArg)> {
    p.validate()?;
    let c = Ctx::new(p);
    let d = c.del[0] + c.del[1];
    Ok((arg(d, (THM1_ROWS[0].outer)(&c)), arg(d, (THM1_ROWS[1].outer)(&c))))
}

pub fn thm1_verify<C: Coeff>(p: &Thm1Params, through: HalfExp) -> Result<IdentityReport<C>> {
    verify_identity(&[thm1_lhs(p)?], &thm1_rhs(p)?, through)
}

/// Parameters of the two-factor specialization
/// `f(q^s, q^t) f(eps q^i, eps q^j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm2Params {
    pub k: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub i: i64,
    pub j: i64,
    pub eps: Sign,
}

impl Thm2Params {
    pub fn validate(&self) -> Result<()> {
        let v = thm2_validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Constraint(v))
        }
    }
}

impl fmt::Display for Thm2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} r={} s={} t={} i={} j={} eps={}", self.k, self.r, self.s, self.t, self.i, self.j, self.eps)
    }
}

pub fn thm2_validate(p: &Thm2Params) -> Vec<Violation> {
    let mut v = kr_violations(p.k, p.r);
    let (s, s3) = (p.s + p.t, p.i + p.j);
    for (name, value) in [("S", s), ("S3", s3)] {
        if value <= 0 {
            v.push(Violation::NotPositive { name: name.into(), value });
        }
    }
    if s != p.r * (p.k - p.r) * s3 {
        v.push(Violation::Balance { lhs: s, rhs: p.r * (p.k - p.r) * s3 });
    }
    v
}

pub fn thm2_lhs(p: &Thm2Params) -> Result<ThetaProduct> {
    p.validate()?;
    Ok(ThetaProduct::new(
        1,
        HalfExp::ZERO,
        vec![ThetaArg::whole(Sign::Plus, p.s, p.t), ThetaArg::whole(p.eps, p.i, p.j)],
    ))
}

/// `k` two-factor products, one per α.
pub fn thm2_rhs(p: &Thm2Params) -> Result<Vec<ThetaProduct>> {
    p.validate()?;
    let (k, r, kr) = (p.k, p.r, p.k - p.r);
    let (s3, d3, d) = (p.i + p.j, p.i - p.j, p.s - p.t);
    let del = p.eps.delta();
    Ok(((2 - k).div_euclid(2)..=k / 2)
        .map(|a| {
            ThetaProduct::signed(
                Sign::from_delta(a * del),
                HalfExp(a * (a * s3 + d3)),
                vec![
                    arg(r * del, (r * (s3 * (k + 2 * a) + d3) + d, r * (s3 * (k - 2 * a) - d3) - d)),
                    arg(del, (kr * (s3 * (k - 2 * a) - d3) + d, kr * (s3 * (k + 2 * a) + d3) - d)),
                ],
            )
        })
        .collect())
}

pub fn thm2_verify<C: Coeff>(p: &Thm2Params, through: HalfExp) -> Result<IdentityReport<C>> {
    verify_identity(&[thm2_lhs(p)?], &thm2_rhs(p)?, through)
}

/// Every `(k, r)` with `k <= kmax` meeting the gcd conditions.
pub fn admissible_pairs(kmax: i64) -> Vec<(i64, i64)> {
    (2..=kmax).flat_map(|k| (1..k).map(move |r| (k, r))).filter(|&(k, r)| kr_violations(k, r).is_empty()).collect()
}

/// Four admissible parameter sets per `(k, r)`, covering both signs and
/// unequal splits. No left-hand factor vanishes identically.
pub fn thm1_grid(kmax: i64) -> Vec<Thm1Params> {
    use Sign::{Minus as M, Plus as P};
    let mut out = Vec::new();
    for (k, r) in admissible_pairs(kmax) {
        let rr = r * (k - r);
        out.push(Thm1Params::new(k, r, rr, 0, rr, 0, 1, 1, [P, P, P]));
        out.push(Thm1Params::new(k, r, 1, 2 * rr - 1, 2 * rr, 0, 4, 0, [M, P, P]));
        out.push(Thm1Params::new(k, r, 2 * rr, 0, 2 * rr - 1, 1, 3, 1, [P, M, M]));
        out.push(Thm1Params::new(k, r, 1, 2 * rr - 1, rr, rr, 1, 3, [M, M, M]));
    }
    out
}

/// Three parameter sets per admissible `(k, r)` with mixed signs; none
/// has a vanishing left-hand factor.
pub fn thm2_grid(kmax: i64) -> Vec<Thm2Params> {
    let mut out = Vec::new();
    for (k, r) in admissible_pairs(kmax) {
        let rr = r * (k - r);
        out.push(Thm2Params { k, r, s: 2 * rr, t: 0, i: 1, j: 1, eps: Sign::Plus });
        out.push(Thm2Params { k, r, s: rr, t: rr, i: 1, j: 1, eps: Sign::Minus });
        out.push(Thm2Params { k, r, s: 3 * rr + 1, t: rr - 1, i: 3, j: 1, eps: Sign::Minus });
    }
    out
}

/// Parses `"1,-1,1"` into three signs.
pub fn parse_signs(s: &str) -> Result<[Sign; 3]> {
    let v = s.split(',').map(str::parse).collect::<Result<Vec<Sign>>>()?;
    v.try_into().map_err(|_| invalid(format!("expected three signs, got `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ATHM1: Thm1Params = Thm1Params { k: 2, r: 1, g: 1, h: 0, u: 1, v: 0, i: 1, j: 1, eps: [Sign::Plus; 3] };
    const ATHM12: Thm1Params = Thm1Params { k: 3, r: 2, g: 5, h: 1, u: 5, v: 1, i: 4, j: 2, eps: [Sign::Plus; 3] };

    #[test]
    fn validation() {
        assert!(thm1_validate(&ATHM1).is_empty());
        assert!(thm1_validate(&ATHM12).is_empty());
        let bad = Thm1Params { k: 3, r: 1, ..ATHM1 };
        let v = thm1_validate(&bad);
        assert!(v.contains(&Violation::Gcd2kKMinusR { gcd: 2 }));
        assert!(v.iter().any(|x| x.to_string().contains("gcd(2k,k-r)=1 violated")));
        assert!(matches!(thm1_rhs(&bad), Err(Error::Constraint(_))));
        let unbalanced = Thm1Params { i: 2, ..ATHM1 };
        assert!(thm1_validate(&unbalanced).iter().any(|x| matches!(x, Violation::Balance { .. })));
    }

    #[test]
    fn lhs_shape() {
        let l = thm1_lhs(&ATHM1).unwrap();
        assert_eq!(l.coeff, 1);
        assert_eq!(l.monomial, HalfExp(0));
        assert_eq!(l.factors[0], ThetaArg::new(Sign::Plus, 2, 0));
        assert_eq!(l.factors[2], ThetaArg::new(Sign::Plus, 2, 2));
    }

    #[test]
    fn term_counts() {
        for (k, r) in admissible_pairs(6) {
            let rr = r * (k - r);
            let p = Thm1Params::plus(k, r, [rr, 0, rr, 0], 1, 1);
            assert_eq!(thm1_rhs(&p).unwrap().len() as i64, 2 * k);
            let q = Thm2Params { k, r, s: 2 * rr, t: 0, i: 1, j: 1, eps: Sign::Plus };
            assert_eq!(thm2_rhs(&q).unwrap().len() as i64, k);
        }
    }

    #[test]
    fn admissible_pairs_up_to_six() {
        assert_eq!(admissible_pairs(6), vec![(2, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 4), (6, 1), (6, 5)]);
    }

    #[test]
    fn small_instances_verify() {
        let rep = thm1_verify::<i64>(&ATHM1, HalfExp(100)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.rhs_term_count, 4);
        let rep = thm1_verify::<i64>(&ATHM12, HalfExp(100)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.rhs_term_count, 6);
        let p = Thm2Params { k: 2, r: 1, s: 1, t: 1, i: 2, j: 0, eps: Sign::Minus };
        assert!(thm2_verify::<i64>(&p, HalfExp(100)).unwrap().passed());
    }

    #[test]
    fn corrupted_rhs_is_caught() {
        let mut rhs = thm1_rhs(&ATHM1).unwrap();
        rhs[1].coeff *= 3;
        let rep = verify_identity::<i64>(&[thm1_lhs(&ATHM1).unwrap()], &rhs, HalfExp(60)).unwrap();
        assert!(!rep.equal);
        assert!(rep.mismatch.is_some());
    }

    #[test]
    fn parse_sign_triples() {
        assert_eq!(parse_signs("1,-1,1").unwrap(), [Sign::Plus, Sign::Minus, Sign::Plus]);
        assert!(parse_signs("1,1").is_err());
        assert!(parse_signs("1,2,1").is_err());
    }
}
