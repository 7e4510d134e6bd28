//! Representation counts for weighted ternary sums of figurate numbers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{invalid, Error, Result};
use crate::exp::HalfExp;
use crate::series::HalfPowerSeries;
use crate::theta::{theta_expand, theta_special, SpecialTheta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FigurateKind {
    /// `n^2`, `n` in ℤ
    Square,
    /// `n(n+1)/2`, `n >= 0`
    Triangular,
    /// `n(3n+1)/2`, `n` in ℤ
    GenPentagonal,
    /// `n(3n+2)`, `n` in ℤ
    GenOctagonal,
}

impl FigurateKind {
    pub const ALL: [FigurateKind; 4] =
        [FigurateKind::Square, FigurateKind::Triangular, FigurateKind::GenPentagonal, FigurateKind::GenOctagonal];

    pub fn value(self, n: i64) -> i64 {
        match self {
            FigurateKind::Square => n * n,
            FigurateKind::Triangular => n * (n + 1) / 2,
            FigurateKind::GenPentagonal => n * (3 * n + 1) / 2,
            FigurateKind::GenOctagonal => n * (3 * n + 2),
        }
    }

    /// Whether negative indices belong to the domain.
    pub fn two_sided(self) -> bool {
        self != FigurateKind::Triangular
    }

    /// The theta function whose coefficients count the values of this kind.
    pub fn generating(self) -> SpecialTheta {
        match self {
            FigurateKind::Square => SpecialTheta::Phi,
            FigurateKind::Triangular => SpecialTheta::Psi,
            FigurateKind::GenPentagonal => SpecialTheta::X,
            FigurateKind::GenOctagonal => SpecialTheta::Y,
        }
    }
}

/// Every `(index, value)` in the domain with `value <= limit`, by value
/// and then by index.
pub fn figurate_values(kind: FigurateKind, limit: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if limit < 0 {
        return out;
    }
    // Every kind grows at least like n^2 / 2 in |n|.
    let mut n = 0i64;
    loop {
        let mut any = false;
        let candidates: &[i64] = if n == 0 || !kind.two_sided() { &[n] } else { &[n, -n] };
        for &i in candidates {
            let v = kind.value(i);
            if v <= limit {
                out.push((i, v));
                any = true;
            }
        }
        if !any && n > 1 {
            break;
        }
        n += 1;
    }
    out.sort_by_key(|&(i, v)| (v, i));
    out
}

macro_rules! forms {
    ($($variant:ident = $name:literal : $a:ident $b:ident $c:ident),* $(,)?) => {
        /// The twenty registered ternary forms.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub enum FormName { $($variant),* }

        impl FormName {
            pub const ALL: [FormName; 20] = [$(FormName::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(FormName::$variant => $name),* }
            }

            /// The ordered kinds of the three slots.
            pub fn kinds(self) -> [FigurateKind; 3] {
                use FigurateKind::{GenOctagonal as G, GenPentagonal as P, Square as S, Triangular as T};
                match self { $(FormName::$variant => [$a, $b, $c]),* }
            }
        }

        impl FromStr for FormName {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(FormName::$variant),)*
                    other => Err(Error::UnknownForm(other.to_string())),
                }
            }
        }
    };
}

forms! {
    R = "r": S S S,
    T = "T": T T T,
    P = "P": P P P,
    G = "G": G G G,
    Rt = "Rt": S S T,
    Rp = "Rp": S S P,
    Rg = "Rg": S S G,
    Tp = "Tp": T T P,
    Tg = "Tg": T T G,
    RT = "rT": S T T,
    RP = "rP": S P P,
    RG = "rG": S G G,
    PG = "pG": P G G,
    TP = "tP": T P P,
    TG = "tG": T G G,
    Pg = "Pg": P P G,
    Rtp = "rtp": S T P,
    Rtg = "rtg": S T G,
    Rpg = "rpg": S P G,
    Tpg = "tpg": T P G,
}

/// The slot kinds of a registered form name.
pub fn registry_lookup(name: &str) -> Result<[FigurateKind; 3]> {
    Ok(name.parse::<FormName>()?.kinds())
}

impl TryFrom<String> for FormName {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FormName> for String {
    fn from(f: FormName) -> String {
        f.as_str().to_string()
    }
}

impl fmt::Display for FormName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A registered form with positive coefficients, e.g. `rT(1,1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedSumSpec {
    pub form: FormName,
    pub coeffs: [i64; 3],
}

impl MixedSumSpec {
    pub fn new(form: FormName, coeffs: [i64; 3]) -> Result<Self> {
        if coeffs.iter().any(|&a| a < 1) {
            return Err(invalid(format!("coefficients must be positive, got {coeffs:?}")));
        }
        Ok(MixedSumSpec { form, coeffs })
    }

    /// The ordered `(coefficient, kind)` slots.
    pub fn slots(&self) -> [(i64, FigurateKind); 3] {
        let k = self.form.kinds();
        [(self.coeffs[0], k[0]), (self.coeffs[1], k[1]), (self.coeffs[2], k[2])]
    }
}

impl fmt::Display for MixedSumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coeffs;
        write!(f, "{}({a},{b},{c})", self.form)
    }
}

impl FromStr for MixedSumSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(|| invalid(format!("expected NAME(a,b,c), got `{s}`")))?;
        let form: FormName = name.trim().parse()?;
        let inner = rest.strip_suffix(')').ok_or_else(|| invalid(format!("missing `)` in `{s}`")))?;
        let nums = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| invalid(format!("bad coefficient `{x}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let coeffs: [i64; 3] = nums.try_into().map_err(|_| invalid(format!("expected three coefficients in `{s}`")))?;
        MixedSumSpec::new(form, coeffs)
    }
}

/// Multiplicities of `a·F(n)` over the domain, as sorted `(value, count)`.
fn scaled_multiplicities(a: i64, kind: FigurateKind, limit: i64) -> Vec<(usize, i64)> {
    let mut m: Vec<(usize, i64)> = Vec::new();
    for (_, v) in figurate_values(kind, limit / a) {
        let v = (a * v) as usize;
        match m.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => m.push((v, 1)),
        }
    }
    m
}

/// Number of ordered index triples with `a1 F1 + a2 F2 + a3 F3 = n`.
pub fn count_enumerate(spec: &MixedSumSpec, n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    let [(a1, k1), (a2, k2), (a3, k3)] = spec.slots();
    let mut third = vec![0i64; n as usize + 1];
    for (v, c) in scaled_multiplicities(a3, k3, n) {
        third[v] = c;
    }
    let second = scaled_multiplicities(a2, k2, n);
    let mut total = 0;
    for (v1, c1) in scaled_multiplicities(a1, k1, n) {
        for &(v2, c2) in &second {
            if v1 + v2 > n as usize {
                break;
            }
            total += c1 * c2 * third[n as usize - v1 - v2];
        }
    }
    total
}

/// Counts for every `n` in `0..=nmax` at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub spec: MixedSumSpec,
    counts: Vec<i64>,
}

impl CountTable {
    pub fn build(spec: MixedSumSpec, nmax: i64) -> Self {
        let nmax = nmax.max(0);
        let mut counts = vec![0i64; nmax as usize + 1];
        let [(a1, k1), (a2, k2), (a3, k3)] = spec.slots();
        let m1 = scaled_multiplicities(a1, k1, nmax);
        let m2 = scaled_multiplicities(a2, k2, nmax);
        let m3 = scaled_multiplicities(a3, k3, nmax);
        let top = nmax as usize;
        for &(v1, c1) in &m1 {
            for &(v2, c2) in m2.iter().take_while(|(v2, _)| v1 + v2 <= top) {
                let c12 = c1 * c2;
                for &(v3, c3) in m3.iter().take_while(|(v3, _)| v1 + v2 + v3 <= top) {
                    counts[v1 + v2 + v3] += c12 * c3;
                }
            }
        }
        CountTable { spec, counts }
    }

    pub fn nmax(&self) -> i64 {
        self.counts.len() as i64 - 1
    }

    /// Count at `n`; zero for negative `n`. Panics past `nmax`.
    pub fn get(&self, n: i64) -> i64 {
        if n < 0 {
            0
        } else {
            self.counts[n as usize]
        }
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }
}

/// Count tables shared across many queries, rebuilt larger on demand.
#[derive(Debug, Default)]
pub struct CountCache {
    tables: HashMap<MixedSumSpec, Arc<CountTable>>,
}

impl CountCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table for `spec` covering at least `0..=nmax`.
    pub fn table(&mut self, spec: MixedSumSpec, nmax: i64) -> Arc<CountTable> {
        if let Some(t) = self.tables.get(&spec) {
            if t.nmax() >= nmax {
                return t.clone();
            }
        }
        let t = Arc::new(CountTable::build(spec, nmax));
        self.tables.insert(spec, t.clone());
        t
    }
}

/// The generating function of the counts: the product of the three slot
/// series, each taken at `q^{a_i}`, known through `q^order`.
pub fn count_series<C: Coeff>(spec: &MixedSumSpec, order: i64) -> Result<HalfPowerSeries<C>> {
    let hi = HalfExp::whole(order);
    let mut acc = HalfPowerSeries::<C>::one(hi)?;
    for (a, kind) in spec.slots() {
        acc = acc.mul(&theta_expand::<C>(theta_special(kind.generating(), a)?, hi)?)?;
    }
    acc.truncate(hi)
}

/// `scalar · count(spec; alpha·N + beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRef {
    #[serde(flatten)]
    pub spec: MixedSumSpec,
    pub alpha: i64,
    pub beta: i64,
    pub scalar: i64,
}

impl CountRef {
    pub fn arg(&self, n: i64) -> i64 {
        self.alpha * n + self.beta
    }

    pub fn eval(&self, table: &CountTable, n: i64) -> i64 {
        self.scalar * table.get(self.arg(n))
    }
}

impl fmt::Display for CountRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.spec.coeffs;
        match self.scalar {
            1 => {}
            -1 => write!(f, "-")?,
            s => write!(f, "{s}")?,
        }
        write!(f, "{}({a},{b},{c};", self.spec.form)?;
        match self.alpha {
            1 => write!(f, "N")?,
            al => write!(f, "{al}N")?,
        }
        match self.beta {
            0 => {}
            b if b > 0 => write!(f, "+{b}")?,
            b => write!(f, "{b}")?,
        }
        write!(f, ")")
    }
}

impl FromStr for CountRef {
    type Err = Error;
    /// Parses `[-][scalar]NAME(a,b,c;[alpha]N[±beta])`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || invalid(format!("cannot parse count `{s}`"));
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
        let scalar: i64 = if digits == 0 { 1 } else { t[..digits].parse().map_err(|_| bad())? };
        let t = &t[digits..];
        let (form_part, arg) = t.split_once(';').ok_or_else(bad)?;
        let spec: MixedSumSpec = format!("{form_part})").parse()?;
        let arg = arg.strip_suffix(')').ok_or_else(bad)?;
        let (al, be) = arg.split_once('N').ok_or_else(bad)?;
        let alpha = if al.is_empty() { 1 } else { al.parse().map_err(|_| bad())? };
        let beta = if be.is_empty() { 0 } else { be.strip_prefix('+').unwrap_or(be).parse().map_err(|_| bad())? };
        Ok(CountRef { spec, alpha, beta, scalar: if neg { -scalar } else { scalar } })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Must hold; a mismatch fails the suite.
    Pinned,
    /// Checked and reported only.
    Empirical,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pinned => "pinned",
            Status::Empirical => "empirical",
        })
    }
}

/// `lhs = Σ rhs` for every `N` in the residue class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationStatement {
    pub id: String,
    /// `(modulus, residue)`; `None` means every `N >= 0`.
    pub residue: Option<(i64, i64)>,
    pub lhs: CountRef,
    pub rhs: Vec<CountRef>,
    pub citation: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RelationStatement {
    /// Parses `"LHS = RHS"` where RHS is `0` or a signed sum of counts.
    pub fn parse(id: &str, residue: Option<(i64, i64)>, text: &str, status: Status) -> Result<Self> {
        let (l, r) = text.split_once('=').ok_or_else(|| invalid(format!("missing `=` in `{text}`")))?;
        let lhs: CountRef = l.parse()?;
        let r = r.trim();
        let mut rhs = Vec::new();
        if r != "0" {
            let mut start = 0;
            let mut depth = 0;
            for (i, c) in r.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '+' | '-' if depth == 0 && i > start && !r[start..i].trim().is_empty() => {
                        rhs.push(r[start..i].parse()?);
                        start = i;
                    }
                    _ => {}
                }
            }
            rhs.push(r[start..].parse()?);
        }
        Ok(RelationStatement { id: id.into(), residue, lhs, rhs, citation: String::new(), status, note: None })
    }

    pub fn in_class(&self, n: i64) -> bool {
        self.residue.is_none_or(|(m, r)| n.rem_euclid(m) == r)
    }

    /// Largest count argument needed for `N <= nmax`.
    pub fn max_arg(&self, nmax: i64) -> i64 {
        std::iter::once(&self.lhs).chain(&self.rhs).map(|c| c.arg(nmax)).max().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = &CountRef> {
        std::iter::once(&self.lhs).chain(&self.rhs)
    }
}

impl fmt::Display for RelationStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.lhs)?;
        if self.rhs.is_empty() {
            write!(f, " 0")?;
        }
        for (i, c) in self.rhs.iter().enumerate() {
            let s = c.to_string();
            match (i, s.strip_prefix('-')) {
                (0, _) => write!(f, " {s}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {s}")?,
            }
        }
        if let Some((m, r)) = self.residue {
            write!(f, "  (N = {r} mod {m})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: i64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Every `N <= nmax` in the relation's class at which the sides differ.
pub fn verify_relation(rel: &RelationStatement, nmax: i64, cache: &mut CountCache) -> Vec<Counterexample> {
    let top = rel.max_arg(nmax).max(0);
    let tables: Vec<_> = rel.counts().map(|c| cache.table(c.spec, top)).collect();
    let mut bad = Vec::new();
    for n in (0..=nmax).filter(|&n| rel.in_class(n)) {
        let lhs = rel.lhs.eval(&tables[0], n);
        let rhs: i64 = rel.rhs.iter().zip(&tables[1..]).map(|(c, t)| c.eval(t, n)).sum();
        if lhs != rhs {
            bad.push(Counterexample { n, lhs, rhs });
        }
    }
    bad
}

/// Every `N <= nmax` with `N = residue (mod modulus)` that the form
/// represents.
pub fn nonrep_scan(spec: &MixedSumSpec, modulus: i64, residue: i64, nmax: i64) -> Result<Vec<i64>> {
    if modulus < 1 || residue < 0 || residue >= modulus {
        return Err(invalid(format!("need 0 <= residue < modulus, got residue {residue} modulus {modulus}")));
    }
    let t = CountTable::build(*spec, nmax);
    Ok((residue..=nmax).step_by(modulus as usize).filter(|&n| t.get(n) > 0).collect())
}

/// A residue class no form in the family represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonrepClaim {
    pub label: &'static str,
    pub form: FormName,
    pub coeffs: [i64; 3],
    pub modulus: i64,
    pub residue: i64,
}

impl NonrepClaim {
    pub fn spec(&self) -> MixedSumSpec {
        MixedSumSpec { form: self.form, coeffs: self.coeffs }
    }
}

pub const NONREP_COROLLARIES: [NonrepClaim; 10] = [
    NonrepClaim { label: "l^2+m^2+4t_n", form: FormName::Rt, coeffs: [1, 1, 4], modulus: 4, residue: 3 },
    NonrepClaim { label: "4p_l+g_m+g_n", form: FormName::PG, coeffs: [4, 1, 1], modulus: 4, residue: 3 },
    NonrepClaim { label: "3l^2+3m^2+4t_n", form: FormName::Rt, coeffs: [3, 3, 4], modulus: 4, residue: 1 },
    NonrepClaim { label: "3l^2+3m^2+4p_n", form: FormName::Rp, coeffs: [3, 3, 4], modulus: 4, residue: 1 },
    NonrepClaim { label: "3l^2+12t_m+g_n", form: FormName::Rtg, coeffs: [3, 12, 1], modulus: 4, residue: 2 },
    NonrepClaim { label: "3l^2+4p_m+g_n", form: FormName::Rpg, coeffs: [3, 4, 1], modulus: 4, residue: 2 },
    NonrepClaim { label: "9l^2+4p_m+3g_n", form: FormName::Rpg, coeffs: [9, 4, 3], modulus: 4, residue: 2 },
    NonrepClaim { label: "3l^2+4t_m+g_n", form: FormName::Rtg, coeffs: [3, 4, 1], modulus: 4, residue: 2 },
    NonrepClaim { label: "12t_l+g_m+g_n", form: FormName::TG, coeffs: [12, 1, 1], modulus: 4, residue: 3 },
    NonrepClaim { label: "4t_l+g_m+g_n", form: FormName::TG, coeffs: [4, 1, 1], modulus: 4, residue: 3 },
];

/// The classical representation facts checked empirically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalId {
    /// Every `N` is a sum of three triangular numbers.
    Gauss3tri,
    /// The seven universal `a t_x + b t_y + c t_z`.
    Liouville,
    /// Universal `a x^2 + b y^2 + c t_z`.
    SunSqSqT,
    /// Universal `a x^2 + b t_y + c t_z`.
    SunSqTT,
    /// Three squares miss exactly `4^k(8l+7)`.
    GaussLegendre,
    /// Even `N` missed by `x^2+y^2+10z^2` are exactly `4^k(16l+6)`.
    RamanujanDickson10,
    /// Positive `N` missed by `x^2+2y^2+6z^2` are exactly `4^k(8l+5)`.
    Dickson126,
}

impl ClassicalId {
    pub const ALL: [ClassicalId; 7] = [
        ClassicalId::Gauss3tri,
        ClassicalId::Liouville,
        ClassicalId::SunSqSqT,
        ClassicalId::SunSqTT,
        ClassicalId::GaussLegendre,
        ClassicalId::RamanujanDickson10,
        ClassicalId::Dickson126,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassicalId::Gauss3tri => "gauss3tri",
            ClassicalId::Liouville => "liouville",
            ClassicalId::SunSqSqT => "sun_sq_sq_t",
            ClassicalId::SunSqTT => "sun_sq_t_t",
            ClassicalId::GaussLegendre => "gauss_legendre",
            ClassicalId::RamanujanDickson10 => "ramanujan_dickson_10",
            ClassicalId::Dickson126 => "dickson_126",
        }
    }

    /// Default scan bound used by the suite.
    pub fn default_nmax(self) -> i64 {
        match self {
            ClassicalId::Gauss3tri => 5000,
            ClassicalId::Liouville | ClassicalId::SunSqSqT | ClassicalId::SunSqTT => 2000,
            _ => 4096,
        }
    }
}

impl FromStr for ClassicalId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassicalId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown classical check `{s}`")))
    }
}

impl fmt::Display for ClassicalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const LIOUVILLE: [[i64; 3]; 7] = [[1, 1, 1], [1, 1, 2], [1, 1, 4], [1, 1, 5], [1, 2, 2], [1, 2, 3], [1, 2, 4]];
const SUN_SQ_SQ_T: [[i64; 3]; 10] =
    [[1, 1, 1], [1, 1, 2], [1, 2, 1], [1, 2, 2], [1, 2, 4], [1, 3, 1], [1, 4, 1], [1, 4, 2], [1, 8, 1], [2, 2, 1]];
const SUN_SQ_T_T: [[i64; 3]; 15] = [
    [1, 1, 1],
    [1, 2, 1],
    [1, 2, 2],
    [1, 3, 1],
    [1, 4, 1],
    [1, 4, 2],
    [1, 5, 2],
    [1, 6, 1],
    [1, 8, 1],
    [2, 1, 1],
    [2, 2, 1],
    [2, 4, 1],
    [3, 2, 1],
    [4, 1, 1],
    [4, 2, 1],
];

/// Coefficients, `4^k (modulus l + residue)` class, and the domain of `N`.
type ExceptionSet = ([i64; 3], i64, i64, fn(i64) -> bool);

/// A number the claim gets wrong: uncovered by a universal form, or on the
/// wrong side of an exception set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub form: String,
    pub n: i64,
    pub count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub id: ClassicalId,
    pub nmax: i64,
    pub forms_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// True when `n = 4^k (modulus·l + residue)` for some `k, l >= 0`.
pub fn in_power4_class(mut n: i64, modulus: i64, residue: i64) -> bool {
    if n <= 0 {
        return false;
    }
    loop {
        if n % modulus == residue {
            return true;
        }
        if n % 4 != 0 {
            return false;
        }
        n /= 4;
    }
}

pub fn classical_check(id: ClassicalId, nmax: i64) -> ClassicalReport {
    let mut discrepancies = Vec::new();
    let mut coverage = |form: FormName, vectors: &[[i64; 3]]| {
        for &coeffs in vectors {
            let spec = MixedSumSpec { form, coeffs };
            let t = CountTable::build(spec, nmax);
            for n in (0..=nmax).filter(|&n| t.get(n) == 0) {
                discrepancies.push(Discrepancy { form: spec.to_string(), n, count: 0 });
            }
        }
        vectors.len()
    };
    let forms_checked = match id {
        ClassicalId::Gauss3tri => coverage(FormName::T, &[[1, 1, 1]]),
        ClassicalId::Liouville => coverage(FormName::T, &LIOUVILLE),
        ClassicalId::SunSqSqT => coverage(FormName::Rt, &SUN_SQ_SQ_T),
        ClassicalId::SunSqTT => coverage(FormName::RT, &SUN_SQ_T_T),
        ClassicalId::GaussLegendre | ClassicalId::RamanujanDickson10 | ClassicalId::Dickson126 => {
            let (coeffs, modulus, residue, domain): ExceptionSet = match id {
                ClassicalId::GaussLegendre => ([1, 1, 1], 8, 7, |_| true),
                ClassicalId::RamanujanDickson10 => ([1, 1, 10], 16, 6, |n| n % 2 == 0),
                _ => ([1, 2, 6], 8, 5, |n| n >= 1),
            };
            let spec = MixedSumSpec { form: FormName::R, coeffs };
            let t = CountTable::build(spec, nmax);
            for n in (0..=nmax).filter(|&n| domain(n)) {
                if (t.get(n) == 0) != in_power4_class(n, modulus, residue) {
                    discrepancies.push(Discrepancy { form: spec.to_string(), n, count: t.get(n) });
                }
            }
            1
        }
    };
    ClassicalReport { id, nmax, forms_checked, discrepancies }
}

/// Checks that `classes` cover every residue modulo their common modulus
/// exactly once.
pub fn residue_partition(classes: &[(i64, i64)]) -> Result<()> {
    let Some(&(m, _)) = classes.first() else {
        return Err(invalid("no residue classes given"));
    };
    let mut seen = vec![0; m.max(0) as usize];
    for &(mm, r) in classes {
        if mm != m || r < 0 || r >= m {
            return Err(invalid(format!("class {r} mod {mm} does not fit modulus {m}")));
        }
        seen[r as usize] += 1;
    }
    match seen.iter().position(|&c| c != 1) {
        None => Ok(()),
        Some(r) => Err(invalid(format!("residue {r} mod {m} is covered {} times", seen[r]))),
    }
}

/// The residue class `(modulus, residue)` of the left-hand argument
/// `alpha N + beta`, for relations in the family with plain `N` classes.
pub fn lhs_class(rel: &RelationStatement) -> (i64, i64) {
    match rel.residue {
        Some(c) if rel.lhs.alpha == 1 && rel.lhs.beta == 0 => c,
        _ => (rel.lhs.alpha, rel.lhs.beta.rem_euclid(rel.lhs.alpha)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> MixedSumSpec {
        s.parse().unwrap()
    }

    #[test]
    fn figurate_examples() {
        let vals = |k, l| figurate_values(k, l).into_iter().map(|(_, v)| v).collect::<Vec<_>>();
        assert_eq!(vals(FigurateKind::Triangular, 10), vec![0, 1, 3, 6, 10]);
        assert_eq!(figurate_values(FigurateKind::GenOctagonal, 16), vec![(0, 0), (-1, 1), (1, 5), (-2, 8), (2, 16)]);
        assert_eq!(figurate_values(FigurateKind::GenPentagonal, 7), vec![(0, 0), (-1, 1), (1, 2), (-2, 5), (2, 7)]);
        assert_eq!(vals(FigurateKind::Square, 4), vec![0, 1, 1, 4, 4]);
        assert!(figurate_values(FigurateKind::Square, -1).is_empty());
    }

    #[test]
    fn registry() {
        use FigurateKind::*;
        assert_eq!(registry_lookup("rT").unwrap(), [Square, Triangular, Triangular]);
        assert_eq!(registry_lookup("Pg").unwrap(), [GenPentagonal, GenPentagonal, GenOctagonal]);
        assert_eq!(registry_lookup("zz"), Err(Error::UnknownForm("zz".into())));
        for f in FormName::ALL {
            assert_eq!(f.as_str().parse::<FormName>().unwrap(), f);
        }
    }

    #[test]
    fn worked_example_counts() {
        assert_eq!(count_enumerate(&spec("rT(1,1,1)"), 5), 8);
        assert_eq!(count_enumerate(&spec("T(2,4,4)"), 4), 2);
        assert_eq!(count_enumerate(&spec("Rt(2,2,2)"), 5), 0);
        assert_eq!(count_enumerate(&spec("rT(1,1,1)"), 10), 16);
        assert_eq!(count_enumerate(&spec("Rt(2,2,2)"), 10), 16);
        assert_eq!(count_enumerate(&spec("r(1,1,1)"), 7), 0);
        assert_eq!(count_enumerate(&spec("r(1,1,1)"), -3), 0);
    }

    #[test]
    fn series_examples() {
        let s = count_series::<i64>(&spec("r(1,1,2)"), 10).unwrap();
        assert_eq!(s.coeff(HalfExp::whole(1)), Ok(4));
        let s = count_series::<i64>(&spec("T(1,1,1)"), 10).unwrap();
        assert_eq!(s.coeff(HalfExp::whole(3)), Ok(4));
        let s = count_series::<i64>(&spec("G(1,1,2)"), 10).unwrap();
        assert_eq!(s.coeff(HalfExp::whole(1)), Ok(2));
    }

    #[test]
    fn table_matches_single_queries() {
        let s = spec("tpg(3,2,1)");
        let t = CountTable::build(s, 300);
        for n in 0..=300 {
            assert_eq!(t.get(n), count_enumerate(&s, n), "n={n}");
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(spec(" rT( 1, 1, 1 ) ").coeffs, [1, 1, 1]);
        assert!("rT(1,1)".parse::<MixedSumSpec>().is_err());
        assert!("rT(1,0,1)".parse::<MixedSumSpec>().is_err());
        assert!("rT(1,-1,1)".parse::<MixedSumSpec>().is_err());
        assert!(matches!("zz(1,1,1)".parse::<MixedSumSpec>(), Err(Error::UnknownForm(_))));
    }

    #[test]
    fn count_ref_round_trip() {
        for s in ["4T(2,4,4;N-1)", "rT(1,1,1;2N+1)", "-2rtg(3,6,1;N-1)", "tpg(10,5,2;5N)"] {
            let c: CountRef = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        let c: CountRef = "-2rtg(3,6,1;N-1)".parse().unwrap();
        assert_eq!((c.scalar, c.alpha, c.beta), (-2, 1, -1));
    }

    #[test]
    fn relation_parsing_and_checking() {
        let rel = RelationStatement::parse("t", Some((2, 1)), "rT(1,1,1;N) = 4T(2,4,4;N-1)", Status::Pinned).unwrap();
        assert_eq!(rel.rhs.len(), 1);
        let mut cache = CountCache::new();
        assert!(verify_relation(&rel, 100, &mut cache).is_empty());
        let broken =
            RelationStatement::parse("t", Some((2, 1)), "rT(1,1,1;N) = 3T(2,4,4;N-1)", Status::Pinned).unwrap();
        let bad = verify_relation(&broken, 100, &mut cache);
        assert_eq!(bad[0].n, 1);
        let zero = RelationStatement::parse("z", None, "Rt(1,1,4;4N+3) = 0", Status::Pinned).unwrap();
        assert!(zero.rhs.is_empty());
        assert!(verify_relation(&zero, 200, &mut cache).is_empty());
        let diff = RelationStatement::parse("d", None, "rP(3,1,1;N) = Rp(3,3,4;2N) + 2rtg(3,6,1;N-1)", Status::Pinned)
            .unwrap();
        assert_eq!(diff.rhs.len(), 2);
        assert_eq!(diff.to_string(), "rP(3,1,1;N) = Rp(3,3,4;2N) + 2rtg(3,6,1;N-1)");
    }

    #[test]
    fn scans() {
        assert!(nonrep_scan(&spec("Rt(1,1,4)"), 4, 3, 1000).unwrap().is_empty());
        assert!(nonrep_scan(&spec("pG(4,1,1)"), 4, 3, 1000).unwrap().is_empty());
        assert_eq!(nonrep_scan(&spec("Rt(1,1,4)"), 4, 1, 100).unwrap()[0], 1);
        assert!(nonrep_scan(&spec("Rt(1,1,4)"), 4, 4, 100).is_err());
    }

    #[test]
    fn power4_classes() {
        let seven: Vec<_> = (0..=40).filter(|&n| in_power4_class(n, 8, 7)).collect();
        assert_eq!(seven, vec![7, 15, 23, 28, 31, 39]);
        assert!(!in_power4_class(0, 8, 7));
    }

    #[test]
    fn partitions() {
        assert!(residue_partition(&[(4, 0), (4, 1), (4, 2), (4, 3)]).is_ok());
        assert!(residue_partition(&[(4, 0), (4, 1), (4, 1), (4, 3)]).is_err());
        assert!(residue_partition(&[(4, 0), (2, 1)]).is_err());
        assert!(residue_partition(&[]).is_err());
    }
}
