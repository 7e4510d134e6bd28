use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::{invalid, Error, Result};
use crate::exp::HalfExp;
use crate::series::HalfPowerSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign with parity `delta`: `(-1)^delta`.
    pub fn from_delta(delta: i64) -> Sign {
        if delta.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `(1 - eps) / 2`.
    pub fn delta(self) -> i64 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn pow(self, n: i64) -> Sign {
        Sign::from_delta(self.delta() * n)
    }

    pub fn to_int(self) -> i64 {
        1 - 2 * self.delta()
    }

    pub fn value<C: Coeff>(self) -> C {
        match self {
            Sign::Plus => C::one(),
            Sign::Minus => -C::one(),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_int() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s.trim() {
            "1" | "+1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(invalid(format!("sign must be 1 or -1, got `{other}`"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

/// `f(eps·q^{a/2}, eps·q^{b/2})` with `a`, `b` in half-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaArg {
    pub eps: Sign,
    pub a: HalfExp,
    pub b: HalfExp,
}

impl ThetaArg {
    pub fn new(eps: Sign, a: i64, b: i64) -> Self {
        ThetaArg { eps, a: HalfExp(a), b: HalfExp(b) }
    }

    /// Arguments given as whole powers of q.
    pub fn whole(eps: Sign, g: i64, h: i64) -> Self {
        ThetaArg { eps, a: HalfExp::whole(g), b: HalfExp::whole(h) }
    }

    pub fn swapped(self) -> Self {
        ThetaArg { a: self.b, b: self.a, ..self }
    }

    /// True when the function is identically zero: `f(-1, x) = 0`.
    pub fn vanishes(&self) -> bool {
        self.eps == Sign::Minus && (self.a.0 == 0 || self.b.0 == 0)
    }

    /// Half-unit exponent of the n-th summand.
    pub fn term_exp(&self, n: i64) -> HalfExp {
        let (a, b) = (self.a.0, self.b.0);
        HalfExp(((a + b) * n * n + (a - b) * n) / 2)
    }

    fn check_expandable(&self) -> Result<()> {
        if self.a.0 + self.b.0 <= 0 && !self.vanishes() {
            return Err(Error::Divergent(*self));
        }
        Ok(())
    }

    /// Least exponent carrying a nonzero coefficient, or `None` if the
    /// function vanishes identically.
    pub fn valuation(&self) -> Result<Option<HalfExp>> {
        self.check_expandable()?;
        if self.vanishes() {
            return Ok(None);
        }
        let n0 = self.vertex_floor();
        Ok(Some(self.term_exp(n0).min(self.term_exp(n0 + 1))))
    }

    // floor of the vertex -(a-b) / (2(a+b)) of the exponent parabola
    fn vertex_floor(&self) -> i64 {
        let (a, b) = (self.a.0, self.b.0);
        (b - a).div_euclid(2 * (a + b))
    }

    pub fn expand<C: Coeff>(&self, hi: HalfExp) -> Result<HalfPowerSeries<C>> {
        theta_expand(*self, hi)
    }
}

impl fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.eps == Sign::Minus { "-" } else { "" };
        let part = |e: HalfExp| {
            if e.0 == 0 {
                format!("{s}1")
            } else if e.0 == 2 {
                format!("{s}q")
            } else {
                format!("{s}q^{e}")
            }
        };
        write!(f, "f({}, {})", part(self.a), part(self.b))
    }
}

/// Expands `arg` through exponent `hi`.
///
/// A zero exponent under a minus sign gives the zero series; under a plus
/// sign the full two-sided sum is returned, which is `2 f(q^{b/2}, q^{3b/2})`.
pub fn theta_expand<C: Coeff>(arg: ThetaArg, hi: HalfExp) -> Result<HalfPowerSeries<C>> {
    arg.check_expandable()?;
    if arg.vanishes() {
        return Ok(HalfPowerSeries::zero(hi));
    }
    // The exponent is a convex quadratic in n, so walking away from its
    // vertex in each direction can stop at the first exponent above hi.
    let n0 = arg.vertex_floor();
    let mut terms = Vec::new();
    for (start, step) in [(n0, -1i64), (n0 + 1, 1)] {
        let mut n = start;
        loop {
            let e = arg.term_exp(n);
            if e > hi {
                break;
            }
            terms.push((e, arg.eps.pow(n).value::<C>()));
            n += step;
        }
    }
    HalfPowerSeries::from_terms(terms, hi)
}

/// Expands `arg` from its product form
/// `(-x; xy)_inf (-y; xy)_inf (xy; xy)_inf` with `x = eps·q^{a/2}`,
/// `y = eps·q^{b/2}`. Both exponents must be nonnegative.
pub fn jacobi_triple_product<C: Coeff>(arg: ThetaArg, hi: HalfExp) -> Result<HalfPowerSeries<C>> {
    let (a, b) = (arg.a.0, arg.b.0);
    if a < 0 || b < 0 {
        return Err(invalid(format!("{arg} has a negative exponent; normalize it first")));
    }
    arg.check_expandable()?;
    if hi.0 < 0 {
        return Ok(HalfPowerSeries::zero(hi));
    }
    let top = hi.0 as usize;
    let mut c = vec![C::zero(); top + 1];
    c[0] = C::one();
    let step = a + b;
    let mut factors: Vec<(i64, Sign)> = Vec::new();
    let mut n = 0;
    while a + step * n <= hi.0 || b + step * n <= hi.0 {
        factors.push((a + step * n, arg.eps));
        factors.push((b + step * n, arg.eps));
        factors.push((step * (n + 1), Sign::Minus));
        n += 1;
    }
    for (e, s) in factors {
        if e > hi.0 {
            continue;
        }
        let sv = s.value::<C>();
        if e == 0 {
            // 1 + eps is 0 or 2.
            let k = C::one().add_exact(sv)?;
            for x in c.iter_mut() {
                *x = x.mul_exact(k)?;
            }
            continue;
        }
        let e = e as usize;
        for i in (e..=top).rev() {
            let prev = c[i - e];
            if !prev.is_zero() {
                c[i] = c[i].add_exact(prev.mul_exact(sv)?)?;
            }
        }
    }
    HalfPowerSeries::from_terms(c.into_iter().enumerate().map(|(i, x)| (HalfExp(i as i64), x)), hi)
}

/// `sign · q^{prefactor/2} · f(arg)` with both exponents of `arg`
/// nonnegative and `arg.a <= arg.b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedTheta {
    pub sign_factor: Sign,
    pub prefactor_exp: HalfExp,
    pub arg: ThetaArg,
}

impl NormalizedTheta {
    pub fn expand<C: Coeff>(&self, hi: HalfExp) -> Result<HalfPowerSeries<C>> {
        let inner = theta_expand::<C>(self.arg, hi - self.prefactor_exp)?;
        inner.shift(self.prefactor_exp).scale(self.sign_factor.value())
    }
}

/// Rewrites `f(±q^{-r/2}, ±q^{s/2})`, `0 <= r < s`, as a monomial times a
/// theta function with nonnegative exponents. Arguments that already have
/// nonnegative exponents are only reordered.
pub fn theta_normalize(arg: ThetaArg) -> Result<NormalizedTheta> {
    if arg.a.0 + arg.b.0 <= 0 {
        return Err(Error::Divergent(arg));
    }
    let (lo, hi) = (arg.a.0.min(arg.b.0), arg.a.0.max(arg.b.0));
    if lo >= 0 {
        return Ok(NormalizedTheta {
            sign_factor: Sign::Plus,
            prefactor_exp: HalfExp::ZERO,
            arg: ThetaArg::new(arg.eps, lo, hi),
        });
    }
    let (r, s) = (-lo, hi);
    let m = s / (s - r);
    let l = m * (s - r) - r;
    let k = s - m * (s - r);
    let h = m * r - m * (m - 1) * (s - r) / 2;
    Ok(NormalizedTheta {
        sign_factor: arg.eps.pow(m),
        prefactor_exp: HalfExp(-h),
        arg: ThetaArg::new(arg.eps, l.min(k), l.max(k)),
    })
}

/// The classical one-variable specializations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialTheta {
    /// `f(q, q)`
    Phi,
    /// `f(q, q^3)`
    Psi,
    /// `f(-q, -q^2)`
    FNeg,
    /// `f(q, q^2)`
    X,
    /// `f(q, q^5)`
    Y,
}

impl FromStr for SpecialTheta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(SpecialTheta::Phi),
            "psi" => Ok(SpecialTheta::Psi),
            "f" | "fneg" => Ok(SpecialTheta::FNeg),
            "X" => Ok(SpecialTheta::X),
            "Y" => Ok(SpecialTheta::Y),
            other => Err(invalid(format!("unknown theta function `{other}`"))),
        }
    }
}

/// The named function evaluated at `q^scale`.
pub fn theta_special(name: SpecialTheta, scale: i64) -> Result<ThetaArg> {
    if scale < 1 {
        return Err(invalid(format!("scale must be positive, got {scale}")));
    }
    let s = scale;
    Ok(match name {
        SpecialTheta::Phi => ThetaArg::new(Sign::Plus, 2 * s, 2 * s),
        SpecialTheta::Psi => ThetaArg::new(Sign::Plus, 2 * s, 6 * s),
        SpecialTheta::FNeg => ThetaArg::new(Sign::Minus, 2 * s, 4 * s),
        SpecialTheta::X => ThetaArg::new(Sign::Plus, 2 * s, 4 * s),
        SpecialTheta::Y => ThetaArg::new(Sign::Plus, 2 * s, 10 * s),
    })
}

/// Flips the sign of `arg` when `delta` is odd.
pub fn f_delta(delta: i64, arg: ThetaArg) -> ThetaArg {
    ThetaArg { eps: arg.eps * Sign::from_delta(delta), ..arg }
}

/// One summand `sign · q^{prefactor/2} · f(arg)` of an n-dissection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionTerm {
    pub prefactor: HalfExp,
    pub sign: Sign,
    pub arg: ThetaArg,
}

/// Splits `f(x, y)` into `n` theta functions in `x^{n(n+1)/2} y^{n(n-1)/2}`
/// and `x^{n(n-1)/2} y^{n(n+1)/2}`.
pub fn entry31_dissect(arg: ThetaArg, n: i64) -> Result<Vec<DissectionTerm>> {
    if n < 1 {
        return Err(invalid(format!("dissection order must be positive, got {n}")));
    }
    arg.check_expandable()?;
    let (a, b) = (arg.a.0, arg.b.0);
    let u = |r: i64| a * r * (r + 1) / 2 + b * r * (r - 1) / 2;
    let v = |m: i64| a * m * (m - 1) / 2 + b * m * (m + 1) / 2;
    Ok((0..n)
        .map(|r| DissectionTerm {
            prefactor: HalfExp(u(r)),
            sign: arg.eps.pow(r),
            arg: ThetaArg::new(arg.eps.pow(n), u(n + r) - u(r), v(n - r) - u(r)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Series;

    fn h(n: i64) -> HalfExp {
        HalfExp(n)
    }

    fn coeffs(s: &Series, upto: i64) -> Vec<i64> {
        (0..=upto).map(|e| s.coeff(HalfExp::whole(e)).unwrap()).collect()
    }

    #[test]
    fn phi_leading_coefficients() {
        let phi: Series = theta_expand(ThetaArg::new(Sign::Plus, 2, 2), h(20)).unwrap();
        assert_eq!(coeffs(&phi, 4), vec![1, 2, 0, 0, 2]);
        assert_eq!(phi.coeff(h(7)), Ok(0));
    }

    #[test]
    fn minus_one_argument_vanishes() {
        let s: Series = theta_expand(ThetaArg::new(Sign::Minus, 0, 6), h(40)).unwrap();
        assert!(s.is_zero());
        // Also when the other exponent would make the sum divergent.
        let s: Series = theta_expand(ThetaArg::new(Sign::Minus, 0, -4), h(40)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn divergent_arguments_are_rejected() {
        let arg = ThetaArg::new(Sign::Plus, 2, -2);
        assert_eq!(theta_expand::<i64>(arg, h(10)), Err(Error::Divergent(arg)));
        assert!(theta_expand::<i64>(ThetaArg::new(Sign::Plus, 0, 0), h(10)).is_err());
    }

    #[test]
    fn negative_exponent_completes_the_square() {
        // n^2 - 2n = (n-1)^2 - 1
        let s: Series = theta_expand(ThetaArg::new(Sign::Plus, -2, 6), h(60)).unwrap();
        let phi: Series = theta_expand(ThetaArg::new(Sign::Plus, 2, 2), h(62)).unwrap();
        assert_eq!(s.compare(&phi.shift(h(-2)), h(60)), Ok(crate::Comparison::Equal));
        assert_eq!(s.coeff(h(-2)), Ok(1));
    }

    #[test]
    fn specials() {
        let psi = theta_special(SpecialTheta::Psi, 1).unwrap();
        assert_eq!(psi, ThetaArg::new(Sign::Plus, 2, 6));
        let s: Series = psi.expand(h(20)).unwrap();
        let support: Vec<_> = s.terms().map(|(e, c)| (e.0 / 2, c)).collect();
        assert_eq!(support, vec![(0, 1), (1, 1), (3, 1), (6, 1), (10, 1)]);
        let y: Series = theta_special(SpecialTheta::Y, 1).unwrap().expand(h(32)).unwrap();
        let support: Vec<_> = y.terms().map(|(e, _)| e.0 / 2).collect();
        assert_eq!(support, vec![0, 1, 5, 8, 16]);
        let phi2 = theta_special(SpecialTheta::Phi, 2).unwrap();
        assert_eq!(phi2.expand::<i64>(h(4)).unwrap().coeff(h(4)), Ok(2));
        assert!(theta_special(SpecialTheta::X, 0).is_err());
        assert!("Z".parse::<SpecialTheta>().is_err());
    }

    #[test]
    fn product_form_matches_known_series() {
        let arg = ThetaArg::new(Sign::Minus, 2, 4);
        let p: Series = jacobi_triple_product(arg, h(100)).unwrap();
        // Euler's pentagonal number theorem.
        let expected: Vec<(HalfExp, i64)> = (-10i64..=10)
            .map(|n| (HalfExp(n * (3 * n + 1)), if n % 2 == 0 { 1 } else { -1 }))
            .filter(|(e, _)| e.0 <= 100)
            .collect();
        let mut got: Vec<_> = p.terms().collect();
        let mut expected = expected;
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        let z: Series = jacobi_triple_product(ThetaArg::new(Sign::Minus, 0, 2), h(50)).unwrap();
        assert!(z.is_zero());
        assert!(jacobi_triple_product::<i64>(ThetaArg::new(Sign::Plus, -1, 3), h(10)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let n = theta_normalize(ThetaArg::new(Sign::Plus, -2, 6)).unwrap();
        assert_eq!(n.sign_factor, Sign::Plus);
        assert_eq!(n.prefactor_exp, h(-2));
        assert_eq!(n.arg, ThetaArg::new(Sign::Plus, 2, 2));
        let n = theta_normalize(ThetaArg::new(Sign::Minus, -2, 6)).unwrap();
        assert_eq!(n.sign_factor, Sign::Minus);
        assert_eq!(n.arg, ThetaArg::new(Sign::Minus, 2, 2));
        let id = theta_normalize(ThetaArg::new(Sign::Plus, 2, 6)).unwrap();
        assert_eq!(id.prefactor_exp, h(0));
        assert_eq!(id.sign_factor, Sign::Plus);
        assert!(theta_normalize(ThetaArg::new(Sign::Plus, -6, 2)).is_err());
    }

    #[test]
    fn two_dissections() {
        let phi = theta_special(SpecialTheta::Phi, 1).unwrap();
        let t = entry31_dissect(phi, 2).unwrap();
        assert_eq!(t[0].arg, ThetaArg::new(Sign::Plus, 8, 8));
        assert_eq!((t[1].prefactor, t[1].arg), (h(2), ThetaArg::new(Sign::Plus, 16, 0)));
        let psi = theta_special(SpecialTheta::Psi, 1).unwrap();
        let t = entry31_dissect(psi, 2).unwrap();
        assert_eq!(t[0].arg, ThetaArg::new(Sign::Plus, 12, 20));
        assert_eq!((t[1].prefactor, t[1].arg), (h(2), ThetaArg::new(Sign::Plus, 28, 4)));
        let x = theta_special(SpecialTheta::X, 1).unwrap();
        let t = entry31_dissect(x, 2).unwrap();
        assert_eq!(t[0].arg, ThetaArg::new(Sign::Plus, 10, 14));
        assert_eq!((t[1].prefactor, t[1].arg), (h(2), ThetaArg::new(Sign::Plus, 22, 2)));
    }

    #[test]
    fn f_delta_flips_on_odd() {
        let phi = ThetaArg::new(Sign::Plus, 2, 2);
        assert_eq!(f_delta(0, phi), phi);
        assert_eq!(f_delta(1, phi), ThetaArg::new(Sign::Minus, 2, 2));
        assert_eq!(f_delta(2, phi), phi);
        assert_eq!(f_delta(-1, phi).eps, Sign::Minus);
    }

    #[test]
    fn display() {
        assert_eq!(ThetaArg::new(Sign::Minus, 0, 3).to_string(), "f(-1, -q^3/2)");
        assert_eq!(ThetaArg::new(Sign::Plus, 2, 6).to_string(), "f(q, q^3)");
    }
}
