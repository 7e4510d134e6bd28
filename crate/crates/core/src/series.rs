use std::fmt;

use crate::coeff::Coeff;
use crate::error::{invalid, Error, Result};
use crate::exp::HalfExp;

/// A truncated formal power series in q on the half-integer exponent grid.
///
/// Coefficients are stored densely from `lo` through `hi` inclusive. Every
/// exponent below `lo` has coefficient zero; every exponent above `hi` is
/// unknown, so reading past `hi` is an error rather than a silent zero.
#[derive(Clone, PartialEq, Eq)]
pub struct HalfPowerSeries<C> {
    lo: HalfExp,
    hi: HalfExp,
    coeffs: Vec<C>,
}

/// Outcome of a coefficientwise comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison<C> {
    Equal,
    /// The least exponent at which the two series differ.
    Mismatch {
        exp: HalfExp,
        left: C,
        right: C,
    },
}

impl<C> Comparison<C> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

impl<C: Coeff> HalfPowerSeries<C> {
    fn filled(lo: HalfExp, hi: HalfExp) -> Self {
        debug_assert!(lo <= hi);
        let len = (hi.0 - lo.0 + 1) as usize;
        HalfPowerSeries { lo, hi, coeffs: vec![C::zero(); len] }
    }

    /// The zero series, known through `hi`.
    pub fn zero(hi: HalfExp) -> Self {
        Self::filled(HalfExp(hi.0.min(0)), hi)
    }

    /// `c·q^{e/2}`, known through `hi`.
    pub fn monomial(c: C, e: HalfExp, hi: HalfExp) -> Result<Self> {
        if e > hi {
            return Err(Error::BeyondBound { exp: e, hi });
        }
        let mut s = Self::filled(HalfExp(e.0.min(0)), hi);
        *s.slot(e) = c;
        Ok(s)
    }

    /// The constant 1, known through `hi` (which must be ≥ 0).
    pub fn one(hi: HalfExp) -> Result<Self> {
        Self::monomial(C::one(), HalfExp::ZERO, hi)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate and pairs above `hi` are dropped.
    pub fn from_terms<I>(terms: I, hi: HalfExp) -> Result<Self>
    where
        I: IntoIterator<Item = (HalfExp, C)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(e, _)| *e <= hi).collect();
        let lo = terms.iter().map(|(e, _)| e.0).min().unwrap_or(0).min(0).min(hi.0);
        let mut s = Self::filled(HalfExp(lo), hi);
        for (e, c) in terms {
            let slot = s.slot(e);
            *slot = slot.add_exact(c)?;
        }
        Ok(s)
    }

    fn slot(&mut self, e: HalfExp) -> &mut C {
        &mut self.coeffs[(e.0 - self.lo.0) as usize]
    }

    fn get(&self, e: HalfExp) -> C {
        if e < self.lo || e > self.hi {
            C::zero()
        } else {
            self.coeffs[(e.0 - self.lo.0) as usize]
        }
    }

    pub fn lo(&self) -> HalfExp {
        self.lo
    }

    /// Inclusive validity bound.
    pub fn hi(&self) -> HalfExp {
        self.hi
    }

    /// Exact coefficient of q^{e/2}.
    pub fn coeff(&self, e: HalfExp) -> Result<C> {
        if e > self.hi {
            return Err(Error::BeyondBound { exp: e, hi: self.hi });
        }
        Ok(self.get(e))
    }

    /// Least exponent with a nonzero coefficient, or `hi` for a series that
    /// is zero as far as it is known.
    pub fn valuation(&self) -> HalfExp {
        self.coeffs.iter().position(|c| !c.is_zero()).map_or(self.hi, |i| HalfExp(self.lo.0 + i as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfExp, C)> + '_ {
        let lo = self.lo.0;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (HalfExp(lo + i as i64), *c))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C, C) -> Result<C>) -> Result<Self> {
        let lo = self.lo.min(other.lo);
        let hi = self.hi.min(other.hi);
        let mut out = Self::filled(lo.min(hi), hi);
        for e in out.lo.0..=hi.0 {
            let e = HalfExp(e);
            *out.slot(e) = f(self.get(e), other.get(e))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add_exact(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add_exact(b.neg_exact()?))
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-C::one())
    }

    pub fn scale(&self, c: C) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|x| x.mul_exact(c)).collect::<Result<_>>()?;
        Ok(HalfPowerSeries { lo: self.lo, hi: self.hi, coeffs })
    }

    /// Multiplies by q^{d/2}.
    pub fn shift(&self, d: HalfExp) -> Self {
        HalfPowerSeries { lo: self.lo + d, hi: self.hi + d, coeffs: self.coeffs.clone() }
    }

    /// Truncated product. The result is valid through
    /// `min(hi1 + v2, hi2 + v1)` where `v` is the valuation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (v1, v2) = (self.valuation(), other.valuation());
        let hi = (self.hi + v2).min(other.hi + v1);
        let lo = (v1 + v2).min(hi);
        let mut acc = Self::filled(lo, hi);
        // Only the nonzero part of each operand contributes.
        let b: Vec<(i64, C)> = other.terms().map(|(e, c)| (e.0, c)).collect();
        for (e1, c1) in self.terms() {
            let room = hi.0 - e1.0;
            for &(e2, c2) in &b {
                if e2 > room {
                    break;
                }
                let idx = (e1.0 + e2 - lo.0) as usize;
                acc.coeffs[idx] = acc.coeffs[idx].add_exact(c1.mul_exact(c2)?)?;
            }
        }
        Ok(acc)
    }

    /// Forgets every coefficient above `hi`.
    pub fn truncate(&self, hi: HalfExp) -> Result<Self> {
        if hi > self.hi {
            return Err(Error::InsufficientTruncation { needed: hi, got: self.hi });
        }
        if hi < self.lo {
            return Ok(Self::filled(hi, hi));
        }
        let len = (hi.0 - self.lo.0 + 1) as usize;
        Ok(HalfPowerSeries { lo: self.lo, hi, coeffs: self.coeffs[..len].to_vec() })
    }

    /// Substitutes q → q^m. Exponents between consecutive multiples of `m`
    /// are known zeros, so the bound grows to `m·hi + m − 1`.
    pub fn substitute_power(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(invalid(format!("substitution power must be positive, got {m}")));
        }
        let mut out = Self::filled(self.lo * m, self.hi * m + HalfExp(m - 1));
        for (e, c) in self.terms() {
            *out.slot(e * m) = c;
        }
        Ok(out)
    }

    /// Keeps the terms whose exponent is congruent to `residue` modulo
    /// `modulus` (both in half-units). With `divide`, the kept term at
    /// `residue + modulus·n` becomes q^n.
    pub fn dissect(&self, modulus: i64, residue: HalfExp, divide: bool) -> Result<Self> {
        if modulus < 1 || residue.0 < 0 || residue.0 >= modulus {
            return Err(invalid(format!(
                "dissection needs 0 <= residue < modulus, got residue {} modulus {modulus}",
                residue.0
            )));
        }
        let keep = |e: HalfExp| (e.0 - residue.0).rem_euclid(modulus) == 0;
        if !divide {
            let mut out = self.clone();
            for (i, c) in out.coeffs.iter_mut().enumerate() {
                if !keep(HalfExp(self.lo.0 + i as i64)) {
                    *c = C::zero();
                }
            }
            return Ok(out);
        }
        let top = (self.hi.0 - residue.0).div_euclid(modulus);
        let bottom = -(-(self.lo.0 - residue.0)).div_euclid(modulus);
        let hi = HalfExp(2 * top + 1);
        let mut out = Self::filled(HalfExp((2 * bottom).min(0)).min(hi), hi);
        for (e, c) in self.terms().filter(|(e, _)| keep(*e)) {
            *out.slot(HalfExp(2 * (e.0 - residue.0) / modulus)) = c;
        }
        Ok(out)
    }

    /// Compares coefficients at every exponent up to `through`.
    pub fn compare(&self, other: &Self, through: HalfExp) -> Result<Comparison<C>> {
        for s in [self, other] {
            if through > s.hi {
                return Err(Error::InsufficientTruncation { needed: through, got: s.hi });
            }
        }
        let start = self.lo.min(other.lo).0;
        for e in start..=through.0 {
            let e = HalfExp(e);
            let (l, r) = (self.get(e), other.get(e));
            if l != r {
                return Ok(Comparison::Mismatch { exp: e, left: l, right: r });
            }
        }
        Ok(Comparison::Equal)
    }

    /// Converts to another coefficient width, failing if a value does not fit.
    pub fn cast<D: Coeff>(&self) -> Result<HalfPowerSeries<D>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_i128().and_then(D::from_i128).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(HalfPowerSeries { lo: self.lo, hi: self.hi, coeffs })
    }
}

impl<C: Coeff> fmt::Debug for HalfPowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [valid through q^{}]", self.hi)
    }
}

impl<C: Coeff> fmt::Display for HalfPowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c < C::zero() { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e.0, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Series;

    fn h(n: i64) -> HalfExp {
        HalfExp(n)
    }

    fn poly(cs: &[(i64, i64)], hi: i64) -> Series {
        Series::from_terms(cs.iter().map(|&(e, c)| (HalfExp::whole(e), c)), HalfExp::whole(hi)).unwrap()
    }

    #[test]
    fn monomials() {
        let one = Series::monomial(1, h(0), h(10)).unwrap();
        assert_eq!(one.coeff(h(0)), Ok(1));
        assert_eq!(one.hi(), h(10));
        let s = Series::monomial(4, h(2), h(10)).unwrap();
        assert_eq!(s.coeff(h(2)), Ok(4));
        assert_eq!(s.lo(), h(0));
        let s = Series::monomial(-1, h(-2), h(10)).unwrap();
        assert_eq!(s.coeff(h(-2)), Ok(-1));
        assert_eq!(s.lo(), h(-2));
        assert_eq!(s.coeff(h(-4)), Ok(0));
        assert!(matches!(Series::monomial(1, h(12), h(10)), Err(Error::BeyondBound { .. })));
    }

    #[test]
    fn coeff_beyond_bound_is_an_error() {
        let s = poly(&[(0, 1)], 3);
        assert_eq!(s.coeff(h(7)), Err(Error::BeyondBound { exp: h(7), hi: h(6) }));
    }

    #[test]
    fn add_and_mul_small_polys() {
        let a = poly(&[(0, 1), (1, 1)], 5);
        let b = poly(&[(0, 1), (1, -1)], 5);
        assert_eq!(a.add(&b).unwrap().terms().collect::<Vec<_>>(), vec![(h(0), 2)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(h(0), 1), (h(4), -1)]);
        assert_eq!(p.hi(), h(10));
    }

    #[test]
    fn mul_bound_uses_valuations() {
        let a = poly(&[(2, 1)], 5);
        let b = poly(&[(-1, 3)], 4);
        let p = a.mul(&b).unwrap();
        // min(10 + (-2), 8 + 4)
        assert_eq!(p.hi(), h(8));
        assert_eq!(p.coeff(h(2)), Ok(3));
    }

    #[test]
    fn mul_overflow_is_reported() {
        let a = Series::monomial(1 << 40, h(0), h(4)).unwrap();
        assert_eq!(a.mul(&a), Err(Error::Overflow));
        let w = a.cast::<i128>().unwrap();
        assert_eq!(w.mul(&w).unwrap().coeff(h(0)), Ok(1i128 << 80));
    }

    #[test]
    fn substitute_power_grows_bound() {
        let s = poly(&[(0, 1), (1, 1)], 3).substitute_power(2).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![(h(0), 1), (h(4), 1)]);
        assert_eq!(s.hi(), h(13));
        assert!(s.substitute_power(0).is_err());
    }

    #[test]
    fn dissect_keeps_residue_class() {
        let s = poly(&[(0, 1), (1, 1), (2, 1), (3, 1)], 3);
        let even = s.dissect(4, h(0), false).unwrap();
        assert_eq!(even.terms().collect::<Vec<_>>(), vec![(h(0), 1), (h(4), 1)]);
        let halved = s.dissect(4, h(0), true).unwrap();
        assert_eq!(halved.terms().collect::<Vec<_>>(), vec![(h(0), 1), (h(2), 1)]);
        assert_eq!(halved.hi(), h(3));
        let odd = s.dissect(4, h(2), true).unwrap();
        assert_eq!(odd.terms().collect::<Vec<_>>(), vec![(h(0), 1), (h(2), 1)]);
        assert!(s.dissect(4, h(4), false).is_err());
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = poly(&[(0, 1), (1, 1)], 5);
        let b = poly(&[(0, 1)], 5);
        assert_eq!(a.compare(&a, h(10)), Ok(Comparison::Equal));
        assert_eq!(a.compare(&b, h(10)), Ok(Comparison::Mismatch { exp: h(2), left: 1, right: 0 }));
        assert!(matches!(a.compare(&b, h(11)), Err(Error::InsufficientTruncation { .. })));
    }

    #[test]
    fn display() {
        let s = Series::from_terms([(h(0), 1), (h(1), -2), (h(4), 3)], h(6)).unwrap();
        assert_eq!(s.to_string(), "1 - 2q^1/2 + 3q^2");
        assert_eq!(Series::zero(h(4)).to_string(), "0");
    }
}
