use std::fmt::{Debug, Display};

use num_traits::{CheckedNeg, FromPrimitive, PrimInt, Signed};

use crate::error::{Error, Result};

/// Exact signed integer coefficient with overflow-checked arithmetic.
///
/// Implemented for every primitive signed integer; `i64` is the working
/// width and `i128` the escape hatch for very deep expansions.
pub trait Coeff:
    PrimInt + Signed + CheckedNeg + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    fn from_int(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or(Error::Overflow)
    }

    fn add_exact(self, other: Self) -> Result<Self> {
        self.checked_add(&other).ok_or(Error::Overflow)
    }

    fn mul_exact(self, other: Self) -> Result<Self> {
        self.checked_mul(&other).ok_or(Error::Overflow)
    }

    fn neg_exact(self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }
}

impl<T> Coeff for T where
    T: PrimInt + Signed + CheckedNeg + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_ops_report_overflow() {
        assert_eq!(i64::MAX.add_exact(1), Err(Error::Overflow));
        assert_eq!(i64::MIN.neg_exact(), Err(Error::Overflow));
        assert_eq!((1i64 << 40).mul_exact(1 << 30), Err(Error::Overflow));
        assert_eq!(3i32.mul_exact(4), Ok(12));
        assert_eq!(i8::from_int(300), Err(Error::Overflow));
    }
}
