use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An exponent of q measured in half-units: `HalfExp(6)` is q^3 and
/// `HalfExp(7)` is q^{7/2}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfExp(pub i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    pub const fn new(half_units: i64) -> Self {
        HalfExp(half_units)
    }

    /// The exponent of q^n for a whole power n.
    pub const fn whole(n: i64) -> Self {
        HalfExp(2 * n)
    }

    pub const fn half_units(self) -> i64 {
        self.0
    }

    pub const fn is_whole(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_whole(self) -> Option<i64> {
        self.is_whole().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_whole() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> HalfExp {
        HalfExp(self.0 * rhs)
    }
}

impl From<i64> for HalfExp {
    fn from(v: i64) -> Self {
        HalfExp(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_whole_and_half_exponents() {
        assert_eq!(HalfExp::whole(3).to_string(), "3");
        assert_eq!(HalfExp(7).to_string(), "7/2");
        assert_eq!(HalfExp(-1).to_string(), "-1/2");
        assert_eq!(HalfExp(-4).to_string(), "-2");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(HalfExp(3) + HalfExp(5), HalfExp::whole(4));
        assert_eq!(HalfExp(3) - HalfExp(5), HalfExp(-2));
        assert_eq!(-HalfExp(3), HalfExp(-3));
        assert_eq!(HalfExp(3) * 4, HalfExp(12));
        assert_eq!(HalfExp(5).to_whole(), None);
    }
}
