//! Exact truncated q-series for products of Ramanujan theta functions.
//!
//! The crate has three layers:
//!
//! * [`series`]: truncated formal power series on the half-integer exponent
//!   grid with checked integer coefficients,
//! * [`theta`] and [`identity`]: theta function expansions, the three-factor
//!   product decomposition and its two-factor specialization, with
//!   coefficientwise verification,
//! * [`repcount`]: representation counts for mixed ternary sums of squares,
//!   triangular, generalized pentagonal and generalized octagonal numbers,
//!   plus the relation catalog built on them.
//!
//! [`corollary`] instantiates the named consequences of the decomposition,
//! [`catalog`] holds the embedded relation and identity data, and [`suite`]
//! runs all of it in one pass.
//!
//! Series code is generic over the coefficient type (see [`Coeff`]); the
//! aliases below fix the common choices.

pub mod catalog;
pub mod coeff;
pub mod corollary;
pub mod error;
pub mod exp;
pub mod identity;
pub mod repcount;
pub mod series;
pub mod suite;
pub mod theta;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use exp::HalfExp;
pub use identity::{IdentityReport, Mismatch, ThetaProduct, Thm1Params, Thm2Params};
pub use repcount::{CountRef, FigurateKind, FormName, MixedSumSpec, RelationStatement};
pub use series::{Comparison, HalfPowerSeries};
pub use theta::{Sign, SpecialTheta, ThetaArg};

/// Series with 64-bit coefficients; the default for every verification.
pub type Series = HalfPowerSeries<i64>;

/// Series with 128-bit coefficients, for expansions that outgrow `i64`.
pub type WideSeries = HalfPowerSeries<i128>;

/// Identity report over 64-bit coefficients.
pub type Report = IdentityReport<i64>;
