//! Numeric modes.
//!
//! Every worth and index value is a [`Scalar`]. Two implementations exist:
//! [`Rational`] (arbitrary precision, the default everywhere identities are
//! checked) and `f64` (opt-in, for sweeps over larger games). A computation
//! is generic over a single scalar type, so the two modes never mix.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Absolute tolerance used for equality tests in floating-point mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Tolerance for distribution normalization checks in floating-point mode.
pub const FLOAT_NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumericMode {
    Exact,
    Float,
}

impl Display for NumericMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumericMode::Exact => f.write_str("exact"),
            NumericMode::Float => f.write_str("float"),
        }
    }
}

/// Field operations needed by the index formulas, plus the few
/// mode-specific hooks (conversion, comparison, parsing).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const MODE: NumericMode;

    fn from_rational(value: &Rational) -> Self;

    fn from_i64(value: i64) -> Self;

    /// Exact equality in rational mode, absolute tolerance
    /// [`FLOAT_TOLERANCE`] in float mode.
    fn close_to(&self, other: &Self) -> bool;

    fn is_close_to_zero(&self) -> bool {
        self.close_to(&Self::zero())
    }

    fn to_f64(&self) -> f64;

    /// Parses `"num/den"`, an integer, or (float mode only) a decimal literal.
    fn parse_literal(text: &str) -> Result<Self>;

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    const MODE: NumericMode = NumericMode::Exact;

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float;

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn close_to(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse_literal(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.contains('/') {
            return parse_rational(trimmed).map(|r| f64::from_rational(&r));
        }
        let value = f64::from_str(trimmed).map_err(|_| Error::Literal(text.to_string()))?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Literal(text.to_string()))
        }
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }
}

/// Parses an exact literal: `"7"`, `"-3/4"`. Decimal points are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let err = || Error::Literal(text.to_string());
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Shorthand for building exact constants.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
