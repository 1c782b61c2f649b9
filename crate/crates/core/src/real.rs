//! Scalar abstraction shared by the double and multi-precision code paths.
//!
//! Every numerical kernel in the crate (symbol evaluation, the banded
//! factorization, root finding, extrapolation) is written once against
//! [`Real`] and instantiated either with `f64` or with an MPFR-backed
//! [`rug::Float`]. Values of the extended type carry their own precision;
//! constants are created at the precision of a reference value via
//! [`Real::lift`].

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest number of decimal digits accepted for the extended mode.
pub const MIN_EXTENDED_DIGITS: u32 = 20;

/// Significant decimal digits of an IEEE binary64 value.
pub const DOUBLE_DIGITS: u32 = 16;

pub trait Real:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Converts `x` exactly (it is a binary64 value) at `bits` of precision.
    fn from_f64(x: f64, bits: u32) -> Self;

    /// `num / den` correctly rounded at `bits` of precision.
    fn from_ratio(num: i64, den: i64, bits: u32) -> Self;

    fn pi(bits: u32) -> Self;

    /// `10^exp` at `bits` of precision.
    fn exp10(exp: i32, bits: u32) -> Self;

    /// Binary precision of this value.
    fn bits(&self) -> u32;

    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn to_float(&self) -> Float;
    fn is_finite(&self) -> bool;

    /// `x` at the precision of `self`.
    fn lift(&self, x: f64) -> Self {
        Self::from_f64(x, self.bits())
    }

    fn zero_like(&self) -> Self {
        self.lift(0.0)
    }

    fn is_negative(&self) -> bool {
        *self < self.zero_like()
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _bits: u32) -> Self {
        x
    }

    fn from_ratio(num: i64, den: i64, _bits: u32) -> Self {
        num as f64 / den as f64
    }

    fn pi(_bits: u32) -> Self {
        std::f64::consts::PI
    }

    fn exp10(exp: i32, _bits: u32) -> Self {
        10f64.powi(exp)
    }

    fn bits(&self) -> u32 {
        f64::MANTISSA_DIGITS
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_float(&self) -> Float {
        Float::with_val(f64::MANTISSA_DIGITS, *self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Real for Float {
    fn from_f64(x: f64, bits: u32) -> Self {
        Float::with_val(bits, x)
    }

    fn from_ratio(num: i64, den: i64, bits: u32) -> Self {
        let mut r = Float::with_val(bits, num);
        r /= den;
        r
    }

    fn pi(bits: u32) -> Self {
        Float::with_val(bits, Constant::Pi)
    }

    fn exp10(exp: i32, bits: u32) -> Self {
        let mag = Float::with_val(bits, Float::u_pow_u(10, exp.unsigned_abs()));
        if exp >= 0 {
            mag
        } else {
            mag.recip()
        }
    }

    fn bits(&self) -> u32 {
        self.prec()
    }

    fn cos(&self) -> Self {
        self.clone().cos()
    }

    fn sin(&self) -> Self {
        self.clone().sin()
    }

    fn abs(&self) -> Self {
        self.clone().abs()
    }

    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn to_float(&self) -> Float {
        self.clone()
    }

    fn is_finite(&self) -> bool {
        Float::is_finite(self)
    }
}

/// Working precision of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    /// IEEE binary64.
    Double,
    /// MPFR software floats carrying `digits` significant decimal digits.
    Extended { digits: u32 },
}

impl Precision {
    pub fn extended(digits: u32) -> Result<Self> {
        if digits < MIN_EXTENDED_DIGITS {
            return Err(Error::InvalidPrecision { digits });
        }
        Ok(Precision::Extended { digits })
    }

    /// `0` selects [`Precision::Double`], anything else the extended mode.
    pub fn from_digits(digits: u32) -> Result<Self> {
        if digits == 0 {
            Ok(Precision::Double)
        } else {
            Self::extended(digits)
        }
    }

    pub fn digits(&self) -> u32 {
        match *self {
            Precision::Double => DOUBLE_DIGITS,
            Precision::Extended { digits } => digits,
        }
    }

    /// Mantissa bits: `digits * log2(10)` plus eight guard bits.
    pub fn bits(&self) -> u32 {
        match *self {
            Precision::Double => f64::MANTISSA_DIGITS,
            Precision::Extended { digits } => {
                (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
            }
        }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self, Precision::Extended { .. })
    }

    /// Value written into artifacts: `0` for double.
    pub fn tag(&self) -> u32 {
        match *self {
            Precision::Double => 0,
            Precision::Extended { digits } => digits,
        }
    }
}

/// Decimal text that parses back to exactly the same `Float`.
pub fn float_to_decimal(x: &Float) -> String {
    x.to_string_radix(10, None)
}

pub fn float_from_decimal(text: &str, bits: u32) -> Result<Float> {
    let parsed = Float::parse(text.trim()).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    Ok(Float::with_val(bits, parsed))
}
