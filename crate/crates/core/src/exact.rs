//! Exact integer and rational carriers for the cost model.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used for flop and memory counts.
pub type ExactInt = BigInt;

/// A rational number that is always stored in lowest terms with a positive
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRatio(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRatio(self.0.abs())
    }

    /// `|self - other|`
    pub fn abs_diff(&self, other: &Self) -> Self {
        ExactRatio((&self.0 - &other.0).abs())
    }

    /// True when `|self - target| < tolerance`.
    pub fn within(&self, target: &Self, tolerance: &Self) -> bool {
        self.abs_diff(target) < *tolerance
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRatio(&self.0 / &other.0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Re-normalizes the stored fraction. Values are kept reduced on every
    /// construction, so this returns an equal value.
    pub fn reduced(&self) -> Self {
        ExactRatio(BigRational::new(self.numer().clone(), self.denom().clone()))
    }

    /// `10^-exponent` as an exact value, handy for tolerances.
    pub fn pow10_neg(exponent: u32) -> Self {
        ExactRatio(BigRational::new(BigInt::one(), pow10(exponent)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Scientific-notation rendering with exactly `digits` significant
    /// digits, rounded half-to-even, e.g. `1.2115853658536585e0`.
    pub fn to_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1, "at least one significant digit");
        if self.is_zero() {
            let mut s = String::from("0");
            if digits > 1 {
                s.push('.');
                s.extend(core::iter::repeat_n('0', digits as usize - 1));
            }
            s.push_str("e0");
            return s;
        }
        let num = self.numer().abs();
        let den = self.denom().clone();
        let mut exp = decimal_exponent(&num, &den);

        // scaled = num / den * 10^(digits - 1 - exp)
        let shift = digits as i64 - 1 - exp;
        let (n, d) = if shift >= 0 {
            (num * pow10(shift as u32), den)
        } else {
            (num, den * pow10((-shift) as u32))
        };
        let (mut q, r) = n.div_rem(&d);
        let twice = r * 2u32;
        match twice.cmp(&d) {
            Ordering::Greater => q += 1u32,
            Ordering::Equal if q.is_odd() => q += 1u32,
            _ => {}
        }
        if q == pow10(digits) {
            q = pow10(digits - 1);
            exp += 1;
        }
        let mantissa = q.to_string();
        let mut out = String::new();
        if self.0.is_negative() {
            out.push('-');
        }
        out.push_str(&mantissa[..1]);
        if mantissa.len() > 1 {
            out.push('.');
            out.push_str(&mantissa[1..]);
        }
        out.push_str(&format!("e{exp}"));
        out
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

fn pow10(exponent: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), exponent as usize)
}

/// The unique `e` with `10^e <= num/den < 10^(e+1)`, for positive inputs.
fn decimal_exponent(num: &BigInt, den: &BigInt) -> i64 {
    let digits = |v: &BigInt| v.to_str_radix(10).len() as i64;
    let mut e = digits(num) - digits(den);
    // compares num/den against 10^e
    let cmp = |e: i64| -> Ordering {
        if e >= 0 {
            num.cmp(&(den * pow10(e as u32)))
        } else {
            (num * pow10((-e) as u32)).cmp(den)
        }
    };
    while cmp(e) == Ordering::Less {
        e -= 1;
    }
    while cmp(e + 1) != Ordering::Less {
        e += 1;
    }
    e
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRatio(s.to_string());
        let parse_int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| bad());
        match s.split_once('/') {
            Some((n, d)) => ExactRatio::new(parse_int(n)?, parse_int(d)?),
            None => Ok(ExactRatio::from_integer(parse_int(s)?)),
        }
    }
}

impl From<BigInt> for ExactRatio {
    fn from(value: BigInt) -> Self {
        ExactRatio::from_integer(value)
    }
}

impl From<i64> for ExactRatio {
    fn from(value: i64) -> Self {
        ExactRatio::from_integer(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRatio> for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<ExactRatio> for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

/// Sign of an exact integer as -1, 0 or 1.
pub fn signum(value: &BigInt) -> i8 {
    match value.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
