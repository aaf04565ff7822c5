//! Exact membership degrees.
//!
//! A [`Degree`] is a rational number in `[0, 1]` stored in lowest terms with
//! 64-bit numerator and denominator. Intermediate sums are carried in 128 bits
//! and every operation that could leave the representable range reports
//! [`DegreeError::Overflow`] instead of rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("malformed rational {0:?}: expected \"p/q\" or \"p\" with non-negative integers")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("degree {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("rational arithmetic overflowed 64-bit storage")]
    Overflow,
}

/// An exact rational in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    num: u64,
    den: u64,
}

impl Degree {
    pub const ZERO: Degree = Degree { num: 0, den: 1 };
    pub const ONE: Degree = Degree { num: 1, den: 1 };

    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: u64, den: u64) -> Result<Self, DegreeError> {
        if den == 0 {
            return Err(DegreeError::ZeroDenominator(format!("{num}/0")));
        }
        if num > den {
            return Err(DegreeError::OutOfRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(Degree {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `1 - self`.
    pub fn complement(self) -> Degree {
        Degree {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// Exact sum, which may exceed one.
    pub fn sum<I: IntoIterator<Item = Degree>>(items: I) -> Result<Rational, DegreeError> {
        items
            .into_iter()
            .try_fold(Rational::ZERO, |acc, d| acc.checked_add(d.into()))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Degree {
    fn default() -> Self {
        Degree::ZERO
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Degree {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: Rational = s.parse()?;
        Degree::try_from(r)
    }
}

impl TryFrom<Rational> for Degree {
    type Error = DegreeError;

    fn try_from(r: Rational) -> Result<Self, Self::Error> {
        if r.num > r.den {
            return Err(DegreeError::OutOfRange(r.to_string()));
        }
        let num = u64::try_from(r.num).map_err(|_| DegreeError::Overflow)?;
        let den = u64::try_from(r.den).map_err(|_| DegreeError::Overflow)?;
        Degree::new(num, den)
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Non-negative rational without an upper bound, used for sums of degrees.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u128,
    den: u128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    fn reduced(num: u128, den: u128) -> Self {
        let g = num.gcd(&den);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn checked_add(self, other: Rational) -> Result<Rational, DegreeError> {
        let g = self.den.gcd(&other.den);
        let lhs_scale = other.den / g;
        let rhs_scale = self.den / g;
        let num = self
            .num
            .checked_mul(lhs_scale)
            .and_then(|a| {
                other
                    .num
                    .checked_mul(rhs_scale)
                    .and_then(|b| a.checked_add(b))
            })
            .ok_or(DegreeError::Overflow)?;
        let den = self
            .den
            .checked_mul(lhs_scale)
            .ok_or(DegreeError::Overflow)?;
        Ok(Rational::reduced(num, den))
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(self, other: Rational) -> Result<Option<Rational>, DegreeError> {
        let g = self.den.gcd(&other.den);
        let lhs = self
            .num
            .checked_mul(other.den / g)
            .ok_or(DegreeError::Overflow)?;
        let rhs = other
            .num
            .checked_mul(self.den / g)
            .ok_or(DegreeError::Overflow)?;
        let den = self
            .den
            .checked_mul(other.den / g)
            .ok_or(DegreeError::Overflow)?;
        Ok(lhs.checked_sub(rhs).map(|n| Rational::reduced(n, den)))
    }

    pub fn exceeds_one(&self) -> bool {
        self.num > self.den
    }
}

impl From<Degree> for Rational {
    fn from(d: Degree) -> Self {
        Rational {
            num: d.num as u128,
            den: d.den as u128,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // Cross-multiplication can overflow u128, so compare by continued
        // fraction expansion instead.
        let (mut a, mut b, mut c, mut d) = (self.num, self.den, other.num, other.den);
        let mut flipped = false;
        loop {
            let (q1, r1) = (a / b, a % b);
            let (q2, r2) = (c / d, c % d);
            let ord = q1.cmp(&q2);
            if ord != Ordering::Equal {
                return if flipped { ord.reverse() } else { ord };
            }
            match (r1 == 0, r2 == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => {
                    return if flipped {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
                (false, true) => {
                    return if flipped {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
                (false, false) => {
                    (a, b, c, d) = (b, r1, d, r2);
                    flipped = !flipped;
                }
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = DegreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let malformed = || DegreeError::Malformed(s.to_string());
        let digits = |part: &str| -> Result<u128, DegreeError> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            part.parse::<u64>()
                .map(u128::from)
                .map_err(|_| DegreeError::Overflow)
        };
        let (num, den) = match trimmed.split_once('/') {
            Some((n, d)) => (digits(n)?, digits(d)?),
            None => (digits(trimmed)?, 1),
        };
        if den == 0 {
            return Err(DegreeError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational::reduced(num, den))
    }
}
