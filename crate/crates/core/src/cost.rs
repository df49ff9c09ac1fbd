//! Exact non-negative rational costs extended with infinity.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A cost in the non-negative rationals extended with `Infinite`.
///
/// Finite values are always canonical (`BigRational` keeps lowest terms) and
/// never negative. `Infinite` compares strictly greater than every finite cost
/// and absorbs addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(BigRational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Self {
        Cost::Finite(BigRational::zero())
    }

    pub fn from_int(value: u64) -> Self {
        Cost::Finite(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`, rejecting negative values and a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidCost(format!("{numer}/{denom}")));
        }
        Self::finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn finite(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeCost(value.to_string()));
        }
        Ok(Cost::Finite(value))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cost::Finite(v) if v.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    /// Subtraction extended by `inf - x = inf` (for any `x`, including `inf`).
    ///
    /// Returns `None` when the result would be negative or for `finite - inf`.
    pub fn checked_sub(&self, rhs: &Cost) -> Option<Cost> {
        match (self, rhs) {
            (Cost::Infinite, _) => Some(Cost::Infinite),
            (Cost::Finite(_), Cost::Infinite) => None,
            (Cost::Finite(a), Cost::Finite(b)) => {
                let d = a - b;
                (!d.is_negative()).then_some(Cost::Finite(d))
            }
        }
    }

    /// `k * self` with the convention `0 * inf = 0`.
    pub fn scale(&self, k: u64) -> Cost {
        match self {
            _ if k == 0 => Cost::zero(),
            Cost::Infinite => Cost::Infinite,
            Cost::Finite(v) => Cost::Finite(v * BigRational::from_integer(BigInt::from(k))),
        }
    }
}

impl Default for Cost {
    fn default() -> Self {
        Cost::zero()
    }
}

impl From<u64> for Cost {
    fn from(value: u64) -> Self {
        Cost::from_int(value)
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
            (Cost::Infinite, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Finite(_), Cost::Infinite) => Ordering::Less,
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add<&Cost> for &Cost {
    type Output = Cost;

    fn add(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        &self + &rhs
    }
}

impl AddAssign<&Cost> for Cost {
    fn add_assign(&mut self, rhs: &Cost) {
        match (&mut *self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => *a += b,
            _ => *self = Cost::Infinite,
        }
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self += &rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Self {
        iter.fold(Cost::zero(), |acc, c| acc + c)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Self {
        let mut acc = Cost::zero();
        for c in iter {
            acc += c;
        }
        acc
    }
}

/// Integers print bare, other rationals as `p/q`, infinity as `inf`.
impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Infinite => f.write_str("inf"),
            Cost::Finite(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Cost::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl FromStr for Cost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Cost::Infinite);
        }
        let bad = || Error::InvalidCost(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let value = match s.split_once('/') {
            None => BigRational::from_integer(parse_int(s)?),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(parse_int(p)?, q)
            }
        };
        Cost::finite(value)
    }
}
