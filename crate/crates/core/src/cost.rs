//! Exact half-integer arithmetic for costs and search weights.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

/// A non-float quantity that may be a half-integer, stored as twice its value.
///
/// Transposition costs, depths and search weights all live here so that no
/// floating point ever enters a comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost {
    doubled: i64,
}

impl Cost {
    pub const ZERO: Cost = Cost { doubled: 0 };

    pub const fn from_doubled(doubled: i64) -> Self {
        Cost { doubled }
    }

    pub const fn from_integer(value: i64) -> Self {
        Cost { doubled: 2 * value }
    }

    pub const fn doubled(self) -> i64 {
        self.doubled
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(self) -> Option<i64> {
        (self.doubled % 2 == 0).then_some(self.doubled / 2)
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost::from_doubled(self.doubled + rhs.doubled)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.doubled += rhs.doubled;
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        Cost::from_doubled(self.doubled - rhs.doubled)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.doubled),
        }
    }
}

/// Accepts `k` or `k/2`.
impl FromStr for Cost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        match t.strip_suffix("/2") {
            Some(num) => num
                .trim()
                .parse::<i64>()
                .map(Cost::from_doubled)
                .map_err(|_| bad("expected an integer numerator")),
            None => t
                .parse::<i64>()
                .map(Cost::from_integer)
                .map_err(|_| bad("expected an integer or k/2")),
        }
    }
}

/// Integers serialize as JSON numbers, half-integers as `"k/2"` strings.
impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(k) => serializer.serialize_i64(k),
            None => serializer.collect_str(self),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for d in [-5, 0, 3, 8] {
            let c = Cost::from_doubled(d);
            assert_eq!(c.to_string().parse::<Cost>().unwrap(), c);
        }
        assert_eq!(" 4 ".parse::<Cost>().unwrap(), Cost::from_integer(4));
        assert!("1.5".parse::<Cost>().is_err());
        assert!("x/2".parse::<Cost>().is_err());
    }

    #[test]
    fn display_integer_and_half() {
        assert_eq!(Cost::from_integer(3).to_string(), "3");
        assert_eq!(Cost::from_doubled(7).to_string(), "7/2");
        assert_eq!(Cost::from_doubled(-4).to_string(), "-2");
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Cost::from_doubled(3);
        let b = Cost::from_doubled(5);
        assert_eq!(a + b, Cost::from_integer(4));
        assert_eq!(b - a, Cost::from_integer(1));
        let total: Cost = [a, b, a].into_iter().sum();
        assert_eq!(total.doubled(), 11);
        assert_eq!(total.as_integer(), None);
    }
}
