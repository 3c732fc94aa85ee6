//! George groups: the classical finite and affine Weyl groups realized as
//! bijections of (a subset of) the integers that commute with mirror and
//! translation symmetries.
//!
//! Every element is stored as its window `[w(1), ..., w(n)]`; values
//! anywhere else on the line are recovered from the symmetry rules on demand.

mod element;
mod enumerate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use element::{parse_window, Element, Violation};
pub use enumerate::{enumerate_elements, WordBall};

/// The seven infinite families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "~A")]
    AffA,
    #[serde(rename = "~B")]
    AffB,
    #[serde(rename = "~C")]
    AffC,
    #[serde(rename = "~D")]
    AffD,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::D,
        Family::AffA,
        Family::AffB,
        Family::AffC,
        Family::AffD,
    ];

    pub fn flag(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::AffA => "~A",
            Family::AffB => "~B",
            Family::AffC => "~C",
            Family::AffD => "~D",
        }
    }

    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Family::AffA | Family::AffB | Family::AffC | Family::AffD
        )
    }

    /// Families whose elements commute with negation.
    pub fn is_signed(self) -> bool {
        !matches!(self, Family::A | Family::AffA)
    }

    /// Affine families commuting with both negation and translation by `2n + 2`.
    pub fn is_affine_signed(self) -> bool {
        matches!(self, Family::AffB | Family::AffC | Family::AffD)
    }

    /// Families whose Dynkin diagram is a path: `A`, `B`, `~A`, `~C`.
    pub fn is_unbranched(self) -> bool {
        matches!(self, Family::A | Family::B | Family::AffA | Family::AffC)
    }

    fn min_window(self) -> usize {
        match self {
            Family::A | Family::B => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|family| family.flag() == s.trim())
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// A family together with its window size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupDescriptor {
    family: Family,
    n: usize,
}

impl GroupDescriptor {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_window() {
            return Err(Error::DegenerateRank { family, n });
        }
        Ok(GroupDescriptor { family, n })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn n_i64(&self) -> i64 {
        self.n as i64
    }

    /// Translation period: `n` for `~A`, `2n + 2` for the affine signed
    /// families, none for finite families.
    pub fn period(&self) -> Option<i64> {
        match self.family {
            Family::A | Family::B | Family::D => None,
            Family::AffA => Some(self.n_i64()),
            _ => Some(2 * self.n_i64() + 2),
        }
    }

    pub fn identity(&self) -> Element {
        Element::identity(*self)
    }

    /// Whether `i` is a position on which elements act.
    pub fn in_domain(&self, i: i64) -> bool {
        let n = self.n_i64();
        match self.family {
            Family::A => (1..=n).contains(&i),
            Family::B | Family::D => i != 0 && i.abs() <= n,
            _ => true,
        }
    }

    /// Positions `p` with `p = k(n + 1)`; fixed by every affine signed permutation.
    pub(crate) fn is_trivial_position(&self, i: i64) -> bool {
        self.family.is_affine_signed() && i.rem_euclid(self.n_i64() + 1) == 0
    }

    /// The symmetry class of `i`.
    pub fn symmetry_class(&self, i: i64) -> Result<SymmetryClass> {
        if !self.in_domain(i) {
            return Err(Error::OutOfDomain {
                descriptor: *self,
                position: i,
            });
        }
        let n = self.n_i64();
        let (representative, trivial) = match self.family {
            Family::A => (i, false),
            Family::B | Family::D => (i.abs(), false),
            Family::AffA => ((i - 1).rem_euclid(n) + 1, false),
            _ => {
                let period = 2 * n + 2;
                let r = i.rem_euclid(period);
                if r == 0 || r == n + 1 {
                    (i, true)
                } else if r <= n {
                    (r, false)
                } else {
                    (period - r, false)
                }
            }
        };
        Ok(SymmetryClass {
            descriptor: *self,
            representative,
            trivial,
        })
    }

    /// Whether `i` and `j` lie in one symmetry class.
    pub fn same_symmetry_class(&self, i: i64, j: i64) -> Result<bool> {
        Ok(self.symmetry_class(i)? == self.symmetry_class(j)?)
    }

    /// Every symmetry `g` of the family with `g(from) = to` (at most two).
    pub(crate) fn symmetries_taking(&self, from: i64, to: i64) -> Vec<Symmetry> {
        let mut out = Vec::with_capacity(2);
        match self.period() {
            None => {
                if from == to {
                    out.push(Symmetry::IDENTITY);
                }
                if self.family.is_signed() && from == -to {
                    out.push(Symmetry {
                        negate: true,
                        shift: 0,
                    });
                }
            }
            Some(period) => {
                if (to - from).rem_euclid(period) == 0 {
                    out.push(Symmetry {
                        negate: false,
                        shift: to - from,
                    });
                }
                if self.family.is_signed() && (to + from).rem_euclid(period) == 0 {
                    out.push(Symmetry {
                        negate: true,
                        shift: to + from,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

/// An orbit of the line under the family's symmetries.
///
/// Nontrivial classes are named by their member in `[n]`; the fixed points
/// `k(n + 1)` of the affine signed families are singleton classes named by
/// themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetryClass {
    pub descriptor: GroupDescriptor,
    pub representative: i64,
    pub trivial: bool,
}

/// A symmetry of the line, `x -> ±x + shift`, commuting with every element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Symmetry {
    pub negate: bool,
    pub shift: i64,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        negate: false,
        shift: 0,
    };

    pub fn apply(self, x: i64) -> i64 {
        if self.negate {
            self.shift - x
        } else {
            x + self.shift
        }
    }
}
