use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::{Family, GroupDescriptor};
use crate::error::{Error, Result};

/// One failed membership condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("window has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("entries are not a permutation of 1..={n}")]
    NotPermutation { n: usize },
    #[error("absolute values are not a permutation of 1..={n}")]
    NotSignedPermutation { n: usize },
    #[error("{count} negative entries, expected an even number")]
    OddSignCount { count: usize },
    #[error("two entries share residue {residue} modulo {modulus}")]
    ResidueCollision { residue: i64, modulus: i64 },
    #[error("entries sum to {found}, expected {expected}")]
    Sum { expected: i64, found: i64 },
    #[error("w({position}) = {value} lands on a fixed point class")]
    HitsFixedClass { position: i64, value: i64 },
    #[error("#{{i > 0 : w(i) < 0}} = {count} is odd")]
    NegativeParity { count: i64 },
    #[error("#{{i > n+1 : w(i) < n+1}} = {count} is odd")]
    ShiftedNegativeParity { count: i64 },
}

/// A group element, stored as its window.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    descriptor: GroupDescriptor,
    window: Vec<i64>,
}

impl Element {
    pub fn identity(descriptor: GroupDescriptor) -> Self {
        Element {
            descriptor,
            window: (1..=descriptor.n_i64()).collect(),
        }
    }

    /// Build an element, rejecting the window if any membership condition fails.
    pub fn new(descriptor: GroupDescriptor, window: Vec<i64>) -> Result<Self> {
        Self::validate(descriptor, window).map_err(|violations| Error::InvalidElement {
            descriptor,
            violations,
        })
    }

    /// Check every membership condition, reporting all that fail.
    pub fn validate(
        descriptor: GroupDescriptor,
        window: Vec<i64>,
    ) -> std::result::Result<Self, Vec<Violation>> {
        let violations = violations(descriptor, &window);
        if violations.is_empty() {
            Ok(Element { descriptor, window })
        } else {
            Err(violations)
        }
    }

    /// Parse a window string such as `[-5, 6, 7]` and validate it.
    pub fn parse(descriptor: GroupDescriptor, input: &str) -> Result<Self> {
        Self::new(descriptor, parse_window(input)?)
    }

    pub(crate) fn from_window_unchecked(descriptor: GroupDescriptor, window: Vec<i64>) -> Self {
        debug_assert!(violations(descriptor, &window).is_empty(), "{window:?}");
        Element { descriptor, window }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    pub fn family(&self) -> Family {
        self.descriptor.family()
    }

    pub fn n(&self) -> usize {
        self.descriptor.n()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn into_window(self) -> Vec<i64> {
        self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// `w(i)` for any position in the domain.
    pub fn evaluate(&self, i: i64) -> Result<i64> {
        if !self.descriptor.in_domain(i) {
            return Err(Error::OutOfDomain {
                descriptor: self.descriptor,
                position: i,
            });
        }
        Ok(self.image(i))
    }

    /// `w(i)` without the domain check. For the finite signed families `0`
    /// maps to itself.
    pub(crate) fn image(&self, i: i64) -> i64 {
        image(self.descriptor, &self.window, i)
    }

    /// Positions `-n..=-1, 1..=n` for signed finite families, `1..=n` otherwise.
    pub(crate) fn doubled_positions(&self) -> impl Iterator<Item = i64> {
        let n = self.descriptor.n_i64();
        let signed = self.family().is_signed();
        (-n..=n).filter(move |&i| if signed { i != 0 } else { i > 0 })
    }

    /// The product `self · other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch {
                left: self.descriptor,
                right: other.descriptor,
            });
        }
        let window = other.window.iter().map(|&v| self.image(v)).collect();
        Element::new(self.descriptor, window)
    }

    /// `compose` for operands already known to share a descriptor.
    pub(crate) fn compose_unchecked(&self, other: &Element) -> Element {
        debug_assert_eq!(self.descriptor, other.descriptor);
        let window = other.window.iter().map(|&v| self.image(v)).collect();
        Element::from_window_unchecked(self.descriptor, window)
    }

    pub fn inverse(&self) -> Element {
        let n = self.descriptor.n();
        let mut window = vec![0; n];
        for (q, &value) in (1..).zip(&self.window) {
            // Some symmetry g sends value into the window; then w(g(q)) = g(value).
            for p in 1..=n as i64 {
                if let Some(g) = self
                    .descriptor
                    .symmetries_taking(value, p)
                    .into_iter()
                    .next()
                {
                    window[(p - 1) as usize] = g.apply(q);
                    break;
                }
            }
        }
        Element::from_window_unchecked(self.descriptor, window)
    }

    /// True displacement `|w(i) - i|` summed over the window.
    pub(crate) fn displacement(&self) -> i64 {
        self.window
            .iter()
            .zip(1..)
            .map(|(&v, i): (&i64, i64)| (v - i).abs())
            .sum()
    }

    /// Largest `|w(i) - i|`; bounds the distance moved by any position.
    pub(crate) fn max_displacement(&self) -> i64 {
        self.window
            .iter()
            .zip(1..)
            .map(|(&v, i): (&i64, i64)| (v - i).abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.window.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    family: Family,
    n: usize,
    window: Vec<i64>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            family: self.family(),
            n: self.n(),
            window: self.window.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        GroupDescriptor::new(repr.family, repr.n)
            .and_then(|d| Element::new(d, repr.window))
            .map_err(serde::de::Error::custom)
    }
}

/// Parse `[` int (`,` int)* `]` with optional whitespace.
pub fn parse_window(input: &str) -> Result<Vec<i64>> {
    let fail = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let body = input
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| fail("expected a bracketed list"))?;
    if body.trim().is_empty() {
        return Err(fail("window is empty"));
    }
    body.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| fail(&format!("{:?} is not an integer", tok.trim())))
        })
        .collect()
}

pub(crate) fn image(descriptor: GroupDescriptor, window: &[i64], i: i64) -> i64 {
    let n = descriptor.n_i64();
    match descriptor.family() {
        Family::A => window[(i - 1) as usize],
        Family::B | Family::D => match i {
            0 => 0,
            i if i > 0 => window[(i - 1) as usize],
            i => -window[(-i - 1) as usize],
        },
        Family::AffA => {
            let r = (i - 1).rem_euclid(n) + 1;
            window[(r - 1) as usize] + (i - r)
        }
        Family::AffB | Family::AffC | Family::AffD => {
            let period = 2 * n + 2;
            let r = i.rem_euclid(period);
            if r == 0 || r == n + 1 {
                i
            } else if r <= n {
                window[(r - 1) as usize] + (i - r)
            } else {
                period - window[(period - r - 1) as usize] + (i - r)
            }
        }
    }
}

/// `#{i > offset : w(i) < offset}` for an affine signed window, in closed form.
///
/// With `u(j) = w(j + offset) - offset`, which again satisfies
/// `u(j + 2n + 2) = u(j) + 2n + 2`, position `j + k(2n + 2)` (`k >= 0`)
/// counts exactly when `k < -u(j) / (2n + 2)`.
pub(crate) fn shifted_negative_count(
    descriptor: GroupDescriptor,
    window: &[i64],
    offset: i64,
) -> i64 {
    let period = 2 * descriptor.n_i64() + 2;
    (1..=period)
        .map(|j| {
            let u = image(descriptor, window, j + offset) - offset;
            if u < 0 {
                (-u + period - 1) / period
            } else {
                0
            }
        })
        .sum()
}

fn violations(descriptor: GroupDescriptor, window: &[i64]) -> Vec<Violation> {
    let n = descriptor.n();
    if window.len() != n {
        return vec![Violation::Length {
            expected: n,
            found: window.len(),
        }];
    }
    let n_i = n as i64;
    let mut out = Vec::new();
    let is_perm = |values: &mut Vec<i64>| {
        values.sort_unstable();
        values.iter().copied().eq(1..=n_i)
    };
    match descriptor.family() {
        Family::A => {
            if !is_perm(&mut window.to_vec()) {
                out.push(Violation::NotPermutation { n });
            }
        }
        Family::B | Family::D => {
            if !is_perm(&mut window.iter().map(|v| v.abs()).collect()) {
                out.push(Violation::NotSignedPermutation { n });
            }
            let count = window.iter().filter(|&&v| v < 0).count();
            if descriptor.family() == Family::D && count % 2 == 1 {
                out.push(Violation::OddSignCount { count });
            }
        }
        Family::AffA => {
            if let Some(residue) = first_collision(window.iter().map(|v| v.rem_euclid(n_i))) {
                out.push(Violation::ResidueCollision {
                    residue,
                    modulus: n_i,
                });
            }
            let expected = n_i * (n_i + 1) / 2;
            let found: i64 = window.iter().sum();
            if found != expected {
                out.push(Violation::Sum { expected, found });
            }
        }
        Family::AffB | Family::AffC | Family::AffD => {
            let period = 2 * n_i + 2;
            for (position, &value) in (1..).zip(window) {
                if value.rem_euclid(n_i + 1) == 0 {
                    out.push(Violation::HitsFixedClass { position, value });
                }
            }
            let residues = window
                .iter()
                .flat_map(|&v| [v.rem_euclid(period), (-v).rem_euclid(period)]);
            if let Some(residue) = first_collision(residues) {
                out.push(Violation::ResidueCollision {
                    residue,
                    modulus: period,
                });
            }
            // Parity conditions only make sense for genuine affine signed permutations.
            if out.is_empty() && descriptor.family() != Family::AffC {
                let count = shifted_negative_count(descriptor, window, 0);
                if count % 2 == 1 {
                    out.push(Violation::NegativeParity { count });
                }
                if descriptor.family() == Family::AffD {
                    let count = shifted_negative_count(descriptor, window, n_i + 1);
                    if count % 2 == 1 {
                        out.push(Violation::ShiftedNegativeParity { count });
                    }
                }
            }
        }
    }
    out
}

fn first_collision(values: impl Iterator<Item = i64>) -> Option<i64> {
    let mut seen = HashSet::new();
    values.into_iter().find(|&r| !seen.insert(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(family: Family, n: usize) -> GroupDescriptor {
        GroupDescriptor::new(family, n).unwrap()
    }

    fn el(family: Family, window: &[i64]) -> Element {
        Element::new(desc(family, window.len()), window.to_vec()).unwrap()
    }

    #[test]
    fn affine_signed_evaluation_table() {
        let w = el(Family::AffC, &[-5, 6, 7]);
        let got: Vec<i64> = (4..=8).map(|i| w.evaluate(i).unwrap()).collect();
        assert_eq!(got, vec![4, 1, 2, 13, 8]);
        assert_eq!(w.evaluate(-1).unwrap(), 5);
        assert_eq!(w.evaluate(0).unwrap(), 0);
    }

    #[test]
    fn finite_domain_enforced() {
        let w = el(Family::B, &[2, -1]);
        assert_eq!(w.evaluate(-2).unwrap(), 1);
        assert!(w.evaluate(0).is_err());
        assert!(w.evaluate(3).is_err());
        assert!(el(Family::A, &[1, 2]).evaluate(-1).is_err());
    }

    #[test]
    fn compose_and_inverse_examples() {
        let c = el(Family::A, &[2, 3, 1]);
        assert_eq!(c.compose(&c).unwrap().window(), &[3, 1, 2]);
        assert_eq!(c.inverse().window(), &[3, 1, 2]);
        let s = el(Family::A, &[2, 1]);
        assert!(s.compose(&s).unwrap().is_identity());
        let neg = el(Family::B, &[-1]);
        assert_eq!(neg.inverse(), neg);
        let id = desc(Family::AffC, 3).identity();
        assert_eq!(c.compose(&el(Family::A, &[1, 2, 3])).unwrap(), c);
        assert!(id.inverse().is_identity());
    }

    #[test]
    fn affine_inverse_round_trips() {
        let w = el(Family::AffC, &[-5, 6, 7]);
        let inv = w.inverse();
        assert!(w.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&w).unwrap().is_identity());
        let a = el(Family::AffA, &[0, 3]);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_mismatched_groups() {
        let b = el(Family::B, &[1, 2]);
        let d = el(Family::D, &[1, 2]);
        assert!(matches!(
            b.compose(&d),
            Err(Error::DescriptorMismatch { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        assert!(Element::validate(desc(Family::AffA, 3), vec![2, 1, 3]).is_ok());
        let err = Element::validate(desc(Family::AffB, 2), vec![-1, 2]).unwrap_err();
        assert_eq!(err, vec![Violation::NegativeParity { count: 1 }]);
        let err = Element::validate(desc(Family::A, 3), vec![1, 1, 2]).unwrap_err();
        assert_eq!(err, vec![Violation::NotPermutation { n: 3 }]);
    }

    #[test]
    fn validate_reports_every_violation() {
        let err = Element::validate(desc(Family::AffA, 3), vec![1, 4, 3]).unwrap_err();
        assert_eq!(err.len(), 2);
        let err = Element::validate(desc(Family::D, 3), vec![-1, 1, 3]).unwrap_err();
        assert_eq!(
            err,
            vec![
                Violation::NotSignedPermutation { n: 3 },
                Violation::OddSignCount { count: 1 }
            ]
        );
        let err = Element::validate(desc(Family::AffC, 2), vec![3, 6]).unwrap_err();
        assert_eq!(err.len(), 3);
        assert!(matches!(
            Element::validate(desc(Family::B, 2), vec![1]).unwrap_err()[0],
            Violation::Length { .. }
        ));
    }

    #[test]
    fn affine_d_parity() {
        let d = desc(Family::AffD, 2);
        // [13, 2] passes both parity conditions.
        assert!(Element::validate(d, vec![13, 2]).is_ok());
        // s'_n = [1, 4] breaks the second one.
        let err = Element::validate(d, vec![1, 4]).unwrap_err();
        assert_eq!(err, vec![Violation::ShiftedNegativeParity { count: 1 }]);
        assert!(Element::validate(desc(Family::AffB, 2), vec![1, 4]).is_ok());
    }

    #[test]
    fn closed_form_parity_matches_scan() {
        let d = desc(Family::AffC, 3);
        for window in [vec![-5, 6, 7], vec![9, -2, 3], vec![1, -10, 19]] {
            let w = Element::new(d, window).unwrap();
            for offset in [0, 4] {
                let scanned = (offset + 1..offset + 200)
                    .filter(|&i| w.image(i) < offset)
                    .count() as i64;
                assert_eq!(shifted_negative_count(d, w.window(), offset), scanned);
            }
        }
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(parse_window("[-3,-1, 2 ,-4]").unwrap(), vec![-3, -1, 2, -4]);
        assert_eq!(parse_window("  [ 7 ]  ").unwrap(), vec![7]);
        assert!(parse_window("[]").is_err());
        assert!(parse_window("1,2").is_err());
        assert!(parse_window("[1,,2]").is_err());
        assert!(parse_window("[1,x]").is_err());
    }

    #[test]
    fn display_matches_grammar() {
        let w = el(Family::AffC, &[-5, 6, 7]);
        assert_eq!(w.to_string(), "[-5,6,7]");
        assert_eq!(Element::parse(w.descriptor(), &w.to_string()).unwrap(), w);
    }

    #[test]
    fn json_shape() {
        let w = el(Family::AffC, &[-5, 6, 7]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"family":"~C","n":3,"window":[-5,6,7]}"#);
        let back: Element = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let bad = r#"{"family":"D","n":2,"window":[-1,2]}"#;
        assert!(serde_json::from_str::<Element>(bad).is_err());
    }
}
