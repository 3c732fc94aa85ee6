//! Constructive minimum-cost factorization in the unbranched families.
//!
//! Repeatedly find a transposable pair `x < y` with `w(x) >= y > x >= w(y)`,
//! peel `<(x y)>` off the right, and recurse on `w · <(x y)>`. Each peel
//! lowers the total displacement by exactly `tvd(<(x y)>)`, so the product
//! of the peeled transpositions costs `tvd(w) / 2`.

use serde::Serialize;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::groups::{Element, GroupDescriptor};
use crate::statistics::{cost_formula, tvd};
use crate::transpositions::Transposition;

/// An ordered product `t_1 · t_2 ··· t_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub descriptor: GroupDescriptor,
    pub factors: Vec<Transposition>,
    pub total_cost: Cost,
}

impl Factorization {
    pub fn new(descriptor: GroupDescriptor, factors: Vec<Transposition>) -> Self {
        let total_cost = factors.iter().map(Transposition::cost).sum();
        Factorization {
            descriptor,
            factors,
            total_cost,
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product of the factors, left to right.
    pub fn product(&self) -> Element {
        self.factors
            .iter()
            .fold(self.descriptor.identity(), |acc, t| {
                acc.compose_unchecked(t.as_element())
            })
    }

    pub fn record(&self, optimal: bool) -> FactorizationRecord {
        FactorizationRecord {
            factors: self
                .factors
                .iter()
                .map(|t| PairRecord { i: t.i(), j: t.j() })
                .collect(),
            total_cost: self.total_cost,
            optimal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub i: i64,
    pub j: i64,
}

/// Wire form: `{"factors":[{"i":..,"j":..}],"total_cost":..,"optimal":..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationRecord {
    pub factors: Vec<PairRecord>,
    pub total_cost: Cost,
    pub optimal: bool,
}

fn require_unbranched(w: &Element) -> Result<()> {
    if w.family().is_unbranched() {
        Ok(())
    } else {
        Err(Error::WrongFamily {
            operation: "unbranched factorization",
            family: w.family(),
        })
    }
}

/// A transposable pair `(x, y)` with `w(x) >= y > x >= w(y)`.
///
/// Finite families: `y` carries the smallest non-fixed value of the (doubled)
/// window and `x` is the leftmost position with `w(x) >= y`. Affine families:
/// `y` is the least anti-exceedance in one period whose nearest non-fixed
/// position below is an exceedance, and `x` is that exceedance.
pub fn find_peel_pair(w: &Element) -> Result<(i64, i64)> {
    require_unbranched(w)?;
    if w.is_identity() {
        return Err(Error::IdentityInput);
    }
    let pair = match w.descriptor().period() {
        None => {
            let positions: Vec<i64> = w.doubled_positions().collect();
            let y = positions
                .iter()
                .copied()
                .filter(|&p| w.image(p) != p)
                .min_by_key(|&p| (w.image(p), p))
                .expect("non-identity element moves something");
            let x = positions
                .iter()
                .copied()
                .find(|&p| w.image(p) >= y)
                .expect("some value at least y sits left of y");
            (x, y)
        }
        Some(period) => (1..=period)
            .filter(|&y| w.image(y) < y)
            .find_map(|y| {
                // Anti-exceedances recur with the period, so this scan is bounded.
                let x = (y - period..y).rev().find(|&z| w.image(z) != z)?;
                (w.image(x) > x).then_some((x, y))
            })
            .expect("some anti-exceedance follows an exceedance"),
    };
    debug_assert!(is_peelable(w, pair.0, pair.1));
    Ok(pair)
}

fn is_peelable(w: &Element, x: i64, y: i64) -> bool {
    w.image(x) >= y && y > x && x >= w.image(y)
}

/// Peel `<(x y)>` off the right: returns `(w · <(x y)>, <(x y)>)`.
pub fn peel(w: &Element, x: i64, y: i64) -> Result<(Element, Transposition)> {
    let descriptor = w.descriptor();
    if !descriptor.in_domain(x) || !descriptor.in_domain(y) || !is_peelable(w, x, y) {
        return Err(Error::NotPeelable { x, y });
    }
    let t = Transposition::new(descriptor, x, y)?;
    let v = w.compose_unchecked(t.as_element());
    debug_assert_eq!(tvd(&v), tvd(w) - tvd(t.as_element()));
    Ok((v, t))
}

/// A factorization of cost `tvd(w) / 2` built by repeated peeling.
pub fn factor_unbranched(w: &Element) -> Result<Factorization> {
    require_unbranched(w)?;
    let mut current = w.clone();
    let mut peeled = Vec::new();
    while !current.is_identity() {
        let (x, y) = find_peel_pair(&current)?;
        let (next, t) = peel(&current, x, y)?;
        peeled.push(t);
        current = next;
    }
    // w · t_1 ··· t_k = id, and each t_i is an involution.
    peeled.reverse();
    Ok(Factorization::new(w.descriptor(), peeled))
}

/// Outcome of checking a claimed factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub valid: bool,
    pub reasons: Vec<String>,
    pub total_cost: Cost,
    /// Proved closed-form cost, where one exists.
    pub formula: Option<Cost>,
    /// Whether the witness attains the proved minimum.
    pub optimal: Option<bool>,
}

pub fn verify_witness(w: &Element, f: &Factorization) -> WitnessReport {
    let mut reasons = Vec::new();
    let same_group = f.descriptor == w.descriptor()
        && f.factors.iter().all(|t| t.descriptor() == w.descriptor());
    if !same_group {
        reasons.push(format!("factors do not all belong to {}", w.descriptor()));
    }
    let recomputed: Cost = f.factors.iter().map(Transposition::cost).sum();
    if recomputed != f.total_cost {
        reasons.push(format!(
            "recorded total {} differs from summed cost {recomputed}",
            f.total_cost
        ));
    }
    if same_group {
        let product = f.product();
        if &product != w {
            reasons.push(format!("product is {product}, expected {w}"));
        }
    }
    let formula = cost_formula(w).ok();
    WitnessReport {
        valid: reasons.is_empty(),
        reasons,
        total_cost: recomputed,
        formula,
        optimal: formula.map(|c| recomputed == c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;
    use crate::statistics::length;

    fn el(family: Family, window: &[i64]) -> Element {
        let d = GroupDescriptor::new(family, window.len()).unwrap();
        Element::new(d, window.to_vec()).unwrap()
    }

    #[test]
    fn peel_pair_examples() {
        assert_eq!(find_peel_pair(&el(Family::A, &[2, 3, 1])).unwrap(), (2, 3));
        assert_eq!(find_peel_pair(&el(Family::B, &[-1, 2])).unwrap(), (-1, 1));
        assert_eq!(find_peel_pair(&el(Family::AffA, &[0, 3])).unwrap(), (0, 1));
    }

    #[test]
    fn peel_pair_rejections() {
        let id = GroupDescriptor::new(Family::A, 3).unwrap().identity();
        assert_eq!(find_peel_pair(&id), Err(Error::IdentityInput));
        assert!(matches!(
            find_peel_pair(&el(Family::D, &[-1, -2])),
            Err(Error::WrongFamily { .. })
        ));
        assert!(matches!(
            factor_unbranched(&el(Family::AffB, &[1, 4])),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn peel_examples() {
        let w = el(Family::A, &[2, 3, 1]);
        let (v, t) = peel(&w, 2, 3).unwrap();
        assert_eq!(v.window(), &[2, 1, 3]);
        assert_eq!((tvd(&w), tvd(&v), tvd(t.as_element())), (4, 2, 2));

        let t = Transposition::new(w.descriptor(), 1, 3).unwrap();
        let (v, _) = peel(t.as_element(), 1, 3).unwrap();
        assert!(v.is_identity());

        let w = el(Family::B, &[-1, 2]);
        let (v, t) = peel(&w, -1, 1).unwrap();
        assert!(v.is_identity());
        assert_eq!((tvd(&w), tvd(t.as_element())), (2, 2));

        assert_eq!(
            peel(&el(Family::A, &[2, 3, 1]), 1, 2),
            Err(Error::NotPeelable { x: 1, y: 2 })
        );
    }

    #[test]
    fn greedy_examples() {
        let id = GroupDescriptor::new(Family::AffC, 3).unwrap().identity();
        let f = factor_unbranched(&id).unwrap();
        assert!(f.is_empty());
        assert_eq!(f.total_cost, Cost::ZERO);

        let w = el(Family::A, &[3, 1, 2]);
        let f = factor_unbranched(&w).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.total_cost, Cost::from_integer(2));
        assert_eq!(f.product(), w);

        let w = el(Family::B, &[-1, -2]);
        let f = factor_unbranched(&w).unwrap();
        assert_eq!(f.total_cost, Cost::from_integer(3));
        assert_eq!(f.product(), w);

        let w = el(Family::AffC, &[-5, 6, 7]);
        let f = factor_unbranched(&w).unwrap();
        assert_eq!(f.total_cost, Cost::from_integer(7));
        assert_eq!(f.product(), w);
        assert!(f.len() <= length(&w));
    }

    #[test]
    fn witness_checks() {
        let w = el(Family::A, &[3, 1, 2]);
        let f = factor_unbranched(&w).unwrap();
        let report = verify_witness(&w, &f);
        assert!(report.valid);
        assert_eq!(report.optimal, Some(true));

        let empty = Factorization::new(w.descriptor(), vec![]);
        assert!(!verify_witness(&w, &empty).valid);

        let id = w.descriptor().identity();
        let t = Transposition::new(w.descriptor(), 1, 3).unwrap();
        let twice = Factorization::new(w.descriptor(), vec![t.clone(), t.clone()]);
        let report = verify_witness(&id, &twice);
        assert!(report.valid);
        assert_eq!(report.total_cost, t.cost() + t.cost());
        assert_eq!(report.optimal, Some(false));
    }

    #[test]
    fn record_shape() {
        let w = el(Family::A, &[2, 1, 3]);
        let json = serde_json::to_string(&factor_unbranched(&w).unwrap().record(true)).unwrap();
        assert_eq!(
            json,
            r#"{"factors":[{"i":1,"j":2}],"total_cost":1,"optimal":true}"#
        );
    }
}
