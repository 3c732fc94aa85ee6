//! Per-element statistics: displacement, class inversions, blocks and the
//! closed-form cost.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::groups::{Element, Family, GroupDescriptor};
use crate::transpositions::{is_transposable, Transposition};

/// Total displacement `sum |w(i) - i|` over the window.
pub fn tvd(w: &Element) -> i64 {
    w.displacement()
}

/// Transpositions `<(i j)>` with `i < j` and `w(i) > w(j)`, each once.
///
/// Whether a representative pair inverts does not depend on the
/// representative, so one region of left endpoints suffices: the doubled
/// window for finite families and one period for affine ones. In the affine
/// case an inversion `(i, j)` forces `j - i < 2 * max |w(p) - p|`.
pub fn class_inversions(w: &Element) -> Vec<Transposition> {
    let descriptor = w.descriptor();
    let mut found = BTreeMap::new();
    let mut record = |i: i64, j: i64| {
        if w.image(i) > w.image(j) && is_transposable(descriptor, i, j) {
            let t = Transposition::new(descriptor, i, j).expect("transposable pair");
            found.entry(t.pair()).or_insert(t);
        }
    };
    match descriptor.period() {
        None => {
            let positions: Vec<i64> = w.doubled_positions().collect();
            for (k, &i) in positions.iter().enumerate() {
                for &j in &positions[k + 1..] {
                    record(i, j);
                }
            }
        }
        Some(period) => {
            let reach = 2 * w.max_displacement();
            for i in 1..=period {
                for j in i + 1..i + reach {
                    record(i, j);
                }
            }
        }
    }
    found.into_values().collect()
}

/// Coxeter length, counted as class inversions.
pub fn length(w: &Element) -> usize {
    class_inversions(w).len()
}

/// `#{i in [n] : w(i) < 0}` for the signed families.
pub fn neg(w: &Element) -> Result<usize> {
    if !w.family().is_signed() {
        return Err(Error::WrongFamily {
            operation: "neg",
            family: w.family(),
        });
    }
    Ok(w.window().iter().filter(|&&v| v < 0).count())
}

/// Number of cycles of a permutation; `n - cycle_count` is its reflection length.
pub fn cycle_count(w: &Element) -> Result<usize> {
    if w.family() != Family::A {
        return Err(Error::WrongFamily {
            operation: "cycle_count",
            family: w.family(),
        });
    }
    let window = w.window();
    let mut visited = vec![false; window.len()];
    let mut cycles = 0;
    for start in 0..window.len() {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while !visited[p] {
            visited[p] = true;
            p = (window[p] - 1) as usize;
        }
    }
    Ok(cycles)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockFlavor {
    A,
    B,
    D,
}

/// A direct-sum decomposition into indecomposable summands.
///
/// Flavor `A` blocks are elements of `S_k`; flavor `B` and `D` blocks are
/// signed permutations (elements of `S^B_k`), each even-signed for flavor `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub flavor: BlockFlavor,
    pub blocks: Vec<Element>,
}

impl BlockDecomposition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    /// Concatenate the blocks back into one window.
    pub fn direct_sum(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for block in &self.blocks {
            let offset = out.len() as i64;
            out.extend(
                block
                    .window()
                    .iter()
                    .map(|&v| v.signum() * (v.abs() + offset)),
            );
        }
        out
    }
}

pub fn blocks(w: &Element, flavor: BlockFlavor) -> Result<BlockDecomposition> {
    let mismatch = || Error::WrongFamily {
        operation: match flavor {
            BlockFlavor::A => "type A blocks",
            BlockFlavor::B => "type B blocks",
            BlockFlavor::D => "type D blocks",
        },
        family: w.family(),
    };
    let block_family = match (flavor, w.family()) {
        (BlockFlavor::A, Family::A) => Family::A,
        (BlockFlavor::B, Family::B | Family::D) => Family::B,
        (BlockFlavor::D, Family::B | Family::D) if neg(w)? % 2 == 0 => Family::B,
        _ => return Err(mismatch()),
    };
    let window = w.window();
    let mut cuts = vec![0usize];
    let mut max_abs = 0;
    let mut negatives = 0;
    for (k, &v) in window.iter().enumerate() {
        max_abs = max_abs.max(v.abs());
        negatives += usize::from(v < 0);
        let boundary = max_abs == k as i64 + 1;
        if boundary && (flavor != BlockFlavor::D || negatives % 2 == 0) {
            cuts.push(k + 1);
        }
    }
    let blocks = cuts
        .windows(2)
        .map(|pair| {
            let (start, end) = (pair[0], pair[1]);
            let offset = start as i64;
            let part = window[start..end]
                .iter()
                .map(|&v| v.signum() * (v.abs() - offset))
                .collect();
            let descriptor = GroupDescriptor::new(block_family, end - start)?;
            Element::new(descriptor, part)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDecomposition { flavor, blocks })
}

/// Good and very good values of an affine signed permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineBlockData {
    pub good_values: Vec<usize>,
    pub very_good_values: Vec<usize>,
    pub bl_c: usize,
    pub bl_b: usize,
}

/// `j in [n-1]` is good when `w` maps `±[j]` onto itself, very good when that
/// restriction is also even-signed.
pub fn affine_block_data(w: &Element) -> Result<AffineBlockData> {
    if !w.family().is_affine_signed() {
        return Err(Error::WrongFamily {
            operation: "affine block data",
            family: w.family(),
        });
    }
    let mut good_values = Vec::new();
    let mut very_good_values = Vec::new();
    let mut max_abs = 0;
    let mut negatives = 0;
    for (k, &v) in w.window().iter().enumerate().take(w.n() - 1) {
        max_abs = max_abs.max(v.abs());
        negatives += usize::from(v < 0);
        let j = k + 1;
        if max_abs == j as i64 {
            good_values.push(j);
            if negatives % 2 == 0 {
                very_good_values.push(j);
            }
        }
    }
    Ok(AffineBlockData {
        bl_c: 1 + good_values.len(),
        bl_b: 1 + very_good_values.len(),
        good_values,
        very_good_values,
    })
}

/// The proved closed form for `$(w)`: `tvd/2` in the unbranched families and
/// `tvd/2 + bl^B - bl^D` in type `D`.
pub fn cost_formula(w: &Element) -> Result<Cost> {
    let half_tvd = Cost::from_doubled(tvd(w));
    match w.family() {
        Family::A | Family::B | Family::AffA | Family::AffC => Ok(half_tvd),
        Family::D => {
            let bl_b = blocks(w, BlockFlavor::B)?.count() as i64;
            let bl_d = blocks(w, BlockFlavor::D)?.count() as i64;
            Ok(half_tvd + Cost::from_integer(bl_b - bl_d))
        }
        family @ (Family::AffB | Family::AffD) => Err(Error::WrongFamily {
            operation: "proved cost formula",
            family,
        }),
    }
}

/// The conjectured `~B` cost: `tvd/2 + bl^~C - bl^~B`.
pub fn cost_formula_affine_b_conjectured(w: &Element) -> Result<Cost> {
    if w.family() != Family::AffB {
        return Err(Error::WrongFamily {
            operation: "conjectured ~B cost formula",
            family: w.family(),
        });
    }
    let data = affine_block_data(w)?;
    Ok(Cost::from_doubled(tvd(w)) + Cost::from_integer(data.bl_c as i64 - data.bl_b as i64))
}

/// `(1 + l(t)) / 2`.
pub fn depth_of_transposition(t: &Transposition) -> Cost {
    Cost::from_doubled(1 + length(t.as_element()) as i64)
}

/// Every statistic that applies to the element; inapplicable ones are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatisticsReport {
    pub tvd: i64,
    pub length: usize,
    pub neg: Option<usize>,
    #[serde(rename = "bl_A")]
    pub bl_a: Option<usize>,
    #[serde(rename = "bl_B")]
    pub bl_b: Option<usize>,
    #[serde(rename = "bl_D")]
    pub bl_d: Option<usize>,
    #[serde(rename = "bl_C_aff")]
    pub bl_c_aff: Option<usize>,
    #[serde(rename = "bl_B_aff")]
    pub bl_b_aff: Option<usize>,
    pub cost_formula: Option<Cost>,
    pub conjectured: bool,
}

pub fn report(w: &Element) -> StatisticsReport {
    let count = |flavor| blocks(w, flavor).ok().map(|b| b.count());
    let affine = affine_block_data(w).ok();
    let (cost_formula, conjectured) = match w.family() {
        Family::AffB => (cost_formula_affine_b_conjectured(w).ok(), true),
        _ => (cost_formula(w).ok(), false),
    };
    StatisticsReport {
        tvd: tvd(w),
        length: length(w),
        neg: neg(w).ok(),
        bl_a: count(BlockFlavor::A),
        bl_b: if w.family() == Family::A {
            count(BlockFlavor::A)
        } else {
            count(BlockFlavor::B)
        },
        bl_d: count(BlockFlavor::D),
        bl_c_aff: affine.as_ref().map(|a| a.bl_c),
        bl_b_aff: affine.as_ref().map(|a| a.bl_b),
        cost_formula,
        conjectured,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(family: Family, window: &[i64]) -> Element {
        let d = GroupDescriptor::new(family, window.len()).unwrap();
        Element::new(d, window.to_vec()).unwrap()
    }

    const BLOCKY: [i64; 8] = [-3, -1, 2, -4, 7, 6, 8, -5];
    const AFFINE_EXAMPLE: [i64; 11] = [1, -2, 4, 3, 6, -5, 7, -8, 34, 9, 11];

    #[test]
    fn tvd_examples() {
        assert_eq!(tvd(&el(Family::AffC, &[-5, 6, 7])), 14);
        assert_eq!(tvd(&el(Family::B, &BLOCKY)), 32);
        assert_eq!(tvd(&el(Family::D, &BLOCKY)), 32);
        assert_eq!(tvd(&el(Family::AffA, &[1, 2, 3])), 0);
    }

    #[test]
    fn class_inversion_examples() {
        assert!(class_inversions(&el(Family::A, &[1, 2])).is_empty());
        let inv = class_inversions(&el(Family::A, &[2, 1]));
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].pair(), (1, 2));
        let inv = class_inversions(&el(Family::B, &[-1, 2]));
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].pair(), (-1, 1));
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&el(Family::A, &[3, 2, 1])), 3);
        assert_eq!(length(&el(Family::D, &[-1, -2])), 2);
        assert_eq!(length(&el(Family::AffA, &[0, 3])), 1);
        assert_eq!(length(&el(Family::AffC, &[1, 4])), 1);
    }

    #[test]
    fn neg_and_cycles() {
        assert_eq!(neg(&el(Family::B, &BLOCKY)).unwrap(), 4);
        assert_eq!(neg(&el(Family::B, &[-1])).unwrap(), 1);
        assert_eq!(neg(&el(Family::D, &[1, 2])).unwrap(), 0);
        assert!(neg(&el(Family::A, &[1, 2])).is_err());
        assert_eq!(cycle_count(&el(Family::A, &[1, 2, 3])).unwrap(), 3);
        assert_eq!(cycle_count(&el(Family::A, &[2, 1, 3])).unwrap(), 2);
        assert_eq!(cycle_count(&el(Family::A, &[2, 3, 1])).unwrap(), 1);
        assert!(cycle_count(&el(Family::B, &[2, 1])).is_err());
    }

    #[test]
    fn block_examples() {
        let w = el(Family::D, &BLOCKY);
        let b = blocks(&w, BlockFlavor::B).unwrap();
        let windows: Vec<&[i64]> = b.blocks.iter().map(Element::window).collect();
        assert_eq!(windows, vec![&[-3, -1, 2][..], &[-1], &[3, 2, 4, -1]]);
        assert_eq!(b.direct_sum(), BLOCKY.to_vec());
        let d = blocks(&w, BlockFlavor::D).unwrap();
        let windows: Vec<&[i64]> = d.blocks.iter().map(Element::window).collect();
        assert_eq!(windows, vec![&[-3, -1, 2][..], &[-1, 4, 3, 5, -2]]);
        assert_eq!(d.direct_sum(), BLOCKY.to_vec());
        let a = blocks(&el(Family::A, &[1, 2, 3, 4]), BlockFlavor::A).unwrap();
        assert_eq!(a.count(), 4);
    }

    #[test]
    fn block_flavor_mismatch() {
        assert!(blocks(&el(Family::A, &[1, 2]), BlockFlavor::B).is_err());
        assert!(blocks(&el(Family::B, &[1, 2]), BlockFlavor::A).is_err());
        assert!(blocks(&el(Family::B, &[-1, 2]), BlockFlavor::D).is_err());
        assert!(blocks(&el(Family::B, &[-1, -2]), BlockFlavor::D).is_ok());
    }

    #[test]
    fn affine_block_example() {
        let w = el(Family::AffB, &AFFINE_EXAMPLE);
        let data = affine_block_data(&w).unwrap();
        assert_eq!(data.good_values, vec![1, 2, 4, 6, 7, 8]);
        assert_eq!(data.very_good_values, vec![1, 6, 7]);
        assert_eq!(data.bl_c, 7);
        assert_eq!(data.bl_b, 4);
        let expected = Cost::from_doubled(tvd(&w)) + Cost::from_integer(3);
        assert_eq!(cost_formula_affine_b_conjectured(&w).unwrap(), expected);
    }

    #[test]
    fn affine_block_identity_and_extremes() {
        for n in 2..6 {
            let id = GroupDescriptor::new(Family::AffC, n).unwrap().identity();
            let data = affine_block_data(&id).unwrap();
            assert_eq!(data.good_values, (1..n).collect::<Vec<_>>());
            assert_eq!(data.bl_c, n);
        }
        let data = affine_block_data(&el(Family::AffC, &[-1, -2, -3, -4])).unwrap();
        assert_eq!(data.good_values.len(), 3);
        let data = affine_block_data(&el(Family::AffC, &[4, 5])).unwrap();
        assert!(data.good_values.is_empty());
        assert!(affine_block_data(&el(Family::B, &[1, 2])).is_err());
    }

    #[test]
    fn cost_formula_examples() {
        assert_eq!(
            cost_formula(&el(Family::D, &[-1, -2])).unwrap(),
            Cost::from_integer(4)
        );
        assert_eq!(
            cost_formula(&el(Family::A, &[3, 1, 2])).unwrap(),
            Cost::from_integer(2)
        );
        assert!(cost_formula(&el(Family::AffB, &[1, 2])).is_err());
        let id = GroupDescriptor::new(Family::AffB, 3).unwrap().identity();
        assert_eq!(cost_formula_affine_b_conjectured(&id).unwrap(), Cost::ZERO);
        assert!(cost_formula_affine_b_conjectured(&el(Family::AffC, &[1, 2])).is_err());
    }

    #[test]
    fn depth_examples() {
        let a = GroupDescriptor::new(Family::A, 5).unwrap();
        for (i, j) in [(1, 2), (1, 4), (2, 5)] {
            let t = Transposition::new(a, i, j).unwrap();
            assert_eq!(depth_of_transposition(&t), Cost::from_integer(j - i));
        }
        let d = GroupDescriptor::new(Family::D, 4).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 4), (3, 4)] {
            let t = Transposition::new(d, i, -j).unwrap();
            assert_eq!(depth_of_transposition(&t), Cost::from_integer(i + j - 2));
        }
        for n in 2..=4_i64 {
            let aff = GroupDescriptor::new(Family::AffA, n as usize).unwrap();
            for (i, j) in [(1, 2), (1, 3), (1, 6), (2, 9)] {
                if (j - i) % n == 0 {
                    continue;
                }
                let t = Transposition::new(aff, i, j).unwrap();
                let gap = j - i;
                assert_eq!(
                    depth_of_transposition(&t),
                    Cost::from_integer(gap - gap / n)
                );
            }
        }
    }

    #[test]
    fn report_fields() {
        let r = report(&el(Family::B, &BLOCKY));
        assert_eq!((r.tvd, r.bl_b, r.bl_d), (32, Some(3), Some(2)));
        assert_eq!(r.bl_a, None);
        let r = report(&el(Family::AffB, &AFFINE_EXAMPLE));
        assert!(r.conjectured);
        assert_eq!((r.bl_c_aff, r.bl_b_aff), (Some(7), Some(4)));
        let r = report(&el(Family::AffD, &[13, 2]));
        assert_eq!(r.cost_formula, None);
    }
}
