#![allow(dead_code)]

use george_core::groups::WordBall;
use george_core::transpositions::simple_generators;
use george_core::{Element, Family, GroupDescriptor};
use proptest::prelude::*;

pub fn desc(family: Family, n: usize) -> GroupDescriptor {
    GroupDescriptor::new(family, n).unwrap()
}

pub fn el(family: Family, window: &[i64]) -> Element {
    Element::new(desc(family, window.len()), window.to_vec()).unwrap()
}

/// Product of simple generators picked by `word` (indices taken modulo the rank).
pub fn from_word(d: GroupDescriptor, word: &[usize]) -> Element {
    let gens = simple_generators(d);
    word.iter().fold(d.identity(), |acc, &k| {
        acc.compose(gens[k % gens.len()].as_element()).unwrap()
    })
}

pub fn ball(d: GroupDescriptor, max_length: Option<usize>) -> Vec<(Element, usize)> {
    WordBall::new(d, max_length).unwrap().collect()
}

pub fn family_strategy() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

pub fn unbranched_strategy() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::A, Family::B, Family::AffA, Family::AffC])
}

/// Random elements as random words, so affine elements have bounded size.
pub fn element_in(
    families: impl Strategy<Value = Family>,
    max_n: usize,
    max_word: usize,
) -> impl Strategy<Value = Element> {
    (
        families,
        2..=max_n,
        prop::collection::vec(any::<usize>(), 0..=max_word),
    )
        .prop_map(|(f, n, word)| from_word(desc(f, n), &word))
}

pub fn any_element() -> impl Strategy<Value = Element> {
    element_in(family_strategy(), 5, 16)
}

pub fn element_pair() -> impl Strategy<Value = (Element, Element)> {
    (
        family_strategy(),
        2..=5usize,
        prop::collection::vec(any::<usize>(), 0..=16),
        prop::collection::vec(any::<usize>(), 0..=16),
    )
        .prop_map(|(f, n, a, b)| {
            let d = desc(f, n);
            (from_word(d, &a), from_word(d, &b))
        })
}

/// Symmetries of the family as (negate, shift), sampled in a small range.
pub fn symmetries(d: GroupDescriptor) -> Vec<(bool, i64)> {
    let shifts: Vec<i64> = match d.period() {
        Some(p) => (-2..=2).map(|k| k * p).collect(),
        None => vec![0],
    };
    let signs: &[bool] = if d.family().is_signed() {
        &[false, true]
    } else {
        &[false]
    };
    signs
        .iter()
        .flat_map(|&neg| shifts.iter().map(move |&s| (neg, s)))
        .collect()
}

pub fn apply(sym: (bool, i64), x: i64) -> i64 {
    if sym.0 {
        sym.1 - x
    } else {
        sym.1 + x
    }
}
