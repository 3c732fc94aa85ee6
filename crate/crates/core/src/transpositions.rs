//! Transposable pairs and the reflections `<(i j)>` they define.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::groups::{Element, Family, GroupDescriptor};

/// The symmetry closure of a swap `i <-> j`, named by a canonical pair.
///
/// The canonical pair `(i, j)`, `i < j`, is chosen among all images of the
/// swapped pair under the family's symmetries. Affine families translate so
/// that `i` lies in `1..=period` and take the lexicographically least
/// candidate; finite signed families take the candidate with the larger `j`,
/// so `<(1 2)>` stays `(1, 2)` rather than `(-2, -1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transposition {
    element: Element,
    i: i64,
    j: i64,
    same_class: bool,
}

impl Transposition {
    /// `<(i j)>`, the order-two element swapping `i` and `j`.
    pub fn new(descriptor: GroupDescriptor, i: i64, j: i64) -> Result<Self> {
        let element =
            construct(descriptor, i, j).ok_or(Error::NotTransposable { descriptor, i, j })?;
        let (ci, cj) = canonical_pair(descriptor, i, j);
        Ok(Transposition {
            element,
            i: ci,
            j: cj,
            same_class: descriptor.same_symmetry_class(i, j)?,
        })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.element.descriptor()
    }

    /// Canonical pair, `i < j`.
    pub fn pair(&self) -> (i64, i64) {
        (self.i, self.j)
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    pub fn same_class(&self) -> bool {
        self.same_class
    }

    pub fn as_element(&self) -> &Element {
        &self.element
    }

    /// Half the total displacement of the transposition.
    pub fn cost(&self) -> Cost {
        Cost::from_doubled(self.element.displacement())
    }

    /// `|i - j|` across classes, `|i - j| / 2` within a class.
    pub fn closed_form_cost(&self) -> Cost {
        let gap = self.j - self.i;
        if self.same_class {
            Cost::from_doubled(gap)
        } else {
            Cost::from_integer(gap)
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<({} {})>", self.i, self.j)
    }
}

impl Serialize for Transposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            family: Family,
            n: usize,
            i: i64,
            j: i64,
        }
        Repr {
            family: self.descriptor().family(),
            n: self.descriptor().n(),
            i: self.i,
            j: self.j,
        }
        .serialize(serializer)
    }
}

/// Whether some element of the family swaps `i` and `j`.
pub fn is_transposable(descriptor: GroupDescriptor, i: i64, j: i64) -> bool {
    if i == j || !descriptor.in_domain(i) || !descriptor.in_domain(j) {
        return false;
    }
    match descriptor.family() {
        Family::A | Family::B => true,
        Family::D => i != -j,
        Family::AffA => (i - j).rem_euclid(descriptor.n_i64()) != 0,
        Family::AffC => {
            !descriptor.is_trivial_position(i)
                && !descriptor.is_trivial_position(j)
                && (i - j).rem_euclid(2 * descriptor.n_i64() + 2) != 0
        }
        Family::AffB | Family::AffD => construct(descriptor, i, j).is_some(),
    }
}

/// Ground truth for transposability: build the closure and validate it.
pub fn transposable_by_construction(descriptor: GroupDescriptor, i: i64, j: i64) -> bool {
    construct(descriptor, i, j).is_some()
}

fn construct(descriptor: GroupDescriptor, i: i64, j: i64) -> Option<Element> {
    if i == j || !descriptor.in_domain(i) || !descriptor.in_domain(j) {
        return None;
    }
    let mut window = Vec::with_capacity(descriptor.n());
    for p in 1..=descriptor.n_i64() {
        let mut images = descriptor
            .symmetries_taking(i, p)
            .into_iter()
            .map(|g| g.apply(j))
            .chain(
                descriptor
                    .symmetries_taking(j, p)
                    .into_iter()
                    .map(|g| g.apply(i)),
            );
        let value = match images.next() {
            None => p,
            Some(first) => {
                if images.any(|other| other != first) {
                    return None;
                }
                first
            }
        };
        window.push(value);
    }
    let element = Element::validate(descriptor, window).ok()?;
    let swaps = element.image(i) == j && element.image(j) == i;
    (swaps && element.compose_unchecked(&element).is_identity()).then_some(element)
}

fn canonical_pair(descriptor: GroupDescriptor, i: i64, j: i64) -> (i64, i64) {
    let ordered = (i.min(j), i.max(j));
    let mut reps = vec![ordered];
    if descriptor.family().is_signed() {
        reps.push((-ordered.1, -ordered.0));
    }
    match descriptor.period() {
        Some(period) => {
            for rep in reps.iter_mut() {
                let shift = (rep.0 - 1).div_euclid(period) * period;
                *rep = (rep.0 - shift, rep.1 - shift);
            }
            reps.into_iter().min()
        }
        None => reps.into_iter().max_by_key(|&(i, j)| (j, i)),
    }
    .expect("at least one representative")
}

/// The Coxeter generators of the family.
///
/// `s_i = <(i i+1)>`, `s_0 = <(1 -1)>`, `s'_1 = <(1 -2)>`, `s'_n = <(n n+2)>`,
/// and for `~D` the mirror image of `s'_1` across `n + 1`,
/// `s''_n = <(n-1 n+2)>`. At `n = 2` the `~D` diagram is two disjoint affine
/// edges and needs a fourth generator, `<(2 7)>`.
pub fn simple_generators(descriptor: GroupDescriptor) -> Vec<Transposition> {
    let n = descriptor.n_i64();
    let chain = (1..n).map(|i| (i, i + 1));
    let pairs: Vec<(i64, i64)> = match descriptor.family() {
        Family::A => chain.collect(),
        Family::B => std::iter::once((1, -1)).chain(chain).collect(),
        Family::D => std::iter::once((1, -2)).chain(chain).collect(),
        Family::AffA => chain.chain([(n, n + 1)]).collect(),
        Family::AffC => std::iter::once((1, -1))
            .chain(chain)
            .chain([(n, n + 2)])
            .collect(),
        Family::AffB => std::iter::once((1, -2))
            .chain(chain)
            .chain([(n, n + 2)])
            .collect(),
        Family::AffD if n == 2 => vec![(1, -2), (1, 2), (1, 4), (2, 7)],
        Family::AffD => std::iter::once((1, -2))
            .chain(chain)
            .chain([(n - 1, n + 2)])
            .collect(),
    };
    pairs
        .into_iter()
        .map(|(i, j)| Transposition::new(descriptor, i, j).expect("simple generator"))
        .collect()
}

/// Every transposition of a finite family.
pub fn all_transpositions(descriptor: GroupDescriptor) -> Result<Vec<Transposition>> {
    if descriptor.family().is_affine() {
        return Err(Error::UnboundedEnumeration { descriptor });
    }
    let n = descriptor.n_i64();
    let positions: Vec<i64> = (-n..=n).filter(|&p| descriptor.in_domain(p)).collect();
    let mut found = BTreeMap::new();
    for (k, &i) in positions.iter().enumerate() {
        for &j in &positions[k + 1..] {
            if is_transposable(descriptor, i, j) {
                let t = Transposition::new(descriptor, i, j)?;
                found.entry(t.pair()).or_insert(t);
            }
        }
    }
    Ok(sorted_by_cost(found.into_values()))
}

/// Every transposition with `cost <= budget`, each once.
///
/// Finite for affine families as well: a transposition costs at least half
/// the gap of its canonical pair.
pub fn transpositions_with_cost_at_most(
    descriptor: GroupDescriptor,
    budget: Cost,
) -> Vec<Transposition> {
    if budget < Cost::ZERO {
        return Vec::new();
    }
    let Some(period) = descriptor.period() else {
        let all = all_transpositions(descriptor).expect("finite family");
        return all.into_iter().filter(|t| t.cost() <= budget).collect();
    };
    let max_gap = budget.doubled();
    let mut found = BTreeMap::new();
    for i in 1..=period {
        for j in i + 1..=i + max_gap {
            if !is_transposable(descriptor, i, j) {
                continue;
            }
            if found.contains_key(&canonical_pair(descriptor, i, j)) {
                continue;
            }
            let t = Transposition::new(descriptor, i, j).expect("transposable");
            if t.cost() <= budget {
                found.insert(t.pair(), t);
            }
        }
    }
    sorted_by_cost(found.into_values())
}

fn sorted_by_cost(ts: impl Iterator<Item = Transposition>) -> Vec<Transposition> {
    let mut ts: Vec<Transposition> = ts.collect();
    ts.sort_by_key(|t| (t.cost(), t.pair()));
    ts
}
