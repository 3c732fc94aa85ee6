use std::collections::{HashSet, VecDeque};

use super::{Element, GroupDescriptor};
use crate::error::{Error, Result};
use crate::transpositions::simple_generators;

/// Breadth-first ball around the identity in the Cayley graph of the simple
/// generators, yielding `(element, length)` in nondecreasing length order.
pub struct WordBall {
    generators: Vec<Element>,
    seen: HashSet<Vec<i64>>,
    queue: VecDeque<(Element, usize)>,
    max_length: Option<usize>,
}

impl WordBall {
    pub fn new(descriptor: GroupDescriptor, max_length: Option<usize>) -> Result<Self> {
        if descriptor.family().is_affine() && max_length.is_none() {
            return Err(Error::UnboundedEnumeration { descriptor });
        }
        let generators = simple_generators(descriptor)
            .into_iter()
            .map(|t| t.as_element().clone())
            .collect();
        let identity = descriptor.identity();
        let mut seen = HashSet::new();
        seen.insert(identity.window().to_vec());
        Ok(WordBall {
            generators,
            seen,
            queue: VecDeque::from([(identity, 0)]),
            max_length,
        })
    }
}

impl Iterator for WordBall {
    type Item = (Element, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let (element, length) = self.queue.pop_front()?;
        if self.max_length.is_none_or(|max| length < max) {
            for generator in &self.generators {
                let next = element.compose_unchecked(generator);
                if self.seen.insert(next.window().to_vec()) {
                    self.queue.push_back((next, length + 1));
                }
            }
        }
        Some((element, length))
    }
}

/// Every element of a finite group, or the ball of the given Coxeter length.
pub fn enumerate_elements(
    descriptor: GroupDescriptor,
    max_length: Option<usize>,
) -> Result<impl Iterator<Item = Element>> {
    Ok(WordBall::new(descriptor, max_length)?.map(|(element, _)| element))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    fn desc(family: Family, n: usize) -> GroupDescriptor {
        GroupDescriptor::new(family, n).unwrap()
    }

    #[test]
    fn finite_orders() {
        assert_eq!(
            enumerate_elements(desc(Family::A, 3), None)
                .unwrap()
                .count(),
            6
        );
        assert_eq!(
            enumerate_elements(desc(Family::B, 2), None)
                .unwrap()
                .count(),
            8
        );
        assert_eq!(
            enumerate_elements(desc(Family::D, 3), None)
                .unwrap()
                .count(),
            24
        );
        assert_eq!(
            enumerate_elements(desc(Family::A, 1), None)
                .unwrap()
                .count(),
            1
        );
    }

    #[test]
    fn infinite_dihedral_ball() {
        let lengths: Vec<usize> = WordBall::new(desc(Family::AffA, 2), Some(3))
            .unwrap()
            .map(|(_, l)| l)
            .collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn affine_needs_bound() {
        assert!(matches!(
            enumerate_elements(desc(Family::AffC, 2), None),
            Err(Error::UnboundedEnumeration { .. })
        ));
    }

    #[test]
    fn bounded_finite_ball() {
        // S_3 has one element of each length 0 and 3, two of lengths 1 and 2.
        let got = enumerate_elements(desc(Family::A, 3), Some(1))
            .unwrap()
            .count();
        assert_eq!(got, 3);
    }
}
