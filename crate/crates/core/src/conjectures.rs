//! Exploration sweeps for the open cases: affine types B and D.
//!
//! Unproved statements are only ever reported. The proved lower bound
//! `$(w) >= tvd(w) / 2` is checked inside every sweep and aborts it on failure.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::factorization::FactorizationRecord;
use crate::groups::{Element, Family, GroupDescriptor, WordBall};
use crate::oracle::{
    check_lower_bound, default_budget, min_cost_with, SearchOptions, SearchResult, Weight,
};
use crate::statistics::{cost_formula, cost_formula_affine_b_conjectured, tvd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConjectureId {
    #[serde(rename = "AffB_formula")]
    AffBFormula,
    #[serde(rename = "AffD_bounds")]
    AffDBounds,
    #[serde(rename = "AffD_equality_class")]
    AffDEqualityClass,
    #[serde(rename = "Bounded_gap")]
    BoundedGap,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 4] = [
        ConjectureId::AffBFormula,
        ConjectureId::AffDBounds,
        ConjectureId::AffDEqualityClass,
        ConjectureId::BoundedGap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConjectureId::AffBFormula => "AffB_formula",
            ConjectureId::AffDBounds => "AffD_bounds",
            ConjectureId::AffDEqualityClass => "AffD_equality_class",
            ConjectureId::BoundedGap => "Bounded_gap",
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConjectureId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected AffB_formula, AffD_bounds, AffD_equality_class or Bounded_gap"
                    .into(),
            })
    }
}

/// An element where the conjectured statement failed, with a replayable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub element: Element,
    pub expected: String,
    pub observed: Cost,
    pub note: String,
    pub witness: FactorizationRecord,
}

/// An element whose exact cost could not be settled within the budgets tried.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inconclusive {
    pub element: Element,
    pub reason: String,
}

/// One element of the conjectured equality family evaluated directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormCase {
    pub element: Element,
    pub i: usize,
    pub k: i64,
    pub tvd: i64,
    pub cost: Option<Cost>,
    pub equality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub conjecture_id: ConjectureId,
    pub family: Family,
    pub n: usize,
    pub length_bound: usize,
    /// Elements whose cost was settled: `agree + counterexamples.len()`.
    pub tested: usize,
    pub agree: usize,
    pub counterexamples: Vec<Counterexample>,
    pub inconclusive: Vec<Inconclusive>,
    /// Largest `$(w) - tvd(w) / 2` among settled elements.
    pub max_gap: Cost,
    /// Members of the equality family, including `k = 0` (the identity) on its own.
    pub form_cases: Vec<FormCase>,
}

impl ConjectureReport {
    /// 0 when everything agreed, 2 on a counterexample, 3 when elements were left open.
    pub fn exit_code(&self) -> i32 {
        if !self.counterexamples.is_empty() {
            2
        } else if !self.inconclusive.is_empty() {
            3
        } else {
            0
        }
    }
}

enum Settled {
    Exact(SearchResult),
    Open(String),
}

/// Search with each budget in turn. Exhausting a budget only proves the cost
/// exceeds it, so it moves on to the next; running out of budgets leaves the element open.
fn settle(w: &Element, budgets: &[Cost], options: &SearchOptions) -> Result<Settled> {
    let mut last = String::new();
    for &budget in budgets {
        let opts = SearchOptions {
            budget: Some(budget),
            ..*options
        };
        match min_cost_with(w, Weight::Cost, &opts) {
            Ok(r) => {
                check_lower_bound(w, r.optimum)?;
                return Ok(Settled::Exact(r));
            }
            Err(e @ (Error::BudgetExhausted { .. } | Error::ExpansionCap { .. })) => {
                last = e.to_string()
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Settled::Open(last))
}

/// Every element of the sweep. Each is revalidated so an enumeration bug
/// cannot feed the report a non-member.
fn sweep_elements(descriptor: GroupDescriptor, length_bound: usize) -> Result<Vec<Element>> {
    WordBall::new(descriptor, Some(length_bound))?
        .map(|(e, _)| Element::new(descriptor, e.window().to_vec()))
        .collect()
}

fn searching() -> SearchOptions {
    // The displacement bound holds in every group, so A* is exact everywhere.
    SearchOptions {
        heuristic: true,
        ..SearchOptions::default()
    }
}

struct Outcome {
    gap: Option<Cost>,
    verdict: Verdict,
}

enum Verdict {
    Agree,
    Disagree(Counterexample),
    Open(Inconclusive),
    Skipped,
}

fn assemble(
    conjecture_id: ConjectureId,
    descriptor: GroupDescriptor,
    length_bound: usize,
    outcomes: Vec<Outcome>,
    form_cases: Vec<FormCase>,
) -> ConjectureReport {
    let mut report = ConjectureReport {
        conjecture_id,
        family: descriptor.family(),
        n: descriptor.n(),
        length_bound,
        tested: 0,
        agree: 0,
        counterexamples: Vec::new(),
        inconclusive: Vec::new(),
        max_gap: Cost::ZERO,
        form_cases,
    };
    for o in outcomes {
        if let Some(gap) = o.gap {
            report.max_gap = report.max_gap.max(gap);
        }
        match o.verdict {
            Verdict::Agree => {
                report.tested += 1;
                report.agree += 1;
            }
            Verdict::Disagree(c) => {
                report.tested += 1;
                report.counterexamples.push(c);
            }
            Verdict::Open(i) => report.inconclusive.push(i),
            Verdict::Skipped => {}
        }
    }
    report
}

fn gap_of(w: &Element, cost: Cost) -> Cost {
    cost - Cost::from_doubled(tvd(w))
}

/// `$(w) = tvd(w)/2 + bl^C(w) - bl^B(w)` on affine type B.
pub fn check_affb_formula(n: usize, length_bound: usize) -> Result<ConjectureReport> {
    let descriptor = GroupDescriptor::new(Family::AffB, n)?;
    let options = searching();
    let slack = Cost::from_integer(n as i64);
    let outcomes = sweep_elements(descriptor, length_bound)?
        .par_iter()
        .map(|w| {
            let expected = cost_formula_affine_b_conjectured(w)?;
            let first = expected + slack;
            let budgets = [first, first + first];
            Ok(match settle(w, &budgets, &options)? {
                Settled::Exact(r) => Outcome {
                    gap: Some(gap_of(w, r.optimum)),
                    verdict: if r.optimum == expected {
                        Verdict::Agree
                    } else {
                        Verdict::Disagree(Counterexample {
                            element: w.clone(),
                            expected: expected.to_string(),
                            observed: r.optimum,
                            note: "search optimum differs from the conjectured formula".into(),
                            witness: r.witness.record(true),
                        })
                    },
                },
                Settled::Open(reason) => Outcome {
                    gap: None,
                    verdict: Verdict::Open(Inconclusive {
                        element: w.clone(),
                        reason,
                    }),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(
        ConjectureId::AffBFormula,
        descriptor,
        length_bound,
        outcomes,
        Vec::new(),
    ))
}

/// The conjectured upper bound first, then the proved one, so every element settles
/// unless the expansion cap intervenes.
fn affd_budgets(w: &Element) -> Result<Vec<Cost>> {
    let conjectured = Cost::from_integer(tvd(w));
    let proved = default_budget(w, Weight::Cost)?;
    Ok(if proved > conjectured {
        vec![conjectured, proved]
    } else {
        vec![proved]
    })
}

fn affd_costs(elements: &[Element]) -> Result<Vec<(Element, Settled)>> {
    let options = searching();
    elements
        .par_iter()
        .map(|w| Ok((w.clone(), settle(w, &affd_budgets(w)?, &options)?)))
        .collect()
}

/// `tvd(w)/2 <= $(w) <= tvd(w)` on affine type D. The left side is proved and asserted.
pub fn check_affd_bounds(n: usize, length_bound: usize) -> Result<ConjectureReport> {
    let descriptor = GroupDescriptor::new(Family::AffD, n)?;
    let elements = sweep_elements(descriptor, length_bound)?;
    let outcomes = affd_costs(&elements)?
        .into_iter()
        .map(|(w, settled)| match settled {
            Settled::Exact(r) => {
                let upper = Cost::from_integer(tvd(&w));
                Outcome {
                    gap: Some(gap_of(&w, r.optimum)),
                    verdict: if r.optimum <= upper {
                        Verdict::Agree
                    } else {
                        Verdict::Disagree(Counterexample {
                            element: w.clone(),
                            expected: format!("<= {upper}"),
                            observed: r.optimum,
                            note: "cost exceeds the total displacement".into(),
                            witness: r.witness.record(true),
                        })
                    },
                }
            }
            Settled::Open(reason) => Outcome {
                gap: None,
                verdict: Verdict::Open(Inconclusive {
                    element: w.clone(),
                    reason,
                }),
            },
        })
        .collect();
    Ok(assemble(
        ConjectureId::AffDBounds,
        descriptor,
        length_bound,
        outcomes,
        Vec::new(),
    ))
}

/// `Some((i, k))` when `w` is the identity except `w(i) = i + 2k(2n+2)`.
/// The identity itself is reported as `k = 0` with `i = 0`.
pub fn equality_form(w: &Element) -> Option<(usize, i64)> {
    let period = w.descriptor().period()?;
    let moved: Vec<(usize, i64)> = w
        .window()
        .iter()
        .enumerate()
        .map(|(idx, &v)| (idx + 1, v))
        .filter(|&(i, v)| v != i as i64)
        .collect();
    match moved.as_slice() {
        [] => Some((0, 0)),
        [(i, v)] => {
            let shift = v - *i as i64;
            (shift % (2 * period) == 0).then_some((*i, shift / (2 * period)))
        }
        _ => None,
    }
}

/// Members of the equality family with `|k| <= max_k`, built directly.
pub fn equality_family(n: usize, max_k: i64) -> Result<Vec<(usize, i64, Element)>> {
    let descriptor = GroupDescriptor::new(Family::AffD, n)?;
    let period = descriptor.period().expect("affine");
    let mut out = Vec::new();
    for i in 1..=n {
        for k in (-max_k..=max_k).filter(|&k| k != 0) {
            let mut window: Vec<i64> = (1..=n as i64).collect();
            window[i - 1] += 2 * k * period;
            out.push((i, k, Element::new(descriptor, window)?));
        }
    }
    Ok(out)
}

/// `$(w) = tvd(w)` exactly on the family `[1, .., i + 2k(2n+2), .., n]`.
///
/// The sweep tests both directions on the ball. Family members with `|k| = 1`
/// are also evaluated directly, since most lie outside small balls. The
/// identity matches the form only with `k = 0` and is listed apart, not scored.
pub fn check_affd_equality_class(n: usize, length_bound: usize) -> Result<ConjectureReport> {
    let descriptor = GroupDescriptor::new(Family::AffD, n)?;
    let ball = sweep_elements(descriptor, length_bound)?;
    let family = equality_family(n, 1)?;
    let mut elements = ball.clone();
    for (_, _, e) in &family {
        if !elements.contains(e) {
            elements.push(e.clone());
        }
    }
    let costs = affd_costs(&elements)?;

    let mut form_cases = vec![FormCase {
        element: descriptor.identity(),
        i: 0,
        k: 0,
        tvd: 0,
        cost: Some(Cost::ZERO),
        equality: Some(true),
    }];
    for (i, k, e) in &family {
        let cost = costs
            .iter()
            .find(|(w, _)| w == e)
            .and_then(|(_, s)| match s {
                Settled::Exact(r) => Some(r.optimum),
                Settled::Open(_) => None,
            });
        form_cases.push(FormCase {
            element: e.clone(),
            i: *i,
            k: *k,
            tvd: tvd(e),
            cost,
            equality: cost.map(|c| c == Cost::from_integer(tvd(e))),
        });
    }

    let outcomes = costs
        .into_iter()
        .map(|(w, settled)| {
            if w.is_identity() {
                return Outcome {
                    gap: Some(Cost::ZERO),
                    verdict: Verdict::Skipped,
                };
            }
            match settled {
                Settled::Exact(r) => {
                    let equality = r.optimum == Cost::from_integer(tvd(&w));
                    let in_form = equality_form(&w).is_some();
                    Outcome {
                        gap: Some(gap_of(&w, r.optimum)),
                        verdict: if equality == in_form {
                            Verdict::Agree
                        } else {
                            Verdict::Disagree(Counterexample {
                                element: w.clone(),
                                expected: if in_form {
                                    format!("= {}", tvd(&w))
                                } else {
                                    format!("!= {}", tvd(&w))
                                },
                                observed: r.optimum,
                                note: if in_form {
                                    "element of the conjectured form without equality".into()
                                } else {
                                    "equality outside the conjectured form".into()
                                },
                                witness: r.witness.record(true),
                            })
                        },
                    }
                }
                Settled::Open(reason) => Outcome {
                    gap: None,
                    verdict: Verdict::Open(Inconclusive {
                        element: w.clone(),
                        reason,
                    }),
                },
            }
        })
        .collect();
    Ok(assemble(
        ConjectureId::AffDEqualityClass,
        descriptor,
        length_bound,
        outcomes,
        form_cases,
    ))
}

/// `$(w) - tvd(w)/2 <= n`. Proved, and asserted, in every family except affine B and D.
pub fn check_bounded_gap(
    descriptor: GroupDescriptor,
    length_bound: usize,
) -> Result<ConjectureReport> {
    let proved = !matches!(descriptor.family(), Family::AffB | Family::AffD);
    let bound = Cost::from_integer(descriptor.n() as i64);
    let options = searching();
    let elements = sweep_elements(descriptor, length_bound)?;
    let outcomes = elements
        .par_iter()
        .map(|w| {
            let budgets = if proved {
                vec![cost_formula(w)?]
            } else {
                affd_budgets(w)?
            };
            Ok(match settle(w, &budgets, &options)? {
                Settled::Exact(r) => {
                    let gap = gap_of(w, r.optimum);
                    if gap > bound && proved {
                        return Err(Error::GapBoundViolated {
                            window: w.to_string(),
                            gap,
                            n: descriptor.n(),
                        });
                    }
                    Outcome {
                        gap: Some(gap),
                        verdict: if gap <= bound {
                            Verdict::Agree
                        } else {
                            Verdict::Disagree(Counterexample {
                                element: w.clone(),
                                expected: format!("gap <= {bound}"),
                                observed: r.optimum,
                                note: format!("gap {gap}"),
                                witness: r.witness.record(true),
                            })
                        },
                    }
                }
                Settled::Open(reason) => Outcome {
                    gap: None,
                    verdict: Verdict::Open(Inconclusive {
                        element: w.clone(),
                        reason,
                    }),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(
        ConjectureId::BoundedGap,
        descriptor,
        length_bound,
        outcomes,
        Vec::new(),
    ))
}

/// Dispatch by name; `n` fixes the rank and, for the gap check, `family` the group.
pub fn run(
    id: ConjectureId,
    family: Option<Family>,
    n: usize,
    length_bound: usize,
) -> Result<ConjectureReport> {
    match id {
        ConjectureId::AffBFormula => check_affb_formula(n, length_bound),
        ConjectureId::AffDBounds => check_affd_bounds(n, length_bound),
        ConjectureId::AffDEqualityClass => check_affd_equality_class(n, length_bound),
        ConjectureId::BoundedGap => check_bounded_gap(
            GroupDescriptor::new(family.unwrap_or(Family::AffB), n)?,
            length_bound,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_only() {
        let r = check_affb_formula(2, 0).unwrap();
        assert_eq!((r.tested, r.agree), (1, 1));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn counts_are_consistent() {
        let r = check_affb_formula(2, 3).unwrap();
        assert_eq!(r.tested, r.agree + r.counterexamples.len());
        assert!(r.tested > 1);
    }

    #[test]
    fn equality_form_recognition() {
        let d = GroupDescriptor::new(Family::AffD, 2).unwrap();
        let w = Element::new(d, vec![13, 2]).unwrap();
        assert_eq!(equality_form(&w), Some((1, 1)));
        let w = Element::new(d, vec![1, -10]).unwrap();
        assert_eq!(equality_form(&w), Some((2, -1)));
        assert_eq!(equality_form(&d.identity()), Some((0, 0)));
        let w = Element::new(d, vec![7, 2]);
        if let Ok(w) = w {
            assert_eq!(equality_form(&w), None);
        }
    }

    #[test]
    fn equality_family_is_in_the_group() {
        assert_eq!(equality_family(2, 1).unwrap().len(), 4);
        assert_eq!(equality_family(3, 2).unwrap().len(), 12);
    }

    #[test]
    fn identity_listed_with_k_zero() {
        let r = check_affd_equality_class(2, 1).unwrap();
        assert_eq!(r.form_cases[0].k, 0);
        assert!(r.form_cases[0].element.is_identity());
        assert!(r.form_cases.iter().skip(1).all(|c| c.cost.is_some()));
    }

    #[test]
    fn gap_in_proved_families() {
        let r = check_bounded_gap(GroupDescriptor::new(Family::AffC, 2).unwrap(), 4).unwrap();
        assert_eq!(r.max_gap, Cost::ZERO);
        let r = check_bounded_gap(GroupDescriptor::new(Family::D, 3).unwrap(), 20).unwrap();
        assert_eq!(r.tested, 24);
        assert!(r.max_gap <= Cost::from_integer(3));
        assert!(r.max_gap > Cost::ZERO);
    }

    #[test]
    fn names_round_trip() {
        for id in ConjectureId::ALL {
            assert_eq!(id.name().parse::<ConjectureId>().unwrap(), id);
            assert_eq!(
                serde_json::to_string(&id).unwrap(),
                format!("\"{}\"", id.name())
            );
        }
    }
}
