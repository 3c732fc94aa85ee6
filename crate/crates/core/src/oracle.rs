//! Ground truth by search: exact minimum-weight transposition factorizations
//! on the Cayley graph, and word length over the simple generators.
//!
//! Nothing here consults the closed-form cost except to report agreement.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::factorization::{factor_unbranched, Factorization};
use crate::groups::{Element, Family, GroupDescriptor, WordBall};
use crate::statistics::{cost_formula, depth_of_transposition, length, tvd};
use crate::transpositions::{
    all_transpositions, simple_generators, transpositions_with_cost_at_most, Transposition,
};

/// Edge weight on transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    /// Half the total displacement of the transposition.
    Cost,
    /// `(1 + l(t)) / 2`.
    Depth,
    /// One per factor; the optimum is the reflection length.
    Unit,
}

impl Weight {
    pub fn of(self, t: &Transposition) -> Cost {
        match self {
            Weight::Cost => t.cost(),
            Weight::Depth => depth_of_transposition(t),
            Weight::Unit => Cost::from_integer(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest path weight ever expanded. Defaults to a proved upper bound.
    pub budget: Option<Cost>,
    pub max_expansions: usize,
    /// Use `tvd(v^-1 w) / 2` as an A* heuristic (cost weight only).
    pub heuristic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            max_expansions: 5_000_000,
            heuristic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub target: Element,
    pub weight: Weight,
    pub optimum: Cost,
    pub witness: Factorization,
    pub expanded_nodes: usize,
    pub budget_used: Cost,
}

/// Largest cost of a simple generator of the group.
pub fn max_simple_cost(descriptor: GroupDescriptor) -> Cost {
    simple_generators(descriptor)
        .iter()
        .map(Transposition::cost)
        .max()
        .unwrap_or(Cost::ZERO)
}

/// A weight certainly attained by some factorization of `w`.
///
/// Cost: the greedy witness in unbranched families, otherwise a reduced word
/// priced at the dearest simple generator. Depth and unit weight: `l(w)`,
/// since every simple generator has depth and unit weight one.
pub fn default_budget(w: &Element, weight: Weight) -> Result<Cost> {
    Ok(match weight {
        Weight::Cost if w.family().is_unbranched() => factor_unbranched(w)?.total_cost,
        Weight::Cost => {
            Cost::from_doubled(max_simple_cost(w.descriptor()).doubled() * length(w) as i64)
        }
        Weight::Depth | Weight::Unit => Cost::from_integer(length(w) as i64),
    })
}

/// Transpositions that can appear in a factorization of weight at most `budget`,
/// sorted by weight.
fn frontier(
    descriptor: GroupDescriptor,
    weight: Weight,
    budget: Cost,
) -> Result<Vec<(Transposition, Cost)>> {
    let candidates = if !descriptor.family().is_affine() {
        all_transpositions(descriptor)?
    } else {
        match weight {
            Weight::Cost => transpositions_with_cost_at_most(descriptor, budget),
            // cost(t) <= max_simple_cost * l(t) and 1 + l(t) <= 2 * budget.
            Weight::Depth => {
                let per_step = max_simple_cost(descriptor).doubled();
                let cap = Cost::from_doubled(per_step * (budget.doubled() - 1).max(0));
                transpositions_with_cost_at_most(descriptor, cap)
            }
            Weight::Unit => return Err(Error::UnboundedFrontier { descriptor }),
        }
    };
    let mut out: Vec<(Transposition, Cost)> = candidates
        .into_iter()
        .map(|t| {
            let wt = weight.of(&t);
            (t, wt)
        })
        .filter(|(_, wt)| *wt <= budget)
        .collect();
    out.sort_by_key(|(t, wt)| (*wt, t.pair()));
    Ok(out)
}

/// Best path weight per window, with the parent window and frontier index.
type Visited = HashMap<Vec<i64>, (Cost, Option<(Vec<i64>, usize)>)>;

pub fn min_cost(w: &Element, weight: Weight) -> Result<SearchResult> {
    min_cost_with(w, weight, &SearchOptions::default())
}

/// Best-first search from the identity, right-multiplying by transpositions,
/// until `w` is popped. Ties break on `(weight, window)` for reproducible witnesses.
pub fn min_cost_with(w: &Element, weight: Weight, options: &SearchOptions) -> Result<SearchResult> {
    let descriptor = w.descriptor();
    let budget = match options.budget {
        Some(b) => b,
        None => default_budget(w, weight)?,
    };
    let frontier = frontier(descriptor, weight, budget)?;
    let use_heuristic = options.heuristic && weight == Weight::Cost;
    let target_inverse = w.inverse();
    // tvd(v^-1 w) = tvd(w^-1 v), which needs only one product per node.
    let heuristic = |v: &Element| -> Cost {
        if use_heuristic {
            Cost::from_doubled(tvd(&target_inverse.compose_unchecked(v)))
        } else {
            Cost::ZERO
        }
    };

    let start = descriptor.identity();
    let mut best = Visited::new();
    let mut closed: HashSet<Vec<i64>> = HashSet::new();
    let mut heap = BinaryHeap::new();
    best.insert(start.window().to_vec(), (Cost::ZERO, None));
    heap.push(Reverse((
        heuristic(&start),
        start.window().to_vec(),
        Cost::ZERO,
    )));

    let mut expanded = 0;
    while let Some(Reverse((_, window, g))) = heap.pop() {
        if best.get(&window).map(|b| b.0) != Some(g) || !closed.insert(window.clone()) {
            continue;
        }
        expanded += 1;
        if window == w.window() {
            let witness = reconstruct(descriptor, &frontier, &best, window);
            return Ok(SearchResult {
                target: w.clone(),
                weight,
                optimum: g,
                witness,
                expanded_nodes: expanded,
                budget_used: budget,
            });
        }
        if expanded >= options.max_expansions {
            return Err(Error::ExpansionCap {
                cap: options.max_expansions,
            });
        }
        let node = Element::from_window_unchecked(descriptor, window.clone());
        for (index, (t, wt)) in frontier.iter().enumerate() {
            let next_g = g + *wt;
            if next_g > budget {
                break;
            }
            let child = node.compose_unchecked(t.as_element());
            if closed.contains(child.window()) {
                continue;
            }
            let f = next_g + heuristic(&child);
            if f > budget {
                continue;
            }
            let improved = match best.entry(child.window().to_vec()) {
                Entry::Vacant(slot) => {
                    slot.insert((next_g, Some((window.clone(), index))));
                    true
                }
                Entry::Occupied(mut slot) if next_g < slot.get().0 => {
                    slot.insert((next_g, Some((window.clone(), index))));
                    true
                }
                Entry::Occupied(_) => false,
            };
            if improved {
                heap.push(Reverse((f, child.into_window(), next_g)));
            }
        }
    }
    Err(Error::BudgetExhausted { budget, expanded })
}

fn reconstruct(
    descriptor: GroupDescriptor,
    frontier: &[(Transposition, Cost)],
    best: &Visited,
    mut window: Vec<i64>,
) -> Factorization {
    let mut factors = Vec::new();
    while let Some((parent, index)) = &best[&window].1 {
        factors.push(frontier[*index].0.clone());
        window = parent.clone();
    }
    factors.reverse();
    Factorization::new(descriptor, factors)
}

/// Breadth-first distance from the identity over the simple generators.
pub fn word_length(w: &Element, max_length: Option<usize>) -> Result<usize> {
    let bound = if w.family().is_affine() {
        Some(max_length.unwrap_or(64))
    } else {
        max_length
    };
    WordBall::new(w.descriptor(), bound)?
        .find(|(e, _)| e == w)
        .map(|(_, l)| l)
        .ok_or(Error::WordLengthExceeded {
            max_length: bound.unwrap_or(usize::MAX),
        })
}

/// Search-derived optimum versus closed form for one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub window: String,
    pub tvd: i64,
    pub formula: Cost,
    pub oracle: Cost,
    pub agree: bool,
    pub expanded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub n: usize,
    pub max_length: Option<usize>,
    pub tested: usize,
    pub agreed: usize,
    pub max_deviation: Cost,
    pub expanded_nodes: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.tested == self.agreed
    }
}

/// Compare the search optimum with the proved formula on every enumerated element.
///
/// The proved lower bound `$(w) >= tvd(w) / 2` is checked on every search
/// result and a violation is an error, not a row.
pub fn verify_theorem(
    descriptor: GroupDescriptor,
    max_length: Option<usize>,
) -> Result<SweepReport> {
    verify_theorem_with(descriptor, max_length, &SearchOptions::default())
}

pub fn verify_theorem_with(
    descriptor: GroupDescriptor,
    max_length: Option<usize>,
    options: &SearchOptions,
) -> Result<SweepReport> {
    if matches!(descriptor.family(), Family::AffB | Family::AffD) {
        return Err(Error::WrongFamily {
            operation: "theorem verification",
            family: descriptor.family(),
        });
    }
    let elements: Vec<Element> = WordBall::new(descriptor, max_length)?
        .map(|(e, _)| e)
        .collect();
    let rows = elements
        .par_iter()
        .map(|w| {
            let formula = cost_formula(w)?;
            let result = min_cost_with(w, Weight::Cost, options)?;
            check_lower_bound(w, result.optimum)?;
            Ok(SweepRow {
                window: w.to_string(),
                tvd: tvd(w),
                formula,
                oracle: result.optimum,
                agree: formula == result.optimum,
                expanded: result.expanded_nodes,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = rows
        .iter()
        .map(|r| Cost::from_doubled((r.oracle - r.formula).doubled().abs()))
        .max()
        .unwrap_or(Cost::ZERO);
    Ok(SweepReport {
        family: descriptor.family(),
        n: descriptor.n(),
        max_length,
        tested: rows.len(),
        agreed: rows.iter().filter(|r| r.agree).count(),
        max_deviation,
        expanded_nodes: rows.iter().map(|r| r.expanded).sum(),
        rows,
    })
}

/// `$(w) >= tvd(w) / 2` holds in every George group.
pub fn check_lower_bound(w: &Element, observed: Cost) -> Result<()> {
    let bound = Cost::from_doubled(tvd(w));
    if observed < bound {
        return Err(Error::LowerBoundViolated {
            window: w.to_string(),
            observed,
            bound,
        });
    }
    Ok(())
}

/// Plain Dijkstra against A* with the displacement heuristic, element by element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeuristicComparison {
    pub family: Family,
    pub n: usize,
    pub max_length: Option<usize>,
    pub tested: usize,
    pub identical_optima: usize,
    /// Elements on which A* expanded no more nodes than Dijkstra.
    pub never_worse: usize,
    pub dijkstra_expanded: usize,
    pub astar_expanded: usize,
}

impl HeuristicComparison {
    pub fn passed(&self) -> bool {
        self.identical_optima == self.tested
            && self.never_worse == self.tested
            && self.astar_expanded <= self.dijkstra_expanded
    }
}

pub fn compare_heuristic(
    descriptor: GroupDescriptor,
    max_length: Option<usize>,
) -> Result<HeuristicComparison> {
    let elements: Vec<Element> = WordBall::new(descriptor, max_length)?
        .map(|(e, _)| e)
        .collect();
    let plain = SearchOptions::default();
    let guided = SearchOptions {
        heuristic: true,
        ..plain
    };
    let pairs = elements
        .par_iter()
        .map(|w| {
            let a = min_cost_with(w, Weight::Cost, &plain)?;
            let b = min_cost_with(w, Weight::Cost, &guided)?;
            Ok((a, b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HeuristicComparison {
        family: descriptor.family(),
        n: descriptor.n(),
        max_length,
        tested: pairs.len(),
        identical_optima: pairs.iter().filter(|(a, b)| a.optimum == b.optimum).count(),
        never_worse: pairs
            .iter()
            .filter(|(a, b)| b.expanded_nodes <= a.expanded_nodes)
            .count(),
        dijkstra_expanded: pairs.iter().map(|(a, _)| a.expanded_nodes).sum(),
        astar_expanded: pairs.iter().map(|(_, b)| b.expanded_nodes).sum(),
    })
}
