use thiserror::Error;

use crate::cost::Cost;
use crate::groups::{Family, GroupDescriptor, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window size {n} is too small for family {family}")]
    DegenerateRank { family: Family, n: usize },

    #[error("unknown family flag {0:?} (expected A, B, D, ~A, ~B, ~C or ~D)")]
    UnknownFamily(String),

    #[error("malformed window {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid element of {descriptor}: {}", join(.violations))]
    InvalidElement {
        descriptor: GroupDescriptor,
        violations: Vec<Violation>,
    },

    #[error("position {position} is outside the domain of {descriptor}")]
    OutOfDomain {
        descriptor: GroupDescriptor,
        position: i64,
    },

    #[error("elements belong to different groups ({left} vs {right})")]
    DescriptorMismatch {
        left: GroupDescriptor,
        right: GroupDescriptor,
    },

    #[error("{{{i}, {j}}} is not a transposable pair in {descriptor}")]
    NotTransposable {
        descriptor: GroupDescriptor,
        i: i64,
        j: i64,
    },

    #[error("{operation} is not defined for family {family}")]
    WrongFamily {
        operation: &'static str,
        family: Family,
    },

    #[error("{descriptor} is infinite; a length bound is required")]
    UnboundedEnumeration { descriptor: GroupDescriptor },

    #[error("the identity has no peelable pair")]
    IdentityInput,

    #[error("pair ({x}, {y}) does not satisfy w(x) >= y > x >= w(y)")]
    NotPeelable { x: i64, y: i64 },

    #[error("search budget {budget} exhausted after {expanded} expansions")]
    BudgetExhausted { budget: Cost, expanded: usize },

    #[error("search expansion cap {cap} reached")]
    ExpansionCap { cap: usize },

    #[error("unit-weight search over {descriptor} has no finite generator frontier")]
    UnboundedFrontier { descriptor: GroupDescriptor },

    #[error("word search exceeded length {max_length}")]
    WordLengthExceeded { max_length: usize },

    #[error("proved lower bound violated at {window}: cost {observed} < tvd/2 = {bound}")]
    LowerBoundViolated {
        window: String,
        observed: Cost,
        bound: Cost,
    },

    #[error("proved gap bound violated at {window}: gap {gap} > n = {n}")]
    GapBoundViolated { window: String, gap: Cost, n: usize },
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
