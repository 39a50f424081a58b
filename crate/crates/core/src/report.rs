//! Validation findings. A violated axiom is data, not an error.

use std::fmt;

use crate::rational::format_rational;
use crate::{EventSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A value required to be fixed (`μ(∅) = 0`, `μ(Ω) = 1`, …) is not.
    Normalization {
        event: EventSet,
        value: Rational,
        expected: Rational,
    },
    /// A probability outside `[0, 1]`.
    Range { event: EventSet, value: Rational },
    /// `μ(A ∪ B) ≠ μ(A) + μ(B)` for disjoint `A`, `B` with union in the domain.
    Additivity {
        a: EventSet,
        b: EventSet,
        union: Rational,
        sum: Rational,
    },
    /// `upper(A) ≠ 1 − lower(Aᶜ)`.
    Conjugacy {
        event: EventSet,
        upper: Rational,
        conjugate: Rational,
    },
    /// `upper(A ∪ B) > upper(A) + upper(B)` for disjoint `A`, `B`.
    Subadditivity {
        a: EventSet,
        b: EventSet,
        union: Rational,
        sum: Rational,
    },
    /// `lower(A ∪ B) < lower(A) + lower(B)` for disjoint `A`, `B`.
    Superadditivity {
        a: EventSet,
        b: EventSet,
        union: Rational,
        sum: Rational,
    },
    /// Two subspaces assign different values to a gamble in their intersection.
    CrossConsistency {
        first: usize,
        second: usize,
        gamble: Vec<Rational>,
        first_value: Rational,
        second_value: Rational,
    },
    /// A gamble `f` in a subspace with `E(f) < inf f`.
    Coherence {
        subspace: usize,
        gamble: Vec<Rational>,
        value: Rational,
        infimum: Rational,
    },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Normalization { .. } => "normalization",
            Violation::Range { .. } => "range",
            Violation::Additivity { .. } => "additivity",
            Violation::Conjugacy { .. } => "conjugacy",
            Violation::Subadditivity { .. } => "subadditivity",
            Violation::Superadditivity { .. } => "superadditivity",
            Violation::CrossConsistency { .. } => "cross-consistency",
            Violation::Coherence { .. } => "coherence",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Violation::Normalization {
                event,
                value,
                expected,
            } => write!(f, "value {} at {:?}, expected {}", r(value), event, r(expected)),
            Violation::Range { event, value } => {
                write!(f, "value {} at {:?} outside [0, 1]", r(value), event)
            }
            Violation::Additivity { a, b, union, sum } => write!(
                f,
                "{:?} ∪ {:?} has value {} but the parts sum to {}",
                a,
                b,
                r(union),
                r(sum)
            ),
            Violation::Conjugacy {
                event,
                upper,
                conjugate,
            } => write!(
                f,
                "upper {} at {:?} but 1 - lower(complement) = {}",
                r(upper),
                event,
                r(conjugate)
            ),
            Violation::Subadditivity { a, b, union, sum } => write!(
                f,
                "upper({:?} ∪ {:?}) = {} > {}",
                a,
                b,
                r(union),
                r(sum)
            ),
            Violation::Superadditivity { a, b, union, sum } => write!(
                f,
                "lower({:?} ∪ {:?}) = {} < {}",
                a,
                b,
                r(union),
                r(sum)
            ),
            Violation::CrossConsistency {
                first,
                second,
                first_value,
                second_value,
                ..
            } => write!(
                f,
                "subspaces {} and {} disagree on a shared gamble ({} vs {})",
                first,
                second,
                r(first_value),
                r(second_value)
            ),
            Violation::Coherence {
                subspace,
                value,
                infimum,
                ..
            } => write!(
                f,
                "subspace {} has a gamble with expectation {} below its infimum {}",
                subspace,
                r(value),
                r(infimum)
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn has(&self, kind: &str) -> bool {
        self.violations.iter().any(|v| v.kind() == kind)
    }

    pub fn first(&self, kind: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind() == kind)
    }
}
