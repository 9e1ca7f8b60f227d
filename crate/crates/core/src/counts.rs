//! Shared vocabulary for counting conditions on class sizes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which class count a condition talks about at a threshold `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    /// Classes of size exactly `κ`.
    Eq,
    /// Classes of size at most `κ`.
    Leq,
    /// Classes of size at least `κ`.
    Geq,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Eq, Measure::Leq, Measure::Geq];

    pub fn label(self, kappa: &dyn fmt::Display) -> String {
        match self {
            Measure::Eq => format!("n_{kappa}"),
            Measure::Leq => format!("n_≤{kappa}"),
            Measure::Geq => format!("n_≥{kappa}"),
        }
    }
}

/// Required relation between the source-side and target-side counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Le,
    Ge,
    Eq,
}

impl Comparison {
    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Comparison::Le => lhs <= rhs,
            Comparison::Ge => lhs >= rhs,
            Comparison::Eq => lhs == rhs,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Comparison::Le => Comparison::Ge,
            Comparison::Ge => Comparison::Le,
            Comparison::Eq => Comparison::Eq,
        }
    }
}

/// Symbol for the actual relation between two values, e.g. `">"`.
pub fn relation_symbol(ord: Ordering) -> &'static str {
    match ord {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}
