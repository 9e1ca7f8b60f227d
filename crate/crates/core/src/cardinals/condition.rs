//! Universally quantified counting conditions over all cardinals `κ`.
//!
//! Every count function of a [`SymbolicProfile`] is piecewise simple:
//!
//! * on finite `κ` past the largest finite breakpoint `M`, `n_≤κ` is linear
//!   plus periodic with period `L = lcm(steps)`, and `n_κ`, `n_≥κ` are
//!   periodic;
//! * on `κ = ℵ_(ω·a+b)` with `a` past every aleph Point, the counts depend
//!   on `b` only through `b ∈ {0, 1, ≥2}` and are linear in `a`.
//!
//! So a condition is decided by scanning a finite window in each regime and
//! then extrapolating each comparison linearly per residue class.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ordinal::{Cardinal, OrdinalW2};
use super::profile::{lcm, profile_n, SymbolicProfile};
use crate::counts::{relation_symbol, Comparison, Measure};
use crate::relcore::ReductionKind;

/// One universally quantified comparison between a count of `E` and the
/// same count of `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub measure: Measure,
    pub required: Comparison,
}

/// A counting condition from the characterization of the reduction kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// Quotient sizes compared.
    Quotient(Comparison),
    /// A conjunction of clauses, each over all `κ`.
    ForAll(&'static [Clause]),
}

const fn clause(measure: Measure, required: Comparison) -> Clause {
    Clause { measure, required }
}

/// The counting condition attached to characterization item `item` (1..=7).
pub fn condition_for_item(item: u8) -> Option<Condition> {
    use Comparison::*;
    use Measure as M;
    static GEQ_LE: [Clause; 1] = [clause(M::Geq, Le)];
    static SURJ: [Clause; 2] = [clause(M::Leq, Le), clause(M::Geq, Ge)];
    static EQ_EQ: [Clause; 1] = [clause(M::Eq, Eq)];
    static LEQ_LE: [Clause; 1] = [clause(M::Leq, Le)];
    static EQ_LE: [Clause; 1] = [clause(M::Eq, Le)];
    Some(match item {
        1 => Condition::Quotient(Le),
        2 => Condition::ForAll(&GEQ_LE),
        3 => Condition::ForAll(&SURJ),
        4 => Condition::ForAll(&EQ_EQ),
        5 => Condition::ForAll(&LEQ_LE),
        6 => Condition::Quotient(Eq),
        7 => Condition::ForAll(&EQ_LE),
        _ => return None,
    })
}

/// The reduction kind an item speaks about, and whether the condition
/// characterizes it exactly (rather than being only necessary).
pub fn item_kind(item: u8) -> Option<(ReductionKind, bool)> {
    Some(match item {
        1 => (ReductionKind::Reduction, true),
        2 => (ReductionKind::Embedding, true),
        3 => (ReductionKind::SurjectiveReduction, false),
        4 => (ReductionKind::Isomorphism, true),
        5 => (ReductionKind::InvariantReduction, false),
        6 => (ReductionKind::FullReduction, true),
        7 => (ReductionKind::InvariantEmbedding, true),
        _ => return None,
    })
}

/// Where and how a condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionFailure {
    /// `None` for quotient-size conditions.
    pub kappa: Option<Cardinal>,
    pub measure: Option<Measure>,
    pub source: Cardinal,
    pub target: Cardinal,
    pub required: Comparison,
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.required == Comparison::Eq && self.source != self.target {
            "≠"
        } else {
            relation_symbol(self.source.cmp(&self.target))
        };
        match (self.measure, self.kappa) {
            (Some(m), Some(k)) => write!(f, "{}: {} {rel} {}", m.label(&k), self.source, self.target),
            _ => write!(f, "quotient sizes {} {rel} {}", self.source, self.target),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(ConditionFailure),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn failure(&self) -> Option<&ConditionFailure> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(f) => Some(f),
        }
    }
}

pub fn check_condition(item: u8, e: &SymbolicProfile, f: &SymbolicProfile) -> Option<Verdict> {
    condition_for_item(item).map(|c| evaluate(c, e, f))
}

pub fn evaluate(condition: Condition, e: &SymbolicProfile, f: &SymbolicProfile) -> Verdict {
    match condition {
        Condition::Quotient(required) => {
            let (source, target) = (e.total(), f.total());
            if required.holds(&source, &target) {
                Verdict::Holds
            } else {
                Verdict::Fails(ConditionFailure { kappa: None, measure: None, source, target, required })
            }
        }
        Condition::ForAll(clauses) => check_clauses(clauses, e, f),
    }
}

/// Layout of the scan windows for a pair of profiles.
struct Windows {
    /// Finite `κ` at and beyond this are in the periodic-linear regime.
    finite_base: u64,
    period: u64,
    /// Aleph indices `ω·a + b` with `a` at and beyond this are linear in `a`.
    aleph_base: u64,
    /// Within one `a`, indices `b` beyond this behave like this one.
    b_top: u64,
}

impl Windows {
    fn new(profiles: &[&SymbolicProfile]) -> Self {
        let finite_base = 1 + profiles.iter().map(|p| p.finite_breakpoint()).max().unwrap_or(0);
        let period = profiles.iter().flat_map(|p| p.steps()).fold(1, lcm);
        let aleph_points: Vec<OrdinalW2> = profiles.iter().flat_map(|p| p.aleph_point_indices()).collect();
        let aleph_base = 1 + aleph_points.iter().map(|i| i.a).max().unwrap_or(0);
        let b_top = 2.max(1 + aleph_points.iter().map(|i| i.b).max().unwrap_or(0));
        Self { finite_base, period, aleph_base, b_top }
    }

    fn finite_scan(&self) -> impl Iterator<Item = Cardinal> {
        (1..self.finite_base + self.period).map(Cardinal::Finite)
    }

    fn aleph_scan(&self) -> impl Iterator<Item = Cardinal> + '_ {
        (0..=self.aleph_base).flat_map(move |a| (0..=self.b_top).map(move |b| Cardinal::aleph(a, b)))
    }
}

/// Cardinals at which every value of `n_κ` and `n_≥κ` (for any `κ ≥ 1`) is
/// attained, for each of the given profiles. `n_≤κ` additionally needs the
/// linear extrapolation done by [`check_clauses`].
pub fn probe_kappas(profiles: &[&SymbolicProfile]) -> Vec<Cardinal> {
    let w = Windows::new(profiles);
    w.finite_scan().chain(w.aleph_scan()).collect()
}

fn count_of(p: &SymbolicProfile, measure: Measure, kappa: Cardinal) -> Cardinal {
    profile_n(p, measure, kappa)
}

fn failure_at(clause: &Clause, e: &SymbolicProfile, f: &SymbolicProfile, kappa: Cardinal) -> Option<ConditionFailure> {
    let source = count_of(e, clause.measure, kappa);
    let target = count_of(f, clause.measure, kappa);
    (!clause.required.holds(&source, &target)).then_some(ConditionFailure {
        kappa: Some(kappa),
        measure: Some(clause.measure),
        source,
        target,
        required: clause.required,
    })
}

/// Slack functions that must stay nonnegative for the clause to hold,
/// given finite source and target counts.
fn slacks(required: Comparison, source: i128, target: i128) -> Vec<i128> {
    match required {
        Comparison::Le => vec![target - source],
        Comparison::Ge => vec![source - target],
        Comparison::Eq => vec![target - source, source - target],
    }
}

/// Given a clause that holds at `x0` and at no larger points yet examined,
/// and values at `x0` and `x0 + 1 step`, the number of steps until the
/// linear extrapolation first fails.
fn steps_to_failure(clause: &Clause, at0: (Cardinal, Cardinal), at1: (Cardinal, Cardinal)) -> Option<u64> {
    let fin = |c: Cardinal| c.finite_value().map(i128::from);
    let (Some(s0), Some(t0), Some(s1), Some(t1)) = (fin(at0.0), fin(at0.1), fin(at1.0), fin(at1.1)) else {
        // An infinite value is constant across the regime, so the comparison
        // is too.
        return None;
    };
    slacks(clause.required, s0, t0)
        .into_iter()
        .zip(slacks(clause.required, s1, t1))
        .filter_map(|(h0, h1)| {
            let drift = h1 - h0;
            (drift < 0).then(|| (h0 / -drift + 1) as u64)
        })
        .min()
}

/// Decides `∀κ ≥ 1` of every clause; on failure reports the least `κ`
/// (ties between clauses go to the earlier clause).
pub fn check_clauses(clauses: &[Clause], e: &SymbolicProfile, f: &SymbolicProfile) -> Verdict {
    let w = Windows::new(&[e, f]);
    let first_fail = |kappa: Cardinal| clauses.iter().find_map(|c| failure_at(c, e, f, kappa));

    if let Some(fail) = w.finite_scan().find_map(first_fail) {
        return Verdict::Fails(fail);
    }

    // Finite tail: residues finite_base .. finite_base + period.
    let pair = |c: &Clause, k: Cardinal| (count_of(e, c.measure, k), count_of(f, c.measure, k));
    let mut best: Option<u64> = None;
    for x0 in w.finite_base..w.finite_base + w.period {
        for c in clauses {
            let at0 = pair(c, Cardinal::Finite(x0));
            let at1 = pair(c, Cardinal::Finite(x0 + w.period));
            if let Some(t) = steps_to_failure(c, at0, at1) {
                let x = x0 + t * w.period;
                best = Some(best.map_or(x, |b| b.min(x)));
            }
        }
    }
    if let Some(x) = best {
        return Verdict::Fails(first_fail(Cardinal::Finite(x)).expect("extrapolated failure"));
    }

    if let Some(fail) = w.aleph_scan().find_map(first_fail) {
        return Verdict::Fails(fail);
    }

    // Aleph tail: a ≥ aleph_base, one representative b per category.
    let mut best: Option<OrdinalW2> = None;
    for b in 0..=2 {
        for c in clauses {
            let at0 = pair(c, Cardinal::aleph(w.aleph_base, b));
            let at1 = pair(c, Cardinal::aleph(w.aleph_base + 1, b));
            if let Some(t) = steps_to_failure(c, at0, at1) {
                let idx = OrdinalW2::new(w.aleph_base + t, b);
                best = Some(best.map_or(idx, |x| x.min(idx)));
            }
        }
    }
    if let Some(idx) = best {
        return Verdict::Fails(first_fail(Cardinal::Aleph(idx)).expect("extrapolated failure"));
    }
    Verdict::Holds
}
