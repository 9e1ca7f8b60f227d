//! Checkable certificates for existence and non-existence of reductions
//! between symbolic profiles.
//!
//! A [`MatchCertificate`] assigns source classes to target classes block by
//! block; accepting it proves a reduction of its kind exists between any
//! relations with those profiles. A [`BlockingCertificate`] exhibits a set
//! of source classes with strictly fewer admissible target classes, which
//! rules out every reduction whose class map is injective under the kind's
//! size constraint. Neither kind of certificate is ever synthesized here.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ordinal::{Cardinal, OrdinalW2};
use super::profile::{Entry, SymbolicProfile};
use crate::relcore::ReductionKind;

/// How a source class size must compare to its target class size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeConstraint {
    Any,
    /// Target dominates: the class is injected.
    SourceAtMostTarget,
    /// Source dominates: the class is mapped onto its target.
    SourceAtLeastTarget,
    Equal,
}

impl SizeConstraint {
    pub fn for_kind(kind: ReductionKind) -> Self {
        match kind {
            ReductionKind::Reduction | ReductionKind::FullReduction => SizeConstraint::Any,
            ReductionKind::Embedding | ReductionKind::FullEmbedding => SizeConstraint::SourceAtMostTarget,
            ReductionKind::InvariantReduction | ReductionKind::SurjectiveReduction => {
                SizeConstraint::SourceAtLeastTarget
            }
            ReductionKind::InvariantEmbedding | ReductionKind::Isomorphism => SizeConstraint::Equal,
        }
    }

    pub fn admits(self, source: Cardinal, target: Cardinal) -> bool {
        match self {
            SizeConstraint::Any => true,
            SizeConstraint::SourceAtMostTarget => source <= target,
            SizeConstraint::SourceAtLeastTarget => source >= target,
            SizeConstraint::Equal => source == target,
        }
    }

    fn admits_ordering(self, ord: Ordering) -> bool {
        match self {
            SizeConstraint::Any => true,
            SizeConstraint::SourceAtMostTarget => ord != Ordering::Greater,
            SizeConstraint::SourceAtLeastTarget => ord != Ordering::Less,
            SizeConstraint::Equal => ord == Ordering::Equal,
        }
    }
}

/// A run of indices of one entry. Omitted bounds default to the entry's
/// whole index domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub entry: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<u64>,
}

impl Segment {
    pub fn whole(entry: usize) -> Self {
        Self { entry, from: None, to: None }
    }

    pub fn range(entry: usize, from: u64, to: Option<u64>) -> Self {
        Self { entry, from: Some(from), to }
    }
}

/// Where an assignment sends its classes: index `k` of the source segment
/// goes to index `k + shift` of the target entry (Points use `shift = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRef {
    pub entry: usize,
    #[serde(default)]
    pub shift: i64,
}

/// `count` classes of each source size in the segment, each sent to its own
/// class of the shifted target size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub source: Segment,
    pub target: TargetRef,
    pub count: Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCertificate {
    pub kind: ReductionKind,
    pub direction: SizeConstraint,
    pub assignments: Vec<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockingCertificate {
    pub sources: Vec<Segment>,
    pub neighborhood: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Rejection {
    #[error("{side} entry {entry} does not exist")]
    UnknownEntry { side: Side, entry: usize },
    #[error("{side} entry {entry}: segment [{from}, {to:?}] is outside the entry's indices")]
    BadSegment { side: Side, entry: usize, from: u64, to: Option<u64> },
    #[error("assignment {assignment}: shift {shift} is invalid for target entry {entry}")]
    BadShift { assignment: usize, entry: usize, shift: i64 },
    #[error("assignment {assignment}: count must be positive")]
    ZeroCount { assignment: usize },
    #[error("direction {got:?} does not match {kind}, which needs {expected:?}")]
    DirectionMismatch { kind: ReductionKind, expected: SizeConstraint, got: SizeConstraint },
    #[error(
        "assignment {assignment}: source index {index} has size {source_size}, target size {target_size} violates {constraint:?}"
    )]
    SizeConstraint {
        assignment: usize,
        index: u64,
        source_size: Cardinal,
        target_size: Cardinal,
        constraint: SizeConstraint,
    },
    #[error("source entry {entry} index {index}: {used} classes assigned, {available} present")]
    SourceNotExhausted { entry: usize, index: u64, used: Cardinal, available: Cardinal },
    #[error("target entry {entry} index {index}: {used} classes requested, capacity {capacity}")]
    CapacityExceeded { entry: usize, index: u64, used: Cardinal, capacity: Cardinal },
    #[error("target entry {entry} index {index}: only {used} of {capacity} classes covered")]
    TargetNotCovered { entry: usize, index: u64, used: Cardinal, capacity: Cardinal },
    #[error("{kind} has no per-class size constraint with an injective class map to block")]
    KindNotSupported { kind: ReductionKind },
    #[error("source segments overlap in entry {entry}")]
    OverlappingSources { entry: usize },
    #[error("claimed neighborhood differs from the admissible targets {expected:?}")]
    NeighborhoodMismatch { expected: Vec<Segment> },
    #[error("demand {demand} does not exceed supply {supply}")]
    NotBlocking { demand: Cardinal, supply: Cardinal },
    #[error("unsupported certificate shape: {reason}")]
    Unsupported { reason: String },
}

/// A validated segment with concrete bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    entry: usize,
    from: u64,
    to: Option<u64>,
}

impl Span {
    fn len(self) -> Cardinal {
        match self.to {
            Some(to) => Cardinal::Finite(to - self.from + 1),
            None => Cardinal::ALEPH_0,
        }
    }

    fn to_segment(self) -> Segment {
        Segment::range(self.entry, self.from, self.to)
    }
}

fn entry_of(profile: &SymbolicProfile, side: Side, entry: usize) -> Result<&Entry, Rejection> {
    profile.entry(entry).ok_or(Rejection::UnknownEntry { side, entry })
}

fn resolve(profile: &SymbolicProfile, side: Side, seg: &Segment) -> Result<Span, Rejection> {
    let entry = entry_of(profile, side, seg.entry)?;
    let from = seg.from.unwrap_or(entry.first_index());
    let to = seg.to.or(entry.last_index());
    let bad = Rejection::BadSegment { side, entry: seg.entry, from, to };
    if !entry.contains_index(from) || to.is_some_and(|t| t < from || !entry.contains_index(t)) {
        return Err(bad);
    }
    if !entry.is_family() && to.is_none() {
        return Err(bad);
    }
    Ok(Span { entry: seg.entry, from, to })
}

/// How `size_at(k)` of `source` compares to the target size for large `k`.
fn eventual_order(source: &Entry, target: &Entry, shift: i64) -> Ordering {
    match (*source, *target) {
        (Entry::ArithmeticFamily { .. }, Entry::Point { size, .. }) => {
            if size.is_finite() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (Entry::ArithmeticFamily { start: a1, step: d1, .. }, Entry::ArithmeticFamily { start: a2, step: d2, .. }) => {
            d1.cmp(&d2).then_with(|| {
                let intercept = i128::from(a1) - i128::from(a2) - i128::from(d2) * i128::from(shift);
                intercept.cmp(&0)
            })
        }
        (Entry::ArithmeticFamily { .. }, Entry::AlephLimitFamily { .. }) => Ordering::Less,
        (Entry::AlephLimitFamily { offset: r1, .. }, Entry::AlephLimitFamily { offset: r2, .. }) => {
            0.cmp(&shift).then(r1.cmp(&r2))
        }
        (Entry::AlephLimitFamily { .. }, _) => Ordering::Greater,
        (Entry::Point { .. }, _) => unreachable!("points have bounded spans"),
    }
}

/// Every source index in `span` respects `constraint` against the target
/// size it is sent to. On failure returns the least violating index.
fn first_size_violation(
    source: &Entry,
    span: Span,
    target: &Entry,
    shift: i64,
    constraint: SizeConstraint,
) -> Option<u64> {
    let target_size = |k: u64| -> Cardinal {
        if target.is_family() {
            target.size_at((i128::from(k) + i128::from(shift)) as u64)
        } else {
            target.size_at(0)
        }
    };
    let ok = |k: u64| constraint.admits(source.size_at(k), target_size(k));
    if !ok(span.from) {
        return Some(span.from);
    }
    match span.to {
        Some(to) => {
            // Both sides are monotone in k and their difference is affine or
            // monotone, so the endpoints decide the whole span.
            if !ok(to) {
                return Some(to);
            }
            None
        }
        None => {
            if constraint.admits_ordering(eventual_order(source, target, shift)) {
                return None;
            }
            if constraint == SizeConstraint::Equal {
                // a nonconstant comparison is equal at no more than one index
                return Some(span.from + 1);
            }
            // Violations form a suffix: double, then bisect.
            let (mut lo, mut hi) = (span.from, span.from + 1);
            while ok(hi) {
                lo = hi;
                hi = span.from + 2 * (hi - span.from);
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if ok(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        }
    }
}

/// Per-entry sums of piecewise-constant contributions over index runs.
struct Ledger {
    contributions: Vec<Vec<(u64, Option<u64>, Cardinal)>>,
}

impl Ledger {
    fn new(entries: usize) -> Self {
        Self { contributions: vec![Vec::new(); entries] }
    }

    fn add(&mut self, entry: usize, from: u64, to: Option<u64>, amount: Cardinal) {
        self.contributions[entry].push((from, to, amount));
    }

    /// Maximal runs of the entry's domain on which the total is constant.
    fn runs(&self, entry_idx: usize, entry: &Entry) -> Vec<(u64, Cardinal)> {
        let first = entry.first_index();
        let contribs = &self.contributions[entry_idx];
        let mut cuts: Vec<u64> = vec![first];
        if entry.is_family() {
            for &(from, to, _) in contribs {
                cuts.push(from);
                if let Some(t) = to {
                    cuts.push(t + 1);
                }
            }
        }
        cuts.sort_unstable();
        cuts.dedup();
        cuts.into_iter()
            .filter(|&c| c >= first)
            .map(|start| {
                let total = contribs
                    .iter()
                    .filter(|&&(from, to, _)| from <= start && to.is_none_or(|t| t >= start))
                    .map(|&(_, _, amount)| amount)
                    .sum();
                (start, total)
            })
            .collect()
    }
}

pub fn validate_existence_certificate(
    e: &SymbolicProfile,
    f: &SymbolicProfile,
    cert: &MatchCertificate,
) -> Result<(), Rejection> {
    let expected = SizeConstraint::for_kind(cert.kind);
    if cert.direction != expected {
        return Err(Rejection::DirectionMismatch { kind: cert.kind, expected, got: cert.direction });
    }
    let mut used_source = Ledger::new(e.entries().len());
    let mut used_target = Ledger::new(f.entries().len());
    for (i, a) in cert.assignments.iter().enumerate() {
        let span = resolve(e, Side::Source, &a.source)?;
        let source = &e.entries()[span.entry];
        let target = entry_of(f, Side::Target, a.target.entry)?;
        let shift = a.target.shift;
        if a.count == Cardinal::ZERO {
            return Err(Rejection::ZeroCount { assignment: i });
        }
        let bad_shift = Rejection::BadShift { assignment: i, entry: a.target.entry, shift };
        if target.is_family() {
            if i128::from(span.from) + i128::from(shift) < i128::from(target.first_index()) {
                return Err(bad_shift);
            }
        } else if shift != 0 {
            return Err(bad_shift);
        }
        if let Some(k) = first_size_violation(source, span, target, shift, cert.direction) {
            let target_size = if target.is_family() {
                target.size_at((i128::from(k) + i128::from(shift)) as u64)
            } else {
                target.size_at(0)
            };
            return Err(Rejection::SizeConstraint {
                assignment: i,
                index: k,
                source_size: source.size_at(k),
                target_size,
                constraint: cert.direction,
            });
        }
        used_source.add(span.entry, span.from, span.to, a.count);
        if target.is_family() {
            let lo = i128::from(span.from) + i128::from(shift);
            let hi = span.to.map(|t| (i128::from(t) + i128::from(shift)) as u64);
            used_target.add(a.target.entry, lo as u64, hi, a.count);
        } else {
            used_target.add(a.target.entry, 0, Some(0), a.count * span.len());
        }
    }

    for (idx, entry) in e.entries().iter().enumerate() {
        let available = entry.multiplicity();
        for (index, used) in used_source.runs(idx, entry) {
            if used != available {
                return Err(Rejection::SourceNotExhausted { entry: idx, index, used, available });
            }
        }
    }
    let bijective = cert.kind.class_bijective();
    for (idx, entry) in f.entries().iter().enumerate() {
        let capacity = entry.multiplicity();
        for (index, used) in used_target.runs(idx, entry) {
            if used > capacity {
                return Err(Rejection::CapacityExceeded { entry: idx, index, used, capacity });
            }
            if bijective && used < capacity {
                return Err(Rejection::TargetNotCovered { entry: idx, index, used, capacity });
            }
        }
    }
    Ok(())
}

/// Kinds whose class map is injective with a per-class size constraint.
pub fn blockable(kind: ReductionKind) -> bool {
    matches!(
        kind,
        ReductionKind::InvariantReduction
            | ReductionKind::InvariantEmbedding
            | ReductionKind::SurjectiveReduction
            | ReductionKind::FullEmbedding
            | ReductionKind::Embedding
    )
}

/// Sorts and merges spans per entry; reports the first entry where two
/// spans share an index if `strict`.
fn normalize(mut spans: Vec<Span>, strict: bool) -> Result<Vec<Span>, usize> {
    spans.sort_by_key(|s| (s.entry, s.from));
    let mut out: Vec<Span> = Vec::new();
    for s in spans {
        if let Some(last) = out.last_mut() {
            if last.entry == s.entry {
                let overlaps = last.to.is_none_or(|t| t >= s.from);
                if overlaps && strict {
                    return Err(s.entry);
                }
                if overlaps || last.to.is_some_and(|t| t + 1 == s.from) {
                    last.to = match (last.to, s.to) {
                        (Some(a), Some(b)) => Some(a.max(b)),
                        _ => None,
                    };
                    continue;
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

const ENUMERATION_LIMIT: u64 = 4096;

/// Indices of `target` whose size is admissible for some source size in
/// `span` under `constraint`, as runs.
fn admissible(
    source: &Entry,
    span: Span,
    target_idx: usize,
    target: &Entry,
    constraint: SizeConstraint,
) -> Result<Vec<Span>, Rejection> {
    let one = |from: u64, to: Option<u64>| vec![Span { entry: target_idx, from, to }];
    let none = Vec::new;
    Ok(match constraint {
        SizeConstraint::Any => one(target.first_index(), target.last_index()),
        SizeConstraint::SourceAtMostTarget => {
            let m = source.size_at(span.from);
            match (*target, m) {
                (Entry::Point { size, .. }, _) => {
                    if size >= m {
                        one(0, Some(0))
                    } else {
                        none()
                    }
                }
                (Entry::ArithmeticFamily { start, step, .. }, Cardinal::Finite(m)) => {
                    let k0 = if m <= start { 0 } else { (m - start).div_ceil(step) };
                    one(k0, None)
                }
                (Entry::ArithmeticFamily { .. }, Cardinal::Aleph(_)) => none(),
                (Entry::AlephLimitFamily { .. }, Cardinal::Finite(_)) => one(1, None),
                (Entry::AlephLimitFamily { offset, .. }, Cardinal::Aleph(i)) => {
                    let k0 = if i.a == 0 {
                        1
                    } else if offset >= i.b {
                        i.a
                    } else {
                        i.a + 1
                    };
                    one(k0, None)
                }
            }
        }
        SizeConstraint::SourceAtLeastTarget => match span.to {
            None => match source {
                Entry::AlephLimitFamily { .. } => one(target.first_index(), target.last_index()),
                _ => match *target {
                    Entry::Point { size, .. } if size.is_finite() => one(0, Some(0)),
                    Entry::ArithmeticFamily { .. } => one(0, None),
                    _ => none(),
                },
            },
            Some(to) => {
                let m = source.size_at(to);
                match (*target, m) {
                    (Entry::Point { size, .. }, _) => {
                        if size <= m {
                            one(0, Some(0))
                        } else {
                            none()
                        }
                    }
                    (Entry::ArithmeticFamily { start, step, .. }, Cardinal::Finite(m)) => {
                        if m < start {
                            none()
                        } else {
                            one(0, Some((m - start) / step))
                        }
                    }
                    (Entry::ArithmeticFamily { .. }, Cardinal::Aleph(_)) => one(0, None),
                    (Entry::AlephLimitFamily { .. }, Cardinal::Finite(_)) => none(),
                    (Entry::AlephLimitFamily { offset, .. }, Cardinal::Aleph(OrdinalW2 { a, b })) => {
                        let k1 = if offset <= b { a } else { a.saturating_sub(1) };
                        if k1 >= 1 {
                            one(1, Some(k1))
                        } else {
                            none()
                        }
                    }
                }
            }
        },
        SizeConstraint::Equal => match span.to {
            Some(to) if to - span.from < ENUMERATION_LIMIT => (span.from..=to)
                .filter_map(|k| target.index_of_size(source.size_at(k)))
                .map(|i| Span { entry: target_idx, from: i, to: Some(i) })
                .collect(),
            Some(_) => return Err(Rejection::Unsupported { reason: "source segment too long to enumerate".into() }),
            None => match (*source, *target) {
                (_, Entry::Point { size, .. }) => match source.index_of_size(size) {
                    Some(i) if i >= span.from => one(0, Some(0)),
                    _ => none(),
                },
                (Entry::AlephLimitFamily { offset: r1, .. }, Entry::AlephLimitFamily { offset: r2, .. }) => {
                    if r1 == r2 {
                        one(span.from, None)
                    } else {
                        none()
                    }
                }
                (Entry::ArithmeticFamily { .. }, Entry::ArithmeticFamily { .. }) => {
                    return Err(Rejection::Unsupported {
                        reason: "equal-size neighborhoods between two unbounded arithmetic families".into(),
                    })
                }
                _ => none(),
            },
        },
    })
}

fn mass(profile: &SymbolicProfile, spans: &[Span]) -> Cardinal {
    spans.iter().map(|s| profile.entries()[s.entry].multiplicity() * s.len()).sum()
}

pub fn validate_blocking_certificate(
    e: &SymbolicProfile,
    f: &SymbolicProfile,
    kind: ReductionKind,
    cert: &BlockingCertificate,
) -> Result<(), Rejection> {
    if !blockable(kind) {
        return Err(Rejection::KindNotSupported { kind });
    }
    let constraint = SizeConstraint::for_kind(kind);
    let sources = cert.sources.iter().map(|s| resolve(e, Side::Source, s)).collect::<Result<Vec<_>, _>>()?;
    let sources = normalize(sources, true).map_err(|entry| Rejection::OverlappingSources { entry })?;

    let mut expected = Vec::new();
    for s in &sources {
        let source = &e.entries()[s.entry];
        for (t_idx, target) in f.entries().iter().enumerate() {
            expected.extend(admissible(source, *s, t_idx, target, constraint)?);
        }
    }
    let expected = normalize(expected, false).expect("non-strict merge");
    let claimed = cert.neighborhood.iter().map(|s| resolve(f, Side::Target, s)).collect::<Result<Vec<_>, _>>()?;
    let claimed = normalize(claimed, false).expect("non-strict merge");
    if claimed != expected {
        return Err(Rejection::NeighborhoodMismatch { expected: expected.iter().map(|s| s.to_segment()).collect() });
    }

    let demand = mass(e, &sources);
    let supply = mass(f, &expected);
    if demand > supply {
        Ok(())
    } else {
        Err(Rejection::NotBlocking { demand, supply })
    }
}
