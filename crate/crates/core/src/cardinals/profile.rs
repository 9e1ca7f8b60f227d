//! Class-size profiles with possibly infinitely many classes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ordinal::{Cardinal, OrdinalW2};
use crate::counts::Measure;
use crate::relcore::SizeProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("entry {entry}: class size must be at least 1")]
    ZeroSize { entry: usize },
    #[error("entry {entry}: class count must be at least 1")]
    ZeroCount { entry: usize },
    #[error("entry {entry}: arithmetic family needs start >= 1 and step >= 1")]
    BadFamily { entry: usize },
    #[error("entry {entry}: aleph family offset must be 0 or 1, got {offset}")]
    BadOffset { entry: usize, offset: u64 },
    #[error("entries {first} and {second} share the class size {size}")]
    Overlap { first: usize, second: usize, size: Cardinal },
}

/// One block of classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Entry {
    /// `count` classes of size `size`.
    Point { size: Cardinal, count: Cardinal },
    /// `per_size_count` classes of each size `start + step·k`, `k ≥ 0`.
    ArithmeticFamily { start: u64, step: u64, per_size_count: Cardinal },
    /// `per_size_count` classes of each size `ℵ_{ω·k + offset}`, `k ≥ 1`.
    AlephLimitFamily { offset: u64, per_size_count: Cardinal },
}

impl Entry {
    pub fn point(size: impl Into<Cardinal>, count: impl Into<Cardinal>) -> Self {
        Entry::Point { size: size.into(), count: count.into() }
    }

    pub fn arithmetic(start: u64, step: u64, per_size_count: impl Into<Cardinal>) -> Self {
        Entry::ArithmeticFamily { start, step, per_size_count: per_size_count.into() }
    }

    pub fn aleph_limits(offset: u64, per_size_count: impl Into<Cardinal>) -> Self {
        Entry::AlephLimitFamily { offset, per_size_count: per_size_count.into() }
    }

    /// Classes per size (per index).
    pub fn multiplicity(&self) -> Cardinal {
        match *self {
            Entry::Point { count, .. } => count,
            Entry::ArithmeticFamily { per_size_count, .. } | Entry::AlephLimitFamily { per_size_count, .. } => {
                per_size_count
            }
        }
    }

    pub fn first_index(&self) -> u64 {
        match self {
            Entry::AlephLimitFamily { .. } => 1,
            _ => 0,
        }
    }

    /// `None` for families, which have unboundedly many indices.
    pub fn last_index(&self) -> Option<u64> {
        match self {
            Entry::Point { .. } => Some(0),
            _ => None,
        }
    }

    pub fn is_family(&self) -> bool {
        !matches!(self, Entry::Point { .. })
    }

    pub fn contains_index(&self, k: u64) -> bool {
        k >= self.first_index() && self.last_index().is_none_or(|last| k <= last)
    }

    /// Class size at an index in the entry's domain.
    pub fn size_at(&self, k: u64) -> Cardinal {
        match *self {
            Entry::Point { size, .. } => size,
            Entry::ArithmeticFamily { start, step, .. } => Cardinal::Finite(start + step * k),
            Entry::AlephLimitFamily { offset, .. } => Cardinal::Aleph(OrdinalW2::new(k, offset)),
        }
    }

    /// Index of the given size in this entry, if the entry has that size.
    pub fn index_of_size(&self, size: Cardinal) -> Option<u64> {
        match (*self, size) {
            (Entry::Point { size: s, .. }, _) => (s == size).then_some(0),
            (Entry::ArithmeticFamily { start, step, .. }, Cardinal::Finite(n)) => {
                (n >= start && (n - start) % step == 0).then(|| (n - start) / step)
            }
            (Entry::AlephLimitFamily { offset, .. }, Cardinal::Aleph(i)) => (i.a >= 1 && i.b == offset).then_some(i.a),
            _ => None,
        }
    }

    /// Number of indices whose size stands in relation `mode` to `kappa`.
    fn qualifying(&self, mode: Measure, kappa: Cardinal) -> Cardinal {
        let infinitely_many = Cardinal::ALEPH_0;
        let one_if = |b: bool| if b { Cardinal::ONE } else { Cardinal::ZERO };
        match *self {
            Entry::Point { size, .. } => one_if(match mode {
                Measure::Eq => size == kappa,
                Measure::Leq => size <= kappa,
                Measure::Geq => size >= kappa,
            }),
            Entry::ArithmeticFamily { start, step, .. } => match (mode, kappa) {
                (Measure::Eq, Cardinal::Finite(n)) => one_if(n >= start && (n - start) % step == 0),
                (Measure::Leq, Cardinal::Finite(n)) => {
                    Cardinal::Finite(if n >= start { (n - start) / step + 1 } else { 0 })
                }
                (Measure::Geq, Cardinal::Finite(_)) => infinitely_many,
                (Measure::Leq, Cardinal::Aleph(_)) => infinitely_many,
                (_, Cardinal::Aleph(_)) => Cardinal::ZERO,
            },
            Entry::AlephLimitFamily { offset, .. } => match (mode, kappa) {
                (Measure::Geq, _) => infinitely_many,
                (_, Cardinal::Finite(_)) => Cardinal::ZERO,
                (Measure::Eq, Cardinal::Aleph(i)) => one_if(i.a >= 1 && i.b == offset),
                (Measure::Leq, Cardinal::Aleph(i)) => {
                    if i.a == 0 {
                        Cardinal::ZERO
                    } else {
                        Cardinal::Finite(i.a - 1 + u64::from(offset <= i.b))
                    }
                }
            },
        }
    }

    /// Classes contributed to the count `n_κ`, `n_≤κ` or `n_≥κ`.
    pub fn count(&self, mode: Measure, kappa: Cardinal) -> Cardinal {
        let q = self.qualifying(mode, kappa);
        if q.is_infinite() {
            self.multiplicity().times_aleph_0()
        } else {
            q * self.multiplicity()
        }
    }

    pub fn total(&self) -> Cardinal {
        match self {
            Entry::Point { count, .. } => *count,
            _ => self.multiplicity().times_aleph_0(),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Point { size, count } => write!(f, "{count}×[{size}]"),
            Entry::ArithmeticFamily { start, step, per_size_count } => {
                write!(f, "{per_size_count}×[{start}+{step}k : k≥0]")
            }
            Entry::AlephLimitFamily { offset, per_size_count } => {
                write!(f, "{per_size_count}×[ℵ_(ω·k+{offset}) : k≥1]")
            }
        }
    }
}

/// A schematic class-size profile: a finite list of blocks with pairwise
/// distinct class sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct SymbolicProfile {
    entries: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
struct RawProfile {
    entries: Vec<Entry>,
}

impl TryFrom<RawProfile> for SymbolicProfile {
    type Error = ProfileError;

    fn try_from(raw: RawProfile) -> Result<Self, Self::Error> {
        SymbolicProfile::new(raw.entries)
    }
}

impl From<SymbolicProfile> for RawProfile {
    fn from(p: SymbolicProfile) -> Self {
        RawProfile { entries: p.entries }
    }
}

impl SymbolicProfile {
    pub fn new(entries: Vec<Entry>) -> Result<Self, ProfileError> {
        for (i, e) in entries.iter().enumerate() {
            match *e {
                Entry::Point { size, count } => {
                    if size == Cardinal::ZERO {
                        return Err(ProfileError::ZeroSize { entry: i });
                    }
                    if count == Cardinal::ZERO {
                        return Err(ProfileError::ZeroCount { entry: i });
                    }
                }
                Entry::ArithmeticFamily { start, step, per_size_count } => {
                    if start == 0 || step == 0 {
                        return Err(ProfileError::BadFamily { entry: i });
                    }
                    if per_size_count == Cardinal::ZERO {
                        return Err(ProfileError::ZeroCount { entry: i });
                    }
                }
                Entry::AlephLimitFamily { offset, per_size_count } => {
                    if offset > 1 {
                        return Err(ProfileError::BadOffset { entry: i, offset });
                    }
                    if per_size_count == Cardinal::ZERO {
                        return Err(ProfileError::ZeroCount { entry: i });
                    }
                }
            }
        }
        for (i, x) in entries.iter().enumerate() {
            for (j, y) in entries.iter().enumerate().skip(i + 1) {
                if let Some(size) = shared_size(x, y) {
                    return Err(ProfileError::Overlap { first: i, second: j, size });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Option<&Entry> {
        self.entries.get(i)
    }

    pub fn total(&self) -> Cardinal {
        self.entries.iter().map(Entry::total).sum()
    }

    /// Largest finite Point size and largest family start, or 0.
    pub(crate) fn finite_breakpoint(&self) -> u64 {
        self.entries
            .iter()
            .filter_map(|e| match *e {
                Entry::Point { size: Cardinal::Finite(n), .. } => Some(n),
                Entry::ArithmeticFamily { start, .. } => Some(start),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn steps(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().filter_map(|e| match *e {
            Entry::ArithmeticFamily { step, .. } => Some(step),
            _ => None,
        })
    }

    pub(crate) fn aleph_point_indices(&self) -> impl Iterator<Item = OrdinalW2> + '_ {
        self.entries.iter().filter_map(|e| match *e {
            Entry::Point { size: Cardinal::Aleph(i), .. } => Some(i),
            _ => None,
        })
    }
}

impl From<&SizeProfile> for SymbolicProfile {
    fn from(p: &SizeProfile) -> Self {
        let entries = p.counts().iter().map(|(&s, &n)| Entry::point(s as u64, n as u64)).collect();
        SymbolicProfile { entries }
    }
}

impl fmt::Display for SymbolicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(Entry::to_string).collect();
        write!(f, "{{{}}}", parts.join(" + "))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Some class size that both entries have, if any.
fn shared_size(x: &Entry, y: &Entry) -> Option<Cardinal> {
    match (*x, *y) {
        (Entry::Point { size, .. }, other) | (other, Entry::Point { size, .. }) => {
            other.index_of_size(size).map(|_| size)
        }
        (Entry::ArithmeticFamily { start: s1, step: d1, .. }, Entry::ArithmeticFamily { start: s2, step: d2, .. }) => {
            // s1 + d1·i = s2 + d2·j has solutions iff gcd | (s1 - s2); then
            // one exists within one lcm period above max(s1, s2).
            let g = gcd(d1, d2);
            if s1.abs_diff(s2) % g != 0 {
                return None;
            }
            let base = s1.max(s2);
            let period = lcm(d1, d2);
            (base..base + period).find(|&n| (n - s1) % d1 == 0 && (n - s2) % d2 == 0).map(Cardinal::Finite)
        }
        (Entry::AlephLimitFamily { offset: r1, .. }, Entry::AlephLimitFamily { offset: r2, .. }) => {
            (r1 == r2).then(|| Cardinal::aleph(1, r1))
        }
        _ => None,
    }
}

/// `n_κ`, `n_≤κ` or `n_≥κ` of a symbolic profile.
pub fn profile_n(profile: &SymbolicProfile, mode: Measure, kappa: Cardinal) -> Cardinal {
    profile.entries.iter().map(|e| e.count(mode, kappa)).sum()
}
