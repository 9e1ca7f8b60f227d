//! Nice conditions: conjunctions of "for all κ, a R b" where `a` is a count
//! of `E`, `b` the same sort of count of `F`, and `R` a comparison.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::deciders::exists_between;
use crate::oracle::RelationUniverse;
use crate::relcore::{canonical_profile, profile_counts, FiniteEqRel, ReductionKind, SizeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NiceTerm {
    N,
    NLeq,
    NGeq,
    Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NiceRel {
    Le,
    Ge,
    Eq,
    Ne,
    Lt,
    Gt,
}

impl NiceTerm {
    pub const ALL: [NiceTerm; 4] = [NiceTerm::N, NiceTerm::NLeq, NiceTerm::NGeq, NiceTerm::Quotient];

    fn value(self, p: &SizeProfile, kappa: usize) -> usize {
        let c = profile_counts(p, kappa).expect("κ ≥ 1");
        match self {
            NiceTerm::N => c.eq,
            NiceTerm::NLeq => c.leq,
            NiceTerm::NGeq => c.geq,
            NiceTerm::Quotient => p.num_classes(),
        }
    }

    fn render(self, left: bool) -> String {
        let rel = if left { "E" } else { "F" };
        match self {
            NiceTerm::N => format!("n_κ({rel})"),
            NiceTerm::NLeq => format!("n_≤κ({rel})"),
            NiceTerm::NGeq => format!("n_≥κ({rel})"),
            NiceTerm::Quotient if left => "|X/E|".to_string(),
            NiceTerm::Quotient => "|Y/F|".to_string(),
        }
    }
}

impl NiceRel {
    pub const ALL: [NiceRel; 6] = [NiceRel::Le, NiceRel::Ge, NiceRel::Eq, NiceRel::Ne, NiceRel::Lt, NiceRel::Gt];

    fn holds(self, a: usize, b: usize) -> bool {
        match self {
            NiceRel::Le => a <= b,
            NiceRel::Ge => a >= b,
            NiceRel::Eq => a == b,
            NiceRel::Ne => a != b,
            NiceRel::Lt => a < b,
            NiceRel::Gt => a > b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            NiceRel::Le => "≤",
            NiceRel::Ge => "≥",
            NiceRel::Eq => "=",
            NiceRel::Ne => "≠",
            NiceRel::Lt => "<",
            NiceRel::Gt => ">",
        }
    }
}

/// `∀κ: lhs(E) rel rhs(F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NiceAtom {
    pub lhs: NiceTerm,
    pub rel: NiceRel,
    pub rhs: NiceTerm,
}

impl fmt::Display for NiceAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs.render(true), self.rel.symbol(), self.rhs.render(false))
    }
}

impl NiceAtom {
    pub const fn new(lhs: NiceTerm, rel: NiceRel, rhs: NiceTerm) -> Self {
        Self { lhs, rel, rhs }
    }

    /// All counts are constant above the largest class size, so the
    /// thresholds `1..=max+1` cover every cardinal.
    pub fn holds_on(&self, e: &SizeProfile, f: &SizeProfile) -> bool {
        let top = e.max_size().max(f.max_size()) + 1;
        (1..=top).all(|k| self.rel.holds(self.lhs.value(e, k), self.rhs.value(f, k)))
    }
}

pub fn all_atoms() -> Vec<NiceAtom> {
    let mut out = Vec::with_capacity(96);
    for lhs in NiceTerm::ALL {
        for rel in NiceRel::ALL {
            for rhs in NiceTerm::ALL {
                out.push(NiceAtom::new(lhs, rel, rhs));
            }
        }
    }
    out
}

pub fn nice_atom_eval(atom: NiceAtom, e: &FiniteEqRel, f: &FiniteEqRel) -> bool {
    atom.holds_on(&canonical_profile(e), &canonical_profile(f))
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no stated necessary condition to compare against for {0}")]
pub struct UnsupportedKind(pub ReductionKind);

/// The necessary condition stated for `kind`, as atoms.
pub fn stated_condition(kind: ReductionKind) -> Result<Vec<NiceAtom>, UnsupportedKind> {
    let leq = NiceAtom::new(NiceTerm::NLeq, NiceRel::Le, NiceTerm::NLeq);
    let geq = NiceAtom::new(NiceTerm::NGeq, NiceRel::Ge, NiceTerm::NGeq);
    match kind {
        ReductionKind::InvariantReduction => Ok(vec![leq]),
        ReductionKind::SurjectiveReduction => Ok(vec![leq, geq]),
        other => Err(UnsupportedKind(other)),
    }
}

/// `s`: atoms implied by the reduction over the universe; `t`: atoms
/// implied by the stated condition over the universe. An empty `s ∖ t` is
/// evidence, over this finite universe only, that the stated condition is
/// the strongest nice consequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceScanReport {
    pub kind: ReductionKind,
    pub max_ground: usize,
    pub pairs: usize,
    pub s: Vec<NiceAtom>,
    pub t: Vec<NiceAtom>,
    pub s_minus_t: Vec<NiceAtom>,
}

pub fn nice_scan(kind: ReductionKind, universe: &RelationUniverse) -> Result<NiceScanReport, UnsupportedKind> {
    let condition = stated_condition(kind)?;
    let pairs: Vec<(&SizeProfile, &SizeProfile, bool, bool)> = universe
        .ordered_pairs()
        .map(|(e, f)| (e, f, exists_between(kind, e, f), condition.iter().all(|a| a.holds_on(e, f))))
        .collect();
    let atoms = all_atoms();
    let implied = |premise: fn(&(&SizeProfile, &SizeProfile, bool, bool)) -> bool| -> Vec<NiceAtom> {
        atoms
            .par_iter()
            .filter(|atom| pairs.iter().filter(|p| premise(p)).all(|(e, f, _, _)| atom.holds_on(e, f)))
            .copied()
            .collect()
    };
    let s = implied(|p| p.2);
    let t = implied(|p| p.3);
    let s_minus_t = s.iter().filter(|a| !t.contains(a)).copied().collect();
    Ok(NiceScanReport { kind, max_ground: universe.max_ground, pairs: pairs.len(), s, t, s_minus_t })
}
