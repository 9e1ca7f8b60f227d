//! Exact existence deciders and witness constructors for the eight
//! reduction kinds between finite equivalence relations.
//!
//! Existence is decided on sorted class-size sequences. When a reduction
//! exists, a concrete map is built by pairing classes and then mapping the
//! elements of each source class into, or onto, its partner:
//!
//! * collapse: every element goes to the first element of the partner class;
//! * inject: the `j`-th element goes to the `j`-th element of the partner;
//! * cover: the `j`-th element goes to element `j mod |D|` of the partner.
//!
//! Among classes of equal size the lower class index is paired first.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::counts::{relation_symbol, Comparison, Measure};
use crate::relcore::{
    canonical_profile, classify_map, kind_satisfied, profile_counts, FiniteEqRel, MapWitness, ReductionKind,
    SizeProfile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("a {kind} exists, so there is nothing to refute")]
    PreconditionViolated { kind: ReductionKind },
}

/// A violated counting condition, reported at the least failing `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Refutation {
    /// `|X/E|` against `|Y/F|`.
    QuotientSizes { source: usize, target: usize, required: Comparison },
    /// A class count of `E` against the same count of `F` at `kappa`.
    Count { kappa: usize, measure: Measure, source: usize, target: usize, required: Comparison },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Refutation::QuotientSizes { source, target, .. } => {
                write!(f, "quotient sizes {source} {} {target}", quotient_symbol(source, target))
            }
            Refutation::Count { kappa, measure, source, target, .. } => {
                write!(f, "{}: {source} {} {target}", measure.label(&kappa), relation_symbol(source.cmp(&target)))
            }
        }
    }
}

fn quotient_symbol(a: usize, b: usize) -> &'static str {
    if a == b {
        "="
    } else {
        "≠"
    }
}

/// Outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub kind: ReductionKind,
    pub exists: bool,
    pub witness: Option<MapWitness>,
    pub reason: Option<Refutation>,
}

/// Existence test on profiles alone.
pub fn exists_between(kind: ReductionKind, e: &SizeProfile, f: &SizeProfile) -> bool {
    let (ne, nf) = (e.num_classes(), f.num_classes());
    match kind {
        ReductionKind::Reduction => ne <= nf,
        ReductionKind::FullReduction => ne == nf,
        ReductionKind::Embedding => ne <= nf && pointwise(&e.sizes_descending(), &f.sizes_descending(), |a, b| a <= b),
        ReductionKind::FullEmbedding => {
            ne == nf && pointwise(&e.sizes_descending(), &f.sizes_descending(), |a, b| a <= b)
        }
        ReductionKind::SurjectiveReduction => {
            ne == nf && pointwise(&e.sizes_descending(), &f.sizes_descending(), |a, b| a >= b)
        }
        ReductionKind::InvariantReduction => {
            ne <= nf && pointwise(&e.sizes_ascending(), &f.sizes_ascending(), |a, b| a >= b)
        }
        ReductionKind::InvariantEmbedding => e.counts().iter().all(|(&s, &n)| n <= f.count_of_size(s)),
        ReductionKind::Isomorphism => e == f,
    }
}

fn pointwise(a: &[usize], b: &[usize], ok: impl Fn(usize, usize) -> bool) -> bool {
    a.iter().zip(b).all(|(&x, &y)| ok(x, y))
}

pub fn decide(kind: ReductionKind, e: &FiniteEqRel, f: &FiniteEqRel) -> Decision {
    let (pe, pf) = (canonical_profile(e), canonical_profile(f));
    if exists_between(kind, &pe, &pf) {
        let witness = build_witness(kind, e, f);
        debug_assert!(classify_map(e, f, &witness).is_ok_and(|fl| kind_satisfied(kind, fl)));
        Decision { kind, exists: true, witness: Some(witness), reason: None }
    } else {
        let reason = refute_profiles(kind, &pe, &pf);
        debug_assert!(reason.is_some());
        Decision { kind, exists: false, witness: None, reason }
    }
}

/// The least-`κ` counting condition that rules out a reduction of `kind`.
pub fn refutation_condition(kind: ReductionKind, e: &FiniteEqRel, f: &FiniteEqRel) -> Result<Refutation, DecideError> {
    let (pe, pf) = (canonical_profile(e), canonical_profile(f));
    if exists_between(kind, &pe, &pf) {
        return Err(DecideError::PreconditionViolated { kind });
    }
    Ok(refute_profiles(kind, &pe, &pf).expect("criteria and refutations agree"))
}

/// The counting clauses whose conjunction over all `κ` characterizes `kind`
/// on finite relations, plus the quotient-size clause where one applies.
fn clauses(kind: ReductionKind) -> (&'static [(Measure, Comparison)], Option<Comparison>) {
    use Comparison::*;
    use Measure as M;
    match kind {
        ReductionKind::Reduction => (&[], Some(Le)),
        ReductionKind::FullReduction => (&[], Some(Eq)),
        ReductionKind::Embedding => (&[(M::Geq, Le)], None),
        ReductionKind::Isomorphism => (&[(M::Eq, Eq)], None),
        ReductionKind::InvariantEmbedding => (&[(M::Eq, Le)], None),
        ReductionKind::InvariantReduction => (&[(M::Leq, Le)], None),
        ReductionKind::SurjectiveReduction => (&[(M::Leq, Le), (M::Geq, Ge)], Some(Eq)),
        ReductionKind::FullEmbedding => (&[(M::Leq, Ge), (M::Geq, Le)], Some(Eq)),
    }
}

fn refute_profiles(kind: ReductionKind, e: &SizeProfile, f: &SizeProfile) -> Option<Refutation> {
    let (counts, quotient) = clauses(kind);
    let top = e.max_size().max(f.max_size()) + 1;
    for kappa in 1..=top {
        let ce = profile_counts(e, kappa).expect("kappa >= 1");
        let cf = profile_counts(f, kappa).expect("kappa >= 1");
        for &(measure, required) in counts {
            let pick = |c: crate::relcore::ProfileCounts| match measure {
                Measure::Eq => c.eq,
                Measure::Leq => c.leq,
                Measure::Geq => c.geq,
            };
            let (source, target) = (pick(ce), pick(cf));
            if !required.holds(&source, &target) {
                return Some(Refutation::Count { kappa, measure, source, target, required });
            }
        }
    }
    let (source, target) = (e.num_classes(), f.num_classes());
    match quotient {
        Some(required) if !required.holds(&source, &target) => {
            Some(Refutation::QuotientSizes { source, target, required })
        }
        _ => None,
    }
}

#[derive(Clone, Copy)]
enum ElementRule {
    Collapse,
    Inject,
    Cover,
}

/// Class indices sorted by size, ties broken by lower index.
fn by_size(sizes: &[usize], descending: bool) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..sizes.len()).collect();
    if descending {
        idx.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    } else {
        idx.sort_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(a.cmp(&b)));
    }
    idx
}

fn same_size_pairing(se: &[usize], sf: &[usize]) -> Vec<(usize, usize)> {
    let fa = by_size(sf, false);
    let mut used = vec![false; sf.len()];
    by_size(se, false)
        .into_iter()
        .map(|c| {
            let d = *fa.iter().find(|&&d| !used[d] && sf[d] == se[c]).expect("size counts dominate");
            used[d] = true;
            (c, d)
        })
        .collect()
}

fn assemble(e: &FiniteEqRel, f: &FiniteEqRel, pairs: &[(usize, usize)], rule: ElementRule) -> MapWitness {
    let ce = e.classes();
    let cf = f.classes();
    let mut target = vec![usize::MAX; e.ground_size()];
    for &(c, d) in pairs {
        let dst = &cf[d];
        for (j, &x) in ce[c].iter().enumerate() {
            target[x] = match rule {
                ElementRule::Collapse => dst[0],
                ElementRule::Inject => dst[j],
                ElementRule::Cover => dst[j % dst.len()],
            };
        }
    }
    MapWitness::new(target)
}

fn build_witness(kind: ReductionKind, e: &FiniteEqRel, f: &FiniteEqRel) -> MapWitness {
    let se = e.class_sizes();
    let sf = f.class_sizes();
    let zip = |a: Vec<usize>, b: Vec<usize>| a.into_iter().zip(b).collect::<Vec<_>>();
    let (pairs, rule) = match kind {
        ReductionKind::Reduction | ReductionKind::FullReduction => {
            (zip(by_size(&se, false), by_size(&sf, false)), ElementRule::Collapse)
        }
        ReductionKind::Embedding | ReductionKind::FullEmbedding => {
            (zip(by_size(&se, true), by_size(&sf, true)), ElementRule::Inject)
        }
        ReductionKind::SurjectiveReduction => (zip(by_size(&se, true), by_size(&sf, true)), ElementRule::Cover),
        ReductionKind::InvariantReduction => (zip(by_size(&se, false), by_size(&sf, false)), ElementRule::Cover),
        ReductionKind::InvariantEmbedding | ReductionKind::Isomorphism => {
            (same_size_pairing(&se, &sf), ElementRule::Inject)
        }
    };
    assemble(e, f, &pairs, rule)
}

/// Pairs the `i`-th largest class of `E` with the `i`-th largest class of
/// `F` and injects elements. Returns a map exactly when every `E`-class fits
/// its partner, i.e. when `n_≥κ(E) ≤ n_≥κ(F)` for all `κ`.
pub fn greedy_embedding(e: &FiniteEqRel, f: &FiniteEqRel) -> Option<MapWitness> {
    let se = e.class_sizes();
    let sf = f.class_sizes();
    if se.len() > sf.len() {
        return None;
    }
    let pairs: Vec<(usize, usize)> = by_size(&se, true).into_iter().zip(by_size(&sf, true)).collect();
    if pairs.iter().any(|&(c, d)| se[c] > sf[d]) {
        return None;
    }
    Some(assemble(e, f, &pairs, ElementRule::Inject))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::PropertyFlags;
    use proptest::prelude::*;

    fn r(s: &str) -> FiniteEqRel {
        FiniteEqRel::from_profile(&s.parse().unwrap())
    }

    #[test]
    fn decide_examples() {
        use ReductionKind::*;
        assert!(decide(Embedding, &r("<1>"), &r("<0,1>")).exists);
        assert!(!decide(InvariantReduction, &r("<1>"), &r("<0,2>")).exists);
        assert!(decide(SurjectiveReduction, &r("<0,1>"), &r("<1>")).exists);
        assert!(!decide(Reduction, &r("<0,3>"), &r("<1,0,1>")).exists);
        assert!(decide(FullReduction, &r("<1,0,1>"), &r("<0,2>")).exists);
        let iso = decide(Isomorphism, &r("<2>"), &r("<2>"));
        let w = iso.witness.unwrap();
        let flags = classify_map(&r("<2>"), &r("<2>"), &w).unwrap();
        assert_eq!(flags, PropertyFlags::all());
    }

    #[test]
    fn greedy_examples() {
        let (e, f) = (r("<1>"), r("<2>"));
        let w = greedy_embedding(&e, &f).unwrap();
        assert_eq!(w.targets(), &[0]);
        let flags = classify_map(&e, &f, &w).unwrap();
        assert!(flags.inj && flags.class_inj);
        assert!(greedy_embedding(&r("<1,0,1>"), &r("<0,2>")).is_none());
        let w = greedy_embedding(&r("<0,2>"), &r("<0,2>")).unwrap();
        assert_eq!(w.targets(), &[0, 1, 2, 3]);
    }

    #[test]
    fn greedy_prefers_lower_index_on_ties() {
        // F = {0},{1},{2,3}: the largest E class goes to {2,3}, the
        // singleton to class {0}.
        let e = FiniteEqRel::from_class_of(vec![0, 1, 1]).unwrap();
        let f = FiniteEqRel::from_class_of(vec![0, 1, 2, 2]).unwrap();
        assert_eq!(greedy_embedding(&e, &f).unwrap().targets(), &[0, 2, 3]);
    }

    #[test]
    fn refutation_examples() {
        use ReductionKind::*;
        assert_eq!(
            refutation_condition(InvariantReduction, &r("<1>"), &r("<0,2>")).unwrap(),
            Refutation::Count { kappa: 1, measure: Measure::Leq, source: 1, target: 0, required: Comparison::Le }
        );
        let emb = refutation_condition(Embedding, &r("<1,0,1>"), &r("<0,3>")).unwrap();
        assert_eq!(
            emb,
            Refutation::Count { kappa: 3, measure: Measure::Geq, source: 1, target: 0, required: Comparison::Le }
        );
        assert_eq!(emb.to_string(), "n_≥3: 1 > 0");
        let full = refutation_condition(FullReduction, &r("<1>"), &r("<2>")).unwrap();
        assert_eq!(full, Refutation::QuotientSizes { source: 1, target: 2, required: Comparison::Eq });
        assert_eq!(full.to_string(), "quotient sizes 1 ≠ 2");
        assert_eq!(
            refutation_condition(Reduction, &r("<1>"), &r("<2>")),
            Err(DecideError::PreconditionViolated { kind: Reduction })
        );
    }

    #[test]
    fn empty_relation_reduces_to_everything() {
        let empty = r("<>");
        for kind in [ReductionKind::Reduction, ReductionKind::Embedding, ReductionKind::InvariantReduction] {
            let d = decide(kind, &empty, &r("<0,1>"));
            assert!(d.exists);
            assert_eq!(d.witness.unwrap().domain_size(), 0);
        }
        assert!(decide(ReductionKind::Isomorphism, &empty, &empty).exists);
        assert!(!decide(ReductionKind::FullReduction, &empty, &r("<1>")).exists);
        assert!(!decide(ReductionKind::Reduction, &r("<1>"), &empty).exists);
    }

    #[test]
    fn witnesses_work_on_non_canonical_labelings() {
        // E = {0,2},{1}; F = {0},{1,3},{2}
        let e = FiniteEqRel::from_class_of(vec![0, 1, 0]).unwrap();
        let f = FiniteEqRel::from_class_of(vec![0, 1, 2, 1]).unwrap();
        for kind in ReductionKind::ALL {
            let d = decide(kind, &e, &f);
            if let Some(w) = d.witness {
                let flags = classify_map(&e, &f, &w).unwrap();
                assert!(kind_satisfied(kind, flags), "{kind}: {flags}");
            }
        }
    }

    fn arb_profile() -> impl Strategy<Value = SizeProfile> {
        proptest::collection::vec(1usize..5, 0..5).prop_map(|s| SizeProfile::from_class_sizes(s).unwrap())
    }

    proptest! {
        #[test]
        fn witnesses_are_sound(pe in arb_profile(), pf in arb_profile()) {
            let (e, f) = (FiniteEqRel::from_profile(&pe), FiniteEqRel::from_profile(&pf));
            for kind in ReductionKind::ALL {
                let d = decide(kind, &e, &f);
                prop_assert_eq!(d.exists, d.witness.is_some());
                prop_assert_eq!(d.exists, d.reason.is_none());
                if let Some(w) = d.witness {
                    let flags = classify_map(&e, &f, &w).unwrap();
                    prop_assert!(kind_satisfied(kind, flags));
                }
            }
        }

        #[test]
        fn full_embedding_mirrors_surjective(pe in arb_profile(), pf in arb_profile()) {
            prop_assert_eq!(
                exists_between(ReductionKind::FullEmbedding, &pe, &pf),
                exists_between(ReductionKind::SurjectiveReduction, &pf, &pe)
            );
        }

        #[test]
        fn adding_target_class_is_monotone(pe in arb_profile(), pf in arb_profile(), extra in 1usize..5) {
            let bigger = pf.with_class(extra);
            for kind in [ReductionKind::Reduction, ReductionKind::Embedding, ReductionKind::InvariantReduction] {
                if exists_between(kind, &pe, &pf) {
                    prop_assert!(exists_between(kind, &pe, &bigger));
                }
            }
        }

        #[test]
        fn greedy_agrees_with_decide(pe in arb_profile(), pf in arb_profile()) {
            let (e, f) = (FiniteEqRel::from_profile(&pe), FiniteEqRel::from_profile(&pf));
            prop_assert_eq!(greedy_embedding(&e, &f).is_some(), decide(ReductionKind::Embedding, &e, &f).exists);
        }
    }
}
