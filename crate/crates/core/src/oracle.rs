//! Brute-force ground truth on tiny instances.
//!
//! Nothing here knows about class sizes or counting conditions: the oracle
//! enumerates every total map and asks [`classify_map`] about it.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::relcore::{
    classify_map, kind_satisfied, FiniteEqRel, MapWitness, PropertyFlags, ReductionKind, SizeProfile,
};

pub const DEFAULT_MAX_GROUND: usize = 7;
pub const DEFAULT_MAP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("universe bound {requested} exceeds the safety bound {limit}")]
    BoundExceeded { requested: usize, limit: usize },
    #[error("{maps} maps to enumerate exceeds the budget of {budget}")]
    BudgetExceeded { maps: u128, budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_ground: usize,
    pub map_budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_ground: DEFAULT_MAX_GROUND, map_budget: DEFAULT_MAP_BUDGET }
    }
}

/// Every nonempty class-size profile up to a ground-set size, one per
/// integer partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationUniverse {
    pub max_ground: usize,
    pub relations: Vec<SizeProfile>,
}

impl RelationUniverse {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// All ordered pairs, including pairs of a relation with itself.
    pub fn ordered_pairs(&self) -> impl Iterator<Item = (&SizeProfile, &SizeProfile)> + '_ {
        self.relations.iter().flat_map(move |e| self.relations.iter().map(move |f| (e, f)))
    }
}

pub fn enumerate_relations(max_ground: usize) -> Result<RelationUniverse, OracleError> {
    enumerate_relations_with(max_ground, &OracleConfig::default())
}

pub fn enumerate_relations_with(max_ground: usize, config: &OracleConfig) -> Result<RelationUniverse, OracleError> {
    if max_ground > config.max_ground {
        return Err(OracleError::BoundExceeded { requested: max_ground, limit: config.max_ground });
    }
    let mut relations = Vec::new();
    for n in 1..=max_ground {
        let mut parts = Vec::new();
        partitions(n, n, &mut parts, &mut relations);
    }
    Ok(RelationUniverse { max_ground, relations })
}

/// Partitions of `n` into parts of size at most `largest`, parts descending.
fn partitions(n: usize, largest: usize, parts: &mut Vec<usize>, out: &mut Vec<SizeProfile>) {
    if n == 0 {
        out.push(SizeProfile::from_class_sizes(parts.iter().copied()).expect("positive parts"));
        return;
    }
    for p in (1..=largest.min(n)).rev() {
        parts.push(p);
        partitions(n - p, p, parts, out);
        parts.pop();
    }
}

fn map_count(e: &FiniteEqRel, f: &FiniteEqRel) -> u128 {
    (f.ground_size() as u128).saturating_pow(e.ground_size() as u32)
}

fn check_budget(e: &FiniteEqRel, f: &FiniteEqRel, budget: u64) -> Result<(), OracleError> {
    let maps = map_count(e, f);
    if maps > budget as u128 {
        return Err(OracleError::BudgetExceeded { maps, budget });
    }
    Ok(())
}

/// Visits every homomorphism from `E` to `F` (and nothing else), stopping
/// early when `visit` returns `true`. Returns whether it stopped early.
fn for_each_homomorphism(
    e: &FiniteEqRel,
    f: &FiniteEqRel,
    mut visit: impl FnMut(&MapWitness, PropertyFlags) -> bool,
) -> bool {
    let n = e.ground_size();
    let m = f.ground_size();
    if n == 0 {
        let phi = MapWitness::new(Vec::new());
        let flags = classify_map(e, f, &phi).expect("empty map is a homomorphism");
        return visit(&phi, flags);
    }
    if m == 0 {
        return false;
    }
    let mut target = vec![0usize; n];
    loop {
        // Cheap per-map rejection before the full classification.
        let homomorphic = (1..n).all(|x| (0..x).all(|y| !e.equivalent(x, y) || f.equivalent(target[x], target[y])));
        if homomorphic {
            let phi = MapWitness::new(target.clone());
            let flags = classify_map(e, f, &phi).expect("homomorphism checked");
            if visit(&phi, flags) {
                return true;
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            target[i] += 1;
            if target[i] < m {
                break;
            }
            target[i] = 0;
            i += 1;
        }
    }
}

pub fn oracle_decide(kind: ReductionKind, e: &FiniteEqRel, f: &FiniteEqRel) -> Result<bool, OracleError> {
    oracle_decide_with(kind, e, f, &OracleConfig::default())
}

pub fn oracle_decide_with(
    kind: ReductionKind,
    e: &FiniteEqRel,
    f: &FiniteEqRel,
    config: &OracleConfig,
) -> Result<bool, OracleError> {
    check_budget(e, f, config.map_budget)?;
    Ok(for_each_homomorphism(e, f, |_, flags| kind_satisfied(kind, flags)))
}

/// All flag vectors realized by homomorphisms from `E` to `F`.
pub fn property_vectors_between(
    e: &FiniteEqRel,
    f: &FiniteEqRel,
    config: &OracleConfig,
) -> Result<BTreeSet<PropertyFlags>, OracleError> {
    check_budget(e, f, config.map_budget)?;
    let mut seen = BTreeSet::new();
    for_each_homomorphism(e, f, |_, flags| {
        seen.insert(flags);
        false
    });
    Ok(seen)
}

/// Flag vectors realized by at least one homomorphism between relations of
/// ground size at most `max_ground`.
pub fn achievable_property_vectors(max_ground: usize) -> Result<BTreeSet<PropertyFlags>, OracleError> {
    Ok(property_vector_census(max_ground, &OracleConfig::default())?.pop().unwrap_or_default())
}

/// Cumulative vector sets: entry `b - 1` holds the vectors realized between
/// relations of ground size at most `b`, for `b` in `1..=max_ground`.
pub fn property_vector_census(
    max_ground: usize,
    config: &OracleConfig,
) -> Result<Vec<BTreeSet<PropertyFlags>>, OracleError> {
    let universe = enumerate_relations_with(max_ground, config)?;
    let rels: Vec<(usize, FiniteEqRel)> =
        universe.relations.iter().map(|p| (p.ground_size(), FiniteEqRel::from_profile(p))).collect();
    let pairs: Vec<(usize, &FiniteEqRel, &FiniteEqRel)> =
        rels.iter().flat_map(|(ge, e)| rels.iter().map(move |(gf, f)| ((*ge).max(*gf), e, f))).collect();
    let per_pair: Vec<(usize, BTreeSet<PropertyFlags>)> = pairs
        .par_iter()
        .map(|&(bound, e, f)| property_vectors_between(e, f, config).map(|v| (bound, v)))
        .collect::<Result<_, _>>()?;
    let mut census = vec![BTreeSet::new(); max_ground];
    for (bound, vectors) in per_pair {
        for set in &mut census[bound - 1..] {
            set.extend(vectors.iter().copied());
        }
    }
    Ok(census)
}
