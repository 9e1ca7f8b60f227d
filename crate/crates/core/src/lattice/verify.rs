use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::diagram::{DiagramNode, ImplicationDiagram};
use crate::cardinals::fixtures::{builtin_fixtures, established_facts, Fixture};
use crate::oracle::RelationUniverse;
use crate::relcore::{Orientation, ReductionKind, SizeProfile};

/// Seven small pairs, each showing that `E ? F` for its kind implies
/// nothing beyond what the directed diagram draws.
pub const CANONICAL_PAIRS: [(&str, &str, ReductionKind); 7] = [
    ("<1>", "<2>", ReductionKind::InvariantEmbedding),
    ("<1>", "<0,1>", ReductionKind::FullEmbedding),
    ("<0,1>", "<1>", ReductionKind::SurjectiveReduction),
    ("<1>", "<0,2>", ReductionKind::Embedding),
    ("<0,1>", "<2>", ReductionKind::InvariantReduction),
    ("<1,0,1>", "<0,2>", ReductionKind::FullReduction),
    ("<1,0,1>", "<0,3>", ReductionKind::Reduction),
];

pub fn canonical_pair(index: usize) -> (SizeProfile, SizeProfile) {
    let (e, f, _) = CANONICAL_PAIRS[index - 1];
    (e.parse().expect("valid profile"), f.parse().expect("valid profile"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Discharge {
    /// Canonical pair `index` (1-based), possibly with `E` and `F` swapped.
    Canonical {
        index: usize,
        mirrored: bool,
        e: String,
        f: String,
    },
    Universe {
        e: String,
        f: String,
    },
    /// An infinite pair whose machine-checked facts separate the nodes.
    Fixture {
        name: String,
        basis: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub from: String,
    pub to: String,
    pub e: String,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub diagram: String,
    pub pairs_checked: usize,
    pub implications_checked: usize,
    pub violations: Vec<Violation>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonImplication {
    pub from: String,
    pub to: String,
    pub discharge: Option<Discharge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub diagram: String,
    pub max_ground: usize,
    pub non_implications: Vec<NonImplication>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.non_implications.iter().all(|n| n.discharge.is_some())
    }

    pub fn undischarged(&self) -> impl Iterator<Item = &NonImplication> {
        self.non_implications.iter().filter(|n| n.discharge.is_none())
    }

    /// Non-implications that no finite pair tried here separates.
    pub fn requiring_infinite(&self) -> impl Iterator<Item = &NonImplication> {
        self.non_implications.iter().filter(|n| matches!(n.discharge, Some(Discharge::Fixture { .. })))
    }

    pub fn canonical_used(&self) -> BTreeSet<usize> {
        self.non_implications
            .iter()
            .filter_map(|n| match n.discharge {
                Some(Discharge::Canonical { index, .. }) => Some(index),
                _ => None,
            })
            .collect()
    }
}

struct Candidate {
    discharge: Discharge,
    /// The node this pair is meant to separate from the rest.
    designated: Option<DiagramNode>,
    e: SizeProfile,
    f: SizeProfile,
}

/// Finite pairs in search order: each canonical pair then its mirror, then
/// the universe.
fn candidate_pairs(universe: &RelationUniverse) -> Vec<Candidate> {
    let mut out = Vec::new();
    for index in 1..=CANONICAL_PAIRS.len() {
        let (e, f) = canonical_pair(index);
        let kind = CANONICAL_PAIRS[index - 1].2;
        for (mirrored, orientation) in [(false, Orientation::Forward), (true, Orientation::Backward)] {
            let (e, f) = if mirrored { (f.clone(), e.clone()) } else { (e.clone(), f.clone()) };
            out.push(Candidate {
                discharge: Discharge::Canonical { index, mirrored, e: e.to_string(), f: f.to_string() },
                designated: Some(DiagramNode::Directed { kind, orientation }),
                e,
                f,
            });
        }
    }
    for (e, f) in universe.ordered_pairs() {
        out.push(Candidate {
            discharge: Discharge::Universe { e: e.to_string(), f: f.to_string() },
            designated: None,
            e: e.clone(),
            f: f.clone(),
        });
    }
    out
}

fn node_values(d: &ImplicationDiagram, e: &SizeProfile, f: &SizeProfile) -> Vec<bool> {
    d.nodes.iter().map(|n| n.node.evaluate_profiles(e, f)).collect()
}

/// Checks every implication in the closure on the canonical pairs and on
/// every ordered pair of the universe.
pub fn verify_soundness(d: &ImplicationDiagram, universe: &RelationUniverse) -> SoundnessReport {
    let closure = d.closure();
    let implications: Vec<(usize, usize)> = closure.pairs().filter(|(a, b)| a != b).collect();
    let pairs = candidate_pairs(universe);
    let per_pair: Vec<Vec<(usize, usize)>> = pairs
        .par_iter()
        .map(|c| {
            let v = node_values(d, &c.e, &c.f);
            implications.iter().copied().filter(|&(a, b)| v[a] && !v[b]).collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut violations = Vec::new();
    for (c, broken) in pairs.iter().zip(per_pair) {
        for (a, b) in broken {
            if seen.insert((a, b)) {
                violations.push(Violation { from: d.label(a), to: d.label(b), e: c.e.to_string(), f: c.f.to_string() });
            }
        }
    }
    SoundnessReport {
        diagram: d.name.clone(),
        pairs_checked: pairs.len(),
        implications_checked: implications.len(),
        violations,
    }
}

/// Truth of the directed-diagram nodes on one infinite fixture, as far as
/// its checked facts and the directed implications determine it.
struct FixtureTruth {
    name: String,
    values: Vec<Option<bool>>,
    basis: Vec<String>,
}

fn fixture_truth(reference: &ImplicationDiagram, fx: &Fixture) -> FixtureTruth {
    let closure = reference.closure();
    let n = reference.len();
    let mut values = vec![None; n];
    let facts = established_facts(fx);
    for fact in &facts {
        let node = directed_node(fact.kind, fact.orientation);
        let i = reference.find(node).expect("reference diagram has every directed node");
        values[i] = Some(fact.exists);
    }
    let seeds = values.clone();
    for (a, seed) in seeds.iter().enumerate() {
        for b in 0..n {
            match seed {
                Some(true) if closure.contains(a, b) => values[b] = Some(true),
                Some(false) if closure.contains(b, a) => values[b] = Some(false),
                _ => {}
            }
        }
    }
    debug_assert!(
        seeds.iter().zip(&values).all(|(s, v)| s.is_none() || s == v),
        "fixture {} contradicts the directed implications",
        fx.name
    );
    FixtureTruth { name: fx.name.clone(), values, basis: facts.into_iter().map(|f| f.basis).collect() }
}

fn directed_node(kind: ReductionKind, orientation: Orientation) -> DiagramNode {
    if kind == ReductionKind::Isomorphism {
        DiagramNode::Symmetric { kind }
    } else {
        DiagramNode::Directed { kind, orientation }
    }
}

impl FixtureTruth {
    fn value(&self, reference: &ImplicationDiagram, node: DiagramNode) -> Option<bool> {
        let at = |kind, o| self.values[reference.find(directed_node(kind, o)).expect("directed node")];
        match node {
            DiagramNode::Directed { kind, orientation } => at(kind, orientation),
            DiagramNode::Symmetric { kind } => {
                match (at(kind, Orientation::Forward), at(kind, Orientation::Backward)) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                }
            }
        }
    }
}

/// Looks for a pair separating each non-implication `A ⇏ B` of the
/// diagram: first the canonical pair designated for `A`, then every
/// canonical pair and mirror, then the universe, then the shipped infinite
/// fixtures.
///
/// Fixture values come from that fixture's checked conditions and
/// certificates only, extended along the directed implications (which hold
/// for relations of any size); recorded-but-unchecked claims are ignored.
pub fn verify_completeness(d: &ImplicationDiagram, universe: &RelationUniverse) -> CompletenessReport {
    let closure = d.closure();
    let pairs = candidate_pairs(universe);
    let values: Vec<Vec<bool>> = pairs.par_iter().map(|c| node_values(d, &c.e, &c.f)).collect();
    let reference = ImplicationDiagram::figure1();
    let fixtures: Vec<FixtureTruth> = builtin_fixtures().iter().map(|fx| fixture_truth(&reference, fx)).collect();

    let mut non_implications = Vec::new();
    for a in 0..d.len() {
        for b in 0..d.len() {
            if closure.contains(a, b) {
                continue;
            }
            let separating = || pairs.iter().zip(&values).filter(|(_, v)| v[a] && !v[b]);
            let finite = separating()
                .find(|(c, _)| c.designated == Some(d.nodes[a].node))
                .or_else(|| separating().next())
                .map(|(c, _)| c.discharge.clone());
            let discharge = finite.or_else(|| {
                let (na, nb) = (d.nodes[a].node, d.nodes[b].node);
                fixtures
                    .iter()
                    .find(|t| t.value(&reference, na) == Some(true) && t.value(&reference, nb) == Some(false))
                    .map(|t| Discharge::Fixture { name: t.name.clone(), basis: t.basis.clone() })
            });
            non_implications.push(NonImplication { from: d.label(a), to: d.label(b), discharge });
        }
    }
    CompletenessReport { diagram: d.name.clone(), max_ground: universe.max_ground, non_implications }
}
