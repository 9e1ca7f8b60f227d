use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::deciders::exists_between;
use crate::relcore::{canonical_profile, FiniteEqRel, Orientation, ReductionKind, SizeProfile};

/// A statement about an ordered pair `(E, F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum DiagramNode {
    Directed {
        kind: ReductionKind,
        orientation: Orientation,
    },
    /// Reducible both ways.
    Symmetric {
        kind: ReductionKind,
    },
}

impl DiagramNode {
    pub fn label(self) -> String {
        match self {
            DiagramNode::Directed { kind, orientation: Orientation::Forward } => format!("E{}F", kind.symbol()),
            DiagramNode::Directed { kind, orientation: Orientation::Backward } => format!("F{}E", kind.symbol()),
            DiagramNode::Symmetric { kind } => kind.bi_symbol().to_string(),
        }
    }

    pub fn evaluate_profiles(self, e: &SizeProfile, f: &SizeProfile) -> bool {
        match self {
            DiagramNode::Directed { kind, orientation } => {
                let (src, tgt) = orientation.orient(e, f);
                exists_between(kind, src, tgt)
            }
            DiagramNode::Symmetric { kind } => exists_between(kind, e, f) && exists_between(kind, f, e),
        }
    }
}

pub fn evaluate_node(node: DiagramNode, e: &FiniteEqRel, f: &FiniteEqRel) -> bool {
    node.evaluate_profiles(&canonical_profile(e), &canonical_profile(f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedNode {
    pub id: String,
    #[serde(flatten)]
    pub node: DiagramNode,
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("malformed diagram description: {0}")]
    Json(#[from] serde_json::Error),
    #[error("node id {0:?} appears twice")]
    DuplicateNode(String),
    #[error("edge references unknown node {0:?}")]
    UnknownNode(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawDiagram {
    name: String,
    nodes: Vec<NamedNode>,
    edges: Vec<(String, String)>,
}

/// Nodes plus directed implication edges; a bi-implication is two edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationDiagram {
    pub name: String,
    pub nodes: Vec<NamedNode>,
    pub edges: Vec<(usize, usize)>,
}

const FIGURE_1: &str = include_str!("../../diagrams/figure1.json");
const FIGURE_2: &str = include_str!("../../diagrams/figure2.json");

impl ImplicationDiagram {
    pub fn from_json(src: &str) -> Result<Self, DiagramError> {
        let raw: RawDiagram = serde_json::from_str(src)?;
        let mut index = HashMap::new();
        for (i, n) in raw.nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(DiagramError::DuplicateNode(n.id.clone()));
            }
        }
        let lookup = |id: &String| index.get(id).copied().ok_or_else(|| DiagramError::UnknownNode(id.clone()));
        let edges = raw.edges.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<_, DiagramError>>()?;
        Ok(Self { name: raw.name, nodes: raw.nodes, edges })
    }

    pub fn to_json(&self) -> String {
        let raw = RawDiagram {
            name: self.name.clone(),
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|&(a, b)| (self.nodes[a].id.clone(), self.nodes[b].id.clone())).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("diagram serializes")
    }

    /// Implications between the directed kinds and isomorphism.
    pub fn figure1() -> Self {
        Self::from_json(FIGURE_1).expect("shipped diagram is valid")
    }

    /// Implications between the symmetric versions.
    pub fn figure2() -> Self {
        Self::from_json(FIGURE_2).expect("shipped diagram is valid")
    }

    pub fn figure(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::figure1()),
            2 => Some(Self::figure2()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_id(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn find(&self, node: DiagramNode) -> Option<usize> {
        self.nodes.iter().position(|n| n.node == node)
    }

    pub fn label(&self, i: usize) -> String {
        self.nodes[i].node.label()
    }

    pub fn without_edge(&self, edge: usize) -> Self {
        let mut d = self.clone();
        d.edges.remove(edge);
        d
    }

    pub fn with_edge(&self, from: usize, to: usize) -> Self {
        let mut d = self.clone();
        d.edges.push((from, to));
        d
    }

    pub fn closure(&self) -> Closure {
        transitive_closure(self)
    }

    /// DOT source; with `overlay`, implied-but-not-drawn arrows are added
    /// dashed.
    pub fn to_dot(&self, overlay: bool) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {:?} {{", self.name).unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(out, "  n{i} [label={:?}];", n.node.label()).unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        if overlay {
            let c = self.closure();
            for a in 0..self.len() {
                for b in 0..self.len() {
                    if a != b && c.contains(a, b) && !self.edges.contains(&(a, b)) {
                        writeln!(out, "  n{a} -> n{b} [style=dashed, color=gray];").unwrap();
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Reflexive-transitive closure as a dense reachability matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    reach: Vec<Vec<bool>>,
}

impl Closure {
    pub fn contains(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.reach.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.reach[a][b]).map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.reach.is_empty()
    }
}

pub fn transitive_closure(d: &ImplicationDiagram) -> Closure {
    let n = d.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in &d.edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    Closure { reach }
}
