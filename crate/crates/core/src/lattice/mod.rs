//! The implication diagrams between reduction kinds, checked against
//! exhaustive finite universes, and the nice-condition scan.

pub mod diagram;
pub mod nice;
pub mod verify;

pub use diagram::{
    evaluate_node, transitive_closure, Closure, DiagramError, DiagramNode, ImplicationDiagram, NamedNode,
};
pub use nice::{all_atoms, nice_atom_eval, nice_scan, NiceAtom, NiceRel, NiceScanReport, NiceTerm};
pub use verify::{
    canonical_pair, verify_completeness, verify_soundness, CompletenessReport, Discharge, NonImplication,
    SoundnessReport, Violation, CANONICAL_PAIRS,
};
