//! Decision procedures, witnesses and brute-force checks for reductions
//! between equivalence relations.
//!
//! * [`relcore`]: finite relations, maps, and their property flags.
//! * [`deciders`]: exact existence tests with witnesses and refutations.
//! * [`oracle`]: exhaustive map enumeration on tiny instances.
//! * [`cardinals`]: symbolic cardinals and class-size profiles with
//!   infinitely many classes, counting conditions, and certificates.
//! * [`lattice`]: implication diagrams between the reducibility notions.

pub mod cardinals;
pub mod counts;
pub mod deciders;
pub mod lattice;
pub mod oracle;
pub mod relcore;

pub use counts::{Comparison, Measure};
pub use deciders::{decide, greedy_embedding, refutation_condition, Decision, Refutation};
pub use oracle::{enumerate_relations, oracle_decide, RelationUniverse};
pub use relcore::{
    canonical_profile, classify_map, kind_satisfied, profile_counts, FiniteEqRel, MapWitness, Orientation,
    PropertyFlags, ReductionKind, SizeProfile,
};
