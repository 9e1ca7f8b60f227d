//! Symbolic cardinals, infinite size profiles, and the checks that run on
//! them.

pub mod certificate;
pub mod condition;
pub mod fixtures;
pub mod ordinal;
pub mod profile;

pub use certificate::{
    validate_blocking_certificate, validate_existence_certificate, Assignment, BlockingCertificate, MatchCertificate,
    Rejection, Segment, SizeConstraint, TargetRef,
};
pub use condition::{check_condition, condition_for_item, item_kind, ConditionFailure, Verdict};
pub use fixtures::{
    builtin_fixture, builtin_fixtures, established_facts, verify_fixture, Fact, Fixture, FixtureReport,
};
pub use ordinal::{card_compare, is_kappa_multiple, Cardinal, OrdinalW2};
pub use profile::{profile_n, Entry, ProfileError, SymbolicProfile};
