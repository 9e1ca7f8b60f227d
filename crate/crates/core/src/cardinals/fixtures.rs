//! Shipped symbolic fixtures: pairs of infinite profiles with the counts,
//! conditions and certificates that are checked on them, plus claims that
//! are recorded but cannot be checked here.

use serde::{Deserialize, Serialize};

use super::certificate::{
    validate_blocking_certificate, validate_existence_certificate, BlockingCertificate, MatchCertificate,
};
use super::condition::{check_clauses, check_condition, item_kind, probe_kappas, Clause, Verdict};
use super::ordinal::Cardinal;
use super::profile::{profile_n, SymbolicProfile};
use crate::counts::Measure;
use crate::relcore::{Orientation, ReductionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSide {
    E,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountCheck {
    pub profile: ProfileSide,
    pub mode: Measure,
    pub kappa: Cardinal,
    pub expect: Cardinal,
}

/// Every value of the count, over all `κ`, lies in `allowed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSetCheck {
    pub profile: ProfileSide,
    pub mode: Measure,
    pub allowed: Vec<Cardinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClauseCheck {
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Orientation>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionCheck {
    pub item: u8,
    pub orientation: Orientation,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fails_at: Option<Cardinal>,
}

/// A certificate that must validate, and a corrupted copy that must not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExistenceCheck {
    pub orientation: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub certificate: MatchCertificate,
    pub tampered: MatchCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TamperedBlocking {
    pub kind: ReductionKind,
    pub certificate: BlockingCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockingCheck {
    pub orientation: Orientation,
    pub kind: ReductionKind,
    pub certificate: BlockingCertificate,
    pub tampered: TamperedBlocking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    AssertedNotMachineVerified,
}

/// A statement about the pair that no check here establishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub orientation: Orientation,
    pub kind: ReductionKind,
    pub exists: bool,
    pub status: ClaimStatus,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub e: SymbolicProfile,
    pub f: SymbolicProfile,
    #[serde(default)]
    pub counts: Vec<CountCheck>,
    #[serde(default)]
    pub value_sets: Vec<ValueSetCheck>,
    #[serde(default)]
    pub clause_checks: Vec<ClauseCheck>,
    #[serde(default)]
    pub conditions: Vec<ConditionCheck>,
    #[serde(default)]
    pub existence: Vec<ExistenceCheck>,
    #[serde(default)]
    pub blocking: Vec<BlockingCheck>,
    #[serde(default)]
    pub claims: Vec<Claim>,
}

impl Fixture {
    fn side(&self, side: ProfileSide) -> &SymbolicProfile {
        match side {
            ProfileSide::E => &self.e,
            ProfileSide::F => &self.f,
        }
    }

    fn oriented(&self, o: Orientation) -> (&SymbolicProfile, &SymbolicProfile) {
        o.orient(&self.e, &self.f)
    }
}

const SOURCES: [(&str, &str); 5] = [
    ("chain-with-countable-class", include_str!("../../fixtures/chain-with-countable-class.json")),
    ("limit-alephs-vs-successors", include_str!("../../fixtures/limit-alephs-vs-successors.json")),
    ("evens-vs-odds", include_str!("../../fixtures/evens-vs-odds.json")),
    ("countable-blocks-singleton-vs-pair", include_str!("../../fixtures/countable-blocks-singleton-vs-pair.json")),
    ("singletons-with-extra-pair", include_str!("../../fixtures/singletons-with-extra-pair.json")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(name, _)| *name)
}

pub fn builtin_fixture(name: &str) -> Option<Fixture> {
    SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, src)| serde_json::from_str(src).unwrap_or_else(|e| panic!("fixture {n} is malformed: {e}")))
}

pub fn builtin_fixtures() -> Vec<Fixture> {
    fixture_names().map(|n| builtin_fixture(n).expect("listed")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub outcomes: Vec<CheckOutcome>,
    /// Carried through unverified.
    pub claims: Vec<Claim>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

fn arrow(o: Orientation) -> &'static str {
    match o {
        Orientation::Forward => "E→F",
        Orientation::Backward => "F→E",
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Holds => "holds".into(),
        Verdict::Fails(why) => format!("fails: {why}"),
    }
}

pub fn verify_fixture(fx: &Fixture) -> FixtureReport {
    let mut outcomes = Vec::new();
    let mut push = |check: String, passed: bool, detail: String| outcomes.push(CheckOutcome { check, passed, detail });

    for c in &fx.counts {
        let got = profile_n(fx.side(c.profile), c.mode, c.kappa);
        push(
            format!("{:?} {} = {}", c.profile, c.mode.label(&c.kappa), c.expect),
            got == c.expect,
            format!("computed {got}"),
        );
    }

    for v in &fx.value_sets {
        let probes = probe_kappas(&[fx.side(v.profile)]);
        let stray =
            probes.iter().map(|&k| (k, profile_n(fx.side(v.profile), v.mode, k))).find(|(_, n)| !v.allowed.contains(n));
        let allowed: Vec<String> = v.allowed.iter().map(|c| c.to_string()).collect();
        push(
            format!("{:?} {} ∈ {{{}}} for all κ", v.profile, v.mode.label(&"κ"), allowed.join(", ")),
            stray.is_none(),
            match stray {
                None => format!("{} probes", probes.len()),
                Some((k, n)) => format!("value {n} at κ = {k}"),
            },
        );
    }

    for c in &fx.clause_checks {
        let o = c.orientation.unwrap_or(Orientation::Forward);
        let (src, tgt) = fx.oriented(o);
        let verdict = check_clauses(&c.clauses, src, tgt);
        let text: Vec<String> =
            c.clauses.iter().map(|cl| format!("{} {:?}", cl.measure.label(&"κ"), cl.required)).collect();
        push(
            format!("{} ∀κ [{}] {}", arrow(o), text.join(", "), if c.holds { "holds" } else { "fails" }),
            verdict.holds() == c.holds,
            verdict_text(&verdict),
        );
    }

    for c in &fx.conditions {
        let (src, tgt) = fx.oriented(c.orientation);
        let label = format!(
            "{} item {} {}{}",
            arrow(c.orientation),
            c.item,
            if c.holds { "holds" } else { "fails" },
            c.fails_at.map(|k| format!(" at κ = {k}")).unwrap_or_default()
        );
        match check_condition(c.item, src, tgt) {
            None => push(label, false, format!("no condition numbered {}", c.item)),
            Some(verdict) => {
                let at = verdict.failure().and_then(|f| f.kappa);
                let passed = verdict.holds() == c.holds && (c.fails_at.is_none() || at == c.fails_at);
                push(label, passed, verdict_text(&verdict));
            }
        }
    }

    for (i, x) in fx.existence.iter().enumerate() {
        let (src, tgt) = fx.oriented(x.orientation);
        let good = validate_existence_certificate(src, tgt, &x.certificate);
        push(
            format!("{} {} certificate #{i} accepted", arrow(x.orientation), x.certificate.kind),
            good.is_ok(),
            good.err().map(|e| e.to_string()).unwrap_or_else(|| "accepted".into()),
        );
        let bad = validate_existence_certificate(src, tgt, &x.tampered);
        push(
            format!("{} tampered certificate #{i} rejected", arrow(x.orientation)),
            bad.is_err(),
            bad.err().map(|e| e.to_string()).unwrap_or_else(|| "accepted".into()),
        );
    }

    for (i, b) in fx.blocking.iter().enumerate() {
        let (src, tgt) = fx.oriented(b.orientation);
        let good = validate_blocking_certificate(src, tgt, b.kind, &b.certificate);
        push(
            format!("{} {} blocking certificate #{i} accepted", arrow(b.orientation), b.kind),
            good.is_ok(),
            good.err().map(|e| e.to_string()).unwrap_or_else(|| "accepted".into()),
        );
        let bad = validate_blocking_certificate(src, tgt, b.tampered.kind, &b.tampered.certificate);
        push(
            format!("{} tampered blocking certificate #{i} rejected", arrow(b.orientation)),
            bad.is_err(),
            bad.err().map(|e| e.to_string()).unwrap_or_else(|| "accepted".into()),
        );
    }

    FixtureReport { name: fx.name.clone(), outcomes, claims: fx.claims.clone() }
}

/// Existence or non-existence of a reduction, established by a check that
/// actually ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub orientation: Orientation,
    pub kind: ReductionKind,
    pub exists: bool,
    pub basis: String,
}

/// Facts that follow from the fixture's machine checks: exact conditions
/// in either outcome, necessary conditions that fail, and accepted
/// certificates. Claims contribute nothing.
pub fn established_facts(fx: &Fixture) -> Vec<Fact> {
    let mut facts = Vec::new();
    for c in &fx.conditions {
        let (src, tgt) = fx.oriented(c.orientation);
        let (Some(verdict), Some((kind, exact))) = (check_condition(c.item, src, tgt), item_kind(c.item)) else {
            continue;
        };
        if exact || !verdict.holds() {
            facts.push(Fact {
                orientation: c.orientation,
                kind,
                exists: verdict.holds(),
                basis: format!("{}: item {} {}", fx.name, c.item, verdict_text(&verdict)),
            });
        }
    }
    for x in &fx.existence {
        let (src, tgt) = fx.oriented(x.orientation);
        if validate_existence_certificate(src, tgt, &x.certificate).is_ok() {
            facts.push(Fact {
                orientation: x.orientation,
                kind: x.certificate.kind,
                exists: true,
                basis: format!("{}: {} certificate", fx.name, x.certificate.kind),
            });
        }
    }
    for b in &fx.blocking {
        let (src, tgt) = fx.oriented(b.orientation);
        if validate_blocking_certificate(src, tgt, b.kind, &b.certificate).is_ok() {
            facts.push(Fact {
                orientation: b.orientation,
                kind: b.kind,
                exists: false,
                basis: format!("{}: {} blocking certificate", fx.name, b.kind),
            });
        }
    }
    facts
}
