use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eqred_core::cardinals::fixtures::{builtin_fixture, fixture_names, verify_fixture, Fixture};
use eqred_core::cardinals::{check_condition, SymbolicProfile};
use eqred_core::lattice::{nice_scan, verify_completeness, verify_soundness, Discharge, ImplicationDiagram};
use eqred_core::oracle::{enumerate_relations, OracleError};
use eqred_core::{classify_map, decide, oracle_decide, FiniteEqRel, MapWitness, ReductionKind, SizeProfile};
use serde_json::{json, Value};

/// Decide, classify and verify reductions between equivalence relations.
///
/// Relations are given as size profiles: `<n1,n2,...>` has n_k classes of
/// size k. A JSON array such as `[0,0,1]` instead gives each element's
/// class label. Output is JSON on stdout. Exit status is 0 for a positive
/// answer, 1 for a negative one and 2 for malformed input.
#[derive(Debug, Parser)]
#[command(name = "eqred", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a reduction of the given kind exists from E to F.
    Decide {
        kind: ReductionKind,
        e: String,
        f: String,
        /// Include a witness map when one exists.
        #[arg(long)]
        witness: bool,
    },
    /// Report which of the five properties a map has and which kinds it is.
    Classify { e: String, f: String, map: String },
    /// Check a diagram's arrows for soundness and completeness.
    VerifyDiagram {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2), required_unless_present = "diagram")]
        figure: Option<u8>,
        /// A diagram description file to check instead of a shipped figure.
        #[arg(long, conflicts_with = "figure")]
        diagram: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_ground: usize,
        /// Write the diagram as DOT, with implied arrows dashed.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Find every nice atom implied by the kind over a finite universe.
    NiceScan {
        kind: ReductionKind,
        #[arg(long, default_value_t = 4)]
        max_ground: usize,
    },
    /// Evaluate a counting condition (item 1..=7) on two symbolic profiles.
    ProfileCheck { item: u8, e: PathBuf, f: PathBuf },
    /// Work with the shipped certificate fixtures.
    Certificate {
        #[command(subcommand)]
        action: CertificateAction,
    },
    /// Decide by enumerating every map (small relations only).
    Oracle { kind: ReductionKind, e: String, f: String },
}

#[derive(Debug, Subcommand)]
enum CertificateAction {
    /// Validate a shipped fixture by name, or a fixture file.
    Validate { fixture: String },
    /// List shipped fixture names.
    List,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_relation(spec: &str) -> Result<FiniteEqRel, InputError> {
    if spec.trim_start().starts_with('[') {
        let labels: Vec<usize> = serde_json::from_str(spec)?;
        return Ok(FiniteEqRel::from_class_of(labels)?);
    }
    let profile: SizeProfile = spec.parse()?;
    Ok(FiniteEqRel::from_profile(&profile))
}

fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// JSON answer plus whether it is positive.
type Answer = (Value, bool);

fn run(command: Command) -> Result<Answer, InputError> {
    match command {
        Command::Decide { kind, e, f, witness } => {
            let (e, f) = (parse_relation(&e)?, parse_relation(&f)?);
            let d = decide(kind, &e, &f);
            let mut out = json!({ "kind": kind, "exists": d.exists });
            if let Some(r) = &d.reason {
                out["reason"] = json!(r.to_string());
                out["refutation"] = json!(r);
            }
            if witness {
                out["witness"] = json!(d.witness.as_ref().map(|w| {
                    w.targets().iter().enumerate().map(|(x, y)| json!({ "element": x, "image": y })).collect::<Vec<_>>()
                }));
            }
            Ok((out, d.exists))
        }
        Command::Classify { e, f, map } => {
            let (e, f) = (parse_relation(&e)?, parse_relation(&f)?);
            let phi: MapWitness = map.parse()?;
            let flags = classify_map(&e, &f, &phi)?;
            let kinds: Vec<ReductionKind> =
                ReductionKind::ALL.into_iter().filter(|k| flags.contains(k.required_flags())).collect();
            Ok((json!({ "flags": flags, "summary": flags.to_string(), "kinds": kinds }), true))
        }
        Command::VerifyDiagram { figure, diagram, max_ground, dot } => {
            let d = match (figure, diagram) {
                (Some(n), _) => ImplicationDiagram::figure(n).expect("clap restricts the range"),
                (None, Some(path)) => ImplicationDiagram::from_json(&read_file(&path)?)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let universe = enumerate_relations(max_ground)?;
            let sound = verify_soundness(&d, &universe);
            let complete = verify_completeness(&d, &universe);
            if let Some(path) = dot {
                fs::write(&path, d.to_dot(true)).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            }
            let infinite: Vec<Value> = complete
                .requiring_infinite()
                .map(|n| {
                    let fixture = match &n.discharge {
                        Some(Discharge::Fixture { name, .. }) => name.as_str(),
                        _ => unreachable!(),
                    };
                    json!({ "from": n.from, "to": n.to, "fixture": fixture })
                })
                .collect();
            let mut summary = format!(
                "{}, {}; {} canonical counterexamples used",
                if sound.is_sound() { "sound" } else { "unsound" },
                if complete.is_complete() { "complete" } else { "incomplete" },
                complete.canonical_used().len()
            );
            if !infinite.is_empty() {
                summary.push_str(&format!("; {} non-implications require infinite fixtures", infinite.len()));
            }
            let ok = sound.is_sound() && complete.is_complete();
            let undischarged: Vec<_> = complete.undischarged().collect();
            Ok((
                json!({
                    "diagram": d.name,
                    "max_ground": max_ground,
                    "universe_size": universe.len(),
                    "summary": summary,
                    "violations": sound.violations,
                    "undischarged": undischarged,
                    "requires_infinite_fixtures": infinite,
                    "non_implications": complete.non_implications,
                }),
                ok,
            ))
        }
        Command::NiceScan { kind, max_ground } => {
            let universe = enumerate_relations(max_ground)?;
            let r = nice_scan(kind, &universe)?;
            let labels = |atoms: &[eqred_core::lattice::NiceAtom]| -> Vec<String> {
                atoms.iter().map(|a| a.to_string()).collect()
            };
            Ok((
                json!({
                    "kind": kind,
                    "max_ground": r.max_ground,
                    "pairs": r.pairs,
                    "s": labels(&r.s),
                    "t": labels(&r.t),
                    "s_minus_t": labels(&r.s_minus_t),
                    "note": "evidence over a finite universe, not a proof",
                }),
                r.s_minus_t.is_empty(),
            ))
        }
        Command::ProfileCheck { item, e, f } => {
            let e: SymbolicProfile = serde_json::from_str(&read_file(&e)?)?;
            let f: SymbolicProfile = serde_json::from_str(&read_file(&f)?)?;
            let verdict =
                check_condition(item, &e, &f).ok_or_else(|| InputError(format!("no condition numbered {item}")))?;
            let mut out = json!({ "item": item, "holds": verdict.holds() });
            if let Some(why) = verdict.failure() {
                out["reason"] = json!(why.to_string());
                out["failure"] = json!(why);
            }
            Ok((out, verdict.holds()))
        }
        Command::Certificate { action: CertificateAction::List } => {
            Ok((json!(fixture_names().collect::<Vec<_>>()), true))
        }
        Command::Certificate { action: CertificateAction::Validate { fixture } } => {
            let fx: Fixture = match builtin_fixture(&fixture) {
                Some(fx) => fx,
                None => serde_json::from_str(&read_file(Path::new(&fixture))?)?,
            };
            let report = verify_fixture(&fx);
            let ok = report.all_passed();
            Ok((json!({ "passed": ok, "report": report }), ok))
        }
        Command::Oracle { kind, e, f } => {
            let (e, f) = (parse_relation(&e)?, parse_relation(&f)?);
            match oracle_decide(kind, &e, &f) {
                Ok(exists) => Ok((json!({ "kind": kind, "exists": exists, "method": "exhaustive" }), exists)),
                Err(err @ (OracleError::BoundExceeded { .. } | OracleError::BudgetExceeded { .. })) => Err(err.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, positive)) => {
            // a closed pipe is not worth a panic
            let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&out).expect("json"));
            if positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
