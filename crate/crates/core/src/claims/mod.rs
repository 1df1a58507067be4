//! Named, reproducible checks and the runner behind the `verify` binary.
//!
//! A claim is either a list of claim-file scripts, a native check, or both.
//! The builtin registry is assembled from [`builtin_corpus`] plus native
//! checks; further claims can be loaded from claim files.

mod corpus;
mod exec;
mod native;
mod props;
mod script;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::variety::{ParseError, Verdict};

pub use corpus::{builtin_corpus, golden_script, q_family_script, GoldenForm, COVERAGE, GOLDEN_N, Q_FAMILY};
pub use exec::{build_point, run_script};
pub use props::{backend_agreement, field_axioms, parser_roundtrip, sample_towers, sqrt_roundtrip, PropertyOutcome};
pub use script::{parse_claim_file, AdjoinSpec, BindingSpec, ClaimScript, Expect, ModeChoice, PlaceSpec};

pub const DEFAULT_PRECISION: usize = 40;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    PointVerification,
    LiftTest,
    SquarenessCertificate,
    OrbifoldFact,
    SemigroupFact,
    PropertyTest,
}

impl ClaimKind {
    pub const ALL: [ClaimKind; 6] = [
        ClaimKind::PointVerification,
        ClaimKind::LiftTest,
        ClaimKind::SquarenessCertificate,
        ClaimKind::OrbifoldFact,
        ClaimKind::SemigroupFact,
        ClaimKind::PropertyTest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::PointVerification => "point_verification",
            ClaimKind::LiftTest => "lift_test",
            ClaimKind::SquarenessCertificate => "squareness_certificate",
            ClaimKind::OrbifoldFact => "orbifold_fact",
            ClaimKind::SemigroupFact => "semigroup_fact",
            ClaimKind::PropertyTest => "property_test",
        }
    }
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        ClaimKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm || format!("{k:?}").to_ascii_lowercase() == norm)
            .ok_or_else(|| format!("unknown claim kind `{s}`"))
    }
}

/// Per-run parameter overrides. Unset fields fall back to the script's
/// own settings, then to the defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub precision: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<ModeChoice>,
}

impl Overrides {
    pub fn validate(&self) -> Result<(), ClaimError> {
        if self.precision == Some(0) {
            return Err(ClaimError::BadOverride("precision must be positive".into()));
        }
        if self.samples == Some(0) {
            return Err(ClaimError::BadOverride("samples must be positive".into()));
        }
        Ok(())
    }

    pub fn precision(&self) -> usize {
        self.precision.unwrap_or(DEFAULT_PRECISION)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// One named check inside a claim report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    pub evidence: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, summary: impl Into<String>, evidence: Value) -> Self {
        Check { name: name.into(), verdict, summary: summary.into(), evidence }
    }

    pub fn holds(name: impl Into<String>, ok: bool, summary: impl Into<String>, evidence: Value) -> Self {
        Self::new(name, if ok { Verdict::Pass } else { Verdict::Fail }, summary, evidence)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimReport {
    pub name: String,
    pub kind: ClaimKind,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    /// Not serialized, so reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl ClaimReport {
    fn from_checks(name: &str, kind: ClaimKind, checks: Vec<Check>, wall_time: Duration) -> Self {
        let verdict = if checks.is_empty() || checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if checks.iter().any(|c| c.verdict == Verdict::Undecided) {
            Verdict::Undecided
        } else {
            Verdict::Pass
        };
        ClaimReport { name: name.to_string(), kind, verdict, checks, wall_time }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable form, including the wall time.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{:<9} {} [{}] {:.1} ms\n",
            self.verdict.to_string(),
            self.name,
            self.kind,
            self.wall_time.as_secs_f64() * 1e3
        );
        for c in &self.checks {
            s.push_str(&format!("  {:<9} {}: {}\n", c.verdict.to_string(), c.name, c.summary));
            if c.verdict == Verdict::Fail {
                let dump = serde_json::to_string_pretty(&c.evidence).unwrap_or_default();
                for l in dump.lines() {
                    s.push_str(&format!("      {l}\n"));
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
    pub failures: Vec<String>,
    pub reports: Vec<ClaimReport>,
}

impl Summary {
    fn new(reports: Vec<ClaimReport>) -> Self {
        let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
        Summary {
            total: reports.len(),
            passed: count(Verdict::Pass),
            failed: count(Verdict::Fail),
            undecided: count(Verdict::Undecided),
            failures: reports.iter().filter(|r| r.verdict != Verdict::Pass).map(|r| r.name.clone()).collect(),
            reports,
        }
    }

    /// 0 when everything passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed == self.total {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries serialize")
    }

    pub fn render(&self) -> String {
        let mut s: String = self.reports.iter().map(ClaimReport::render).collect();
        s.push_str(&format!(
            "{} claims: {} passed, {} failed, {} undecided\n",
            self.total, self.passed, self.failed, self.undecided
        ));
        s
    }
}

#[derive(Debug, Error)]
pub enum ClaimError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("duplicate claim name `{0}`")]
    DuplicateName(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    BadOverride(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type NativeCheck = fn(&Overrides) -> Vec<Check>;

#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub kind: ClaimKind,
    pub description: String,
    /// Names of scripts in the registry's script table.
    pub scripts: Vec<String>,
    pub native: Option<NativeCheck>,
}

/// Claims by name plus the scripts they run. Immutable once built, apart
/// from [`Registry::load_str`].
#[derive(Clone, Debug, Default)]
pub struct Registry {
    claims: Vec<Claim>,
    scripts: BTreeMap<String, ClaimScript>,
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut reg = Registry::empty();
        let scripts = parse_claim_file(&builtin_corpus()).expect("the builtin corpus parses");
        for s in scripts {
            reg.scripts.insert(s.name.clone(), s);
        }
        for c in native::builtin_claims() {
            debug_assert!(c.scripts.iter().all(|s| reg.scripts.contains_key(s)), "{}", c.name);
            reg.claims.push(c);
        }
        reg
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn scripts(&self) -> impl Iterator<Item = &ClaimScript> {
        self.scripts.values()
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn len(&self) -> usize {
        self.claims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    /// Adds a claim; names must be unique.
    pub fn insert(&mut self, claim: Claim) -> Result<(), ClaimError> {
        if self.get(&claim.name).is_some() {
            return Err(ClaimError::DuplicateName(claim.name));
        }
        self.claims.push(claim);
        Ok(())
    }

    /// Parses a claim file and registers one claim per block. Returns the
    /// new claim names.
    pub fn load_str(&mut self, text: &str) -> Result<Vec<String>, ClaimError> {
        let scripts = parse_claim_file(text)?;
        if let Some(s) = scripts.iter().find(|s| self.get(&s.name).is_some() || self.scripts.contains_key(&s.name)) {
            return Err(ClaimError::DuplicateName(s.name.clone()));
        }
        let mut names = Vec::new();
        for s in scripts {
            names.push(s.name.clone());
            self.claims.push(Claim {
                name: s.name.clone(),
                kind: s.kind(),
                description: format!("loaded from claim file, line {}", s.line),
                scripts: vec![s.name.clone()],
                native: None,
            });
            self.scripts.insert(s.name.clone(), s);
        }
        Ok(names)
    }

    pub fn load_file(&mut self, path: &Path) -> Result<Vec<String>, ClaimError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ClaimError::Io { path: path.display().to_string(), source })?;
        self.load_str(&text)
    }

    pub fn run(&self, name: &str, overrides: &Overrides) -> Result<ClaimReport, ClaimError> {
        overrides.validate()?;
        let claim = self.get(name).ok_or_else(|| ClaimError::UnknownClaim(name.to_string()))?;
        Ok(self.run_claim(claim, overrides))
    }

    fn run_claim(&self, claim: &Claim, overrides: &Overrides) -> ClaimReport {
        let start = Instant::now();
        let mut checks = Vec::new();
        for s in &claim.scripts {
            checks.extend(run_script(&self.scripts[s], overrides));
        }
        if let Some(f) = claim.native {
            checks.extend(f(overrides));
        }
        ClaimReport::from_checks(&claim.name, claim.kind, checks, start.elapsed())
    }

    /// Runs every claim (of one kind, if given) on worker threads and
    /// collects the reports in registry order.
    pub fn run_all(&self, kind: Option<ClaimKind>, overrides: &Overrides) -> Result<Summary, ClaimError> {
        overrides.validate()?;
        let selected: Vec<&Claim> = self.claims.iter().filter(|c| kind.is_none_or(|k| c.kind == k)).collect();
        let reports = std::thread::scope(|scope| {
            let handles: Vec<_> =
                selected.iter().map(|c| scope.spawn(move || self.run_claim(c, overrides))).collect();
            handles.into_iter().map(|h| h.join().expect("claim thread panicked")).collect()
        });
        Ok(Summary::new(reports))
    }
}

/// Runs one builtin claim with the given overrides.
pub fn run_claim(name: &str, overrides: &Overrides) -> Result<ClaimReport, ClaimError> {
    Registry::builtin().run(name, overrides)
}

/// Runs every builtin claim, optionally restricted to one kind.
pub fn run_all(kind: Option<ClaimKind>, overrides: &Overrides) -> Result<Summary, ClaimError> {
    Registry::builtin().run_all(kind, overrides)
}
