//! Reference operators with known spectra.
//!
//! Each entry stores the base spectra of a concrete operator as data and the
//! values the derivation rules must reproduce from them. Nothing here
//! computes spectra of infinite-dimensional operators.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::derive::{
    derive, derive_lenient, meromorphic_check, verify_boundary_diagrams, verify_eta_theorem, verify_moved_boundary,
    ArrowReport, EtaReport, MembershipFact, SpectraProfile, SpectrumKind,
};
use crate::error::{Error, Result};
use crate::json::{region_value, with_schema};
use crate::region::SpectralRegion;

const FIXTURES: &[&str] = &[
    include_str!("../catalog/forward-shift.json"),
    include_str!("../catalog/backward-shift.json"),
    include_str!("../catalog/bilateral-shift-w1.json"),
    include_str!("../catalog/bilateral-shift-w2.json"),
    include_str!("../catalog/cesaro.json"),
    include_str!("../catalog/isometry.json"),
    include_str!("../catalog/quasinilpotent.json"),
    include_str!("../catalog/primer.json"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub citations: Vec<String>,
    /// Whether the rules reach all fourteen hull-sharing spectra.
    pub full: bool,
    pub given: SpectraProfile,
    pub expected: SpectraProfile,
    pub expected_meromorphic: Option<bool>,
}

#[derive(Deserialize)]
struct EntryJson {
    name: String,
    description: String,
    #[serde(default)]
    citations: Vec<String>,
    #[serde(default)]
    full: bool,
    given: Value,
    expected: Value,
    #[serde(default)]
    expected_meromorphic: Option<bool>,
}

impl CatalogEntry {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: EntryJson = serde_json::from_str(text)?;
        Ok(CatalogEntry {
            name: raw.name,
            description: raw.description,
            citations: raw.citations,
            full: raw.full,
            given: SpectraProfile::from_value(raw.given)?,
            expected: SpectraProfile::from_value(raw.expected)?,
            expected_meromorphic: raw.expected_meromorphic,
        })
    }

    /// Entries made only of point-membership statements.
    pub fn is_membership_entry(&self) -> bool {
        self.given.is_empty() && !self.given.memberships.is_empty()
    }

    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "description": self.description,
            "citations": self.citations,
            "full": self.full,
            "given": self.given.to_value(),
            "expected": self.expected.to_value(),
        });
        if let Some(m) = self.expected_meromorphic {
            v["expected_meromorphic"] = json!(m);
        }
        with_schema(v)
    }
}

/// The shipped entries, in a fixed order.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    FIXTURES.iter().map(|t| CatalogEntry::from_json(t).expect("shipped fixtures parse")).collect()
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    catalog_entries().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.into()))
}

/// One disagreement between expected and derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub entry: String,
    pub kind: Option<SpectrumKind>,
    /// Rule that produced the derived value, `given`, or `none`.
    pub rule: String,
    pub expected: Option<SpectralRegion>,
    pub derived: Option<SpectralRegion>,
    pub message: String,
}

impl Mismatch {
    fn value(&self) -> Value {
        json!({
            "entry": self.entry,
            "kind": self.kind.map(|k| k.name()),
            "rule": self.rule,
            "expected": self.expected.as_ref().map(region_value),
            "derived": self.derived.as_ref().map(region_value),
            "message": self.message,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EntryValidation {
    pub name: String,
    pub derived: Option<SpectraProfile>,
    pub mismatches: Vec<Mismatch>,
    pub eta: Option<EtaReport>,
    pub diagrams: Option<ArrowReport>,
    pub moved: Option<ArrowReport>,
}

impl EntryValidation {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn value(&self) -> Value {
        let derived: Vec<Value> = self
            .derived
            .iter()
            .flat_map(|p| p.assigned())
            .filter_map(|(k, r)| {
                let rule = self.derived.as_ref()?.provenance(k)?.label().to_string();
                Some(json!({ "kind": k.name(), "rule": rule, "region": r.to_string() }))
            })
            .collect();
        json!({
            "name": self.name,
            "passed": self.passed(),
            "derived": derived,
            "mismatches": self.mismatches.iter().map(Mismatch::value).collect::<Vec<_>>(),
            "eta": self.eta.as_ref().map(EtaReport::to_value),
            "diagrams": self.diagrams.as_ref().map(|d| json!({ "passed": d.passed(), "pass": d.count("pass"), "skipped": d.count("skipped") })),
            "moved": self.moved.as_ref().map(|d| json!({ "passed": d.passed(), "pass": d.count("pass"), "skipped": d.count("skipped") })),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct CatalogReport {
    pub entries: Vec<EntryValidation>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryValidation::passed)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Mismatch> {
        self.entries.iter().flat_map(|e| e.mismatches.iter())
    }

    pub fn to_value(&self) -> Value {
        with_schema(json!({
            "passed": self.passed(),
            "entries": self.entries.iter().map(EntryValidation::value).collect::<Vec<_>>(),
        }))
    }
}

pub fn run_catalog_validation() -> CatalogReport {
    validate_entries(&catalog_entries())
}

pub fn validate_entries(entries: &[CatalogEntry]) -> CatalogReport {
    CatalogReport { entries: entries.iter().map(validate_entry).collect() }
}

pub fn validate_entry(entry: &CatalogEntry) -> EntryValidation {
    let mut v = EntryValidation {
        name: entry.name.clone(),
        derived: None,
        mismatches: Vec::new(),
        eta: None,
        diagrams: None,
        moved: None,
    };
    let fail = |kind, rule: &str, expected, derived, message: String| Mismatch {
        entry: entry.name.clone(),
        kind,
        rule: rule.into(),
        expected,
        derived,
        message,
    };
    let derived = match derive(&entry.given) {
        Ok(d) => d.profile,
        Err(e) => {
            v.mismatches.push(fail(None, "none", None, None, format!("derivation failed: {} ({e})", e.code())));
            match derive_lenient(&entry.given) {
                Ok(d) => d.profile,
                Err(_) => return v,
            }
        }
    };
    for (kind, want) in entry.expected.assigned() {
        let got = derived.get(kind);
        let rule = derived.provenance(kind).map_or("none", |p| p.label()).to_string();
        let ok = match got {
            Some(g) => g.set_eq(want).unwrap_or(false),
            None => false,
        };
        if !ok {
            let message = match got {
                Some(g) => format!("σ_{kind}: expected {want}, derived {g}"),
                None => format!("σ_{kind}: expected {want}, not derivable"),
            };
            v.mismatches.push(fail(Some(kind), &rule, Some(want.clone()), got.cloned(), message));
        }
    }
    if !entry.expected.memberships.is_empty() {
        check_memberships(entry, &derived, &mut v.mismatches);
    }
    if let Some(want) = entry.expected_meromorphic {
        match meromorphic_check(&derived) {
            Ok(got) if got == want => {}
            Ok(got) => v.mismatches.push(fail(None, "none", None, None, format!("meromorphic: expected {want}, got {got}"))),
            Err(e) => v.mismatches.push(fail(None, "none", None, None, format!("meromorphic check failed: {e}"))),
        }
    }
    if entry.full {
        match verify_eta_theorem(&derived) {
            Ok(rep) => {
                if !rep.passed() {
                    v.mismatches.push(fail(None, "none", None, None, "hull check failed".into()));
                }
                if rep.matches_spectrum_hull == Some(false) {
                    v.mismatches.push(fail(None, "none", None, None, "common hull differs from the hull of σ".into()));
                }
                v.eta = Some(rep);
            }
            Err(e) => v.mismatches.push(fail(None, "none", None, None, format!("hull check failed: {e}"))),
        }
    }
    for (label, result) in [("boundary diagrams", verify_boundary_diagrams(&derived)), ("moved boundary", verify_moved_boundary(&derived))] {
        match result {
            Ok(rep) => {
                for a in rep.failures() {
                    v.mismatches.push(fail(None, "none", a.left.clone(), a.right.clone(), format!("{label}: {} fails", a.name)));
                }
                if label == "boundary diagrams" {
                    v.diagrams = Some(rep);
                } else {
                    v.moved = Some(rep);
                }
            }
            Err(e) => v.mismatches.push(fail(None, "none", None, None, format!("{label}: {e}"))),
        }
    }
    v.derived = Some(derived);
    v
}

fn check_memberships(entry: &CatalogEntry, derived: &SpectraProfile, out: &mut Vec<Mismatch>) {
    let closure = match derived.membership_closure() {
        Ok(c) => c,
        Err(e) => {
            out.push(Mismatch {
                entry: entry.name.clone(),
                kind: None,
                rule: "none".into(),
                expected: None,
                derived: None,
                message: format!("membership propagation failed: {e}"),
            });
            return;
        }
    };
    for want in &entry.expected.memberships {
        if !closure.contains(want) {
            let MembershipFact { kind, point, member } = want;
            let rel = if *member { "∈" } else { "∉" };
            out.push(Mismatch {
                entry: entry.name.clone(),
                kind: Some(*kind),
                rule: "membership".into(),
                expected: None,
                derived: None,
                message: format!("{point} {rel} σ_{kind} does not follow"),
            });
        }
    }
}
