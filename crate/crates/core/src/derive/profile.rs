use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::kind::{InclusionClosure, SpectrumKind};
use crate::error::{Error, Result};
use crate::json::{region_from_value, region_value, with_schema};
use crate::region::SpectralRegion;
use crate::scalar::ExactScalar;

pub(crate) fn closure() -> &'static InclusionClosure {
    static CLOSURE: OnceLock<InclusionClosure> = OnceLock::new();
    CLOSURE.get_or_init(InclusionClosure::new)
}

/// How a spectrum entered a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Given,
    Derived { rule: String },
}

impl Provenance {
    pub fn label(&self) -> &str {
        match self {
            Provenance::Given => "given",
            Provenance::Derived { rule } => rule,
        }
    }
}

/// A single statement `point ∈ σ_kind` or `point ∉ σ_kind`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MembershipFact {
    pub kind: SpectrumKind,
    pub point: ExactScalar,
    pub member: bool,
}

impl MembershipFact {
    pub fn new(kind: SpectrumKind, point: ExactScalar, member: bool) -> Self {
        MembershipFact { kind, point, member }
    }
}

/// Spectra of one operator, keyed by kind, with provenance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectraProfile {
    pub operator_name: String,
    assigned: BTreeMap<SpectrumKind, SpectralRegion>,
    provenance: BTreeMap<SpectrumKind, Provenance>,
    /// Poles of the resolvent, when known.
    pub poles: Option<SpectralRegion>,
    pub memberships: Vec<MembershipFact>,
}

impl SpectraProfile {
    pub fn new(name: impl Into<String>) -> Self {
        SpectraProfile { operator_name: name.into(), ..Default::default() }
    }

    pub fn get(&self, kind: SpectrumKind) -> Option<&SpectralRegion> {
        self.assigned.get(&kind)
    }

    pub fn provenance(&self, kind: SpectrumKind) -> Option<&Provenance> {
        self.provenance.get(&kind)
    }

    pub fn is_assigned(&self, kind: SpectrumKind) -> bool {
        self.assigned.contains_key(&kind)
    }

    pub fn assigned(&self) -> impl Iterator<Item = (SpectrumKind, &SpectralRegion)> {
        self.assigned.iter().map(|(k, r)| (*k, r))
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    /// Add a given spectrum, checking it against the inclusion lattice.
    pub fn insert_given(&mut self, kind: SpectrumKind, region: SpectralRegion) -> Result<()> {
        self.insert_checked(kind, region, Provenance::Given)
    }

    pub fn with(mut self, kind: SpectrumKind, region: SpectralRegion) -> Result<Self> {
        self.insert_given(kind, region)?;
        Ok(self)
    }

    pub(crate) fn insert_checked(&mut self, kind: SpectrumKind, region: SpectralRegion, prov: Provenance) -> Result<()> {
        if let Some(existing) = self.assigned.get(&kind) {
            if !existing.set_eq(&region)? {
                return Err(Error::InconsistentProfile(format!(
                    "{kind} assigned twice: {existing} and {region}"
                )));
            }
            return Ok(());
        }
        self.check_against_lattice(kind, &region)?;
        self.assigned.insert(kind, region);
        self.provenance.insert(kind, prov);
        Ok(())
    }

    /// Insert without any consistency check. Meant for building deliberately
    /// broken profiles.
    pub fn insert_unchecked(&mut self, kind: SpectrumKind, region: SpectralRegion) {
        self.insert_raw(kind, region, Provenance::Given);
    }

    pub(crate) fn insert_raw(&mut self, kind: SpectrumKind, region: SpectralRegion, prov: Provenance) {
        self.assigned.insert(kind, region);
        self.provenance.insert(kind, prov);
    }

    pub fn remove(&mut self, kind: SpectrumKind) -> Option<SpectralRegion> {
        self.provenance.remove(&kind);
        self.assigned.remove(&kind)
    }

    fn check_against_lattice(&self, kind: SpectrumKind, region: &SpectralRegion) -> Result<()> {
        let c = closure();
        for (&other, r) in &self.assigned {
            if other == kind {
                continue;
            }
            if c.included(kind, other) && !region.subset(r)? {
                return Err(Error::InclusionViolated(format!("σ_{kind} = {region} ⊄ σ_{other} = {r}")));
            }
            if c.included(other, kind) && !r.subset(region)? {
                return Err(Error::InclusionViolated(format!("σ_{other} = {r} ⊄ σ_{kind} = {region}")));
            }
        }
        Ok(())
    }

    /// Check every lattice inclusion between assigned kinds.
    pub fn check_inclusions(&self) -> Result<()> {
        let c = closure();
        for (&a, ra) in &self.assigned {
            for (&b, rb) in &self.assigned {
                if a != b && c.included(a, b) && !ra.subset(rb)? {
                    return Err(Error::InclusionViolated(format!("σ_{a} = {ra} ⊄ σ_{b} = {rb}")));
                }
            }
        }
        Ok(())
    }

    /// Close the membership facts under the lattice: membership moves up,
    /// non-membership moves down. Assigned regions must agree with every fact.
    pub fn membership_closure(&self) -> Result<Vec<MembershipFact>> {
        let c = closure();
        let mut known: BTreeMap<(SpectrumKind, ExactScalar), bool> = BTreeMap::new();
        for fact in &self.memberships {
            let targets: Vec<SpectrumKind> = if fact.member {
                std::iter::once(fact.kind).chain(c.above(fact.kind)).collect()
            } else {
                std::iter::once(fact.kind).chain(c.below(fact.kind)).collect()
            };
            for kind in targets {
                let key = (kind, fact.point.clone());
                match known.get(&key) {
                    Some(&m) if m != fact.member => {
                        return Err(Error::InconsistentProfile(format!(
                            "{} is both in and out of σ_{kind}",
                            fact.point
                        )))
                    }
                    _ => {
                        known.insert(key, fact.member);
                    }
                }
            }
        }
        for ((kind, point), member) in &known {
            if let Some(r) = self.get(*kind) {
                if r.contains(point) != *member {
                    return Err(Error::InconsistentProfile(format!(
                        "membership of {point} in σ_{kind} contradicts the assigned region {r}"
                    )));
                }
            }
        }
        Ok(known.into_iter().map(|((kind, point), member)| MembershipFact { kind, point, member }).collect())
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let raw: ProfileJson = serde_json::from_value(v)?;
        let mut p = SpectraProfile::new(raw.operator);
        for (name, region) in raw.spectra {
            let kind: SpectrumKind = name.parse()?;
            p.insert_given(kind, region_from_value(region)?)?;
        }
        if let Some(e) = raw.poles {
            p.poles = Some(region_from_value(e)?);
        }
        for m in raw.memberships {
            p.memberships.push(MembershipFact {
                kind: m.kind.parse()?,
                point: ExactScalar::from_pair(&m.point[0], &m.point[1])?,
                member: m.member,
            });
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn to_value(&self) -> Value {
        let mut spectra = Map::new();
        let mut prov = Map::new();
        for (kind, r) in &self.assigned {
            spectra.insert(kind.name().into(), region_value(r));
            prov.insert(kind.name().into(), json!(self.provenance[kind].label()));
        }
        let mut v = json!({
            "operator": self.operator_name,
            "spectra": spectra,
            "provenance": prov,
        });
        if let Some(e) = &self.poles {
            v["poles"] = region_value(e);
        }
        if !self.memberships.is_empty() {
            v["memberships"] = membership_values(&self.memberships);
        }
        with_schema(v)
    }
}

pub(crate) fn membership_values(facts: &[MembershipFact]) -> Value {
    facts
        .iter()
        .map(|m| json!({ "kind": m.kind.name(), "point": m.point.to_pair(), "member": m.member }))
        .collect()
}

#[derive(Deserialize)]
struct MembershipJson {
    kind: String,
    point: [String; 2],
    member: bool,
}

#[derive(Deserialize)]
struct ProfileJson {
    #[serde(default)]
    operator: String,
    #[serde(default)]
    spectra: BTreeMap<String, Value>,
    #[serde(default)]
    poles: Option<Value>,
    #[serde(default)]
    memberships: Vec<MembershipJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::Primitive;
    use crate::scalar::rational;
    use SpectrumKind::*;

    fn circle() -> SpectralRegion {
        SpectralRegion::from_primitive(Primitive::circle(ExactScalar::from_int(0), rational(1, 1)).unwrap())
    }

    fn disk() -> SpectralRegion {
        SpectralRegion::from_primitive(Primitive::disk(ExactScalar::from_int(0), rational(1, 1)).unwrap())
    }

    #[test]
    fn inclusions_checked_on_insert() {
        let mut p = SpectraProfile::new("t");
        p.insert_given(D, circle()).unwrap();
        let err = p.insert_given(Tud, disk()).unwrap_err();
        assert_eq!(err.code(), "InclusionViolated");
        p.insert_given(Sigma, disk()).unwrap();
        assert!(p.check_inclusions().is_ok());
        p.insert_unchecked(Ld, disk());
        assert!(p.check_inclusions().is_err());
    }

    #[test]
    fn membership_propagation() {
        let mut p = SpectraProfile::new("t");
        let zero = ExactScalar::from_int(0);
        p.memberships.push(MembershipFact::new(Tud, zero.clone(), false));
        p.memberships.push(MembershipFact::new(QPhi, zero.clone(), true));
        let facts = p.membership_closure().unwrap();
        let member = |k| facts.iter().find(|f| f.kind == k).map(|f| f.member);
        assert_eq!(member(Rd), Some(true));
        assert_eq!(member(D), Some(true));
        assert_eq!(member(Tud), Some(false));
        assert_eq!(member(Ld), Some(true));
        p.memberships.push(MembershipFact::new(Rde, zero, false));
        assert_eq!(p.membership_closure().unwrap_err().code(), "InconsistentProfile");
    }

    #[test]
    fn json_roundtrip() {
        let p = SpectraProfile::new("U").with(Sigma, disk()).unwrap().with(Ap, circle()).unwrap();
        let back = SpectraProfile::from_value(p.to_value()).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"operator":"x","spectra":{"nope":{"primitives":[]}}}"#;
        assert_eq!(SpectraProfile::from_json(bad).unwrap_err().code(), "ParseError");
    }
}
