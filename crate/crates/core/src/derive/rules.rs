use std::fmt;

use super::kind::SpectrumKind::{self, *};
use super::profile::{closure, Provenance, SpectraProfile};
use crate::error::{Error, Result};
use crate::region::{accumulation, boundary, connected_hull, interior, union_all, PlaneSet, SpectralRegion};

/// A set-valued term over the spectra of a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Kind(SpectrumKind),
    Union(Vec<Expr>),
    Acc(Box<Expr>),
    Int(Box<Expr>),
    Boundary(Box<Expr>),
    Hull(Box<Expr>),
    /// The union of everything known to lie below the kind, provided it
    /// equals some assigned spectrum known to lie above it.
    Squeeze(SpectrumKind),
}

impl Expr {
    pub fn acc(k: SpectrumKind) -> Expr {
        Expr::Acc(Box::new(Expr::Kind(k)))
    }

    pub fn int(k: SpectrumKind) -> Expr {
        Expr::Int(Box::new(Expr::Kind(k)))
    }

    /// Kinds the term reads.
    pub fn references(&self) -> Vec<SpectrumKind> {
        match self {
            Expr::Kind(k) => vec![*k],
            Expr::Union(es) => es.iter().flat_map(Expr::references).collect(),
            Expr::Acc(e) | Expr::Int(e) | Expr::Boundary(e) | Expr::Hull(e) => e.references(),
            Expr::Squeeze(_) => vec![],
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Kind(k) => write!(f, "{k}"),
            Expr::Union(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∪ ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            Expr::Acc(e) => write!(f, "acc {e}"),
            Expr::Int(e) => write!(f, "int {e}"),
            Expr::Boundary(e) => write!(f, "∂{e}"),
            Expr::Hull(e) => write!(f, "η{e}"),
            Expr::Squeeze(k) => write!(f, "squeeze({k})"),
        }
    }
}

/// Side condition on a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    /// The spectrum lies on one straight line.
    LineContained(SpectrumKind),
    /// The complement of the spectrum is connected.
    NoHoles(SpectrumKind),
    /// `σ = ∂σ = acc σ`.
    PerfectBoundary(SpectrumKind),
    Finite(SpectrumKind),
}

impl Guard {
    fn kind(self) -> SpectrumKind {
        match self {
            Guard::LineContained(k) | Guard::NoHoles(k) | Guard::PerfectBoundary(k) | Guard::Finite(k) => k,
        }
    }

    fn holds(self, profile: &SpectraProfile) -> Result<Option<bool>> {
        let Some(r) = profile.get(self.kind()) else { return Ok(None) };
        Ok(Some(match self {
            Guard::LineContained(_) => r.is_line_contained(),
            Guard::NoHoles(_) => connected_hull(r)?.holes.is_empty(),
            Guard::PerfectBoundary(_) => boundary(r)?.set_eq(r)? && accumulation(r).set_eq(r)?,
            Guard::Finite(_) => r.is_finite(),
        }))
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::LineContained(k) => write!(f, "{k} lies on a line"),
            Guard::NoHoles(k) => write!(f, "complement of {k} is connected"),
            Guard::PerfectBoundary(k) => write!(f, "{k} = ∂{k} = acc {k}"),
            Guard::Finite(k) => write!(f, "{k} is finite"),
        }
    }
}

/// `output = expression` whenever the guard holds and every referenced
/// kind is assigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationRule {
    pub id: String,
    pub output: SpectrumKind,
    pub expression: Expr,
    pub guard: Option<Guard>,
    /// A second form of the same identity, evaluated as a cross-check.
    pub dual: Option<Expr>,
    pub citation: String,
}

impl DerivationRule {
    fn new(id: &str, output: SpectrumKind, expression: Expr) -> Self {
        let citation = format!("{output} = {expression}");
        DerivationRule { id: id.into(), output, expression, guard: None, dual: None, citation }
    }

    fn guarded(mut self, guard: Guard) -> Self {
        self.citation = format!("{} when {guard}", self.citation);
        self.guard = Some(guard);
        self
    }

    fn with_dual(mut self, dual: Expr) -> Self {
        self.citation = format!("{} = {dual}", self.citation);
        self.dual = Some(dual);
        self
    }

    /// Value the rule assigns to its output, if it applies.
    pub fn evaluate(&self, profile: &SpectraProfile) -> Result<Option<SpectralRegion>> {
        if let Expr::Squeeze(k) = self.expression {
            return if profile.is_assigned(k) { Ok(None) } else { squeeze(k, profile) };
        }
        if self.expression.references().iter().any(|k| !profile.is_assigned(*k)) {
            return Ok(None);
        }
        if let Some(g) = self.guard {
            if g.holds(profile)? != Some(true) {
                return Ok(None);
            }
        }
        let value = close(&eval(&self.expression, profile)?, &self.id)?;
        Ok(Some(value))
    }

    /// Compare the dual form with `value`. `Ok(None)` when the region
    /// algebra cannot decide.
    fn dual_agrees(&self, profile: &SpectraProfile, value: &SpectralRegion) -> Result<Option<bool>> {
        let Some(dual) = &self.dual else { return Ok(Some(true)) };
        let other = match eval(dual, profile) {
            Ok(s) => s,
            Err(Error::UnsupportedConfiguration(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let forward = value.as_plane_set().contains_plane_set(&other);
        let backward = other.contains_region(value);
        match (forward, backward) {
            (Ok(a), Ok(b)) => Ok(Some(a && b)),
            (Err(Error::UnsupportedConfiguration(_)), _) | (_, Err(Error::UnsupportedConfiguration(_))) => Ok(None),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }
}

fn eval(e: &Expr, profile: &SpectraProfile) -> Result<PlaneSet> {
    let closed = |e: &Expr| -> Result<SpectralRegion> {
        let s = eval(e, profile)?;
        if !s.is_closed() {
            return Err(Error::unsupported(format!("{e} is not a closed set")));
        }
        Ok(s.closed)
    };
    Ok(match e {
        Expr::Kind(k) => profile
            .get(*k)
            .ok_or_else(|| Error::MissingKinds(k.to_string()))?
            .as_plane_set(),
        Expr::Union(es) => {
            let parts = es.iter().map(|e| eval(e, profile)).collect::<Result<Vec<_>>>()?;
            let closed = union_all(parts.iter().map(|s| &s.closed))?;
            let open = parts.into_iter().flat_map(|s| s.open).collect();
            PlaneSet { closed, open }
        }
        Expr::Acc(e) => accumulation(&closed(e)?).as_plane_set(),
        Expr::Int(e) => interior(&closed(e)?)?,
        Expr::Boundary(e) => boundary(&closed(e)?)?.as_plane_set(),
        Expr::Hull(e) => connected_hull(&closed(e)?)?.hull.as_plane_set(),
        Expr::Squeeze(k) => squeeze(*k, profile)?
            .ok_or_else(|| Error::MissingKinds(format!("bounds for {k}")))?
            .as_plane_set(),
    })
}

/// Turn a plane set into a closed region. Open discs are accepted when
/// their boundary circle is already present.
fn close(s: &PlaneSet, rule: &str) -> Result<SpectralRegion> {
    if s.open.is_empty() {
        return Ok(s.closed.clone());
    }
    let mut pieces = s.closed.primitives().to_vec();
    for o in &s.open {
        if !s.closed.as_plane_set().covers(&o.boundary())? {
            return Err(Error::InconsistentProfile(format!("rule {rule} produced a set that is not closed")));
        }
        pieces.push(o.closure());
    }
    SpectralRegion::canonicalize(pieces)
}

/// Union rules: `output = base ∪ acc X = base ∪ int X` for every X in `inputs`.
pub const COROLLARIES: &[(&str, SpectrumKind, SpectrumKind, &[SpectrumKind])] = &[
    ("cor-W-1", BwPlus, Tud, &[WPlus, BwPlus]),
    ("cor-W-2", BwMinus, QPhi, &[WMinus, BwMinus]),
    ("cor-W-3", Bw, Tud, &[W, Bw]),
    ("cor-F-1", Lde, Tud, &[PhiPlus, Lde]),
    ("cor-F-2", Dsce, Tud, &[PhiMinus, Rde, Dsce]),
    ("cor-F-3", Rde, QPhi, &[PhiMinus, Rde, Dsce]),
    ("cor-F-4", BPhi, Tud, &[Phi, BPhi]),
    ("cor-Dra-1", Ld, Tud, &[P, Ap, BPlus, Ld]),
    ("cor-Dra-2", Dsc, Tud, &[Su, Cp, BMinus, Rd, Dsc]),
    ("cor-Dra-3", Rd, QPhi, &[Su, Cp, BMinus, Rd, Dsc]),
    ("cor-Dra-4", D, Tud, &[Sigma, B, D]),
];

/// `(input, output, base)`: when the input lies on a line, output = base.
pub const LINE_RULES: &[(SpectrumKind, SpectrumKind, SpectrumKind)] = &[
    (P, Ld, Tud),
    (Ap, Ld, Tud),
    (BPlus, Ld, Tud),
    (Ld, Ld, Tud),
    (PhiPlus, Lde, Tud),
    (Lde, Lde, Tud),
    (WPlus, BwPlus, Tud),
    (BwPlus, BwPlus, Tud),
    (W, Bw, Tud),
    (Bw, Bw, Tud),
    (Phi, BPhi, Tud),
    (BPhi, BPhi, Tud),
    (Sigma, D, Tud),
    (B, D, Tud),
    (D, D, Tud),
    (Cp, Dsc, Tud),
    (Su, Dsc, Tud),
    (BMinus, Dsc, Tud),
    (Dsc, Dsc, Tud),
    (PhiMinus, Dsce, Tud),
    (Dsce, Dsce, Tud),
    (Su, Rd, QPhi),
    (Cp, Rd, QPhi),
    (BMinus, Rd, QPhi),
    (Rd, Rd, QPhi),
    (Dsc, Rd, QPhi),
    (PhiMinus, Rde, QPhi),
    (Rde, Rde, QPhi),
    (Dsce, Rde, QPhi),
    (WMinus, BwMinus, QPhi),
    (BwMinus, BwMinus, QPhi),
];

/// The full rule set in its default order.
pub fn standard_rules() -> Vec<DerivationRule> {
    let mut rules = Vec::new();
    for &(id, out, base, inputs) in COROLLARIES {
        for &x in inputs {
            rules.push(
                DerivationRule::new(id, out, Expr::Union(vec![Expr::Kind(base), Expr::acc(x)]))
                    .with_dual(Expr::Union(vec![Expr::Kind(base), Expr::int(x)])),
            );
        }
    }
    for &(input, out, base) in LINE_RULES {
        rules.push(DerivationRule::new("line-rule", out, Expr::Kind(base)).guarded(Guard::LineContained(input)));
        rules.push(DerivationRule::new("line-rule", base, Expr::Kind(out)).guarded(Guard::LineContained(input)));
    }
    for k in SpectrumKind::HOLE_FILLED {
        rules.push(DerivationRule::new("one-component-rule", D, Expr::Kind(k)).guarded(Guard::NoHoles(k)));
    }
    for k in SpectrumKind::PERFECT_BOUNDARY {
        rules.push(DerivationRule::new("boundary-acc-rule", Tud, Expr::Kind(k)).guarded(Guard::PerfectBoundary(k)));
    }
    for x in SpectrumKind::ETA {
        for y in SpectrumKind::ETA {
            if x != y {
                rules.push(DerivationRule::new("eta-finite-rule", y, Expr::Kind(x)).guarded(Guard::Finite(x)));
            }
        }
    }
    for (a, b) in [(BPhiPlus, Lde), (BPhiMinus, Rde)] {
        rules.push(DerivationRule::new("alias", a, Expr::Kind(b)));
        rules.push(DerivationRule::new("alias", b, Expr::Kind(a)));
    }
    for k in SpectrumKind::ALL {
        rules.push(DerivationRule::new("squeeze", k, Expr::Squeeze(k)));
    }
    rules
}

fn squeeze(target: SpectrumKind, profile: &SpectraProfile) -> Result<Option<SpectralRegion>> {
    let c = closure();
    let uppers: Vec<&SpectralRegion> = c.above(target).filter_map(|k| profile.get(k)).collect();
    if uppers.is_empty() {
        return Ok(None);
    }
    let mut lowers: Vec<SpectralRegion> = c.below(target).filter_map(|k| profile.get(k).cloned()).collect();
    for &(_, out, _, inputs) in COROLLARIES {
        if out == target {
            lowers.extend(inputs.iter().filter_map(|k| profile.get(*k)).map(accumulation));
        }
    }
    let low = union_all(lowers.iter())?;
    for up in uppers {
        if low.set_eq(up)? {
            return Ok(Some(low));
        }
    }
    Ok(None)
}

/// One assignment made while deriving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub kind: SpectrumKind,
    pub rule: String,
    pub region: SpectralRegion,
}

/// Result of running the rules to a fixed point.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub profile: SpectraProfile,
    pub steps: Vec<DerivationStep>,
    /// Cross-checks the region algebra could not decide.
    pub notices: Vec<String>,
}

/// Derive every spectrum reachable with the standard rule set.
pub fn apply_rules(profile: &SpectraProfile) -> Result<SpectraProfile> {
    Ok(derive_with(profile, &standard_rules())?.profile)
}

pub fn derive(profile: &SpectraProfile) -> Result<Derivation> {
    derive_with(profile, &standard_rules())
}

/// Run `rules` in the given order until nothing changes.
pub fn derive_with(profile: &SpectraProfile, rules: &[DerivationRule]) -> Result<Derivation> {
    run(profile, rules, true)
}

/// Like [`derive`], but without inclusion and membership checks. Useful for
/// locating which derived values go wrong in an inconsistent profile.
pub fn derive_lenient(profile: &SpectraProfile) -> Result<Derivation> {
    run(profile, &standard_rules(), false)
}

fn run(profile: &SpectraProfile, rules: &[DerivationRule], strict: bool) -> Result<Derivation> {
    let mut out = Derivation { profile: profile.clone(), steps: Vec::new(), notices: Vec::new() };
    if strict {
        out.profile.check_inclusions()?;
        out.profile.membership_closure()?;
    }
    loop {
        let mut changed = false;
        for rule in rules {
            let Some(value) = rule.evaluate(&out.profile)? else { continue };
            match rule.dual_agrees(&out.profile, &value)? {
                Some(true) => {}
                Some(false) => {
                    let msg = format!("rule {} for {}: accumulation and interior forms disagree", rule.id, rule.output);
                    if strict {
                        return Err(Error::InconsistentProfile(msg));
                    }
                    if !out.notices.contains(&msg) {
                        out.notices.push(msg);
                    }
                }
                None => {
                    let note = format!("rule {} for {}: interior form undecidable, skipped", rule.id, rule.output);
                    if !out.notices.contains(&note) {
                        out.notices.push(note);
                    }
                }
            }
            if let Some(existing) = out.profile.get(rule.output) {
                if !existing.set_eq(&value)? {
                    let conflict = Error::RuleConflict {
                        kind: rule.output.to_string(),
                        rule: rule.id.clone(),
                        derived: value.to_string(),
                        existing: existing.to_string(),
                    };
                    if strict {
                        return Err(conflict);
                    }
                    let note = conflict.to_string();
                    if !out.notices.contains(&note) {
                        out.notices.push(note);
                    }
                }
                continue;
            }
            let prov = Provenance::Derived { rule: rule.id.clone() };
            if strict {
                out.profile.insert_checked(rule.output, value.clone(), prov)?;
            } else {
                out.profile.insert_raw(rule.output, value.clone(), prov);
            }
            out.steps.push(DerivationStep { kind: rule.output, rule: rule.id.clone(), region: value });
            changed = true;
        }
        if !changed {
            break;
        }
    }
    if strict {
        check_interiors(&out.profile, &mut out.notices)?;
        out.profile.membership_closure()?;
    }
    Ok(out)
}

/// `int σ_W* = int σ_BW*` for the three Weyl pairs.
fn check_interiors(profile: &SpectraProfile, notices: &mut Vec<String>) -> Result<()> {
    for (w, bw) in [(WPlus, BwPlus), (WMinus, BwMinus), (W, Bw)] {
        let (Some(a), Some(b)) = (profile.get(w), profile.get(bw)) else { continue };
        let same = (|| -> Result<bool> {
            let (ia, ib) = (interior(a)?, interior(b)?);
            Ok(ia.contains_plane_set(&ib)? && ib.contains_plane_set(&ia)?)
        })();
        match same {
            Ok(true) => {}
            Ok(false) => {
                return Err(Error::InconsistentProfile(format!("int σ_{w} differs from int σ_{bw}")));
            }
            Err(Error::UnsupportedConfiguration(_)) => {
                notices.push(format!("interior comparison of {w} and {bw} undecidable, skipped"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
