use serde_json::{json, Value};

use super::kind::SpectrumKind::{self, *};
use super::profile::{Provenance, SpectraProfile};
use crate::error::{Error, Result};
use crate::json::region_value;
use crate::region::{
    accumulation, boundary, check_pocetna, connected_hull, intersection, union, PocetnaReport, SpectralRegion,
};

/// Outcome of one checked relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Some referenced spectrum is missing.
    Skipped(Vec<SpectrumKind>),
    /// The region algebra cannot decide the relation.
    Undecided(String),
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped(_) => "skipped",
            CheckStatus::Undecided(_) => "undecided",
        }
    }
}

/// A checked relation `left ⊆ right` or `left = right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowCheck {
    pub name: String,
    pub status: CheckStatus,
    pub left: Option<SpectralRegion>,
    pub right: Option<SpectralRegion>,
}

impl ArrowCheck {
    fn value(&self) -> Value {
        let mut v = json!({ "name": self.name, "status": self.status.label() });
        if let CheckStatus::Skipped(missing) = &self.status {
            v["missing"] = json!(missing.iter().map(|k| k.name()).collect::<Vec<_>>());
        }
        if let CheckStatus::Undecided(why) = &self.status {
            v["reason"] = json!(why);
        }
        if let Some(l) = &self.left {
            v["left"] = region_value(l);
        }
        if let Some(r) = &self.right {
            v["right"] = region_value(r);
        }
        v
    }
}

/// A list of checked relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowReport {
    pub arrows: Vec<ArrowCheck>,
}

impl ArrowReport {
    /// No arrow failed and none was undecided.
    pub fn passed(&self) -> bool {
        self.arrows.iter().all(|a| matches!(a.status, CheckStatus::Pass | CheckStatus::Skipped(_)))
    }

    pub fn failures(&self) -> Vec<&ArrowCheck> {
        self.arrows.iter().filter(|a| a.status == CheckStatus::Fail).collect()
    }

    pub fn count(&self, label: &str) -> usize {
        self.arrows.iter().filter(|a| a.status.label() == label).count()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "passed": self.passed(),
            "pass": self.count("pass"),
            "fail": self.count("fail"),
            "skipped": self.count("skipped"),
            "undecided": self.count("undecided"),
            "arrows": self.arrows.iter().map(ArrowCheck::value).collect::<Vec<_>>(),
        })
    }
}

/// Set term used by the boundary checks.
#[derive(Clone, Copy, Debug)]
enum Term {
    K(SpectrumKind),
    Bd(SpectrumKind),
    BdAcc(SpectrumKind),
    BdAnd(SpectrumKind, SpectrumKind),
    BdAndAcc(SpectrumKind, SpectrumKind),
}

impl Term {
    fn kinds(self) -> Vec<SpectrumKind> {
        match self {
            Term::K(a) | Term::Bd(a) | Term::BdAcc(a) => vec![a],
            Term::BdAnd(a, b) | Term::BdAndAcc(a, b) => vec![a, b],
        }
    }

    fn name(self) -> String {
        match self {
            Term::K(a) => format!("{a}"),
            Term::Bd(a) => format!("∂{a}"),
            Term::BdAcc(a) => format!("∂{a} ∩ acc {a}"),
            Term::BdAnd(a, b) => format!("∂{a} ∩ {b}"),
            Term::BdAndAcc(a, b) => format!("∂{a} ∩ acc {b}"),
        }
    }

    fn eval(self, p: &SpectraProfile) -> Result<SpectralRegion> {
        let get = |k: SpectrumKind| p.get(k).ok_or_else(|| Error::MissingKinds(k.to_string()));
        match self {
            Term::K(a) => Ok(get(a)?.clone()),
            Term::Bd(a) => boundary(get(a)?),
            Term::BdAcc(a) => intersection(&boundary(get(a)?)?, &accumulation(get(a)?)),
            Term::BdAnd(a, b) => intersection(&boundary(get(a)?)?, get(b)?),
            Term::BdAndAcc(a, b) => intersection(&boundary(get(a)?)?, &accumulation(get(b)?)),
        }
    }
}

fn check(p: &SpectraProfile, name: String, left: Term, right: Term, equal: bool) -> Result<ArrowCheck> {
    let mut missing: Vec<SpectrumKind> =
        left.kinds().into_iter().chain(right.kinds()).filter(|k| !p.is_assigned(*k)).collect();
    missing.dedup();
    if !missing.is_empty() {
        return Ok(ArrowCheck { name, status: CheckStatus::Skipped(missing), left: None, right: None });
    }
    let sides = left.eval(p).and_then(|l| Ok((l, right.eval(p)?)));
    let (l, r) = match sides {
        Ok(s) => s,
        Err(Error::UnsupportedConfiguration(why)) => {
            return Ok(ArrowCheck { name, status: CheckStatus::Undecided(why), left: None, right: None })
        }
        Err(e) => return Err(e),
    };
    let verdict = if equal { l.set_eq(&r) } else { l.subset(&r) };
    let status = match verdict {
        Ok(true) => CheckStatus::Pass,
        Ok(false) => CheckStatus::Fail,
        Err(Error::UnsupportedConfiguration(why)) => CheckStatus::Undecided(why),
        Err(e) => return Err(e),
    };
    Ok(ArrowCheck { name, status, left: Some(l), right: Some(r) })
}

/// Chain `t0 ⊆ t1 ⊆ …`, with `true` marking an equality link.
fn chain(p: &SpectraProfile, label: &str, links: &[(Term, bool)], last: Term) -> Result<Vec<ArrowCheck>> {
    let mut terms: Vec<Term> = links.iter().map(|l| l.0).collect();
    terms.push(last);
    let mut out = Vec::new();
    for (i, &(t, eq)) in links.iter().enumerate() {
        let next = terms[i + 1];
        let rel = if eq { "=" } else { "⊆" };
        let name = format!("{label}: {} {rel} {}", t.name(), next.name());
        out.push(check(p, name, t, next, eq)?);
    }
    Ok(out)
}

const TUD_DIAGRAM: &[(SpectrumKind, SpectrumKind)] = &[
    (Ld, BwPlus),
    (BwPlus, Lde),
    (D, Ld),
    (Bw, BwPlus),
    (BPhi, Lde),
    (Lde, Tud),
    (D, Bw),
    (Bw, BPhi),
    (BPhi, Tud),
    (D, Dsc),
    (BPhi, Dsce),
    (Dsce, Tud),
    (Dsc, Dsce),
];

const QPHI_DIAGRAM: &[(SpectrumKind, SpectrumKind)] = &[
    (Ld, BwPlus),
    (BwPlus, Lde),
    (D, Ld),
    (Bw, BwPlus),
    (BPhi, Lde),
    (Lde, QPhi),
    (D, Bw),
    (Bw, BPhi),
    (BPhi, QPhi),
    (D, Rd),
    (Bw, BwMinus),
    (BPhi, Rde),
    (Rde, QPhi),
    (Rd, BwMinus),
    (BwMinus, Rde),
];

const KATO_DIAGRAM: &[(SpectrumKind, SpectrumKind)] = &[(D, Bw), (Bw, BPhi), (BPhi, Kt)];

const INTO_TUD: &[SpectrumKind] = &[BwPlus, Bw, Lde, Dsce, BPhi, Ld, Dsc, D];
const INTO_QPHI: &[SpectrumKind] = &[BwMinus, Rd, Rde];

/// Check every boundary inclusion of the three hull diagrams and of the
/// two boundary clauses.
pub fn verify_boundary_diagrams(p: &SpectraProfile) -> Result<ArrowReport> {
    let mut arrows = Vec::new();
    let diagrams: [(&str, &[(SpectrumKind, SpectrumKind)]); 3] =
        [("tud-diagram", TUD_DIAGRAM), ("qphi-diagram", QPHI_DIAGRAM), ("kato-diagram", KATO_DIAGRAM)];
    for (label, edges) in diagrams {
        for &(a, b) in edges {
            arrows.push(check(p, format!("{label}: ∂{a} ⊆ ∂{b}"), Term::Bd(a), Term::Bd(b), false)?);
        }
    }
    for &a in INTO_TUD {
        arrows.push(check(p, format!("boundary-tud: ∂{a} ⊆ ∂TUD"), Term::Bd(a), Term::Bd(Tud), false)?);
    }
    for &a in INTO_QPHI {
        arrows.push(check(p, format!("boundary-qphi: ∂{a} ⊆ ∂qPhi"), Term::Bd(a), Term::Bd(QPhi), false)?);
    }
    Ok(ArrowReport { arrows })
}

/// Check the intersection chains locating boundary points of the base
/// spectra inside the TUD and quasi-Fredholm spectra.
pub fn verify_moved_boundary(p: &SpectraProfile) -> Result<ArrowReport> {
    use Term::*;
    let f = false;
    let t = true;
    let chains: Vec<(&str, Vec<(Term, bool)>, Term)> = vec![
        ("weyl-1", vec![(BdAcc(WPlus), f), (BdAnd(WPlus, BwPlus), f)], Bd(Tud)),
        ("weyl-2", vec![(BdAcc(WMinus), f)], Bd(Tud)),
        ("weyl-3", vec![(BdAcc(BwMinus), f), (BdAndAcc(BwMinus, WMinus), f)], Bd(Tud)),
        ("weyl-4", vec![(BdAcc(W), f), (BdAnd(W, Bw), f)], Bd(Tud)),
        ("fredholm-1", vec![(BdAcc(PhiPlus), f), (BdAnd(PhiPlus, Lde), f)], Bd(Tud)),
        ("fredholm-2", vec![(BdAcc(PhiMinus), f), (BdAnd(PhiMinus, Dsce), f)], Bd(Tud)),
        (
            "fredholm-3",
            vec![(BdAcc(Rde), f), (BdAndAcc(Rde, PhiMinus), f), (BdAnd(Rde, Dsce), t), (BdAnd(Rde, Tud), f)],
            Bd(Tud),
        ),
        ("fredholm-4", vec![(BdAnd(PhiMinus, Rde), t), (BdAnd(PhiMinus, QPhi), f)], Bd(QPhi)),
        ("fredholm-5", vec![(BdAcc(Phi), f), (BdAnd(Phi, BPhi), f)], Bd(Tud)),
        ("drazin-1", vec![(BdAcc(Ap), f), (BdAnd(Ap, Ld), f)], Bd(Tud)),
        ("drazin-2", vec![(BdAcc(BPlus), f), (BdAnd(BPlus, Ld), f)], Bd(Tud)),
        ("drazin-3", vec![(BdAcc(P), f), (BdAnd(P, Ld), f)], K(Tud)),
        ("drazin-4", vec![(BdAcc(Su), f), (BdAnd(Su, Dsc), f)], Bd(Tud)),
        ("drazin-5", vec![(BdAcc(Cp), f), (BdAnd(Cp, Dsc), f)], K(Tud)),
        ("drazin-6", vec![(BdAcc(BMinus), f), (BdAnd(BMinus, Dsc), f)], Bd(Tud)),
        ("drazin-7", vec![(BdAcc(Rd), f), (BdAnd(Rd, Dsc), t), (BdAnd(Rd, Tud), f)], Bd(Tud)),
        ("drazin-8", vec![(BdAnd(Su, Rd), f)], Bd(QPhi)),
        ("drazin-9", vec![(BdAnd(Cp, Rd), t), (BdAnd(Cp, QPhi), f)], K(QPhi)),
        ("drazin-10", vec![(BdAcc(Sigma), f), (BdAnd(Sigma, D), f)], Bd(Tud)),
        ("drazin-11", vec![(BdAcc(B), f), (BdAnd(B, D), f)], Bd(Tud)),
    ];
    let mut arrows = Vec::new();
    for (label, links, last) in chains {
        arrows.extend(chain(p, label, &links, last)?);
    }
    Ok(ArrowReport { arrows })
}

/// Per-kind result of the hole-filling check against `σ_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleFilling {
    pub kind: SpectrumKind,
    pub report: std::result::Result<PocetnaReport, String>,
}

impl HoleFilling {
    pub fn passed(&self) -> bool {
        matches!(&self.report, Ok(r) if r.all_pass())
    }
}

/// Outcome of the common-hull check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub hulls: Vec<(SpectrumKind, SpectralRegion)>,
    pub hulls_equal: bool,
    pub common_hull: Option<SpectralRegion>,
    /// Whether the common hull equals the hull of `σ`, when `σ` is known.
    pub matches_spectrum_hull: Option<bool>,
    pub hole_filling: Vec<HoleFilling>,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.hulls_equal && self.hole_filling.iter().all(HoleFilling::passed)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "passed": self.passed(),
            "hulls_equal": self.hulls_equal,
            "common_hull": self.common_hull.as_ref().map(region_value),
            "matches_spectrum_hull": self.matches_spectrum_hull,
            "hulls": self.hulls.iter().map(|(k, r)| json!({ "kind": k.name(), "hull": region_value(r) })).collect::<Vec<_>>(),
            "hole_filling": self.hole_filling.iter().map(|h| match &h.report {
                Ok(r) => json!({ "kind": h.kind.name(), "passed": r.all_pass(), "failures": r.failures() }),
                Err(e) => json!({ "kind": h.kind.name(), "passed": false, "error": e }),
            }).collect::<Vec<_>>(),
        })
    }
}

/// All fourteen hulls agree, and `σ_D` is each spectrum with some holes filled.
pub fn verify_eta_theorem(p: &SpectraProfile) -> Result<EtaReport> {
    let missing: Vec<&str> = SpectrumKind::ETA.iter().filter(|k| !p.is_assigned(**k)).map(|k| k.name()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingKinds(missing.join(", ")));
    }
    let mut hulls = Vec::new();
    for k in SpectrumKind::ETA {
        hulls.push((k, connected_hull(p.get(k).expect("checked above"))?.hull));
    }
    let first = hulls[0].1.clone();
    let mut hulls_equal = true;
    for (_, h) in &hulls[1..] {
        hulls_equal &= h.set_eq(&first)?;
    }
    let matches_spectrum_hull = match p.get(Sigma) {
        Some(s) => Some(connected_hull(s)?.hull.set_eq(&first)?),
        None => None,
    };
    let d = p.get(D).expect("checked above");
    let mut hole_filling = Vec::new();
    for k in SpectrumKind::HOLE_FILLED {
        if k == Tud {
            continue;
        }
        let report = match check_pocetna(p.get(k).expect("checked above"), d) {
            Ok(r) => Ok(r),
            Err(e @ (Error::PreconditionViolated(_) | Error::UnsupportedConfiguration(_))) => Err(e.to_string()),
            Err(e) => return Err(e),
        };
        hole_filling.push(HoleFilling { kind: k, report });
    }
    Ok(EtaReport {
        hulls,
        hulls_equal,
        common_hull: hulls_equal.then_some(first),
        matches_spectrum_hull,
        hole_filling,
    })
}

/// Whether the operator is meromorphic, read off `σ_TUD`, `σ_BPhi` and `σ_D`.
pub fn meromorphic_check(p: &SpectraProfile) -> Result<bool> {
    let zero = SpectralRegion::from_points([crate::scalar::ExactScalar::from_int(0)]);
    let mut verdicts = Vec::new();
    for k in [Tud, BPhi, D] {
        if let Some(r) = p.get(k) {
            verdicts.push((k, r.subset(&zero)?));
        }
    }
    let Some(&(_, first)) = verdicts.first() else {
        return Err(Error::MissingKinds("TUD, BPhi, D".into()));
    };
    if let Some((k, _)) = verdicts.iter().find(|(_, v)| *v != first) {
        return Err(Error::InconsistentProfile(format!(
            "σ_{k} and σ_{} disagree on meromorphy",
            verdicts[0].0
        )));
    }
    Ok(first)
}

/// Outcome of the simply-connected check on `σ_BW`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwReport {
    pub applicable: bool,
    pub holes: usize,
    pub profile: SpectraProfile,
}

impl BwReport {
    pub fn to_value(&self) -> Value {
        json!({
            "applicable": self.applicable,
            "holes": self.holes,
            "D": self.profile.get(D).map(region_value),
        })
    }
}

/// When `σ_BW` has no holes, set `σ_D = σ_BW`.
pub fn bw_simply_connected_check(p: &SpectraProfile) -> Result<BwReport> {
    let bw = p.get(Bw).ok_or_else(|| Error::MissingKinds("BW".into()))?;
    let holes = connected_hull(bw)?.holes.len();
    let mut profile = p.clone();
    let applicable = holes == 0;
    if applicable {
        profile.insert_checked(D, bw.clone(), Provenance::Derived { rule: "one-component-rule".into() })?;
    }
    Ok(BwReport { applicable, holes, profile })
}

/// Outcome of the pole-set check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    /// `σ ⊆ ησ_TUD ∪ E`, the unbounded component carrying only poles.
    pub outside_hull_only_poles: bool,
    /// Every hole of `σ_TUD` is inside `σ_D` or misses it.
    pub holes_all_or_nothing: bool,
    /// Holes missing `σ_D` carry no spectrum besides poles.
    pub free_holes_only_poles: bool,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.outside_hull_only_poles && self.holes_all_or_nothing && self.free_holes_only_poles
    }
}

/// Components of the TUD resolvent set. `Ok(None)` when the profile lacks
/// the pole set `E`.
pub fn omega_check(p: &SpectraProfile) -> Result<Option<OmegaReport>> {
    let Some(e) = &p.poles else { return Ok(None) };
    let (Some(tud), Some(d), Some(sigma)) = (p.get(Tud), p.get(D), p.get(Sigma)) else {
        return Err(Error::MissingKinds("TUD, D, sigma".into()));
    };
    let hull = connected_hull(tud)?;
    let outside_hull_only_poles = sigma.subset(&union(&hull.hull, e)?)?;
    let holes_all_or_nothing = match check_pocetna(tud, d) {
        Ok(r) => r.holes_all_or_nothing,
        Err(Error::PreconditionViolated(_)) => false,
        Err(e) => return Err(e),
    };
    let mut free_holes_only_poles = true;
    for hole in &hull.holes {
        let Some(w) = hole.witness() else { continue };
        if !d.contains(&w) {
            free_holes_only_poles &= !sigma.contains(&w) || e.contains(&w);
        }
    }
    Ok(Some(OmegaReport { outside_hull_only_poles, holes_all_or_nothing, free_holes_only_poles }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::apply_rules;
    use crate::region::Primitive;
    use crate::scalar::{rational, ExactScalar};

    fn circle() -> SpectralRegion {
        SpectralRegion::from_primitive(Primitive::circle(ExactScalar::from_int(0), rational(1, 1)).unwrap())
    }

    fn disk() -> SpectralRegion {
        SpectralRegion::from_primitive(Primitive::disk(ExactScalar::from_int(0), rational(1, 1)).unwrap())
    }

    fn shift_u() -> SpectraProfile {
        let given = SpectraProfile::new("U")
            .with(Sigma, disk())
            .and_then(|p| p.with(Ap, circle()))
            .and_then(|p| p.with(Su, disk()))
            .and_then(|p| p.with(Phi, circle()))
            .and_then(|p| p.with(Tud, circle()))
            .and_then(|p| p.with(WMinus, disk()))
            .and_then(|p| p.with(W, disk()))
            .unwrap();
        apply_rules(&given).unwrap()
    }

    #[test]
    fn eta_on_forward_shift() {
        let rep = verify_eta_theorem(&shift_u()).unwrap();
        assert!(rep.passed(), "{:?}", rep.to_value());
        assert_eq!(rep.common_hull, Some(disk()));
        assert_eq!(rep.matches_spectrum_hull, Some(true));
    }

    #[test]
    fn eta_needs_all_kinds() {
        let p = SpectraProfile::new("x").with(Tud, circle()).unwrap();
        assert_eq!(verify_eta_theorem(&p).unwrap_err().code(), "MissingKinds");
    }

    #[test]
    fn diagrams_on_forward_shift() {
        let u = shift_u();
        let rep = verify_boundary_diagrams(&u).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.count("skipped"), 0);
        assert!(verify_moved_boundary(&u).unwrap().passed());
    }

    #[test]
    fn single_kind_skips_everything() {
        let p = SpectraProfile::new("x").with(Sigma, disk()).unwrap();
        let rep = verify_boundary_diagrams(&p).unwrap();
        assert_eq!(rep.count("skipped"), rep.arrows.len());
        let empty = SpectraProfile::new("e");
        assert!(verify_moved_boundary(&empty).unwrap().passed());
    }

    #[test]
    fn corrupted_profile_names_the_arrow() {
        let mut u = shift_u();
        u.insert_unchecked(Tud, SpectralRegion::from_points([ExactScalar::from_int(0)]));
        let rep = verify_boundary_diagrams(&u).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures().iter().any(|a| a.name == "tud-diagram: ∂LDe ⊆ ∂TUD"));
    }

    #[test]
    fn meromorphic() {
        let zero = SpectralRegion::from_points([ExactScalar::from_int(0)]);
        let q = SpectraProfile::new("Q").with(Tud, zero).unwrap();
        assert!(meromorphic_check(&q).unwrap());
        assert!(!meromorphic_check(&shift_u()).unwrap());
        let n = SpectraProfile::new("N").with(Tud, SpectralRegion::empty()).unwrap();
        assert!(meromorphic_check(&n).unwrap());
        assert_eq!(meromorphic_check(&SpectraProfile::new("x")).unwrap_err().code(), "MissingKinds");
    }

    #[test]
    fn bw_check() {
        let p = SpectraProfile::new("x").with(Bw, disk()).unwrap();
        let rep = bw_simply_connected_check(&p).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.profile.get(D), Some(&disk()));
        let c = SpectraProfile::new("x").with(Bw, circle()).unwrap();
        let rep = bw_simply_connected_check(&c).unwrap();
        assert!(!rep.applicable);
        assert_eq!(rep.holes, 1);
        let pts = SpectralRegion::from_points([ExactScalar::from_int(3), ExactScalar::from_int(1)]);
        let f = SpectraProfile::new("x").with(Bw, pts.clone()).unwrap();
        assert_eq!(bw_simply_connected_check(&f).unwrap().profile.get(D), Some(&pts));
    }

    #[test]
    fn omega_on_forward_shift() {
        let mut u = shift_u();
        assert_eq!(omega_check(&u).unwrap(), None);
        u.poles = Some(SpectralRegion::empty());
        assert!(omega_check(&u).unwrap().unwrap().passed());
    }
}
