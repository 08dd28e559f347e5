//! Rule-based derivation of spectra.
//!
//! A [`SpectraProfile`] maps spectrum names to exact regions. The rule set
//! in [`standard_rules`] is plain data: each rule names its output, a set
//! term over other spectra and an optional guard. [`derive`] runs the rules
//! to a fixed point, recording which rule produced each value, and aborts on
//! any disagreement. The `verify_*` functions check the hull and boundary
//! relations that every valid profile must satisfy.

mod kind;
mod profile;
mod rules;
mod verify;

pub use kind::{InclusionClosure, InclusionSource, SpectrumKind, INCLUSIONS};
pub use profile::{MembershipFact, Provenance, SpectraProfile};
pub use rules::{
    apply_rules, derive, derive_lenient, derive_with, standard_rules, Derivation, DerivationRule, DerivationStep, Expr, Guard,
    COROLLARIES, LINE_RULES,
};
pub use verify::{
    bw_simply_connected_check, meromorphic_check, omega_check, verify_boundary_diagrams, verify_eta_theorem,
    verify_moved_boundary, ArrowCheck, ArrowReport, BwReport, CheckStatus, EtaReport, HoleFilling, OmegaReport,
};
