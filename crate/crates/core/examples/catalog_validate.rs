//! Reproduce every catalog entry from its base spectra.

use spectral_chain::catalog::{catalog_entries, run_catalog_validation};

fn main() {
    for e in catalog_entries() {
        println!("{:<20} {}", e.name, e.description);
    }
    let rep = run_catalog_validation();
    for e in &rep.entries {
        let derived = e.derived.as_ref().map_or(0, |p| p.len());
        println!("{:<20} {} ({derived} spectra)", e.name, if e.passed() { "ok" } else { "FAILED" });
        for m in &e.mismatches {
            println!("    {} [{}]", m.message, m.rule);
        }
    }
    std::process::exit(if rep.passed() { 0 } else { 1 });
}
