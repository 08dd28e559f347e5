//! Hull, boundary-diagram and moved-boundary checks on a catalog profile.

use spectral_chain::catalog::catalog_entry;
use spectral_chain::derive::{derive, verify_boundary_diagrams, verify_eta_theorem, verify_moved_boundary};

fn main() -> spectral_chain::Result<()> {
    let entry = catalog_entry("cesaro")?;
    let p = derive(&entry.given)?.profile;

    let eta = verify_eta_theorem(&p)?;
    println!("{}: all hulls equal: {}", entry.name, eta.hulls_equal);
    if let Some(h) = &eta.common_hull {
        println!("common hull {h}");
    }
    for f in &eta.hole_filling {
        println!("  σ_{} fills to D: {}", f.kind, f.passed());
    }

    for (label, rep) in [("boundary diagrams", verify_boundary_diagrams(&p)?), ("moved boundary", verify_moved_boundary(&p)?)] {
        println!("{label}: {} pass, {} skipped, {} fail", rep.count("pass"), rep.count("skipped"), rep.failures().len());
    }
    Ok(())
}
