//! Connected hulls: filling the bounded holes of the complement.

use spectral_chain::region::{check_pocetna, connected_hull, Primitive};
use spectral_chain::scalar::rational;
use spectral_chain::{ExactScalar, SpectralRegion};

fn main() -> spectral_chain::Result<()> {
    let o = ExactScalar::from_int(0);
    // Unit circle with an inner point and an outer point.
    let h = SpectralRegion::canonicalize(vec![
        Primitive::circle(o.clone(), rational(1, 1))?,
        Primitive::point(ExactScalar::from_fractions(1, 2, 0, 1)),
        Primitive::point(ExactScalar::from_int(4)),
    ])?;
    let rep = connected_hull(&h)?;
    println!("H       = {h}");
    println!("ηH      = {}", rep.hull);
    println!("components of H: {}", rep.component_count);
    for hole in &rep.holes {
        println!("hole inside |z - {}| < {}, minus {}", hole.center, hole.radius, hole.excluded);
    }

    // Filling the hole gives a K with ∂K ⊆ H ⊆ K.
    let k = SpectralRegion::canonicalize(vec![
        Primitive::disk(o, rational(1, 1))?,
        Primitive::point(ExactScalar::from_int(4)),
    ])?;
    let check = check_pocetna(&h, &k)?;
    println!("K       = {k}");
    println!("nesting and hole-filling checks pass: {}", check.all_pass());
    Ok(())
}
