//! Boundary, interior, accumulation points and pair operations on regions.

use spectral_chain::region::{accumulation, boundary, difference, interior, isolated_points, union, Primitive};
use spectral_chain::scalar::rational;
use spectral_chain::{ExactScalar, SpectralRegion};

fn main() -> spectral_chain::Result<()> {
    let o = ExactScalar::from_int(0);
    let r = SpectralRegion::canonicalize(vec![
        Primitive::disk(o.clone(), rational(1, 1))?,
        Primitive::segment(ExactScalar::from_int(1), ExactScalar::from_int(3))?,
        Primitive::point(ExactScalar::gaussian(0, 2)),
    ])?;
    println!("K       = {r}");
    println!("∂K      = {}", boundary(&r)?);
    let int = interior(&r)?;
    let discs: Vec<String> = int.open.iter().map(|o| format!("{{|z - {}| < {}}}", o.center, o.radius)).collect();
    println!("int K   = {}", discs.join(" ∪ "));
    println!("acc K   = {}", accumulation(&r));
    println!("iso K   = {}", isolated_points(&r));

    let circle = SpectralRegion::from_primitive(Primitive::circle(o.clone(), rational(2, 1))?);
    println!("K ∪ C(0, 2) = {}", union(&r, &circle)?);
    println!("∂K ⊆ K: {}", boundary(&r)?.subset(&r)?);
    let small = SpectralRegion::from_primitive(Primitive::disk(o, rational(1, 2))?);
    let diff = difference(&r, &small)?;
    println!("1/4 ∈ K \\ D(0, 1/2): {}", diff.contains(&ExactScalar::from_fractions(1, 4, 0, 1)));
    println!("3/4 ∈ K \\ D(0, 1/2): {}", diff.contains(&ExactScalar::from_fractions(3, 4, 0, 1)));
    Ok(())
}
