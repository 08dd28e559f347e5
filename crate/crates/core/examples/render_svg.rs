//! Write an SVG picture of a region to stdout.

use spectral_chain::region::Primitive;
use spectral_chain::scalar::rational;
use spectral_chain::svg::render_svg;
use spectral_chain::{ExactScalar, SpectralRegion};

fn main() -> spectral_chain::Result<()> {
    let r = SpectralRegion::canonicalize(vec![
        Primitive::disk(ExactScalar::from_int(0), rational(1, 1))?,
        Primitive::circle(ExactScalar::from_int(3), rational(1, 2))?,
        Primitive::segment(ExactScalar::gaussian(-2, -1), ExactScalar::gaussian(-2, 1))?,
        Primitive::point(ExactScalar::gaussian(1, 2)),
    ])?;
    print!("{}", render_svg(&r));
    Ok(())
}
