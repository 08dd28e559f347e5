//! Characteristic polynomial, exact eigenvalues and the point spectrum.

use spectral_chain::eigen::{characteristic_polynomial, classify_spectrum, point_spectrum_region};
use spectral_chain::ExactMatrix;

fn main() -> spectral_chain::Result<()> {
    // Rotation by 90° composed with scaling by 2, next to a 2x2 Jordan block at 3.
    let m = ExactMatrix::from_int_rows(&[&[0, -2, 0, 0], &[2, 0, 0, 0], &[0, 0, 3, 1], &[0, 0, 0, 3]])?;
    let p = characteristic_polynomial(&m)?;
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    println!("char poly coefficients (low to high): {}", coeffs.join(", "));
    let (list, points) = classify_spectrum(&m)?;
    println!("splits over Q(i): {}", list.complete);
    for (e, c) in list.eigenvalues.iter().zip(&points) {
        println!("  {} (multiplicity {}, pole order {})", e.value, e.multiplicity, c.pole_order);
    }
    println!("σ(T) = {}", point_spectrum_region(&m)?);
    Ok(())
}
