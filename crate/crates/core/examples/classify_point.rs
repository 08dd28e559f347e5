//! Pole order and multiplicity of single points for a matrix.

use spectral_chain::chain::classify_point;
use spectral_chain::{ExactMatrix, ExactScalar};

fn main() -> spectral_chain::Result<()> {
    let i = ExactScalar::i();
    let m = ExactMatrix::block_diagonal(&[
        ExactMatrix::jordan_block(&i, 2),
        ExactMatrix::jordan_block(&i, 1),
        ExactMatrix::jordan_block(&ExactScalar::from_int(-1), 1),
    ])?;
    for lambda in [i, ExactScalar::from_int(-1), ExactScalar::from_fractions(1, 2, 0, 1)] {
        let c = classify_point(&m, &lambda)?;
        println!(
            "λ = {lambda}: in spectrum {}, pole order {}, algebraic multiplicity {}",
            c.in_spectrum, c.pole_order, c.algebraic_multiplicity
        );
    }
    Ok(())
}
