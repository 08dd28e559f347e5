//! Drazin inverse and core-nilpotent split of a singular matrix.

use spectral_chain::chain::drazin;
use spectral_chain::ExactMatrix;

fn main() -> spectral_chain::Result<()> {
    let m = ExactMatrix::from_int_rows(&[&[2, 1, 0], &[0, 0, 1], &[0, 0, 0]])?;
    let d = drazin(&m)?;
    println!("T =\n{m}");
    println!("index {}", d.index);
    println!("T^D =\n{}", d.inverse);
    println!("core part =\n{}", d.core_part);
    println!("nilpotent part =\n{}", d.nilpotent_part);
    assert!(d.satisfies_axioms(&m));
    println!("DTD = D, TD = DT, T^(k+1)D = T^k: ok");
    Ok(())
}
