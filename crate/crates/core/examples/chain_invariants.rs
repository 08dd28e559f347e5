//! Kernel/range chain invariants of a matrix with two Jordan blocks at 0
//! (sizes 3 and 1) and an invertible part.

use spectral_chain::chain::chain_report;
use spectral_chain::{ExactMatrix, ExactScalar};

fn main() -> spectral_chain::Result<()> {
    let zero = ExactScalar::from_int(0);
    let m = ExactMatrix::block_diagonal(&[
        ExactMatrix::jordan_block(&zero, 3),
        ExactMatrix::jordan_block(&zero, 1),
        ExactMatrix::jordan_block(&ExactScalar::gaussian(2, -1), 2),
    ])?;
    println!("T =\n{m}");
    let rep = chain_report(&m)?;
    println!("c   = {:?}", rep.c);
    println!("c'  = {:?}", rep.c_prime);
    println!("k   = {:?}", rep.k);
    println!("ascent = {}, descent = {}, Drazin index = {}", rep.ascent, rep.descent, rep.drazin_index);
    println!("uniform descent from n = {}", rep.uniform_descent_degree);
    Ok(())
}
