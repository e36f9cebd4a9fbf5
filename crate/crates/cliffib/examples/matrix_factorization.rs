//! Clifford matrix factorization (φ, ψ) of a quadratic form, cokernel
//! ranks on the quadric and the determinant identity.

use cliffib::clifford::Side;
use cliffib::exact::rat;
use cliffib::factorization::{periodicity_check, MatrixFactorization};
use cliffib::form::QuadraticForm;
use rand::SeedableRng;

fn main() -> cliffib::Result<()> {
    let f = QuadraticForm::diagonal(&[rat(1), rat(-1), rat(1)]);
    let mf = MatrixFactorization::build(&f, Side::Left)?;
    println!("q = {}", mf.quadric());
    for i in 0..mf.size() {
        let row: Vec<String> = (0..mf.size()).map(|j| mf.phi[(i, j)].to_string()).collect();
        println!("phi[{i}] = {row:?}");
    }
    println!("psi·phi = phi·psi = q·I: {}", mf.identity_holds());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    println!("det identity: {:?}", mf.determinant_identity(3, 100, &mut rng));
    println!("cokernel rank at (1, 1, 0): {}", mf.cokernel_rank_at(&[rat(1), rat(1), rat(0)])?);
    let r = periodicity_check(&f, &[vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(1), rat(1)]])?;
    println!("periodicity holds: {}", r.holds);
    println!("off the quadric: {}", mf.cokernel_rank_at(&[rat(1), rat(0), rat(0)]).unwrap_err());
    Ok(())
}
