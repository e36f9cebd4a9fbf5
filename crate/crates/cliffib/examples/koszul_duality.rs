//! The quadric algebra, its quadratic dual (the homogeneous Clifford
//! algebra) and verified Koszul complexes, with a non-Koszul algebra for
//! contrast.

use cliffib::duality::{build_a_sigma, koszul_verify, QuadraticPresentation, DEFAULT_AMBIENT_CAP};
use cliffib::exact::{rat, QMatrix};

fn main() -> cliffib::Result<()> {
    let p = build_a_sigma(&QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]))?;
    println!("relations: {:?}", p.relation_strings("x"));
    println!("dual relations: {:?}", p.dual().relation_strings("y"));
    let r = koszul_verify(&p, 8, DEFAULT_AMBIENT_CAP)?;
    println!("dims {:?}\ndual dims {:?}", r.dims, r.dual_dims);
    println!("residual {:?}, complexes exact {}, Koszul up to degree 8: {}", r.hilbert_residual, r.complexes_exact, r.koszul_up_to_degree);

    // x1 x3 = x2 x1 and x3 x2 = 0: the Hilbert series test fails in degree 4
    let q = QuadraticPresentation::new(3, vec![vec![(2, rat(1)), (3, rat(-1))], vec![(7, rat(1))]])?;
    let r = koszul_verify(&q, 5, DEFAULT_AMBIENT_CAP)?;
    println!("non-Koszul: dims {:?} dual {:?} residual {:?} exact {}", r.dims, r.dual_dims, r.hilbert_residual, r.complexes_exact);
    Ok(())
}
