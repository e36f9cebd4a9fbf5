//! Truncation modules R^k and the resolution of the diagonal for the
//! quadric algebra of a smooth quadric surface.

use cliffib::duality::{build_a_sigma, diagonal_resolution_check, truncation_module, DEFAULT_AMBIENT_CAP};
use cliffib::exact::QMatrix;

fn main() -> cliffib::Result<()> {
    let p = build_a_sigma(&QMatrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]))?;
    for k in 0..=3 {
        let t = truncation_module(&p, k, 6, DEFAULT_AMBIENT_CAP)?;
        println!("R^{k}: dims {:?}, both resolutions exact: {}", t.dims, t.all_exact);
    }
    let d = diagonal_resolution_check(&p, (3, 3), DEFAULT_AMBIENT_CAP)?;
    for t in &d.terms {
        println!("({}, {}): dims {:?} exact {}", t.p, t.q, t.dims, t.exact);
    }
    println!("exact in every bidegree up to (3, 3): {}", d.all_exact);
    Ok(())
}
