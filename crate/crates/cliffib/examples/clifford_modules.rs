//! Modules B_k over the even Clifford algebra: tensor products, Hom
//! spaces, the isomorphism B_k ⊗ B_l ≅ B_{k+l} and the dimension identity
//! between B_k and the graded pieces of the homogeneous Clifford algebra.

use cliffib::clifford::{CliffordAlgebra, Side};
use cliffib::exact::QMatrix;
use cliffib::modules::{build_bk, convk_identity, hom_over_b0, projectivity_check, tensor_iso_report};
use rand::SeedableRng;

fn main() -> cliffib::Result<()> {
    let alg = CliffordAlgebra::new(QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, 3]]))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for k in -1..=2 {
        let m = build_bk(&alg, k, Side::Right);
        println!("B_{k}: dim {}, action verified {}", m.dim(), m.verify_action(&alg, 10, &mut rng));
    }
    for (k, l) in [(1, 1), (1, -1), (2, -1)] {
        let r = tensor_iso_report(&alg, k, l, &mut rng)?;
        println!("B_{k} ⊗ B_{l}: dim {} (expected {}), iso {} via multiplication {}", r.dim, r.expected_dim, r.isomorphism_found, r.multiplication_is_isomorphism);
    }
    let h = hom_over_b0(&build_bk(&alg, 1, Side::Right), &build_bk(&alg, 0, Side::Right))?;
    println!("Hom(B_1, B_0) has dim {}", h.dim);
    for k in [1, 0, -1, -2] {
        let c = convk_identity(4, k)?;
        println!("k = {k}: dim B_k = {}, graded piece {} holds {}", c.dim_bk, c.dim_graded_piece, c.holds);
    }
    println!("B_1 projective: {:?}", projectivity_check(&alg, &build_bk(&alg, 1, Side::Right))?);
    Ok(())
}
