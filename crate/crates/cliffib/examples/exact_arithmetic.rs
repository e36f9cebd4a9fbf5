//! Exact rationals, sparse polynomials and generic rank by specialization.

use cliffib::exact::rank::DEFAULT_BOUND;
use cliffib::exact::{frac, generic_rank, parse_poly, vars, PolyMatrix, QMatrix};
use rand::SeedableRng;

fn main() -> cliffib::Result<()> {
    let v = vars(&["s", "t"]);
    let p = parse_poly("(s + t)^2 - 2*s*t", &v)?;
    println!("(s + t)^2 - 2st = {p}");
    println!("at (1/2, 3): {}", p.eval(&[frac(1, 2), frac(3, 1)]));

    let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    println!("rank {} det {}", m.rank(), m.determinant());
    println!("kernel {:?}", m.kernel_basis().iter().map(|k| k.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    // [[s, t], [t, s]] has generic rank 2 and drops rank on s = ±t
    let rows = vec![
        vec![parse_poly("s", &v)?, parse_poly("t", &v)?],
        vec![parse_poly("t", &v)?, parse_poly("s", &v)?],
    ];
    let pm = PolyMatrix::from_rows(&v, rows);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let r = generic_rank(&pm, 3, DEFAULT_BOUND, &mut rng);
    println!("generic rank {} (certified full: {})", r.rank, r.full_rank_certified);
    println!("determinant {}", pm.determinant());
    Ok(())
}
