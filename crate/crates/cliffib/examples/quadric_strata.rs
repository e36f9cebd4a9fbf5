//! Discriminant, corank strata and simple degenerations of a pencil of
//! quadrics, plus orthogonalization and isotropic vectors at a point.

use cliffib::exact::{rat, QMatrix};
use cliffib::form::{find_isotropic_vector, orthogonalize, QuadraticForm};

fn main() -> cliffib::Result<()> {
    let pencil = QuadraticForm::from_json(
        r#"{"n": 4, "base_vars": ["s", "t"],
            "gram": [["s + t", "0", "0", "0"], ["0", "s + 2*t", "0", "0"],
                     ["0", "0", "s + 3*t", "0"], ["0", "0", "0", "s + 4*t"]]}"#,
    )?;
    println!("discriminant: {}", pencil.discriminant());
    let simple = pencil.simple_degenerations();
    println!("simple degenerations: {:?} ({})", simple.verdict, simple.witness);
    let samples = vec![vec![rat(1), rat(0)], vec![rat(-1), rat(1)], vec![rat(-2), rat(1)]];
    let strata = pencil.strata_report(&samples)?;
    println!("{}", serde_json::to_string_pretty(&strata.to_json()).unwrap());

    let g = QMatrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 2]]);
    let o = orthogonalize(&g);
    println!("diagonal {:?}, corank {}", o.diagonal.iter().map(|x| x.to_string()).collect::<Vec<_>>(), o.corank());
    let hyperbolic = QMatrix::from_i64(&[&[1, 0], &[0, -1]]);
    println!("isotropic vector of x^2 - y^2: {:?}", find_isotropic_vector(&hyperbolic).map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    Ok(())
}
