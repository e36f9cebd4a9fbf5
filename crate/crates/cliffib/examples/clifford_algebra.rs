//! Clifford algebra of a rational quadratic form: products, the central
//! element and structure certificates, including the quotient by the
//! central element at a corank-one form.

use cliffib::clifford::{CliffordAlgebra, Subalgebra};
use cliffib::exact::QMatrix;

fn main() -> cliffib::Result<()> {
    let alg = CliffordAlgebra::new(QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]))?;
    let x = alg.parse_element("1 + 2*e1 - e1e2")?;
    let y = alg.parse_element("e2 + 1/3*e3")?;
    println!("({x}) * ({y}) = {}", alg.multiply(&x, &y));
    println!("e3 * e3 = {}", alg.multiply(&alg.parse_element("e3")?, &alg.parse_element("e3")?));

    let d = alg.central_element();
    println!("central element d = {}, d^2 = {}", d.element, alg.multiply(&d.element, &d.element));
    for which in [Subalgebra::Full, Subalgebra::Even] {
        let r = alg.structure_report(which);
        println!("{which:?}: dim {} certificate {}", r.dimension, r.certificate);
    }

    // corank one: B / B d is a matrix algebra
    let degenerate = CliffordAlgebra::new(QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]))?;
    let q = degenerate.quotient_by_d(Subalgebra::Full)?;
    println!("quotient by d: dim {} radical {} certificate {}", q.dimension, q.radical_dimension, q.certificate);
    Ok(())
}
