//! Shapes of semiorthogonal decompositions, the pushforward table and the
//! central-reduction certificates for a pencil of quadrics.

use cliffib::exact::rat;
use cliffib::form::QuadraticForm;
use cliffib::sod::{central_reduction_report, fibration_sod, intersection_sod, pushforward_table, Base};

fn main() -> cliffib::Result<()> {
    let r = fibration_sod(4, &Base::Point { corank: 0 })?;
    println!("{}\n  exceptional objects: {:?}", r.theorem, r.expected_exceptional_count);
    for (n, k) in [(4, 2), (6, 2), (5, 3)] {
        let r = intersection_sod(n, k)?;
        let kinds: Vec<String> = r.components.iter().map(|c| c.kind.to_string()).collect();
        println!("n = {n}, r = {k}: {} {kinds:?} cover {}", r.theorem, r.extras["cover"]);
    }
    for row in pushforward_table(4, -4..=3) {
        println!("p_*O({}) = {} (rank {}, degree {})", row.m, row.description, row.rank, row.degree);
    }
    let pencil = QuadraticForm::from_json(
        r#"{"n": 4, "base_vars": ["s", "t"],
            "gram": [["s + t", "0", "0", "0"], ["0", "s + 2*t", "0", "0"],
                     ["0", "0", "s + 3*t", "0"], ["0", "0", "0", "s + 4*t"]]}"#,
    )?;
    let c = central_reduction_report(&pencil, &[vec![rat(1), rat(0)], vec![rat(-1), rat(1)]])?;
    println!("{}", serde_json::to_string_pretty(&c).unwrap());
    Ok(())
}
