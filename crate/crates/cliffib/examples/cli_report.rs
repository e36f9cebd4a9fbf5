//! Running the command-line analyses from code and rendering the report.

use cliffib::cli::{render, run, Command, Config};
use cliffib::form::QuadraticForm;

fn main() -> cliffib::Result<()> {
    let form = QuadraticForm::from_json(r#"{"n": 3, "base_vars": [], "gram": [["1","0","0"],["0","1","0"],["0","0","-1"]]}"#)?;
    let config = Config { degree_cap: 4, seed: 7, ..Config::default() };
    let report = run(Command::Koszul, &form, &config)?;
    print!("{}", render(&report, true));
    let bad = QuadraticForm::from_json(r#"{"n": 2, "base_vars": [], "gram": [["1","2"],["3","1"]]}"#).unwrap_err();
    println!("asymmetric input: {bad} (exit code {})", bad.exit_code());
    Ok(())
}
