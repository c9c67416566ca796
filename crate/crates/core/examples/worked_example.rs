//! The bundled three-state system: both algorithms side by side with the
//! expected intermediate values.

use std::error::Error;

use algebroid::cli;
use algebroid::linearizer::seed_from_env;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = cli::example(seed_from_env());
    print!("{}", report.to_text());
    if report.exit_code != cli::EXIT_SUCCESS {
        return Err("bundled example does not match its expected values".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
