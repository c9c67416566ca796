//! The second algorithm: iterate the anchor m ↦ m − (ωm/ωg)g, then
//! integrate the recombined 1-form.

use std::error::Error;

use algebroid::cli::reference::WORKED_EXAMPLE;
use algebroid::cli::SystemFile;
use algebroid::linearizer::{algorithm_ii, verify_relative_degree, OmegaHints, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sf = SystemFile::parse(WORKED_EXAMPLE)?;
    let sys = sf.system()?;
    let opts = Options::default();

    let trace = algorithm_ii(&sys, &sf.omega_hints(), &opts)?;
    for it in &trace.iterations {
        println!("g{} = {}", it.index, it.g);
        println!("ω{} = {}", it.index, it.omega);
    }
    for (i, nu) in trace.nu.iter().enumerate() {
        println!("ν{i} = {nu}");
    }
    let y = trace.y.expect("phase 2 sets y");
    println!("y = {y}");
    println!("relative degree {}", verify_relative_degree(&y.clone().into(), &sys)?);

    // without hints the heuristic picks coordinate forms
    let unaided = algorithm_ii(&sys, &OmegaHints::none(), &opts)?;
    for it in &unaided.iterations {
        println!("unaided ω{} = {} ({:?})", it.index, it.omega, it.omega_source);
    }
    assert_eq!(unaided.y, Some(y));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
