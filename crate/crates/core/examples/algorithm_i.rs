//! The first algorithm: straighten g with a polynomial automorphism, project,
//! repeat, then read the output off the composed map.

use std::error::Error;

use algebroid::cli::reference::WORKED_EXAMPLE;
use algebroid::cli::SystemFile;
use algebroid::linearizer::{algorithm_i, MapHints, OmegaHints, Options};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let sf = SystemFile::parse(WORKED_EXAMPLE)?;
    let sys = sf.system()?;
    let opts = Options::default();

    let hinted = algorithm_i(&sys, &sf.map_hints(), &OmegaHints::none(), &opts)?;
    for it in &hinted.iterations {
        let map = it.map.as_ref().expect("first algorithm records maps");
        println!("step {}: f = {}, g = {}", it.index, it.f, it.g);
        println!("  Φ = {:?}", map.components().iter().map(|c| c.to_string()).collect::<Vec<_>>());
        println!("  g straightened onto coordinate {}", it.straightened.unwrap_or(0) + 1);
    }
    println!("y = {}", hinted.y.as_ref().expect("set on success"));

    // the same output from maps built out of first integrals
    let built = algorithm_i(&sys, &MapHints::none(), &sf.omega_hints(), &opts)?;
    for it in &built.iterations {
        let map = it.map.as_ref().expect("first algorithm records maps");
        println!("built Φ{} = {:?}", it.index, map.components().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    assert_eq!(built.y, hinted.y);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
