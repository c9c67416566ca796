//! Inverting a polynomial automorphism and checking both round trips.

use std::error::Error;

use algebroid::algebra::VarContext;
use algebroid::geometry::{compose, jacobian_determinant, PolyMap};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = VarContext::numbered("x", 3)?;
    let z = VarContext::numbered("z", 3)?;
    let phi = PolyMap::parse(
        &x,
        &z,
        &["x1 - x1^2 - x2 - x3^2", "x1^2 + x1 + x3^2 + x2", "x3^4 + 2*x2*x3^2 + x3 + x2^2"],
    )?;
    println!("det J = {}", jacobian_determinant(&phi));

    let phi = phi.ensure_inverse()?;
    let inv = phi.inverse().expect("just attached");
    for (i, c) in inv.components().iter().enumerate() {
        println!("x{} = {c}", i + 1);
    }
    assert!(compose(&inv.forget_inverse(), &phi.forget_inverse())?.is_identity());
    assert!(compose(&phi.forget_inverse(), &inv.forget_inverse())?.is_identity());

    let fold = PolyMap::parse(&x, &z, &["x1^2", "x2", "x3"])?;
    match fold.ensure_inverse() {
        Ok(_) => println!("unexpected inverse"),
        Err(e) => println!("fold: {e}"),
    }
    print!("{}", phi.to_text());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
