//! Accessibility rank and involutivity of g, ad_f g, ….

use std::error::Error;

use algebroid::algebra::{parse_poly, VarContext};
use algebroid::geometry::VecField;
use algebroid::linearizer::{classical_check, seed_from_env, ControlSystem};

fn system(ctx: &VarContext, f: &[&str], g: &[&str]) -> Result<ControlSystem, Box<dyn Error>> {
    let v = |c: &[&str]| -> Result<VecField, Box<dyn Error>> {
        let polys = c.iter().map(|s| parse_poly(s, ctx)).collect::<Result<Vec<_>, _>>()?;
        Ok(VecField::from_polys(ctx, polys)?)
    };
    Ok(ControlSystem::new(v(f)?, v(g)?)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = VarContext::numbered("x", 3)?;
    let seed = seed_from_env();
    let cases = [
        ("chain of integrators", ["x2", "x3", "0"], ["0", "0", "1"]),
        ("non-involutive", ["x2 + x3^2", "x3", "0"], ["0", "0", "1"]),
        ("drift-free", ["0", "0", "0"], ["0", "0", "1"]),
        ("state-dependent input", ["x2", "x3", "0"], ["0", "x1", "1"]),
    ];
    for (name, f, g) in cases {
        let d = classical_check(&system(&x, &f, &g)?, seed);
        println!(
            "{name}: rank {} certified {} involutivity {:?} linearizable {}",
            d.rank,
            d.rank_certified,
            d.involutivity,
            d.linearizable()
        );
        for w in &d.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
