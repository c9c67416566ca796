//! Lie brackets, exterior derivatives, wedges and exact integration.

use std::error::Error;

use algebroid::algebra::{parse_poly, VarContext};
use algebroid::geometry::{
    exterior_derivative, integrate_exact, is_integrable, lie_bracket, pair, wedge, KForm, VecField,
};

fn field(ctx: &VarContext, comps: &[&str]) -> Result<VecField, Box<dyn Error>> {
    let polys = comps.iter().map(|s| parse_poly(s, ctx)).collect::<Result<Vec<_>, _>>()?;
    Ok(VecField::from_polys(ctx, polys)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = VarContext::numbered("x", 3)?;
    let f = field(&ctx, &["x2 + x3^2", "x3", "0"])?;
    let g = VecField::coordinate(&ctx, 2);
    let ad = lie_bracket(&f, &g)?;
    println!("[f, g] = {ad}");
    println!("[g, [f, g]] = {}", lie_bracket(&g, &ad)?);

    let psi = parse_poly("x3^4 + 2*x2*x3^2 + x3 + x2^2", &ctx)?;
    let omega = KForm::exact(&psi);
    println!("ω = {omega}");
    println!("ω·g = {}", pair(&omega, &field(&ctx, &["0", "-2*x3", "1"])?)?);
    assert!(exterior_derivative(&omega)?.is_zero());
    assert_eq!(integrate_exact(&omega)?, psi);

    // x1 dx2 is integrable in two dimensions but x1 dx2 + dx3 is not in three
    let twisted = KForm::one_form_from_polys(&ctx, vec![parse_poly("0", &ctx)?, parse_poly("x1", &ctx)?, parse_poly("1", &ctx)?])?;
    println!("d(x1 dx2 + dx3) = {}", exterior_derivative(&twisted)?);
    println!("integrable: {}", is_integrable(&twisted));
    println!("dω ∧ ω = {}", wedge(&exterior_derivative(&twisted)?, &twisted)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
