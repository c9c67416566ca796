//! The bracket modulo g, both anchors and the algebroid axioms checked
//! symbolically on a concrete instance.

use std::error::Error;

use algebroid::algebra::{parse_poly, parse_ratfn, VarContext};
use algebroid::algebroid::{
    check_antisymmetry, check_homomorphism, check_jacobi, check_leibniz, crosscheck_isomorphism, AlgebroidContext,
    Anchor,
};
use algebroid::geometry::{pair, KForm, PolyMap, VecField};

fn field(ctx: &VarContext, comps: &[&str]) -> Result<VecField, Box<dyn Error>> {
    let polys = comps.iter().map(|s| parse_poly(s, ctx)).collect::<Result<Vec<_>, _>>()?;
    Ok(VecField::from_polys(ctx, polys)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let x = VarContext::numbered("x", 3)?;
    let g = field(&x, &["0", "-2*x3", "1"])?;
    let omega = KForm::exact(&parse_poly("x3^4 + 2*x2*x3^2 + x3 + x2^2", &x)?);
    let z = VarContext::numbered("z", 3)?;
    let phi = PolyMap::parse(&x, &z, &["x1", "x3^2 + x2", "x3^4 + 2*x2*x3^2 + x3 + x2^2"])?;
    let alg = AlgebroidContext::new(g, omega)?.with_straightening(phi)?;

    let m1 = field(&x, &["x2", "x1*x3", "1"])?;
    let m2 = field(&x, &["x3^2", "0", "x1 + x2"])?;
    let m3 = field(&x, &["1", "x2", "x1"])?;
    println!("<m1, m2> = {}", alg.bracket(&m1, &m2)?);
    println!("an_II(m1) = {}", alg.anchor_ii(&m1)?);
    println!("ω·an_II(m1) = {}", pair(alg.omega(), &alg.anchor_ii(&m1)?)?);
    println!("an_I(m1) = {}", alg.anchor_i(&m1)?);

    let alpha = parse_ratfn("x1*x2 + x3", &x)?;
    println!("antisymmetry: {}", check_antisymmetry(&alg, &m1, &m2)?.holds());
    println!("Leibniz (II): {}", check_leibniz(&alg, Anchor::II, &m1, &m2, &alpha)?.holds());
    println!("homomorphism (I): {}", check_homomorphism(&alg, Anchor::I, &m1, &m2)?.holds());
    println!("homomorphism (II): {}", check_homomorphism(&alg, Anchor::II, &m1, &m2)?.holds());
    println!("Jacobi: {}", check_jacobi(&alg, &m1, &m2, &m3)?.holds());
    println!("an_I = Φ_* ∘ an_II: {}", crosscheck_isomorphism(&alg, &m1, &m2)?.holds());

    // the first anchor's Leibniz rule needs L_g α = 0; x1 is a first integral of g
    let first_integral = parse_ratfn("x1^2 + x3^2 + x2", &x)?;
    println!("Leibniz (I): {}", check_leibniz(&alg, Anchor::I, &m1, &m2, &first_integral)?.holds());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
