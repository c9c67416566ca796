//! Exact polynomial and rational-function arithmetic over ℚ.

use std::error::Error;

use algebroid::algebra::{gcd, parse_poly, parse_ratfn, rat, Poly, RatFn, VarContext};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = VarContext::numbered("x", 3)?;
    let p = parse_poly("x1^2 - x2^2", &ctx)?;
    let q = parse_poly("x1 + x2", &ctx)?;
    println!("p = {p}, q = {q}");
    println!("p * q = {}", &p * &q);
    println!("gcd(p, q) = {}", gcd(&p, &q));
    assert_eq!(p.div_exact(&q), Some(parse_poly("x1 - x2", &ctx)?));

    // terms come out in graded-lex order with x1 > x2 > x3
    let r = parse_poly("x3 + 3/2*x1*x2 - x2^3", &ctx)?;
    println!("r = {r}, d/dx2 r = {}", r.partial(1));
    println!("r(1, 2, 3) = {}", r.evaluate(&[rat(1, 1), rat(2, 1), rat(3, 1)])?);

    let a = parse_ratfn("(x1^2 - x2^2) / (x1*x2 + x2^2)", &ctx)?;
    println!("a = {a}");
    assert_eq!(a, parse_ratfn("(x1 - x2)/x2", &ctx)?);
    let b = &a * &a.recip()?;
    assert_eq!(b, RatFn::one(&ctx));

    let z = VarContext::new(["u", "v", "w"])?;
    let subs = [parse_poly("u + v", &z)?, parse_poly("u*w", &z)?, Poly::integer(&z, 2)];
    println!("r(u + v, u*w, 2) = {}", r.substitute(&subs)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
