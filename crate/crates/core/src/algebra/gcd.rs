//! Multivariate gcd over the rationals.
//!
//! Sampled univariate images first decide which variables the gcd can involve.
//! The remaining work goes to the heuristic gcd (evaluate at a large integer,
//! recurse, reconstruct ξ-adically) with an exact certificate, and falls back
//! to a primitive pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, Rational};

/// Monic greatest common divisor (1 for coprime inputs, 0 only for `gcd(0, 0)`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ctx());
    }
    if a == b {
        return a.monic();
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }
    let n = a.ctx().dim();
    for v in 0..n {
        if a.depends_on(v) && b.depends_on(v) && image_degree(a, b, v) == Some(0) {
            // the gcd does not involve v
            return gcd(&content(a, v), &content(b, v));
        }
    }
    if let Some(h) = heuristic_gcd(&a.integer_primitive(), &b.integer_primitive()) {
        return h.monic();
    }
    let var = match (0..n).find(|&v| a.depends_on(v) || b.depends_on(v)) {
        Some(v) => v,
        None => return Poly::one(a.ctx()),
    };
    match (a.depends_on(var), b.depends_on(var)) {
        (true, false) => gcd(&content(a, var), b),
        (false, true) => gcd(a, &content(b, var)),
        _ => {
            let ca = content(a, var);
            let cb = content(b, var);
            let c = gcd(&ca, &cb);
            let pa = a.div_exact(&ca).expect("content divides").integer_primitive();
            let pb = b.div_exact(&cb).expect("content divides").integer_primitive();
            let g = primitive_prs(pa, pb, var);
            (&c * &g).monic()
        }
    }
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn integer_content(p: &Poly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

/// Gcd over ℤ of integer polynomials, positive leading coefficient.
fn integer_gcd(a: &Poly, b: &Poly) -> Poly {
    let ctx = a.ctx();
    if a.is_zero() || b.is_zero() {
        let p = if a.is_zero() { b } else { a };
        return if p.is_negative_leading() { -p } else { p.clone() };
    }
    let c = integer_content(a).gcd(&integer_content(b));
    let scale = Rational::from_integer(c);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(ctx, scale);
    }
    let pa = a.integer_primitive();
    let pb = b.integer_primitive();
    let h = heuristic_gcd(&pa, &pb).unwrap_or_else(|| gcd(&pa, &pb).integer_primitive());
    h.scale(&scale)
}

/// Heuristic gcd of primitive integer polynomials. Returns a candidate only
/// when it divides both inputs and the cofactors are certified coprime.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let ctx = a.ctx();
    let n = ctx.dim();
    let var = (0..n).find(|&v| a.depends_on(v) || b.depends_on(v))?;
    let bound = max_norm(a).min(max_norm(b));
    let lead = |p: &Poly| -> BigInt {
        let lc = p.coefficients_in(var).values().next_back().map(max_norm).unwrap_or_else(BigInt::one);
        max_norm(p) / lc.max(BigInt::one())
    };
    let small: BigInt = bound.clone().min(BigInt::from(99) * Roots::sqrt(&bound));
    let mut xi: BigInt = small.max(BigInt::from(2) * lead(a).min(lead(b))) + 2;
    for _ in 0..6 {
        let ea = evaluate_at(a, var, &xi);
        let eb = evaluate_at(b, var, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let h = interpolate(&integer_gcd(&ea, &eb), &xi, var).integer_primitive();
            if let (Some(ca), Some(cb)) = (a.div_exact(&h), b.div_exact(&h)) {
                if coprime(&ca, &cb) {
                    return Some(h);
                }
            }
        }
        xi = &xi * BigInt::from(73794) * Roots::nth_root(&xi, 4) / BigInt::from(27011);
    }
    None
}

/// Symmetric ξ-adic expansion of each integer coefficient into powers of `var`.
fn interpolate(h: &Poly, xi: &BigInt, var: usize) -> Poly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in h.terms() {
        let mut c = c.numer().clone();
        let mut e = m.exponents().to_vec();
        let mut power = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            e[var] = power;
            terms.push((Monomial::from_exponents(e.clone()), Rational::from_integer(d.clone())));
            c = (c - d) / xi;
            power += 1;
        }
    }
    Poly::from_terms(h.ctx(), terms)
}

/// `true` when sampled images show the gcd involves no variable.
fn coprime(a: &Poly, b: &Poly) -> bool {
    if a.is_constant() || b.is_constant() {
        return true;
    }
    (0..a.ctx().dim()).all(|v| !(a.depends_on(v) && b.depends_on(v)) || image_degree(a, b, v) == Some(0))
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

fn rational_mod(c: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = c.numer().mod_floor(&p);
    let d = c.denom().mod_floor(&p);
    let n = u64::try_from(n).expect("reduced below the prime");
    let d = u64::try_from(d).expect("reduced below the prime");
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

/// Coefficients in `var` of `p` modulo the prime, other variables fixed at `point`.
fn dense_image(p: &Poly, var: usize, point: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0u64; p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut v = rational_mod(c)?;
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e > 0 {
                v = mul_mod(v, pow_mod(point[i], e as u64));
            }
        }
        let slot = &mut out[m.exponents()[var] as usize];
        *slot = (*slot + v) % PRIME;
    }
    Some(out)
}

/// Degree in `var` of the gcd of the images of `a` and `b` modulo a prime at
/// a sample point where both leading coefficients survive. This bounds the
/// degree in `var` of the true gcd from above.
fn image_degree(a: &Poly, b: &Poly, var: usize) -> Option<usize> {
    let n = a.ctx().dim();
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15 ^ var as u64;
    for _ in 0..3 {
        let point: Vec<u64> = (0..n)
            .map(|_| {
                seed = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                (seed >> 4) % PRIME
            })
            .collect();
        let (Some(ua), Some(ub)) = (dense_image(a, var, &point), dense_image(b, var, &point)) else {
            continue;
        };
        if ua.last() == Some(&0) || ub.last() == Some(&0) {
            continue;
        }
        return Some(univariate_gcd_degree(ua, ub));
    }
    None
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().expect("nonempty"), inv);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mul_mod(q, c)) % PRIME;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `p` with `var` set to the integer `x`.
fn evaluate_at(p: &Poly, var: usize, x: &BigInt) -> Poly {
    let top = p.degree_in(var) as usize;
    let mut powers = vec![BigInt::one()];
    for k in 0..top {
        let next = &powers[k] * x;
        powers.push(next);
    }
    Poly::from_terms(
        p.ctx(),
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let k = std::mem::replace(&mut e[var], 0) as usize;
            (Monomial::from_exponents(e), c * Rational::from_integer(powers[k].clone()))
        }),
    )
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content(p: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero(p.ctx());
    for coeff in p.coefficients_in(var).into_values() {
        acc = gcd(&acc, &coeff);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(p: &Poly, var: usize) -> Poly {
    let c = content(p, var);
    let p = if c.is_one() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    };
    p.integer_primitive()
}

fn leading_in(p: &Poly, var: usize) -> (u32, Poly) {
    let coeffs = p.coefficients_in(var);
    let (&d, c) = coeffs.iter().next_back().expect("nonzero polynomial");
    (d, c.clone())
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let (db, lb) = leading_in(b, var);
    let n = a.ctx().dim();
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = leading_in(&r, var);
        if dr < db {
            return r;
        }
        let mut shift = vec![0; n];
        shift[var] = dr - db;
        let shifted = b.mul_monomial(&Monomial::from_exponents(shift), &One::one());
        r = &(&lb * &r) - &(&lr * &shifted);
    }
}

fn primitive_prs(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if !r.depends_on(var) {
            return Poly::one(a.ctx());
        }
        a = b;
        b = primitive_part(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarContext};

    fn p(s: &str) -> Poly {
        parse_poly(s, &VarContext::numbered("x", 3).unwrap()).unwrap()
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("x1^2 - 1"), &p("x1^2 - 2*x1 + 1")), p("x1 - 1"));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = p("x1*x2 + x3^2 - 1");
        let a = &f * &p("x1 + x2^2");
        let b = &f * &p("2*x3 - x1*x2");
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime_gives_one() {
        assert!(gcd(&p("x1 + x2"), &p("x1 - x2")).is_one());
        assert!(gcd(&p("3"), &p("x1")).is_one());
    }

    #[test]
    fn content_in_variable() {
        let a = p("x2*x1^2 + x2^2*x1");
        assert_eq!(content(&a, 0), p("x2"));
    }
}
