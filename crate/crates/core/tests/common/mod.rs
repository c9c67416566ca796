//! Seeded generators for randomized algebraic instances.
#![allow(dead_code)]

pub mod suite;

use algebroid::algebra::{rat, Poly, RatFn, VarContext};
use algebroid::algebroid::AlgebroidContext;
use algebroid::geometry::{pair, pushforward, KForm, PolyMap, VecField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn context(rng: &mut TestRng) -> VarContext {
    let n = rng.gen_range(2..=3);
    VarContext::numbered("x", n).unwrap()
}

/// Sparse polynomial in `vars` of degree ≤ `deg` with small integer coefficients.
pub fn poly_in(rng: &mut TestRng, ctx: &VarContext, deg: u32, vars: &[usize]) -> Poly {
    let mut monos = vec![Poly::one(ctx)];
    for _ in 0..deg {
        let next: Vec<Poly> = monos
            .iter()
            .flat_map(|m| vars.iter().map(move |&v| m * &Poly::var(ctx, v)))
            .collect();
        monos.extend(next);
    }
    monos.sort_by_key(|m| m.to_string());
    monos.dedup();
    let mut p = Poly::zero(ctx);
    for m in &monos {
        if rng.gen_bool(0.4) {
            let c = rng.gen_range(-3i64..=3);
            p = &p + &m.scale(&rat(c, 1));
        }
    }
    p
}

pub fn poly(rng: &mut TestRng, ctx: &VarContext, deg: u32) -> Poly {
    let all: Vec<usize> = (0..ctx.dim()).collect();
    poly_in(rng, ctx, deg, &all)
}

pub fn field(rng: &mut TestRng, ctx: &VarContext) -> VecField {
    let comps = (0..ctx.dim()).map(|_| poly(rng, ctx, 2)).collect();
    VecField::from_polys(ctx, comps).unwrap()
}

pub fn one_form(rng: &mut TestRng, ctx: &VarContext) -> KForm {
    let comps = (0..ctx.dim()).map(|_| poly(rng, ctx, 2)).collect();
    KForm::one_form_from_polys(ctx, comps).unwrap()
}

/// `dP` with `deg P ≤ 3`, so the coefficients have degree ≤ 2.
pub fn closed_form(rng: &mut TestRng, ctx: &VarContext) -> KForm {
    KForm::exact(&poly(rng, ctx, 3))
}

pub fn ratfn(rng: &mut TestRng, ctx: &VarContext) -> RatFn {
    let num = poly(rng, ctx, 2);
    let mut den = poly(rng, ctx, 1);
    if den.is_zero() {
        den = Poly::one(ctx);
    }
    RatFn::new(num, den).unwrap()
}

/// Random `g` of degree ≤ 2 with a closed `ω` that does not annihilate it.
pub fn closed_instance(rng: &mut TestRng) -> AlgebroidContext {
    loop {
        let ctx = context(rng);
        let g = field(rng, &ctx);
        let omega = closed_form(rng, &ctx);
        if g.is_zero() || pair(&omega, &g).unwrap().is_zero() {
            continue;
        }
        return AlgebroidContext::new(g, omega).unwrap();
    }
}

/// Unipotent triangular map `x_i + q_i(earlier or later coordinates)` with its inverse.
fn triangular(rng: &mut TestRng, x: &VarContext, z: &VarContext, lower: bool, deg: u32) -> (Vec<Poly>, Vec<Poly>) {
    let n = x.dim();
    let order: Vec<usize> = if lower { (0..n).collect() } else { (0..n).rev().collect() };
    let mut fwd = vec![Poly::zero(x); n];
    let mut inv = vec![Poly::zero(z); n];
    for (pos, &i) in order.iter().enumerate() {
        let before = &order[..pos];
        let q = poly_in(rng, x, deg, before);
        fwd[i] = &Poly::var(x, i) + &q;
        // earlier coordinates already have their inverse components
        let mut vals = inv.clone();
        vals[i] = Poly::zero(z);
        inv[i] = &Poly::var(z, i) - &q.substitute(&vals).unwrap();
    }
    (fwd, inv)
}

/// A straightenable instance: `Φ = U∘L` for a random linear shear `U` and a
/// random quadratic unipotent triangular `L`, `g = (Φ⁻¹)_* ∂z_k` and `ω = dΦ_k`.
pub fn straightened_instance(rng: &mut TestRng) -> AlgebroidContext {
    let x = context(rng);
    let n = x.dim();
    let z = VarContext::numbered("z", n).unwrap();
    let (l, l_inv) = triangular(rng, &x, &z, true, 2);
    let (u, u_inv) = triangular(rng, &x, &z, false, 1);
    let fwd: Vec<Poly> = u.iter().map(|c| c.substitute(&l).unwrap()).collect();
    let back: Vec<Poly> = l_inv.iter().map(|c| c.substitute(&u_inv).unwrap()).collect();
    let phi = PolyMap::new(&x, &z, fwd)
        .unwrap()
        .with_inverse(PolyMap::new(&z, &x, back).unwrap())
        .unwrap();
    let k = rng.gen_range(0..n);
    let g = pushforward(phi.inverse().unwrap(), &VecField::coordinate(&z, k)).unwrap();
    let omega = KForm::exact(phi.component(k));
    AlgebroidContext::new(g, omega).unwrap().with_straightening(phi).unwrap()
}

/// `g = ∂x_n`, `ω = dx_n`, identity straightening.
pub fn trivial_straightened_instance(rng: &mut TestRng) -> AlgebroidContext {
    let x = context(rng);
    let n = x.dim();
    AlgebroidContext::new(VecField::coordinate(&x, n - 1), KForm::coordinate(&x, n - 1))
        .unwrap()
        .with_straightening(PolyMap::identity(&x))
        .unwrap()
}

/// A function constant along `g` for a straightened instance: a polynomial
/// in the other target coordinates, pulled back.
pub fn first_integral(rng: &mut TestRng, alg: &AlgebroidContext) -> RatFn {
    let s = alg.straightening().unwrap();
    let z = s.map().codomain().clone();
    let others: Vec<usize> = (0..z.dim()).filter(|&i| i != s.index()).collect();
    let p = poly_in(rng, &z, 2, &others);
    s.map().pull_function(&p).unwrap().into()
}
