//! Randomized identity checks shared by the property tests and the
//! acceptance run. Each property returns the number of instances checked or
//! the first counterexample.
#![allow(dead_code)]

use algebroid::algebroid::{
    check_antisymmetry, check_homomorphism, check_jacobi, check_leibniz, check_representative_independence,
    crosscheck_isomorphism, Anchor, Verdict,
};
use algebroid::geometry::{exterior_derivative, integrate_exact, lie_bracket, pair, KForm};

use std::time::{Duration, Instant};

use super::*;

pub type Outcome = Result<usize, String>;

fn verdict(v: Verdict, what: &str, i: usize) -> Result<(), String> {
    match v {
        Verdict::Holds => Ok(()),
        Verdict::Fails { residual } => Err(format!("{what}, instance {i}: residual {residual}")),
    }
}

fn err<E: std::fmt::Display>(i: usize) -> impl Fn(E) -> String {
    move |e| format!("instance {i}: {e}")
}

pub fn antisymmetry(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = closed_instance(&mut r);
        let (a, b) = (field(&mut r, alg.ctx()), field(&mut r, alg.ctx()));
        verdict(check_antisymmetry(&alg, &a, &b).map_err(err(i))?, "antisymmetry", i)?;
    }
    Ok(count)
}

pub fn representative_independence(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = closed_instance(&mut r);
        let (a, b) = (field(&mut r, alg.ctx()), field(&mut r, alg.ctx()));
        let (p, q) = (ratfn(&mut r, alg.ctx()), ratfn(&mut r, alg.ctx()));
        verdict(
            check_representative_independence(&alg, &a, &b, &p, &q).map_err(err(i))?,
            "representative independence",
            i,
        )?;
    }
    Ok(count)
}

pub fn leibniz(anchor: Anchor, count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let (alg, alpha) = match anchor {
            Anchor::II => {
                let alg = closed_instance(&mut r);
                let alpha = ratfn(&mut r, alg.ctx());
                (alg, alpha)
            }
            Anchor::I => {
                let alg = straightened_instance(&mut r);
                let alpha = first_integral(&mut r, &alg);
                (alg, alpha)
            }
        };
        let (a, b) = (field(&mut r, alg.ctx()), field(&mut r, alg.ctx()));
        verdict(check_leibniz(&alg, anchor, &a, &b, &alpha).map_err(err(i))?, "Leibniz", i)?;
    }
    Ok(count)
}

pub fn homomorphism(anchor: Anchor, count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = match anchor {
            Anchor::II => closed_instance(&mut r),
            Anchor::I => straightened_instance(&mut r),
        };
        let (a, b) = (field(&mut r, alg.ctx()), field(&mut r, alg.ctx()));
        verdict(check_homomorphism(&alg, anchor, &a, &b).map_err(err(i))?, "homomorphism", i)?;
    }
    Ok(count)
}

pub fn jacobi(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = closed_instance(&mut r);
        let ms: Vec<_> = (0..3).map(|_| field(&mut r, alg.ctx())).collect();
        verdict(check_jacobi(&alg, &ms[0], &ms[1], &ms[2]).map_err(err(i))?, "Jacobi", i)?;
    }
    Ok(count)
}

pub fn anchor_ii_annihilated(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = closed_instance(&mut r);
        let m = field(&mut r, alg.ctx());
        let a = alg.anchor_ii(&m).map_err(err(i))?;
        let p = pair(alg.omega(), &a).map_err(err(i))?;
        if !p.is_zero() {
            return Err(format!("instance {i}: ω·an(m) = {p}"));
        }
    }
    Ok(count)
}

pub fn anchor_ii_idempotent(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = closed_instance(&mut r);
        let m = field(&mut r, alg.ctx());
        let once = alg.anchor_ii(&m).map_err(err(i))?;
        let twice = alg.anchor_ii(&once).map_err(err(i))?;
        if once != twice {
            return Err(format!("instance {i}: {once} vs {twice}"));
        }
    }
    Ok(count)
}

/// `dω(f1,f2) = f1(ωf2) − f2(ωf1) − ω([f1,f2])` for arbitrary 1-forms.
pub fn cartan(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let ctx = context(&mut r);
        let omega = one_form(&mut r, &ctx);
        let (a, b) = (field(&mut r, &ctx), field(&mut r, &ctx));
        let lhs = exterior_derivative(&omega).and_then(|d| d.evaluate_2(&a, &b)).map_err(err(i))?;
        let fb = a.apply(&pair(&omega, &b).map_err(err(i))?).map_err(err(i))?;
        let fa = b.apply(&pair(&omega, &a).map_err(err(i))?).map_err(err(i))?;
        let br = pair(&omega, &lie_bracket(&a, &b).map_err(err(i))?).map_err(err(i))?;
        let rhs = &(&fb - &fa) - &br;
        if lhs != rhs {
            return Err(format!("instance {i}: {lhs} vs {rhs}"));
        }
    }
    Ok(count)
}

/// The reduced identity `f1(ωf2) − f2(ωf1) = ω([f1,f2])`, which needs `dω = 0`.
/// Returns how many of `count` arbitrary (generally non-closed) 1-forms
/// violate it.
pub fn reduced_cartan_failures(count: usize, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut failures = 0;
    for i in 0..count {
        let ctx = context(&mut r);
        let omega = one_form(&mut r, &ctx);
        let (a, b) = (field(&mut r, &ctx), field(&mut r, &ctx));
        let fb = a.apply(&pair(&omega, &b).map_err(err(i))?).map_err(err(i))?;
        let fa = b.apply(&pair(&omega, &a).map_err(err(i))?).map_err(err(i))?;
        let br = pair(&omega, &lie_bracket(&a, &b).map_err(err(i))?).map_err(err(i))?;
        if &fb - &fa != br {
            failures += 1;
        }
    }
    Ok(failures)
}

pub fn d_squared(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let ctx = context(&mut r);
        let p = poly(&mut r, &ctx, 3);
        let omega = one_form(&mut r, &ctx);
        for w in [KForm::exact(&p), omega] {
            let dd = exterior_derivative(&w).and_then(|d| exterior_derivative(&d)).map_err(err(i))?;
            if !dd.is_zero() {
                return Err(format!("instance {i}: d(d({w})) = {dd}"));
            }
        }
    }
    Ok(count)
}

pub fn integrate_exact_inverts_d(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let ctx = context(&mut r);
        let nu = closed_form(&mut r, &ctx);
        let p = integrate_exact(&nu).map_err(err(i))?;
        if KForm::exact(&p) != nu {
            return Err(format!("instance {i}: d({p}) ≠ {nu}"));
        }
    }
    Ok(count)
}

/// `an_I(⟨m1,m2⟩) = [an_I(m1), an_I(m2)]` on `g = ∂x_n`, `ω = dx_n`, `Φ = id`.
pub fn isomorphism_trivial(count: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    for i in 0..count {
        let alg = trivial_straightened_instance(&mut r);
        let (a, b) = (field(&mut r, alg.ctx()), field(&mut r, alg.ctx()));
        verdict(check_homomorphism(&alg, Anchor::I, &a, &b).map_err(err(i))?, "homomorphism", i)?;
        verdict(crosscheck_isomorphism(&alg, &a, &b).map_err(err(i))?, "isomorphism", i)?;
    }
    Ok(count)
}

pub const SEED: u64 = 0x5eed_a16e;

/// Every property at `count` instances, in a fixed order, with the time each
/// took.
pub fn all(count: usize) -> Vec<(&'static str, Outcome, Duration)> {
    type Job<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let jobs: [Job; 12] = [
        ("bracket antisymmetry", Box::new(|| antisymmetry(count, SEED))),
        ("representative independence", Box::new(|| representative_independence(count, SEED + 1))),
        ("Leibniz, second anchor", Box::new(|| leibniz(Anchor::II, count, SEED + 2))),
        ("Leibniz, first anchor", Box::new(|| leibniz(Anchor::I, count, SEED + 3))),
        ("homomorphism, second anchor", Box::new(|| homomorphism(Anchor::II, count, SEED + 4))),
        ("homomorphism, first anchor", Box::new(|| homomorphism(Anchor::I, count, SEED + 5))),
        ("Jacobi cyclic sum", Box::new(|| jacobi(count, SEED + 6))),
        ("ω annihilates the second anchor", Box::new(|| anchor_ii_annihilated(count, SEED + 7))),
        ("second anchor idempotent", Box::new(|| anchor_ii_idempotent(count, SEED + 8))),
        ("Cartan formula", Box::new(|| cartan(count, SEED + 9))),
        ("d∘d = 0", Box::new(|| d_squared(count, SEED + 10))),
        ("d(integrate_exact(ν)) = ν", Box::new(|| integrate_exact_inverts_d(count, SEED + 11))),
    ];
    jobs.into_iter()
        .map(|(name, job)| {
            let started = Instant::now();
            let outcome = job();
            (name, outcome, started.elapsed())
        })
        .collect()
}
