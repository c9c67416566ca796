use std::fmt;

use crate::algebra::{gcd, AlgebraError, Poly, RatFn, Rational, VarContext};

use super::GeometryError;

/// Vector field `Σ mᵢ ∂/∂xᵢ` with rational-function components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VecField {
    ctx: VarContext,
    comps: Vec<RatFn>,
}

impl VecField {
    pub fn new(ctx: &VarContext, comps: Vec<RatFn>) -> Result<Self, GeometryError> {
        if comps.len() != ctx.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: ctx.dim(),
                got: comps.len(),
            }
            .into());
        }
        for c in &comps {
            ctx.ensure_same(c.ctx())?;
        }
        Ok(VecField {
            ctx: ctx.clone(),
            comps,
        })
    }

    pub fn from_polys(ctx: &VarContext, comps: Vec<Poly>) -> Result<Self, GeometryError> {
        Self::new(ctx, comps.into_iter().map(RatFn::from).collect())
    }

    pub fn zero(ctx: &VarContext) -> Self {
        VecField {
            ctx: ctx.clone(),
            comps: vec![RatFn::zero(ctx); ctx.dim()],
        }
    }

    /// `∂/∂x_index`.
    pub fn coordinate(ctx: &VarContext, index: usize) -> Self {
        let mut v = Self::zero(ctx);
        v.comps[index] = RatFn::one(ctx);
        v
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RatFn] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RatFn {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<RatFn> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFn::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().all(RatFn::is_polynomial)
    }

    pub fn with_component(&self, i: usize, value: RatFn) -> Self {
        let mut v = self.clone();
        v.comps[i] = value;
        v
    }

    fn zip(&self, other: &VecField, op: impl Fn(&RatFn, &RatFn) -> RatFn) -> Result<Self, GeometryError> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(VecField {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &VecField) -> Result<Self, GeometryError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &VecField) -> Result<Self, GeometryError> {
        self.zip(other, |a, b| a - b)
    }

    /// Multiplies every component by the function `a`.
    pub fn scale(&self, a: &RatFn) -> Result<Self, GeometryError> {
        self.ctx.ensure_same(a.ctx())?;
        Ok(VecField {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|c| c * a).collect(),
        })
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        VecField {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Components over a common denominator: `m = P / D`.
    pub fn common_denominator(&self) -> (Vec<Poly>, Poly) {
        let mut den = Poly::one(&self.ctx);
        for c in &self.comps {
            if c.denom().is_one() || c.denom() == &den {
                continue;
            }
            let g = gcd(&den, c.denom());
            den = &den * &c.denom().div_exact(&g).expect("gcd divides");
        }
        let nums = self
            .comps
            .iter()
            .map(|c| {
                if c.denom() == &den {
                    c.numer().clone()
                } else {
                    c.numer() * &den.div_exact(c.denom()).expect("common multiple")
                }
            })
            .collect();
        (nums, den)
    }

    /// Directional derivative `L_m a = Σ mᵢ ∂a/∂xᵢ`.
    pub fn apply(&self, a: &RatFn) -> Result<RatFn, GeometryError> {
        self.ctx.ensure_same(a.ctx())?;
        let (p, d) = self.common_denominator();
        let (n, e) = (a.numer(), a.denom());
        let mut num = Poly::zero(&self.ctx);
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            let term = if e.is_one() {
                n.partial(i)
            } else {
                &(&n.partial(i) * e) - &(n * &e.partial(i))
            };
            num = &num + &(pi * &term);
        }
        Ok(RatFn::from_factored(num, vec![(d, 1), (e.clone(), 2)]))
    }

    /// Substitutes polynomials for the variables in every component.
    pub fn substitute(&self, values: &[Poly]) -> Result<VecField, GeometryError> {
        let target = values
            .first()
            .map(|v| v.ctx().clone())
            .ok_or(AlgebraError::EmptyContext)?;
        let comps = self
            .comps
            .iter()
            .map(|c| c.substitute(values))
            .collect::<Result<Vec<_>, _>>()?;
        VecField::new(&target, comps)
    }

    /// Same components read in another context of equal dimension.
    pub fn relabel(&self, ctx: &VarContext) -> Result<VecField, GeometryError> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.relabel(ctx))
            .collect::<Result<Vec<_>, _>>()?;
        VecField::new(ctx, comps)
    }
}

/// `[m1, m2] = J(m2)·m1 − J(m1)·m2`.
pub fn lie_bracket(m1: &VecField, m2: &VecField) -> Result<VecField, GeometryError> {
    m1.ctx.ensure_same(&m2.ctx)?;
    let (p, d1) = m1.common_denominator();
    let (q, d2) = m2.common_denominator();
    // L_p f for a polynomial f, times the matching derivative of the denominator
    let along = |v: &[Poly], f: &Poly| {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(&m1.ctx), |acc, (j, c)| &acc + &(c * &f.partial(j)))
    };
    let (p_d2, q_d1) = (along(&p, &d2), along(&q, &d1));
    let comps = (0..m1.dim())
        .map(|i| {
            // D1·(D2 L_P Q_i − Q_i L_P D2) − D2·(D1 L_Q P_i − P_i L_Q D1), over D1² D2²
            let a = &(&d2 * &along(&p, &q[i])) - &(&q[i] * &p_d2);
            let b = &(&d1 * &along(&q, &p[i])) - &(&p[i] * &q_d1);
            let num = &(&d1 * &a) - &(&d2 * &b);
            RatFn::from_factored(num, vec![(d1.clone(), 2), (d2.clone(), 2)])
        })
        .collect();
    Ok(VecField {
        ctx: m1.ctx.clone(),
        comps,
    })
}

impl std::ops::Add for &VecField {
    type Output = VecField;
    fn add(self, rhs: &VecField) -> VecField {
        self.checked_add(rhs).expect("vector field context mismatch")
    }
}

impl std::ops::Sub for &VecField {
    type Output = VecField;
    fn sub(self, rhs: &VecField) -> VecField {
        self.checked_sub(rhs).expect("vector field context mismatch")
    }
}

impl std::ops::Neg for &VecField {
    type Output = VecField;
    fn neg(self) -> VecField {
        VecField {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for VecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for VecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VecField{self}")
    }
}
