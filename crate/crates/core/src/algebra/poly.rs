use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Monomial, Rational, VarContext};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by graded-lex monomials, so two polynomials
/// with the same value always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: VarContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &VarContext) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.dim()), c);
        }
        p
    }

    pub fn integer(ctx: &VarContext, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ctx: &VarContext, index: usize) -> Self {
        assert!(index < ctx.dim(), "variable index out of range");
        Self::monomial(ctx, Monomial::var(ctx.dim(), index), Rational::one())
    }

    pub fn var_named(ctx: &VarContext, name: &str) -> Result<Self, AlgebraError> {
        ctx.index_of(name)
            .map(|i| Self::var(ctx, i))
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn monomial(ctx: &VarContext, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.dim(), "monomial arity mismatch");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(ctx: &VarContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.dim(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ctx.dim()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term for a graded order with the given variable priority.
    pub fn leading_term_by(&self, priority: &[usize]) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.cmp_graded(b.0, priority))
    }

    /// Scale so that the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        // accumulate over ℤ and divide once per term
        let (l1, a) = self.integer_terms();
        let (l2, b) = other.integer_terms();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len());
        for (m1, c1) in &a {
            for (m2, c2) in &b {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        let den = l1 * l2;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let c = if den.is_one() {
                    Rational::from_integer(c)
                } else {
                    Rational::new(c, den.clone())
                };
                (m, c)
            })
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    fn integer_terms(&self) -> (BigInt, Vec<(&Monomial, BigInt)>) {
        let l = self.denominator_lcm();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = if c.denom() == &l {
                    c.numer().clone()
                } else {
                    c.numer() * (&l / c.denom())
                };
                (m, v)
            })
            .collect();
        (l, terms)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.ctx.dim(), "variable index out of range");
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.terms
                .insert(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<Poly, AlgebraError> {
        let v = self
            .ctx
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.partial(v))
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.ctx.dim()).map(|v| self.partial(v)).collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.ctx.dim() {
            return Err(AlgebraError::PointLength {
                expected: self.ctx.dim(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replace every variable `x_i` by `values[i]`; the result lives in the
    /// context of the substituted polynomials.
    pub fn substitute(&self, values: &[Poly]) -> Result<Poly, AlgebraError> {
        if values.len() != self.ctx.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ctx.dim(),
                got: values.len(),
            });
        }
        let target = match values.first() {
            Some(v) => v.ctx.clone(),
            None => return Err(AlgebraError::EmptyContext),
        };
        for v in values {
            target.ensure_same(&v.ctx)?;
        }
        let mut powers: Vec<Vec<Poly>> = values
            .iter()
            .map(|v| vec![Poly::one(&target), v.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = out.add_unchecked(&t);
        }
        Ok(out)
    }

    /// Same terms read in another context of equal dimension.
    pub fn relabel(&self, ctx: &VarContext) -> Result<Poly, AlgebraError> {
        if ctx.dim() != self.ctx.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ctx.dim(),
                got: ctx.dim(),
            });
        }
        Ok(Poly {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        })
    }

    /// View as a univariate polynomial in `var`: exponent -> coefficient
    /// (coefficients do not involve `var`).
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(&self.ctx))
                .terms
                .insert(m2, c.clone());
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if d.terms.len() == 1 {
            let inv = lc.recip();
            let mut q = Poly::zero(&self.ctx);
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                q.terms.insert(lm.quotient_of(m), c * &inv);
            }
            return Some(q);
        }
        if self.is_zero() {
            return Some(Poly::zero(&self.ctx));
        }
        if (0..self.ctx.dim()).any(|v| d.degree_in(v) > self.degree_in(v)) {
            return None;
        }
        // over ℤ: self = A / la and d = B · g / lb with B primitive, so the
        // quotient A / B is integral when it exists (Gauss)
        let la = self.denominator_lcm();
        let lb = d.denominator_lcm();
        let scaled = |p: &Poly, l: &BigInt| -> BTreeMap<Monomial, BigInt> {
            p.terms.iter().map(|(m, c)| (m.clone(), c.numer() * (l / c.denom()))).collect()
        };
        let mut rem = scaled(self, &la);
        let mut b = scaled(d, &lb);
        let g = b.values().fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        for c in b.values_mut() {
            *c /= &g;
        }
        let lcb = b.get(&lm).expect("leading monomial").clone();
        let mut q: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.last_key_value() {
            if !lm.divides(m) {
                return None;
            }
            let (qc, r) = num_integer::Integer::div_rem(c, &lcb);
            if !r.is_zero() {
                return None;
            }
            let qm = lm.quotient_of(m);
            for (bm, bc) in &b {
                let key = bm.mul(&qm);
                let v = rem.entry(key.clone()).or_default();
                *v -= bc * &qc;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            q.push((qm, qc));
        }
        // self / d = (A / B) · lb / (la · g)
        let factor = Rational::new(lb, la * g);
        Some(Poly {
            ctx: self.ctx.clone(),
            terms: q.into_iter().map(|(m, c)| (m, Rational::from_integer(c) * &factor)).collect(),
        })
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn integer_primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.denominator_lcm();
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| {
            num_integer::Integer::gcd(&acc, &(c.numer() * (&l / c.denom())))
        });
        let mut out = self.scale(&Rational::new(l, g));
        if out.is_negative_leading() {
            out = -&out;
        }
        out
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_term().is_some_and(|(_, c)| c.is_negative())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(ctx: &VarContext, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Canonical text form, parseable by [`super::parse_poly`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", format_monomial(&self.ctx, m))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), format_monomial(&self.ctx, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn ctx3() -> VarContext {
        VarContext::numbered("x", 3).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ctx3()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn additive_inverse() {
        assert!((&p("x1") + &p("-x1")).is_zero());
    }

    #[test]
    fn square_of_first_integral() {
        let a = p("x3^2 + x2");
        assert_eq!(&a * &a, p("x3^4 + 2*x2*x3^2 + x2^2"));
    }

    #[test]
    fn sum_of_second_morphism_components() {
        assert_eq!(&p("x1 + x1^2 + x2") + &p("x1 - x1^2 - x2"), p("2*x1"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = VarContext::numbered("z", 3).unwrap();
        let a = Poly::var(&ctx3(), 0);
        let b = Poly::var(&other, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivatives() {
        let psi = p("x3^4 + 2*x2*x3^2 + x3 + x2^2");
        assert_eq!(psi.partial(1), p("2*x3^2 + 2*x2"));
        assert_eq!(psi.partial(2), p("4*x3^3 + 4*x2*x3 + 1"));
        assert!(p("7/3").partial(0).is_zero());
        assert!(matches!(
            psi.partial_named("y"),
            Err(AlgebraError::UnknownVariable(_))
        ));
    }

    #[test]
    fn evaluation() {
        let y = p("x1 - x1^2 - x2 - x3^2");
        let zero = vec![q(0, 1); 3];
        let ones = vec![q(1, 1); 3];
        assert_eq!(y.evaluate(&zero).unwrap(), q(0, 1));
        assert_eq!(y.evaluate(&ones).unwrap(), q(-2, 1));
        assert_eq!(p("2").evaluate(&[q(5, 7), q(-1, 2), q(3, 1)]).unwrap(), q(2, 1));
        assert!(matches!(
            y.evaluate(&ones[..2]),
            Err(AlgebraError::PointLength { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - 1");
        let b = p("x1 - 1");
        assert_eq!(a.div_exact(&b), Some(p("x1 + 1")));
        assert_eq!(p("x1^2 + 1").div_exact(&b), None);
    }

    #[test]
    fn substitution_composes() {
        let inner = vec![p("x1"), p("x3^2 + x2"), p("x3")];
        let outer = p("x2^2 + x3");
        assert_eq!(outer.substitute(&inner).unwrap(), p("x3^4 + 2*x2*x3^2 + x2^2 + x3"));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("x1 - x1^2 - x2 - x3^2").to_string(), "-x1^2 - x3^2 + x1 - x2");
        assert_eq!(p("1/2*x3^4 - 3").to_string(), "1/2*x3^4 - 3");
        assert_eq!(p("0").to_string(), "0");
    }
}
