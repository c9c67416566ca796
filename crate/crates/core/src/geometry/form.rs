use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{AlgebraError, Monomial, Poly, RatFn, Rational, VarContext};

use super::{GeometryError, VecField};

/// Largest supported form degree.
pub const MAX_DEGREE: usize = 3;

/// Differential k-form `Σ c_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    ctx: VarContext,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, RatFn>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeat.
fn canonical_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

impl KForm {
    pub fn zero(ctx: &VarContext, degree: usize) -> Result<Self, GeometryError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GeometryError::DegreeOverflow(degree));
        }
        Ok(KForm {
            ctx: ctx.clone(),
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a form from `(indices, coefficient)` pairs in any order;
    /// permuted tuples contribute with their sign, repeated ones vanish.
    pub fn new<I>(ctx: &VarContext, degree: usize, entries: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = (Vec<usize>, RatFn)>,
    {
        let mut out = Self::zero(ctx, degree)?;
        for (mut idx, c) in entries {
            if idx.len() != degree {
                return Err(GeometryError::DegreeMismatch {
                    expected: degree,
                    got: idx.len(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= ctx.dim()) {
                return Err(AlgebraError::DimensionMismatch {
                    expected: ctx.dim(),
                    got: bad + 1,
                }
                .into());
            }
            ctx.ensure_same(c.ctx())?;
            if let Some(neg) = canonical_sign(&mut idx) {
                out.add_entry(idx, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    fn add_entry(&mut self, idx: Vec<usize>, c: RatFn) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&idx) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.coeffs.insert(idx, s);
                }
            }
            None => {
                self.coeffs.insert(idx, c);
            }
        }
    }

    /// `Σ cᵢ dxᵢ`.
    pub fn one_form(ctx: &VarContext, comps: Vec<RatFn>) -> Result<Self, GeometryError> {
        if comps.len() != ctx.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: ctx.dim(),
                got: comps.len(),
            }
            .into());
        }
        Self::new(ctx, 1, comps.into_iter().enumerate().map(|(i, c)| (vec![i], c)))
    }

    pub fn one_form_from_polys(ctx: &VarContext, comps: Vec<Poly>) -> Result<Self, GeometryError> {
        Self::one_form(ctx, comps.into_iter().map(RatFn::from).collect())
    }

    /// `dx_index`.
    pub fn coordinate(ctx: &VarContext, index: usize) -> Self {
        let mut f = Self::zero(ctx, 1).expect("degree 1");
        f.coeffs.insert(vec![index], RatFn::one(ctx));
        f
    }

    /// The differential `dp`.
    pub fn exact(p: &Poly) -> Self {
        Self::one_form_from_polys(p.ctx(), p.gradient()).expect("gradient has n entries")
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients keyed by increasing index tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &RatFn)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, idx: &[usize]) -> RatFn {
        let mut key = idx.to_vec();
        match canonical_sign(&mut key) {
            None => RatFn::zero(&self.ctx),
            Some(neg) => match self.coeffs.get(&key) {
                Some(c) if neg => -c,
                Some(c) => c.clone(),
                None => RatFn::zero(&self.ctx),
            },
        }
    }

    /// Coefficients `(ω₁, …, ωₙ)` of a 1-form.
    pub fn components(&self) -> Result<Vec<RatFn>, GeometryError> {
        self.expect_degree(1)?;
        Ok((0..self.ctx.dim()).map(|i| self.coefficient(&[i])).collect())
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.values().all(RatFn::is_polynomial)
    }

    pub(crate) fn expect_degree(&self, k: usize) -> Result<(), GeometryError> {
        if self.degree == k {
            Ok(())
        } else {
            Err(GeometryError::DegreeMismatch {
                expected: k,
                got: self.degree,
            })
        }
    }

    pub fn checked_add(&self, other: &KForm) -> Result<KForm, GeometryError> {
        self.ctx.ensure_same(&other.ctx)?;
        other.expect_degree(self.degree)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_entry(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &KForm) -> Result<KForm, GeometryError> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, a: &RatFn) -> Result<KForm, GeometryError> {
        self.ctx.ensure_same(a.ctx())?;
        let mut out = KForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            coeffs: BTreeMap::new(),
        };
        for (k, v) in &self.coeffs {
            out.add_entry(k.clone(), v * a);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, c: &Rational) -> KForm {
        if c.is_zero() {
            return KForm::zero(&self.ctx, self.degree).expect("valid degree");
        }
        KForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect(),
        }
    }

    /// Evaluates a 2-form on a pair of vector fields.
    pub fn evaluate_2(&self, a: &VecField, b: &VecField) -> Result<RatFn, GeometryError> {
        self.expect_degree(2)?;
        self.ctx.ensure_same(a.ctx())?;
        self.ctx.ensure_same(b.ctx())?;
        let mut acc = RatFn::zero(&self.ctx);
        for (k, c) in &self.coeffs {
            let (i, j) = (k[0], k[1]);
            let minor = &(a.component(i) * b.component(j)) - &(a.component(j) * b.component(i));
            acc = &acc + &(c * &minor);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for the variables in every coefficient.
    pub fn substitute(&self, values: &[Poly]) -> Result<KForm, GeometryError> {
        let target = values
            .first()
            .map(|v| v.ctx().clone())
            .ok_or(AlgebraError::EmptyContext)?;
        let mut out = KForm::zero(&target, self.degree)?;
        for (k, v) in &self.coeffs {
            out.add_entry(k.clone(), v.substitute(values)?);
        }
        Ok(out)
    }

    pub fn relabel(&self, ctx: &VarContext) -> Result<KForm, GeometryError> {
        let mut out = KForm::zero(ctx, self.degree)?;
        for (k, v) in &self.coeffs {
            out.add_entry(k.clone(), v.relabel(ctx)?);
        }
        Ok(out)
    }
}

/// `⟨ω, m⟩ = Σ ωᵢ mᵢ`.
pub fn pair(omega: &KForm, m: &VecField) -> Result<RatFn, GeometryError> {
    omega.expect_degree(1)?;
    omega.ctx.ensure_same(m.ctx())?;
    let mut acc = RatFn::zero(&omega.ctx);
    for (k, c) in &omega.coeffs {
        let mi = m.component(k[0]);
        if !mi.is_zero() {
            acc = &acc + &(c * mi);
        }
    }
    Ok(acc)
}

pub fn exterior_derivative(omega: &KForm) -> Result<KForm, GeometryError> {
    if omega.degree + 1 > MAX_DEGREE {
        return Err(GeometryError::DegreeOverflow(omega.degree + 1));
    }
    let mut out = KForm::zero(&omega.ctx, omega.degree + 1)?;
    for (k, c) in &omega.coeffs {
        for j in 0..omega.ctx.dim() {
            if k.contains(&j) {
                continue;
            }
            let d = c.partial(j);
            if d.is_zero() {
                continue;
            }
            let mut idx = Vec::with_capacity(k.len() + 1);
            idx.push(j);
            idx.extend_from_slice(k);
            if let Some(neg) = canonical_sign(&mut idx) {
                out.add_entry(idx, if neg { -d } else { d });
            }
        }
    }
    Ok(out)
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm, GeometryError> {
    a.ctx.ensure_same(&b.ctx)?;
    let degree = a.degree + b.degree;
    if degree > MAX_DEGREE {
        return Err(GeometryError::DegreeOverflow(degree));
    }
    let mut out = KForm::zero(&a.ctx, degree)?;
    for (ka, ca) in &a.coeffs {
        for (kb, cb) in &b.coeffs {
            let mut idx = ka.clone();
            idx.extend_from_slice(kb);
            if let Some(neg) = canonical_sign(&mut idx) {
                let c = ca * cb;
                out.add_entry(idx, if neg { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Wedge of a 2-form with a 1-form.
pub fn wedge_21(a: &KForm, b: &KForm) -> Result<KForm, GeometryError> {
    a.expect_degree(2)?;
    b.expect_degree(1)?;
    wedge(a, b)
}

/// `dω ∧ ω = 0`; false for anything but a 1-form.
pub fn is_integrable(omega: &KForm) -> bool {
    if omega.degree != 1 {
        return false;
    }
    let d = exterior_derivative(omega).expect("degree 1");
    d.is_zero() || wedge_21(&d, omega).expect("degrees 2 and 1").is_zero()
}

pub fn is_closed(omega: &KForm) -> bool {
    omega.degree < MAX_DEGREE && exterior_derivative(omega).is_ok_and(|d| d.is_zero())
}

/// Potential `P` of a closed polynomial 1-form with `dP = ν` and `P(0) = 0`,
/// via the radial homotopy formula applied term by term.
pub fn integrate_exact(nu: &KForm) -> Result<Poly, GeometryError> {
    nu.expect_degree(1)?;
    if !nu.is_polynomial() {
        return Err(GeometryError::NonPolynomial);
    }
    let d = exterior_derivative(nu)?;
    if !d.is_zero() {
        return Err(GeometryError::NotClosed(Box::new(d)));
    }
    let n = nu.ctx.dim();
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (k, c) in &nu.coeffs {
        let i = k[0];
        for (m, a) in c.numer().terms() {
            let deg = m.degree() + 1;
            let mut e = m.exponents().to_vec();
            e[i] += 1;
            terms.push((Monomial::from_exponents(e), a / Rational::from_integer(deg.into())));
        }
    }
    debug_assert!(terms.iter().all(|(m, _)| m.exponents().len() == n));
    Ok(Poly::from_terms(&nu.ctx, terms))
}

impl std::ops::Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        KForm {
            ctx: self.ctx.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl std::ops::Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.checked_add(rhs).expect("form context or degree mismatch")
    }
}

impl std::ops::Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.checked_sub(rhs).expect("form context or degree mismatch")
    }
}

impl fmt::Display for KForm {
    /// `(c) dx1^dx2 + ...`; a 1-form prints as `(c1) dx1 + (c2) dx2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<String> = k.iter().map(|&i| format!("d{}", self.ctx.name(i))).collect();
            write!(f, "({c}) {}", basis.join("^"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}>[{self}]", self.degree)
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

    fn one(comps: &[&str]) -> KForm {
        KForm::one_form_from_polys(&ctx3(), comps.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn field(comps: &[&str]) -> VecField {
        VecField::from_polys(&ctx3(), comps.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn pairings() {
        let g0 = field(&["0", "-2*x3", "1"]);
        assert_eq!(pair(&KForm::coordinate(&ctx3(), 1), &g0).unwrap(), p("-2*x3").into());
        let g2 = field(&["0", "-4*x3^3 - 4*x2*x3 - 1", "2*x3^2 + 2*x2"]);
        assert_eq!(
            pair(&KForm::coordinate(&ctx3(), 1), &g2).unwrap(),
            p("-4*x3^3 - 4*x2*x3 - 1").into()
        );
        let omega0 = KForm::exact(&p("x3^4 + 2*x2*x3^2 + x3 + x2^2"));
        assert_eq!(pair(&omega0, &g0).unwrap(), RatFn::one(&ctx3()));
        let two = KForm::zero(&ctx3(), 2).unwrap();
        assert!(matches!(pair(&two, &g0), Err(GeometryError::DegreeMismatch { .. })));
    }

    #[test]
    fn derivative_of_single_term() {
        let w = one(&["0", "x1", "0"]);
        let d = exterior_derivative(&w).unwrap();
        let expected = KForm::new(&ctx3(), 2, [(vec![0, 1], RatFn::one(&ctx3()))]).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.coefficient(&[1, 0]), -RatFn::one(&ctx3()));
    }

    #[test]
    fn d_squared_and_exact_forms() {
        let psi = p("x3^4 + 2*x2*x3^2 + x3 + x2^2");
        assert!(exterior_derivative(&KForm::exact(&psi)).unwrap().is_zero());
        let dd = exterior_derivative(&exterior_derivative(&one(&["x2*x3", "x1^2", "x3*x1"])).unwrap()).unwrap();
        assert!(dd.is_zero());
        let three = KForm::zero(&ctx3(), 3).unwrap();
        assert!(matches!(exterior_derivative(&three), Err(GeometryError::DegreeOverflow(4))));
    }

    #[test]
    fn basis_wedges() {
        let ctx = ctx3();
        let dx = |i| KForm::coordinate(&ctx, i);
        let d12 = wedge(&dx(0), &dx(1)).unwrap();
        let vol = wedge_21(&d12, &dx(2)).unwrap();
        assert_eq!(vol.coefficient(&[0, 1, 2]), RatFn::one(&ctx));
        assert!(wedge_21(&d12, &dx(0)).unwrap().is_zero());
        assert!(wedge_21(&dx(0), &d12).is_err());
    }

    #[test]
    fn integrability() {
        assert!(is_integrable(&KForm::exact(&p("x3^4 + 2*x2*x3^2 + x3 + x2^2"))));
        assert!(is_integrable(&KForm::coordinate(&ctx3(), 0)));
        assert!(!is_integrable(&one(&["x2", "0", "1"])));
        // dx1 + x1 dx2: integrable in two variables, not in three with dx3 added
        let ctx2 = VarContext::numbered("x", 2).unwrap();
        let w2 = KForm::one_form_from_polys(&ctx2, vec![parse_poly("1", &ctx2).unwrap(), parse_poly("x1", &ctx2).unwrap()]).unwrap();
        assert!(is_integrable(&w2));
        assert!(!is_integrable(&one(&["1", "x1", "x2"])));
    }

    #[test]
    fn potentials() {
        let psi = p("x3^4 + 2*x2*x3^2 + x3 + x2^2");
        assert_eq!(integrate_exact(&KForm::exact(&psi)).unwrap(), psi);
        assert_eq!(integrate_exact(&KForm::coordinate(&ctx3(), 0)).unwrap(), p("x1"));
        assert!(matches!(
            integrate_exact(&one(&["x2", "0", "0"])),
            Err(GeometryError::NotClosed(_))
        ));
        let rational = KForm::one_form(
            &ctx3(),
            vec![RatFn::new(p("1"), p("x1 + 1")).unwrap(), RatFn::zero(&ctx3()), RatFn::zero(&ctx3())],
        )
        .unwrap();
        assert!(matches!(integrate_exact(&rational), Err(GeometryError::NonPolynomial)));
    }
}
