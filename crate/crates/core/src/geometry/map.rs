use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{linalg, parse_poly, AlgebraError, Monomial, Poly, RatFn, Rational, VarContext};

use super::{GeometryError, KForm, VecField};

/// Polynomial coordinate change `x ↦ z = Φ(x)` with an optional exact inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap {
    domain: VarContext,
    codomain: VarContext,
    comps: Vec<Poly>,
    inverse: Option<Box<PolyMap>>,
}

impl PolyMap {
    pub fn new(domain: &VarContext, codomain: &VarContext, comps: Vec<Poly>) -> Result<Self, GeometryError> {
        if domain.dim() != codomain.dim() || comps.len() != codomain.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: domain.dim(),
                got: comps.len().max(codomain.dim()),
            }
            .into());
        }
        for c in &comps {
            domain.ensure_same(c.ctx())?;
        }
        Ok(PolyMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            comps,
            inverse: None,
        })
    }

    /// Parses one component per entry in the domain context.
    pub fn parse(domain: &VarContext, codomain: &VarContext, comps: &[&str]) -> Result<Self, GeometryError> {
        let polys = comps
            .iter()
            .map(|s| parse_poly(s, domain))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, codomain, polys)
    }

    pub fn identity(ctx: &VarContext) -> Self {
        Self::identity_between(ctx, ctx)
    }

    /// `zᵢ = xᵢ` between two contexts of equal dimension.
    pub fn identity_between(domain: &VarContext, codomain: &VarContext) -> Self {
        assert_eq!(domain.dim(), codomain.dim(), "identity needs equal dimensions");
        let fwd = |from: &VarContext, to: &VarContext| PolyMap {
            domain: from.clone(),
            codomain: to.clone(),
            comps: (0..from.dim()).map(|i| Poly::var(from, i)).collect(),
            inverse: None,
        };
        let mut id = fwd(domain, codomain);
        id.inverse = Some(Box::new(fwd(codomain, domain)));
        id
    }

    pub fn domain(&self) -> &VarContext {
        &self.domain
    }

    pub fn codomain(&self) -> &VarContext {
        &self.codomain
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn inverse(&self) -> Option<&PolyMap> {
        self.inverse.as_deref()
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// Copy without the attached inverse.
    pub fn forget_inverse(&self) -> PolyMap {
        PolyMap {
            inverse: None,
            ..self.clone()
        }
    }

    /// `zᵢ = xᵢ` for every i, names matched positionally.
    pub fn is_identity(&self) -> bool {
        self.comps
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Poly::var(&self.domain, i))
    }

    /// Attaches `inverse` after checking both round trips symbolically.
    pub fn with_inverse(&self, inverse: PolyMap) -> Result<PolyMap, GeometryError> {
        if inverse.domain != self.codomain || inverse.codomain != self.domain {
            return Err(GeometryError::InversionFailed(
                "inverse contexts do not match the map".into(),
            ));
        }
        let inv = inverse.forget_inverse();
        let fwd = self.forget_inverse();
        if !compose(&inv, &fwd)?.is_identity() || !compose(&fwd, &inv)?.is_identity() {
            return Err(GeometryError::InversionFailed(
                "supplied inverse does not compose to the identity".into(),
            ));
        }
        Ok(Self::paired(fwd, inv))
    }

    fn paired(fwd: PolyMap, inv: PolyMap) -> PolyMap {
        let mut back = inv;
        back.inverse = Some(Box::new(fwd.clone()));
        let mut out = fwd;
        out.inverse = Some(Box::new(back));
        out
    }

    /// The map with an inverse attached, computing one if needed.
    pub fn ensure_inverse(&self) -> Result<PolyMap, GeometryError> {
        if self.inverse.is_some() {
            return Ok(self.clone());
        }
        let inv = invert_triangular(self)?;
        Ok(Self::paired(self.forget_inverse(), inv.forget_inverse()))
    }

    /// `p ∘ Φ` for `p` over the codomain.
    pub fn pull_function(&self, p: &Poly) -> Result<Poly, GeometryError> {
        self.codomain.ensure_same(p.ctx())?;
        Ok(p.substitute(&self.comps)?)
    }

    pub fn pull_ratfn(&self, p: &RatFn) -> Result<RatFn, GeometryError> {
        self.codomain.ensure_same(p.ctx())?;
        Ok(p.substitute(&self.comps)?)
    }

    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.comps.iter().map(Poly::gradient).collect()
    }

    /// Serialized form: a header `map x1, x2 -> z1, z2` then one component per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("map {} -> {}\n", self.domain, self.codomain);
        for c in &self.comps {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<PolyMap, GeometryError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| parse_err(1, "empty map text"))?;
        let spec = header
            .trim()
            .strip_prefix("map ")
            .ok_or_else(|| parse_err(1, "expected `map <vars> -> <vars>` header"))?;
        let (lhs, rhs) = spec
            .split_once("->")
            .ok_or_else(|| parse_err(1, "expected `->` in header"))?;
        let names = |s: &str| VarContext::new(s.split(',').map(|t| t.trim().to_string()));
        let domain = names(lhs)?;
        let codomain = names(rhs)?;
        let comps: Vec<&str> = lines.collect();
        Self::parse(&domain, &codomain, &comps)
    }
}

fn parse_err(line: usize, message: &str) -> GeometryError {
    AlgebraError::Parse {
        line,
        column: 1,
        message: message.into(),
    }
    .into()
}

/// `outer ∘ inner`; the codomain of `inner` is matched to the domain of
/// `outer` by position. Inverses compose when both are present.
pub fn compose(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap, GeometryError> {
    if outer.dim() != inner.dim() {
        return Err(GeometryError::Algebra(AlgebraError::DimensionMismatch {
            expected: outer.dim(),
            got: inner.dim(),
        }));
    }
    let comps = outer
        .comps
        .iter()
        .map(|c| c.substitute(&inner.comps))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = PolyMap {
        domain: inner.domain.clone(),
        codomain: outer.codomain.clone(),
        comps,
        inverse: None,
    };
    if let (Some(oi), Some(ii)) = (&outer.inverse, &inner.inverse) {
        let back = compose(&ii.forget_inverse(), &oi.forget_inverse())?;
        out = PolyMap::paired(out, back);
    }
    Ok(out)
}

pub fn jacobian_determinant(map: &PolyMap) -> Poly {
    linalg::det_poly(&map.jacobian())
}

/// `(J_Φ · m) ∘ Φ⁻¹`: the field `m` expressed in the target coordinates.
pub fn pushforward(map: &PolyMap, m: &VecField) -> Result<VecField, GeometryError> {
    map.domain.ensure_same(m.ctx())?;
    let inv = map.inverse().ok_or(GeometryError::MissingInverse)?;
    let comps = map
        .comps
        .iter()
        .map(|c| {
            let jm = m.apply(&c.clone().into())?;
            Ok(jm.substitute(inv.components())?)
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    VecField::new(&map.codomain, comps)
}

/// `(ω · J_Φ⁻¹) ∘ Φ⁻¹`, computed as `(ω ∘ Φ⁻¹) · J_{Φ⁻¹}`.
pub fn pullback(map: &PolyMap, omega: &KForm) -> Result<KForm, GeometryError> {
    omega.expect_degree(1)?;
    map.domain.ensure_same(omega.ctx())?;
    let inv = map.inverse().ok_or(GeometryError::MissingInverse)?;
    let w = omega.components()?;
    let n = map.dim();
    let moved: Vec<RatFn> = w
        .iter()
        .map(|c| c.substitute(inv.components()))
        .collect::<Result<_, _>>()?;
    let jac = inv.jacobian();
    let comps = (0..n)
        .map(|j| {
            let mut acc = RatFn::zero(&map.codomain);
            for i in 0..n {
                if !moved[i].is_zero() && !jac[i][j].is_zero() {
                    acc = &acc + &(&moved[i] * &RatFn::from(jac[i][j].clone()));
                }
            }
            acc
        })
        .collect();
    KForm::one_form(&map.codomain, comps)
}

/// Exact polynomial inverse of `map`, returned with `map` attached as its own
/// inverse.
///
/// The components are treated as generators of a subalgebra of ℚ[x]: the
/// leading monomial of each generator is cancelled against products of the
/// others (tracking the same combination of target coordinates) until every
/// generator is affine, and the resulting affine system is solved. Triangular
/// maps are the simplest case. Several variable rankings are tried, all of
/// them when n ≤ 6, and the candidate is verified symbolically.
pub fn invert_triangular(map: &PolyMap) -> Result<PolyMap, GeometryError> {
    let n = map.dim();
    let mut orders: Vec<Vec<usize>> = Vec::new();
    if n <= 6 {
        permutations(&mut (0..n).collect(), 0, &mut orders);
    } else {
        orders.push((0..n).collect());
        orders.push((0..n).rev().collect());
    }
    for order in &orders {
        if let Some(inv) = reduce_with_order(map, order) {
            if let Ok(paired) = map.forget_inverse().with_inverse(inv) {
                return Ok(*paired.inverse.expect("attached"));
            }
        }
    }
    Err(GeometryError::InversionFailed(format!(
        "no variable ranking reduces ({}) to an invertible affine system",
        map.comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    )))
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

const MAX_REDUCTION_STEPS: usize = 2000;

fn lead(p: &Poly, order: &[usize]) -> Option<(Monomial, Rational)> {
    p.leading_term_by(order).map(|(m, c)| (m.clone(), c.clone()))
}

/// Exponents `a` over the generators (excluding `skip`) with
/// `Π lm_j^{a_j} = target`.
fn factor_monomial(target: &Monomial, lms: &[Option<Monomial>], skip: usize) -> Option<Vec<u32>> {
    fn go(rest: &Monomial, lms: &[Option<Monomial>], skip: usize, j: usize, acc: &mut Vec<u32>) -> bool {
        if rest.is_one() {
            return true;
        }
        if j == lms.len() {
            return false;
        }
        let usable = j != skip && lms[j].as_ref().is_some_and(|m| !m.is_one());
        if usable {
            let m = lms[j].as_ref().expect("checked");
            let mut max = 0u32;
            let mut cur = m.clone();
            while cur.divides(rest) {
                max += 1;
                cur = cur.mul(m);
            }
            for a in (0..=max).rev() {
                let mut r = rest.clone();
                for _ in 0..a {
                    r = m.quotient_of(&r);
                }
                acc[j] = a;
                if go(&r, lms, skip, j + 1, acc) {
                    return true;
                }
            }
            acc[j] = 0;
            false
        } else {
            go(rest, lms, skip, j + 1, acc)
        }
    }
    let mut acc = vec![0; lms.len()];
    go(target, lms, skip, 0, &mut acc).then_some(acc)
}

fn reduce_with_order(map: &PolyMap, order: &[usize]) -> Option<PolyMap> {
    let n = map.dim();
    let mut lower: Vec<Poly> = map.comps.clone();
    let mut upper: Vec<Poly> = (0..n).map(|i| Poly::var(&map.codomain, i)).collect();
    let mut steps = 0;
    loop {
        if lower.iter().all(|p| p.degree().is_some_and(|d| d <= 1)) {
            break;
        }
        let lms: Vec<Option<Monomial>> = lower.iter().map(|p| lead(p, order).map(|t| t.0)).collect();
        let mut candidates: Vec<usize> = (0..n).filter(|&i| lower[i].degree().is_some_and(|d| d > 1)).collect();
        candidates.sort_by(|&a, &b| {
            let (ma, mb) = (lms[a].as_ref().expect("nonzero"), lms[b].as_ref().expect("nonzero"));
            mb.cmp_graded(ma, order).then(a.cmp(&b))
        });
        let mut progressed = false;
        for i in candidates {
            let (m, c) = lead(&lower[i], order)?;
            let Some(exps) = factor_monomial(&m, &lms, i) else {
                continue;
            };
            let mut lo = Poly::one(&map.domain);
            let mut up = Poly::one(&map.codomain);
            for (j, &a) in exps.iter().enumerate() {
                if a > 0 {
                    lo = &lo * &lower[j].pow(a);
                    up = &up * &upper[j].pow(a);
                }
            }
            let (_, lc) = lead(&lo, order)?;
            let k = &c / &lc;
            let next = &lower[i] - &lo.scale(&k);
            debug_assert!(next.is_zero() || lead(&next, order).is_some_and(|(nm, _)| nm.cmp_graded(&m, order) == Ordering::Less));
            if next.is_constant() {
                return None;
            }
            lower[i] = next;
            upper[i] = &upper[i] - &up.scale(&k);
            progressed = true;
            break;
        }
        steps += 1;
        if !progressed || steps > MAX_REDUCTION_STEPS {
            return None;
        }
    }
    // lower = A x + c, with lower_i(x) = upper_i(Φ(x))
    let mut a = vec![vec![Rational::zero(); n]; n];
    let mut c = vec![Rational::zero(); n];
    for (i, p) in lower.iter().enumerate() {
        for (m, coef) in p.terms() {
            match m.exponents().iter().position(|&e| e == 1) {
                Some(j) => a[i][j] = coef.clone(),
                None => c[i] = coef.clone(),
            }
        }
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let rhs: Vec<Poly> = (0..n).map(|i| &upper[i] - &Poly::constant(&map.codomain, c[i].clone())).collect();
    let comps = (0..n)
        .map(|j| {
            let mut acc = Poly::zero(&map.codomain);
            for i in 0..n {
                let k = &aug[j][n + i];
                if !k.is_zero() {
                    acc = &acc + &rhs[i].scale(k);
                }
            }
            acc
        })
        .collect();
    PolyMap::new(&map.codomain, &map.domain, comps).ok()
}

impl fmt::Display for PolyMap {
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

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap[{} -> {}]{self}", self.domain, self.codomain)
    }
}
