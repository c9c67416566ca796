use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{gcd, AlgebraError, Poly, Rational, VarContext};

/// Quotient of two polynomials in lowest terms with a monic denominator.
///
/// The denominator is 1 exactly when the value is a polynomial, and equal
/// values share one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        num.ctx().ensure_same(den.ctx())?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(num.ctx());
            return RatFn { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let one = Poly::one(num.ctx());
            return RatFn {
                num: num.scale(&c.recip()),
                den: one,
            };
        }
        if let Some(q) = num.div_exact(&den) {
            let one = Poly::one(num.ctx());
            return RatFn { num: q, den: one };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.recip();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero(ctx: &VarContext) -> Self {
        Poly::zero(ctx).into()
    }

    pub fn one(ctx: &VarContext) -> Self {
        Poly::one(ctx).into()
    }

    pub fn constant(ctx: &VarContext, c: Rational) -> Self {
        Poly::constant(ctx, c).into()
    }

    pub fn ctx(&self) -> &VarContext {
        self.num.ctx()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatFn, AlgebraError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.ctx());
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_add(&self, other: &RatFn) -> Result<RatFn, AlgebraError> {
        self.ctx().ensure_same(other.ctx())?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            if self.is_polynomial() {
                return Ok((&self.num + &other.num).into());
            }
            return Ok(Self::normalize(&self.num + &other.num, self.den.clone()));
        }
        if other.is_polynomial() {
            // gcd(a + c*b, b) = gcd(a, b) = 1
            return Ok(RatFn {
                num: &self.num + &(&other.num * &self.den),
                den: self.den.clone(),
            });
        }
        if self.is_polynomial() {
            return Ok(RatFn {
                num: &other.num + &(&self.num * &other.den),
                den: other.den.clone(),
            });
        }
        let g = gcd(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        // num is coprime to b1 and d1, so only factors of g can cancel
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        Ok(Self::with_monic_denominator(num, &(&b1 * &d1) * &g))
    }

    pub fn checked_mul(&self, other: &RatFn) -> Result<RatFn, AlgebraError> {
        self.ctx().ensure_same(other.ctx())?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFn::zero(self.ctx()));
        }
        if self.is_polynomial() && other.is_polynomial() {
            return Ok((&self.num * &other.num).into());
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let num = &a * &c;
        let den = &b * &d;
        // already coprime; only the leading coefficient needs fixing
        Ok(Self::with_monic_denominator(num, den))
    }

    /// `num / Π fᵏ`, cancelling whole factors by exact division before the
    /// general reduction.
    pub fn from_factored(mut num: Poly, factors: Vec<(Poly, u32)>) -> RatFn {
        let ctx = num.ctx().clone();
        if num.is_zero() {
            return RatFn::zero(&ctx);
        }
        let mut den = Poly::one(&ctx);
        for (f, k) in factors {
            if f.is_one() {
                continue;
            }
            let mut left = k;
            while left > 0 && !f.is_constant() {
                match num.div_exact(&f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den = &den * &f.pow(left);
            }
        }
        Self::normalize(num, den)
    }

    fn with_monic_denominator(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn::zero(num.ctx());
        }
        let lc = den.leading_coefficient();
        if lc.is_one() {
            return RatFn { num, den };
        }
        let inv = lc.recip();
        RatFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn checked_div(&self, other: &RatFn) -> Result<RatFn, AlgebraError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn pow(&self, e: u32) -> RatFn {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn partial(&self, var: usize) -> RatFn {
        if self.is_polynomial() {
            return self.num.partial(var).into();
        }
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        // a factor of den divides num exactly when it divides dd
        if gcd(&self.den, &dd).is_one() {
            return Self::with_monic_denominator(num, self.den.pow(2));
        }
        Self::normalize(num, self.den.pow(2))
    }

    /// Value at a rational point; `None` when the denominator vanishes there.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Option<Rational>, AlgebraError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.num.evaluate(point)? / d))
    }

    /// Substitute polynomials for the variables (see [`Poly::substitute`]).
    pub fn substitute(&self, values: &[Poly]) -> Result<RatFn, AlgebraError> {
        let num = self.num.substitute(values)?;
        let den = self.den.substitute(values)?;
        RatFn::new(num, den)
    }

    pub fn relabel(&self, ctx: &VarContext) -> Result<RatFn, AlgebraError> {
        Ok(RatFn {
            num: self.num.relabel(ctx)?,
            den: self.den.relabel(ctx)?,
        })
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        let den = Poly::one(p.ctx());
        RatFn { num: p, den }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.checked_add(rhs).expect("rational function context mismatch")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.checked_add(&-rhs)
            .expect("rational function context mismatch")
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        self.checked_mul(rhs).expect("rational function context mismatch")
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    /// Panics on division by zero; use [`RatFn::checked_div`] otherwise.
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        &self - &rhs
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        &self * &rhs
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        unimplemented!("RatFn::zero needs a context; use RatFn::zero(ctx)")
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

impl One for RatFn {
    fn one() -> Self {
        unimplemented!("RatFn::one needs a context; use RatFn::one(ctx)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfn};

    fn ctx() -> VarContext {
        VarContext::numbered("x", 3).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &ctx()).unwrap()
    }

    #[test]
    fn negated_denominator_reduces_to_minus_one() {
        let r = RatFn::new(p("4*x3^3 + 4*x2*x3 + 1"), p("-4*x3^3 - 4*x2*x3 - 1")).unwrap();
        assert_eq!(r, RatFn::from(p("-1")));
    }

    #[test]
    fn unit_denominator() {
        let r = RatFn::new(p("x1*x2 + 3"), p("1")).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &p("x1*x2 + 3"));
    }

    #[test]
    fn cancels_common_factor() {
        // (x1^2 - 1)/(x1 - 1) = x1 + 1; cross-multiplying confirms
        let r = RatFn::new(p("x1^2 - 1"), p("x1 - 1")).unwrap();
        assert_eq!(r, RatFn::from(p("x1 + 1")));
        assert_eq!(&p("x1 + 1") * &p("x1 - 1"), p("x1^2 - 1"));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFn::new(p("x1"), p("0")),
            Err(AlgebraError::ZeroDenominator)
        ));
    }

    #[test]
    fn denominator_is_monic() {
        let r = RatFn::new(p("x1"), p("-2*x2 + 4")).unwrap();
        assert_eq!(r.denom(), &p("x2 - 2"));
        assert_eq!(r.numer(), &p("-1/2*x1"));
    }

    #[test]
    fn quotient_rule() {
        let r = parse_ratfn("x1", &ctx()).unwrap();
        let s = RatFn::new(p("1"), p("x1 + x2")).unwrap();
        let t = &r * &s;
        // d/dx1 [x1/(x1+x2)] = x2/(x1+x2)^2
        assert_eq!(t.partial(0), RatFn::new(p("x2"), p("(x1 + x2)^2")).unwrap());
    }

    #[test]
    fn sum_of_fractions() {
        let a = RatFn::new(p("1"), p("x1")).unwrap();
        let b = RatFn::new(p("1"), p("x2")).unwrap();
        assert_eq!(&a + &b, RatFn::new(p("x1 + x2"), p("x1*x2")).unwrap());
        assert!((&a - &a).is_zero());
    }
}
