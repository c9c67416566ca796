use std::cmp::Ordering;

use smallvec::{smallvec, SmallVec};

/// Exponent vector `[e1, ..., en]` standing for `x1^e1 * ... * xn^en`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(smallvec![0; n])
    }

    pub fn var(n: usize, index: usize) -> Self {
        let mut e = smallvec![0; n];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(SmallVec::from_vec(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Graded order with variables ranked by `priority` (first = most significant).
    pub fn cmp_graded(&self, other: &Monomial, priority: &[usize]) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for &v in priority {
                    match self.0[v].cmp(&other.0[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::from_exponents(vec![1, 0, 0]);
        let x2 = Monomial::from_exponents(vec![0, 1, 0]);
        let x3sq = Monomial::from_exponents(vec![0, 0, 2]);
        let x1x2 = Monomial::from_exponents(vec![1, 1, 0]);
        assert!(x1 > x2);
        assert!(x3sq > x1);
        assert!(x1x2 > x3sq);
        assert!(Monomial::one(3) < x2);
    }

    #[test]
    fn custom_priority() {
        let a = Monomial::from_exponents(vec![1, 0]);
        let b = Monomial::from_exponents(vec![0, 1]);
        assert_eq!(a.cmp_graded(&b, &[0, 1]), Ordering::Greater);
        assert_eq!(a.cmp_graded(&b, &[1, 0]), Ordering::Less);
    }
}
