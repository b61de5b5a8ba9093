use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial. Its length is the variable count of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    GradedReverseLex,
    GradedLex,
}

/// A graded monomial order together with a variable ranking.
///
/// `ranking[k]` is the index of the variable placed at position `k`, position 0
/// being the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GradedReverseLex,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GradedLex,
            ranking: (0..nvars).collect(),
        }
    }

    /// Panics unless `ranking` is a permutation of `0..ranking.len()`.
    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut seen = vec![false; ranking.len()];
        for &r in &ranking {
            assert!(r < ranking.len() && !seen[r], "ranking is not a permutation");
            seen[r] = true;
        }
        MonomialOrder { kind, ranking }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_graded(&self) -> bool {
        true
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return da.cmp(&db);
        }
        match self.kind {
            OrderKind::GradedLex => {
                for &v in &self.ranking {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedReverseLex => {
                for &v in self.ranking.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_small_cases() {
        let o = MonomialOrder::grevlex(3);
        // x*z < y^2 in grevlex (z has the higher exponent on the smallest variable)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn grlex_small_cases() {
        let o = MonomialOrder::grlex(3);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.divide_into(&b), Some(m(&[1, 0, 1])));
        assert_eq!(b.divide_into(&a), None);
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 2])));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mono() -> impl Strategy<Value = Monomial> {
            proptest::collection::vec(0u32..5, 3).prop_map(Monomial::new)
        }

        proptest! {
            #[test]
            fn orders_are_multiplicative(a in mono(), b in mono(), w in mono()) {
                for o in [MonomialOrder::grevlex(3), MonomialOrder::grlex(3)] {
                    prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                }
            }

            #[test]
            fn orders_refine_degree(a in mono(), b in mono()) {
                let o = MonomialOrder::grevlex(3);
                if a.degree() < b.degree() {
                    prop_assert_eq!(o.cmp(&a, &b), Ordering::Less);
                }
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            }
        }
    }
}
