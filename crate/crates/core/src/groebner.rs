//! Reduced Gröbner bases by Buchberger's algorithm with the normal selection
//! strategy and the coprime / chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// An ideal given by generators. Zero generators are dropped on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Ideal> {
        let ring = generators.first().ok_or(Error::EmptyIdeal)?.ring().clone();
        for g in &generators {
            if g.ring() != &ring {
                return Err(Error::RingMismatch(
                    format!("{ring:?}"),
                    format!("{:?}", g.ring()),
                ));
            }
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(Ideal { ring, generators })
    }

    pub fn principal(f: Polynomial) -> Result<Ideal> {
        Ideal::new(vec![f])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Generators normalized, deduplicated and sorted.
    pub fn normalized(&self) -> Ideal {
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.normalize()).collect();
        gens.sort();
        gens.dedup();
        Ideal {
            ring: self.ring.clone(),
            generators: gens,
        }
    }
}

/// Reduced Gröbner basis: monic elements sorted by decreasing lead monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.lead(&self.order).unwrap().0.clone())
            .collect()
    }
}

// Terms sorted ascending under the order, so the leading term is last.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Sorted {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn lead(&self) -> &(Monomial, Rational) {
        self.terms.last().expect("nonzero")
    }

    fn make_monic(&mut self) {
        let inv = self.lead().1.recip();
        if !inv.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
    }
}

/// `p - coeff * shift * g`, both inputs ascending.
fn sub_multiple(
    p: &[(Monomial, Rational)],
    g: &[(Monomial, Rational)],
    shift: &Monomial,
    coeff: &Rational,
    order: &MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(m, c)| (m.mul(shift), c * coeff)).peekable();
    while i < p.len() || gi.peek().is_some() {
        let take_p = match (p.get(i), gi.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take_p {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => out.push(gi.next().map(|(m, c)| (m, -c)).unwrap()),
            Ordering::Equal => {
                let (m, c) = gi.next().unwrap();
                let s = &p[i].1 - c;
                if !s.is_zero() {
                    out.push((m, s));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` modulo `basis` (all monic).
fn reduce(mut p: Vec<(Monomial, Rational)>, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.last() {
        let divisor = basis.iter().find(|g| g.lead().0.divides(m));
        match divisor {
            Some(g) => {
                let shift = g.lead().0.divide_into(m).unwrap();
                let coeff = c.clone();
                p = sub_multiple(&p, &g.terms, &shift, &coeff, order);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

fn s_polynomial(a: &Sorted, b: &Sorted, order: &MonomialOrder) -> Vec<(Monomial, Rational)> {
    let (ma, mb) = (&a.lead().0, &b.lead().0);
    let l = ma.lcm(mb);
    let sa = ma.divide_into(&l).unwrap();
    let sb = mb.divide_into(&l).unwrap();
    let left: Vec<(Monomial, Rational)> = a.terms.iter().map(|(m, c)| (m.mul(&sa), c.clone())).collect();
    sub_multiple(&left, &b.terms, &sb, &Rational::one(), order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal under a graded order.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> GroebnerBasis {
    assert_eq!(order.nvars(), ideal.ring().nvars(), "order size differs from ring");
    let ring = ideal.ring();
    let mut basis: Vec<Sorted> = Vec::new();
    for g in ideal.generators() {
        let r = reduce(Sorted::from_poly(g, order).terms, &basis, order);
        if !r.terms.is_empty() {
            let mut r = r;
            r.make_monic();
            basis.push(r);
        }
    }
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push(Pair {
                i,
                j,
                lcm: basis[i].lead().0.lcm(&basis[j].lead().0),
            });
            pending_set.insert((i, j));
        }
    }
    loop {
        // normal strategy: smallest lcm first
        let Some(pos) = (0..pending.len()).min_by(|&a, &b| {
            order
                .cmp(&pending[a].lcm, &pending[b].lcm)
                .then_with(|| (pending[a].i, pending[a].j).cmp(&(pending[b].i, pending[b].j)))
        }) else {
            break;
        };
        let Pair { i, j, lcm } = pending.swap_remove(pos);
        pending_set.remove(&(i, j));
        let (li, lj) = (&basis[i].lead().0, &basis[j].lead().0);
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(s, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        let n = basis.len();
        for k in 0..n {
            pending.push(Pair {
                i: k,
                j: n,
                lcm: basis[k].lead().0.lcm(&r.lead().0),
            });
            pending_set.insert((k, n));
        }
        basis.push(r);
    }
    GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements: interreduce(basis, order, ring),
    }
}

fn interreduce(basis: Vec<Sorted>, order: &MonomialOrder, ring: &Ring) -> Vec<Polynomial> {
    // drop elements whose lead monomial is divisible by another's
    let mut minimal: Vec<Sorted> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g.lead().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = &h.lead().0;
            k != idx && lh.divides(lm) && (lh != lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let g = &minimal[idx];
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, h)| h.clone())
            .collect();
        let lead = g.lead().clone();
        let tail = g.terms[..g.terms.len() - 1].to_vec();
        let mut r = reduce(tail, &others, order);
        r.terms.push(lead);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));
    reduced.iter().map(|s| s.to_poly(ring)).collect()
}

/// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring() != basis.ring() {
        return Err(Error::RingMismatch(
            format!("{:?}", f.ring()),
            format!("{:?}", basis.ring()),
        ));
    }
    let order = basis.order();
    let sorted: Vec<Sorted> = basis
        .elements()
        .iter()
        .map(|g| Sorted::from_poly(g, order))
        .collect();
    Ok(reduce(Sorted::from_poly(f, order).terms, &sorted, order).to_poly(basis.ring()))
}

/// Minimal generators of the lead-term ideal, sorted decreasing under the order.
pub fn lead_term_ideal(basis: &GroebnerBasis) -> Vec<Monomial> {
    let lms = basis.lead_monomials();
    let mut out: Vec<Monomial> = lms
        .iter()
        .enumerate()
        .filter(|(i, m)| {
            !lms
                .iter()
                .enumerate()
                .any(|(k, n)| k != *i && n.divides(m) && (n != *m || k < *i))
        })
        .map(|(_, m)| m.clone())
        .collect();
    out.sort_by(|a, b| basis.order().cmp(b, a));
    out
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(polys: &[Polynomial], order: &MonomialOrder) -> bool {
    let sorted: Vec<Sorted> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut s = Sorted::from_poly(p, order);
            s.make_monic();
            s
        })
        .collect();
    for j in 0..sorted.len() {
        for i in 0..j {
            if sorted[i].lead().0.is_coprime(&sorted[j].lead().0) {
                continue;
            }
            let s = s_polynomial(&sorted[i], &sorted[j], order);
            if !reduce(s, &sorted, order).terms.is_empty() {
                return false;
            }
        }
    }
    true
}
