//! Hilbert series of monomial ideals, and dimension and degree of algebraic
//! sets and homogeneous cones.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, is_groebner_basis, lead_term_ideal, Ideal};
use crate::poly::{squarefree_part, Monomial, MonomialOrder, Polynomial};

/// Integer polynomial in `t`, ascending coefficients.
pub type IntPoly = Vec<i64>;

/// Hilbert data of a graded quotient `k[x_1..x_n]/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// Series numerator over `(1-t)^nvars`.
    pub numerator: IntPoly,
    pub nvars: usize,
    pub krull_dimension: usize,
    pub degree: u64,
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn add(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn shift(p: &[i64], k: usize) -> IntPoly {
    let mut out = vec![0; k];
    out.extend_from_slice(p);
    out
}

fn one_minus_t_pow(k: u32) -> IntPoly {
    let mut p = vec![0; k as usize + 1];
    p[0] += 1;
    p[k as usize] -= 1;
    trim(p)
}

fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    let n = gens[0].nvars();
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, m| mul(&acc, &one_minus_t_pow(m.degree())));
    }
    // pivot on the variable occurring in the most generators
    let var = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|m| m.exponent(v) > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let pivot = Monomial::var(n, var);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e[var] = e[var].saturating_sub(1);
            Monomial::new(e)
        })
        .collect();
    let a = numerator_rec(minimalize(with_pivot));
    let b = numerator_rec(minimalize(quotient));
    add(&a, &shift(&b, 1))
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `k[x]/(M)`.
pub fn hilbert_numerator(monomials: &[Monomial], nvars: usize) -> IntPoly {
    assert!(monomials.iter().all(|m| m.nvars() == nvars), "monomial size differs from nvars");
    numerator_rec(minimalize(monomials.to_vec()))
}

/// Divides out `(1-t)` as often as possible; returns the quotient and the count.
fn cancel_one_minus_t(mut p: IntPoly) -> (IntPoly, usize) {
    let mut k = 0;
    while p.len() > 1 && p.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q_i = sum_{j<=i} p_j
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut acc = 0;
        for &c in &p[..p.len() - 1] {
            acc += c;
            q.push(acc);
        }
        p = trim(q);
        k += 1;
    }
    (p, k)
}

/// Dimension and degree from the Hilbert numerator of a graded quotient.
pub fn hilbert_data(monomials: &[Monomial], nvars: usize) -> Result<HilbertData> {
    let numerator = hilbert_numerator(monomials, nvars);
    if numerator.iter().all(|&c| c == 0) {
        return Err(Error::EmptySet);
    }
    let (reduced, k) = cancel_one_minus_t(numerator.clone());
    let degree: i64 = reduced.iter().sum();
    if degree < 1 || k > nvars {
        return Err(Error::Internal(format!(
            "Hilbert numerator {numerator:?} yields degree {degree}"
        )));
    }
    Ok(HilbertData {
        numerator,
        nvars,
        krull_dimension: nvars - k,
        degree: degree as u64,
    })
}

/// Krull dimension and degree of the affine cone `V(I)` for homogeneous `I`.
pub fn dim_degree_homogeneous(ideal: &Ideal) -> Result<HilbertData> {
    if let Some(g) = ideal.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let n = ideal.ring().nvars();
    let gb = buchberger(ideal, &MonomialOrder::grevlex(n));
    if gb.is_unit() {
        return Err(Error::EmptySet);
    }
    hilbert_data(&lead_term_ideal(&gb), n)
}

/// Dimension and degree of `V(I)`, the degree being that of the projective
/// closure. A principal ideal is first replaced by its squarefree part; other
/// ideals are taken as given (assumed radical).
pub fn affine_degree(ideal: &Ideal) -> Result<HilbertData> {
    let ideal = reduce_principal(ideal)?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let gb = buchberger(&ideal, &MonomialOrder::grevlex(n));
    if gb.is_unit() {
        return Err(Error::EmptySet);
    }
    // homogenizing variable appended last, which is smallest under grevlex
    let big = ring.with_var(&ring.fresh_name("h"))?;
    let homogenized: Vec<Polynomial> = gb.elements().iter().map(|g| g.homogenize_into(&big)).collect();
    let order = MonomialOrder::grevlex(n + 1);
    if !is_groebner_basis(&homogenized, &order) {
        return Err(Error::Internal("homogenized basis is not a Gröbner basis".into()));
    }
    let leads: Vec<Monomial> = homogenized
        .iter()
        .map(|g| g.lead(&order).unwrap().0.clone())
        .collect();
    let data = hilbert_data(&leads, n + 1)?;
    Ok(HilbertData {
        krull_dimension: data.krull_dimension - 1,
        ..data
    })
}

fn reduce_principal(ideal: &Ideal) -> Result<Ideal> {
    let gens = ideal.generators();
    if gens.len() == 1 {
        if gens[0].is_constant() {
            return Err(Error::EmptySet);
        }
        return Ideal::principal(squarefree_part(&gens[0])?);
    }
    Ok(ideal.clone())
}

/// Multiplicity at the origin of a homogeneous germ, which equals its degree.
pub fn multiplicity_homogeneous_germ(ideal: &Ideal) -> Result<u64> {
    Ok(dim_degree_homogeneous(ideal)?.degree)
}
