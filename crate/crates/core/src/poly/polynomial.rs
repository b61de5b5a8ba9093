use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, MonomialOrder, Rational, Ring};
use crate::error::{Error, Result};

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolynomialText", try_from = "PolynomialText")]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), index), Rational::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring size");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms; like monomials are combined.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring size");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous parts indexed by degree (`parts[k]` has degree `k`).
    pub fn homogeneous_parts(&self) -> Vec<Polynomial> {
        let d = match self.degree() {
            Degree::NegInfinity => return Vec::new(),
            Degree::Finite(d) => d,
        };
        let mut parts = vec![Polynomial::zero(&self.ring); d as usize + 1];
        for (m, c) in &self.terms {
            parts[m.degree() as usize].terms.insert(m.clone(), c.clone());
        }
        parts
    }

    /// The maximum degree form: the homogeneous part of top degree.
    pub fn top_form(&self) -> Result<Polynomial> {
        match self.degree() {
            Degree::NegInfinity => Err(Error::ZeroPolynomial),
            Degree::Finite(d) => Ok(self.homogeneous_part(d)),
        }
    }

    /// Homogenizes with a new variable appended to the ring.
    pub fn homogenize(&self, name: &str) -> Result<Polynomial> {
        let ring = self.ring.with_var(name)?;
        Ok(self.homogenize_into(&ring))
    }

    /// Homogenizes into `ring`, which must be this ring plus one trailing variable.
    pub(crate) fn homogenize_into(&self, ring: &Ring) -> Polynomial {
        debug_assert_eq!(ring.nvars(), self.nvars() + 1);
        let d = self.degree().finite().unwrap_or(0);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.push(d - m.degree());
            (Monomial::new(e), c.clone())
        });
        Polynomial {
            ring: ring.clone(),
            terms: terms.collect(),
        }
    }

    /// Substitutes `value` for variable `var`; the result lives in the ring without it.
    pub fn eval_var(&self, var: usize, value: &Rational) -> Polynomial {
        let ring = self.ring.without_var(var);
        let mut out = Polynomial::zero(&ring);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = e.remove(var);
            let c = if k == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(Monomial::new(e), c);
        }
        out
    }

    /// Substitutes `value` for variable `var`, keeping the ring.
    pub fn specialize(&self, var: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let k = std::mem::replace(&mut m.exponents_mut()[var], 0);
            let c = if k == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(m, c);
        }
        out
    }

    /// Re-embeds into `target`, sending variable `i` to `target` variable `map[i]`.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.exponent(var);
            if k == 0 {
                continue;
            }
            let mut m = m.clone();
            m.exponents_mut()[var] -= 1;
            out.add_term(m, c * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading monomial and coefficient under `order`.
    pub fn lead(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.lead(order) {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Canonical associate: integer coefficients with gcd one and positive
    /// leading coefficient under graded reverse lex.
    pub fn normalize(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let order = MonomialOrder::grevlex(self.nvars());
        let (_, lc) = self.lead(&order).unwrap();
        let mut factor = Rational::new(den, num);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                format!("{:?}", self.ring),
                format!("{:?}", other.ring),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`; fails rather than truncating.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some(c) = divisor.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let order = MonomialOrder::grevlex(self.nvars());
        let (dm, dc) = divisor.lead(&order).unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((rm, rc)) = rem.lead(&order) {
            let m = dm.divide_into(rm).ok_or(Error::InexactDivision)?;
            let c = rc / &dc;
            let step = divisor.mul_term(&m, &c);
            quot.add_term(m, c);
            rem = rem.checked_sub(&step)?;
        }
        Ok(quot)
    }

    pub fn arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        match op {
            ArithOp::Add => self.checked_add(other),
            ArithOp::Sub => self.checked_sub(other),
            ArithOp::Mul => self.checked_mul(other),
            ArithOp::ExactDiv => self.exact_div(other),
        }
    }

    /// Writes the polynomial in the text grammar accepted by the parser.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Serialized form: the ring's variables and the rendered polynomial.
#[derive(Serialize, Deserialize)]
struct PolynomialText {
    vars: Vec<String>,
    text: String,
}

impl From<Polynomial> for PolynomialText {
    fn from(p: Polynomial) -> Self {
        PolynomialText {
            vars: p.ring.names().to_vec(),
            text: p.to_string(),
        }
    }
}

impl TryFrom<PolynomialText> for Polynomial {
    type Error = Error;

    fn try_from(t: PolynomialText) -> Result<Polynomial> {
        let ring = Ring::new(&t.vars)?;
        super::parse_polynomial(&t.text, Some(&ring))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.ring)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = MonomialOrder::grevlex(self.nvars());
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(v), e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order, used only to sort outputs deterministically.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

// Operator impls panic on ring mismatch; use the `checked_*` methods to handle it.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
