//! Multivariate gcd over Q by recursive content removal and a primitive
//! remainder sequence in one main variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::Result;

/// Coefficients of `f` as a polynomial in `var`; `coeffs[k]` multiplies `var^k`.
pub(crate) fn coefficients_in(f: &Polynomial, var: usize) -> Vec<Polynomial> {
    let d = match f.degree_in(var) {
        Some(d) => d as usize,
        None => return Vec::new(),
    };
    let mut out = vec![Polynomial::zero(f.ring()); d + 1];
    for (m, c) in f.terms() {
        let k = m.exponent(var) as usize;
        let mut m = m.clone();
        m.exponents_mut()[var] = 0;
        out[k].add_term(m, c.clone());
    }
    out
}

fn var_power(f: &Polynomial, var: usize, k: u32) -> Monomial {
    let mut m = Monomial::one(f.nvars());
    m.exponents_mut()[var] = k;
    m
}

/// Content of `f` with respect to `var`: the gcd of its coefficients in `var`.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.ring());
    for c in coefficients_in(f, var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_unchecked(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

pub fn primitive_part_in(f: &Polynomial, var: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.exact_div(&c).expect("content divides").normalize()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` in `var`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var).unwrap();
    let lb = coefficients_in(b, var).pop().unwrap();
    let mut r = a.clone();
    let mut e = a.degree_in(var).unwrap() + 1 - db;
    while let Some(dr) = r.degree_in(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = coefficients_in(&r, var).pop().unwrap();
        let shift = Polynomial::term(r.ring(), var_power(&r, var, dr - db), Rational::one());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
        e -= 1;
    }
    &r * &lb.pow(e)
}

/// Greatest common divisor, normalized (primitive integer coefficients,
/// positive leading coefficient under grevlex). `gcd(f, 0) = normalize(f)`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.ring() != g.ring() {
        // surfaces the mismatch error
        f.checked_add(g)?;
    }
    Ok(gcd_unchecked(f, g))
}

pub(crate) fn gcd_unchecked(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.ring());
    }
    let var = (0..f.nvars())
        .find(|&v| f.degree_in(v).unwrap() > 0 || g.degree_in(v).unwrap() > 0)
        .unwrap();
    let (df, dg) = (f.degree_in(var).unwrap(), g.degree_in(var).unwrap());
    if df == 0 {
        return gcd_unchecked(f, &content_in(g, var));
    }
    if dg == 0 {
        return gcd_unchecked(&content_in(f, var), g);
    }
    if let Some(h) = heuristic_gcd(&f.normalize(), &g.normalize()) {
        return h.normalize();
    }
    prs_gcd(f, g, var)
}

/// Gcd by content removal and a subresultant sequence in `var`; both inputs
/// have positive degree in `var`.
fn prs_gcd(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let (cf, cg) = (content_in(f, var), content_in(g, var));
    let c = gcd_unchecked(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides").normalize();
    let mut b = g.exact_div(&cg).expect("content divides").normalize();
    if images_coprime(&a, &b, var) {
        return c;
    }
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    // subresultant remainder sequence
    let mut g = Polynomial::one(f.ring());
    let mut h = Polynomial::one(f.ring());
    let last = loop {
        let delta = a.degree_in(var).unwrap() - b.degree_in(var).unwrap();
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(var).unwrap() == 0 {
            return c;
        }
        let next = r.exact_div(&(&g * &h.pow(delta))).expect("subresultant division");
        a = b;
        b = next;
        g = coefficients_in(&a, var).pop().unwrap();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division")
        };
    };
    let h = primitive_part_in(&last, var);
    (&c * &h).normalize()
}

fn integer_content(p: &Polynomial) -> BigInt {
    integer_gcd(p.terms().map(|(_, c)| c.numer().clone()))
}

/// Heuristic gcd of polynomials with integer coefficients: evaluate the last
/// variable at a large integer, recurse, and read the gcd back off the
/// balanced base-`xi` digits. A candidate is only accepted after it divides
/// both inputs, and `xi` exceeds twice the smaller coefficient bound, so an
/// accepted candidate is the gcd. Returns `None` when no candidate survives.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ring = a.ring();
    let (ca, cb) = (integer_content(a), integer_content(b));
    let content = ca.gcd(&cb);
    let Some(v) = (0..a.nvars())
        .rev()
        .find(|&v| a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0)
    else {
        return Some(Polynomial::constant(ring, Rational::from_integer(content)));
    };
    let a = a.scale(&Rational::from_integer(ca).recip());
    let b = b.scale(&Rational::from_integer(cb).recip());
    let bound = |p: &Polynomial| -> BigInt { p.max_abs_coefficient().to_integer() };
    let mut xi: BigInt = bound(&a).min(bound(&b)) * 2 + 29;
    for _ in 0..6 {
        let x = Rational::from_integer(xi.clone());
        let (ax, bx) = (a.specialize(v, &x), b.specialize(v, &x));
        if !ax.is_zero() && !bx.is_zero() {
            if let Some(gamma) = heuristic_gcd(&ax, &bx) {
                let mut g = Polynomial::zero(ring);
                for (m, c) in gamma.terms() {
                    let mut c = c.to_integer();
                    let mut i = 0;
                    while !c.is_zero() {
                        let mut d = c.mod_floor(&xi);
                        if &d * 2 > xi {
                            d -= &xi;
                        }
                        let mut m = m.clone();
                        m.exponents_mut()[v] = i;
                        g.add_term(m, Rational::from_integer(d.clone()));
                        c = (c - d) / &xi;
                        i += 1;
                    }
                }
                if !g.is_zero() {
                    let g = g.normalize();
                    if a.exact_div(&g).is_ok() && b.exact_div(&g).is_ok() {
                        return Some(g.scale(&Rational::from_integer(content)));
                    }
                }
            }
        }
        xi = &xi * 73794u32 / 27011u32;
    }
    None
}

/// True when `a` and `b` specialize to coprime polynomials in `var` at a point
/// where both leading coefficients in `var` survive. The gcd's leading
/// coefficient divides theirs, so its image keeps its degree; for primitive
/// `a`, `b` the gcd is then 1.
fn images_coprime(a: &Polynomial, b: &Polynomial, var: usize) -> bool {
    let others: Vec<usize> = (0..a.nvars())
        .filter(|&v| v != var && (a.degree_in(v).unwrap_or(0) > 0 || b.degree_in(v).unwrap_or(0) > 0))
        .collect();
    if others.is_empty() {
        return false;
    }
    let la = coefficients_in(a, var).pop().unwrap();
    let lb = coefficients_in(b, var).pop().unwrap();
    for attempt in 0..3i64 {
        let at = |p: &Polynomial| {
            others.iter().enumerate().fold(p.clone(), |acc, (i, &v)| {
                acc.specialize(v, &Rational::from_integer(BigInt::from(2 + 3 * i as i64 + 5 * attempt)))
            })
        };
        if at(&la).is_zero() || at(&lb).is_zero() {
            continue;
        }
        return gcd_unchecked(&at(a), &at(b)).is_constant();
    }
    false
}

/// Least common multiple, normalized.
pub fn lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ring()));
    }
    let d = gcd(f, g)?;
    Ok((f * g).exact_div(&d)?.normalize())
}

/// Integer content helper used by the factorization code.
pub(crate) fn integer_gcd(values: impl IntoIterator<Item = BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::from(0), |a, b| a.gcd(&b))
}
