//! Factorization over Q.
//!
//! Univariate: modular factorization (Cantor-Zassenhaus), linear Hensel
//! lifting and exhaustive recombination. Binary forms reduce to the univariate
//! case by dehomogenizing. Forms in three or more variables are first tested
//! on random plane slices (an irreducible slice certifies irreducibility) and
//! otherwise split with a Kronecker substitution.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{integer_gcd, squarefree_decomposition, Monomial, Polynomial, Rational, Ring};

/// Integer polynomial, coefficients from the constant term up.
type ZPoly = Vec<BigInt>;
/// Polynomial over F_p, coefficients from the constant term up.
type FpPoly = Vec<u64>;

const MAX_MODULAR_FACTORS: usize = 16;
const MAX_KRONECKER_DEGREE: usize = 160;
const MAX_KRONECKER_FACTORS: usize = 14;

// ---------------------------------------------------------------------------
// arithmetic over F_p

fn fp_trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut r = a.clone();
    fp_trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        fp_trim(&mut r);
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = fp_inv(lc, p);
            a.iter().map(|&x| x * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s*a = g (mod m)`.
fn fp_inverse_mod(a: &FpPoly, m: &FpPoly, p: u64) -> Option<FpPoly> {
    let (mut r0, mut r1) = (m.clone(), fp_rem(a, m, p));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = fp_inv(r0[0], p);
    Some(s0.iter().map(|&x| x * inv % p).collect())
}

fn fp_powmod(base: &FpPoly, exp: &BigUint, m: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = vec![1];
    let base = fp_rem(base, m, p);
    let bits = exp.bits();
    for i in (0..bits).rev() {
        result = fp_rem(&fp_mul(&result, &result, p), m, p);
        if exp.bit(i) {
            result = fp_rem(&fp_mul(&result, &base, p), m, p);
        }
    }
    result
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    let mut out: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    fp_trim(&mut out);
    out
}

/// Distinct-degree then equal-degree factorization of a monic squarefree polynomial.
fn fp_factor(f: &FpPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let x: FpPoly = vec![0, 1];
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut by_degree = Vec::new();
    let mut d = 1usize;
    while rest.len() > 2 * d {
        h = fp_powmod(&h, &BigUint::from(p), &rest, p);
        let g = fp_gcd(&rest, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_rem(&h, &rest, p);
            by_degree.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        by_degree.push((fp_monic(&rest, p), deg));
    }
    let mut out = Vec::new();
    for (g, d) in by_degree {
        equal_degree_split(&g, d, p, rng, &mut out);
    }
    out
}

fn equal_degree_split(g: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(fp_monic(g, p));
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let mut b = fp_powmod(&a, &exp, g, p);
        b = fp_sub(&b, &vec![1], p);
        let c = fp_gcd(g, &b, p);
        if c.len() > 1 && c.len() < g.len() {
            let q = fp_divrem(g, &c, p).0;
            equal_degree_split(&c, d, p, rng, out);
            equal_degree_split(&q, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// integer polynomials

fn z_trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

fn z_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn z_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

fn z_to_fp(a: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = a
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_to_z(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let g = integer_gcd(a.iter().cloned());
    if g.is_zero() {
        return a.clone();
    }
    let mut out: ZPoly = a.iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out.iter_mut().for_each(|c| *c = -&*c);
    }
    out
}

/// Exact quotient over Z, or `None` when `b` does not divide `a`.
fn z_divide(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut r = a.clone();
    z_trim(&mut r);
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while !r.is_empty() {
        if r.len() < b.len() {
            return None;
        }
        let (c, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        z_trim(&mut r);
    }
    Some(q)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..20_000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factors a squarefree primitive integer polynomial of positive degree into
/// irreducibles over Z (primitive, positive leading coefficient). Returns
/// `None` when the recombination search would exceed the built-in limits.
pub fn factor_univariate_integer(f: &[BigInt]) -> Option<Vec<Vec<BigInt>>> {
    let mut f: ZPoly = f.to_vec();
    z_trim(&mut f);
    let f = z_primitive(&f);
    let n = f.len().checked_sub(1)?;
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return Some(vec![f]);
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // pick the prime with the fewest modular factors among the first few good ones
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut good = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = fp_monic(&z_to_fp(&f, p), p);
        if fp.len() != n + 1 {
            continue;
        }
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let factors = fp_factor(&fp, p, &mut rng);
        if factors.len() == 1 {
            return Some(vec![f]);
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        good += 1;
        if good >= 5 {
            break;
        }
    }
    let (p, modular) = best?;
    if modular.len() > MAX_MODULAR_FACTORS {
        return None;
    }

    // coefficient bound for lc * (any factor), then the lifting modulus
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, k);
    Some(recombine(f, lifted, &modulus))
}

/// Lifts `f = lc * prod g_i (mod p)` with monic `g_i` to modulus `p^k`.
fn hensel_lift(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let target = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = lc.modinv(&target).expect("lc is a unit mod p");
    let f_monic = z_mod(&f.iter().map(|c| c * &lc_inv).collect(), &target);

    // partial-fraction coefficients: sum_i a_i * prod_{j != i} g_j = 1 (mod p)
    let cofactor_inverses: Vec<FpPoly> = (0..factors.len())
        .map(|i| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![1u64], |acc, (_, g)| fp_mul(&acc, g, p));
            fp_inverse_mod(&others, &factors[i], p).expect("modular factors are coprime")
        })
        .collect();

    let mut lifted: Vec<ZPoly> = factors.iter().map(fp_to_z).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = lifted
            .iter()
            .fold(vec![BigInt::one()], |acc, g| z_mod(&z_mul(&acc, g), &next));
        let diff: ZPoly = (0..f_monic.len().max(prod.len()))
            .map(|i| {
                let a = f_monic.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &pj
            })
            .collect();
        let e = z_to_fp(&diff, p);
        if !e.is_empty() {
            for (g, a) in lifted.iter_mut().zip(&cofactor_inverses) {
                let gp = z_to_fp(g, p);
                let delta = fp_rem(&fp_mul(&e, a, p), &gp, p);
                for (i, c) in delta.iter().enumerate() {
                    g[i] += &pj * BigInt::from(*c);
                }
            }
        }
        pj = next;
    }
    lifted
}

fn recombine(mut f: ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = f.last().unwrap().clone();
        let r = remaining.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let mut cand = vec![lc.clone()];
            for &i in &combo {
                cand = z_mod(&z_mul(&cand, &remaining[i]), modulus);
            }
            let cand = z_primitive(&z_symmetric(&cand, modulus));
            let constant_ok = f[0].is_zero() || cand[0].is_zero() || (&f[0] % &cand[0]).is_zero();
            if constant_ok {
                if let Some(q) = z_divide(&f, &cand) {
                    found.push(cand);
                    f = z_primitive(&q);
                    for &i in combo.iter().rev() {
                        remaining.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination in lexicographic order
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if combo[i] < r - size + i {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if f.len() > 1 {
        found.push(z_primitive(&f));
    }
    found
}

// ---------------------------------------------------------------------------
// forms

/// Result of factoring a squarefree form over Q.
#[derive(Clone, Debug, PartialEq)]
pub struct FormFactorization {
    /// Normalized factors whose product is the input up to a constant.
    pub factors: Vec<Polynomial>,
    /// True when every factor is certified irreducible over Q.
    pub verified: bool,
}

fn integer_coefficients(p: &Polynomial) -> Polynomial {
    p.normalize()
}

fn to_zpoly_in(p: &Polynomial, var: usize) -> ZPoly {
    let p = integer_coefficients(p);
    let d = p.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exponent(var) as usize] = c.numer().clone();
    }
    z_trim(&mut out);
    out
}

/// Homogeneous `sum_j q_j u^j w^(k - j)` from univariate `q`.
fn rehomogenize_binary(q: &ZPoly, ring: &Ring, u: usize, w: usize) -> Polynomial {
    let k = (q.len() - 1) as u32;
    let n = ring.nvars();
    Polynomial::from_terms(
        ring,
        q.iter().enumerate().map(|(j, c)| {
            let mut e = vec![0u32; n];
            e[u] += j as u32;
            e[w] += k - j as u32;
            (Monomial::new(e), Rational::from_integer(c.clone()))
        }),
    )
}

fn factor_binary(h: &Polynomial, u: usize, w: usize) -> FormFactorization {
    // w does not divide h, so h(u, 1) keeps full degree
    let g = to_zpoly_in(&h.specialize(w, &Rational::one()), u);
    match factor_univariate_integer(&g) {
        Some(fs) => FormFactorization {
            factors: fs
                .iter()
                .map(|q| rehomogenize_binary(q, h.ring(), u, w).normalize())
                .collect(),
            verified: true,
        },
        None => FormFactorization {
            factors: vec![h.normalize()],
            verified: false,
        },
    }
}

/// Restriction of `h` to the plane spanned by two random integer vectors.
fn random_slice(h: &Polynomial, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = Ring::new(&["s", "w"]).unwrap();
    let images: Vec<Polynomial> = (0..h.nvars())
        .map(|_| {
            let a = rng.gen_range(-6i64..=6);
            let b = rng.gen_range(-6i64..=6);
            Polynomial::from_terms(
                &ring,
                [
                    (Monomial::new(vec![1, 0]), Rational::from_integer(a.into())),
                    (Monomial::new(vec![0, 1]), Rational::from_integer(b.into())),
                ],
            )
        })
        .collect();
    let mut out = Polynomial::zero(&ring);
    for (m, c) in h.terms() {
        let mut t = Polynomial::constant(&ring, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = &t * &images[i].pow(e);
            }
        }
        out = &out + &t;
    }
    out
}

fn slice_is_irreducible(slice: &Polynomial, degree: u32) -> bool {
    if slice.degree() != super::Degree::Finite(degree) {
        return false;
    }
    // a factor of w would make the slice reducible unless degree is 1
    let w_divides = slice.terms().all(|(m, _)| m.exponent(1) > 0);
    if w_divides {
        return degree == 1;
    }
    let f = factor_binary(slice, 0, 1);
    f.verified && f.factors.len() == 1
}

fn kronecker_split(h: &Polynomial, used: &[usize]) -> Option<Vec<Polynomial>> {
    let d = h.degree().finite()? as usize;
    let v = *used.last().unwrap();
    let rest: Vec<usize> = used[..used.len() - 1].to_vec();
    let base = d + 1;
    let g = h.specialize(v, &Rational::one()).normalize();
    let weight = |m: &Monomial| -> usize {
        rest.iter()
            .enumerate()
            .map(|(k, &var)| m.exponent(var) as usize * base.pow(k as u32))
            .sum()
    };
    let max_deg = g.terms().map(|(m, _)| weight(m)).max()?;
    if max_deg > MAX_KRONECKER_DEGREE {
        return None;
    }
    let zring = Ring::new(&["z"]).unwrap();
    let image = Polynomial::from_terms(
        &zring,
        g.terms()
            .map(|(m, c)| (Monomial::new(vec![weight(m) as u32]), c.clone())),
    );
    // univariate irreducible factors of the image, with multiplicity
    let mut pieces: Vec<ZPoly> = Vec::new();
    for (sq, e) in squarefree_decomposition(&image).ok()? {
        let fs = factor_univariate_integer(&to_zpoly_in(&sq, 0))?;
        for f in fs {
            for _ in 0..e {
                pieces.push(f.clone());
            }
        }
    }
    if pieces.len() > MAX_KRONECKER_FACTORS {
        return None;
    }
    let unpack = |q: &ZPoly| -> Option<Polynomial> {
        let mut terms = Vec::new();
        for (e, c) in q.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; h.nvars()];
            let mut rem = e;
            for &var in &rest {
                exps[var] = (rem % base) as u32;
                rem /= base;
            }
            if rem != 0 {
                return None;
            }
            terms.push((Monomial::new(exps), Rational::from_integer(c.clone())));
        }
        Some(Polynomial::from_terms(h.ring(), terms))
    };

    let mut current = g;
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pieces.len() {
        let r = pieces.len();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let prod = combo
                .iter()
                .fold(vec![BigInt::one()], |acc, &i| z_mul(&acc, &pieces[i]));
            if let Some(cand) = unpack(&prod) {
                if !cand.is_constant() {
                    if let Ok(q) = current.exact_div(&cand) {
                        found.push(cand);
                        current = q;
                        for &i in combo.iter().rev() {
                            pieces.remove(i);
                        }
                        continue 'outer;
                    }
                }
            }
            let mut i = size;
            loop {
                if i == 0 {
                    size += 1;
                    continue 'outer;
                }
                i -= 1;
                if combo[i] < r - size + i {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if !current.is_constant() {
        found.push(current);
    }
    // restore the dehomogenized variable
    Some(
        found
            .into_iter()
            .map(|a| {
                let k = a.degree().finite().unwrap();
                Polynomial::from_terms(
                    h.ring(),
                    a.terms().map(|(m, c)| {
                        let mut m = m.clone();
                        m.exponents_mut()[v] = k - m.degree();
                        (m, c.clone())
                    }),
                )
                .normalize()
            })
            .collect(),
    )
}

/// Factors a squarefree homogeneous polynomial into Q-irreducible forms.
///
/// Precondition: `h` is homogeneous, squarefree and non-constant.
pub fn factor_homogeneous(h: &Polynomial) -> FormFactorization {
    debug_assert!(h.is_homogeneous());
    let mut h = h.normalize();
    let mut factors = Vec::new();
    for v in 0..h.nvars() {
        if !h.is_zero() && h.terms().all(|(m, _)| m.exponent(v) > 0) {
            let x = Polynomial::var(h.ring(), v);
            factors.push(x.clone());
            h = h.exact_div(&x).expect("variable divides");
        }
    }
    if h.is_constant() {
        return FormFactorization {
            factors,
            verified: true,
        };
    }
    let used = h.variables_used();
    let d = h.degree().finite().unwrap();
    let mut verified = true;
    match used.len() {
        1 => unreachable!("variable factors were extracted"),
        2 => {
            let f = factor_binary(&h, used[0], used[1]);
            verified &= f.verified;
            factors.extend(f.factors);
        }
        _ => {
            if d == 1 || (d == 2 && essential_variable_count(&h) >= 3) {
                factors.push(h);
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
                let certified = (0..3).any(|_| slice_is_irreducible(&random_slice(&h, &mut rng), d));
                if certified {
                    factors.push(h);
                } else {
                    match kronecker_split(&h, &used) {
                        Some(fs) => factors.extend(fs),
                        None => {
                            verified = false;
                            factors.push(h);
                        }
                    }
                }
            }
        }
    }
    factors.sort();
    FormFactorization { factors, verified }
}

/// Number of linear forms a homogeneous polynomial essentially depends on:
/// the dimension of the span of its partial derivatives of order `deg - 1`.
pub fn essential_variable_count(h: &Polynomial) -> usize {
    let d = match h.degree().finite() {
        Some(d) if d > 0 => d,
        _ => return 0,
    };
    let mut layer = vec![h.clone()];
    for _ in 1..d {
        let mut next: Vec<Polynomial> = Vec::new();
        for p in &layer {
            for v in 0..h.nvars() {
                let q = p.derivative(v);
                if !q.is_zero() && !next.contains(&q) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    let n = h.nvars();
    let rows: Vec<Vec<Rational>> = layer
        .iter()
        .map(|p| (0..n).map(|v| p.coefficient(&Monomial::var(n, v))).collect())
        .collect();
    rational_rank(rows)
}

pub(crate) fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].recip();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] * &inv;
                for c in col..ncols {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn p3(s: &str) -> Polynomial {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        parse_polynomial(s, Some(&r)).unwrap()
    }

    fn sorted(mut v: Vec<ZPoly>) -> Vec<ZPoly> {
        v.sort();
        v
    }

    #[test]
    fn univariate_irreducible_and_split_cases() {
        // x^2 + 1 is irreducible
        assert_eq!(factor_univariate_integer(&z(&[1, 0, 1])).unwrap(), vec![z(&[1, 0, 1])]);
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let got = sorted(factor_univariate_integer(&z(&[-1, 0, 0, 0, 1])).unwrap());
        assert_eq!(got, sorted(vec![z(&[-1, 1]), z(&[1, 1]), z(&[1, 0, 1])]));
        // x^4 + 1 splits modulo every prime but is irreducible over Z
        assert_eq!(
            factor_univariate_integer(&z(&[1, 0, 0, 0, 1])).unwrap(),
            vec![z(&[1, 0, 0, 0, 1])]
        );
    }

    #[test]
    fn univariate_with_nontrivial_leading_coefficient() {
        // (6x + 5)(10x^2 - 3)(x + 7)
        let f = z_mul(&z_mul(&z(&[5, 6]), &z(&[-3, 0, 10])), &z(&[7, 1]));
        let got = sorted(factor_univariate_integer(&f).unwrap());
        assert_eq!(got, sorted(vec![z(&[5, 6]), z(&[-3, 0, 10]), z(&[7, 1])]));
    }

    #[test]
    fn univariate_swinnerton_dyer_like_degree_eight() {
        // product of two irreducible quartics with many modular factors
        let a = z(&[1, 0, -10, 0, 1]); // x^4 - 10x^2 + 1
        let b = z(&[1, 0, 0, 0, 1]);
        let got = sorted(factor_univariate_integer(&z_mul(&a, &b)).unwrap());
        assert_eq!(got, sorted(vec![a, b]));
    }

    #[test]
    fn binary_forms_split_into_rational_factors() {
        let h = p3("(x - y)*(x + 2*y)*(x^2 + y^2)");
        let f = factor_homogeneous(&h);
        assert!(f.verified);
        let mut want = vec![p3("x - y"), p3("x + 2*y"), p3("x^2 + y^2")];
        want.sort();
        assert_eq!(f.factors, want);
    }

    #[test]
    fn variable_factors_are_extracted() {
        let f = factor_homogeneous(&p3("x*y*z"));
        assert!(f.verified);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn ternary_forms() {
        let f = factor_homogeneous(&p3("x^2 + y^2 + z^2"));
        assert!(f.verified);
        assert_eq!(f.factors, vec![p3("x^2 + y^2 + z^2")]);

        let f = factor_homogeneous(&p3("x^3 + y^3 + z^3"));
        assert!(f.verified);
        assert_eq!(f.factors.len(), 1);

        // product of three generic linear forms
        let h = p3("(x + 2*y - z)*(3*x - y + z)*(x + y + 4*z)");
        let f = factor_homogeneous(&h);
        assert!(f.verified);
        let mut want = vec![p3("x + 2*y - z"), p3("3*x - y + z"), p3("x + y + 4*z")];
        want.sort();
        assert_eq!(f.factors, want);

        // quadric times linear form
        let h = p3("(x^2 + y*z + 2*z^2)*(x - y + z)");
        let f = factor_homogeneous(&h);
        assert!(f.verified);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn essential_variables() {
        assert_eq!(essential_variable_count(&p3("x^2 + y^2 + z^2")), 3);
        assert_eq!(essential_variable_count(&p3("(x + y)^2 + z^2")), 2);
        assert_eq!(essential_variable_count(&p3("(x + y - z)^3")), 1);
        assert_eq!(essential_variable_count(&p3("x*y*z")), 3);
    }
}
