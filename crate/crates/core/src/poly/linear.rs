use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

/// Square rational matrix, row-major.
pub type RationalMatrix = Vec<Vec<Rational>>;

fn check_square(m: &RationalMatrix, n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::MatrixShape {
            rows: m.len(),
            cols: m.first().map_or(0, |r| r.len()),
            expected: n,
        });
    }
    Ok(())
}

/// Inverse by Gauss-Jordan elimination; `SingularMatrix` if not invertible.
pub fn invert(m: &RationalMatrix) -> Result<RationalMatrix> {
    let n = m.len();
    check_square(m, n)?;
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn identity(n: usize) -> RationalMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// `f(Mx)`: each variable `x_i` is replaced by `sum_j M[i][j] x_j`.
pub fn substitute_linear(f: &Polynomial, m: &RationalMatrix) -> Result<Polynomial> {
    let n = f.nvars();
    check_square(m, n)?;
    invert(m)?;
    let ring = f.ring();
    let images: Vec<Polynomial> = m
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                ring,
                row.iter()
                    .enumerate()
                    .map(|(j, c)| (Monomial::var(n, j), c.clone())),
            )
        })
        .collect();
    // powers[i][k] = images[i]^k, filled lazily up to the degree needed
    let mut powers: Vec<Vec<Polynomial>> = images
        .iter()
        .map(|_| vec![Polynomial::one(ring)])
        .collect();
    let mut out = Polynomial::zero(ring);
    for (mono, c) in f.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        for (i, &e) in mono.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap() * &images[i];
                powers[i].push(next);
            }
            if e > 0 {
                term = &term * &powers[i][e as usize];
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Random invertible matrix with small rational entries (numerators in -3..=3,
/// denominators in 1..=2).
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RationalMatrix {
    loop {
        let m: RationalMatrix = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        Rational::new(
                            BigInt::from(rng.gen_range(-3i64..=3)),
                            BigInt::from(rng.gen_range(1i64..=2)),
                        )
                    })
                    .collect()
            })
            .collect();
        if invert(&m).is_ok() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Polynomial {
        let r = Ring::new(&["x", "y"]).unwrap();
        parse_polynomial(s, Some(&r)).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_and_swap() {
        let f = p("y^2 - x^3 - 1");
        assert_eq!(substitute_linear(&f, &identity(2)).unwrap(), f);
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(substitute_linear(&p("x"), &swap).unwrap(), p("y"));
    }

    #[test]
    fn singular_and_misshapen_matrices_are_rejected() {
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(substitute_linear(&p("x"), &sing), Err(Error::SingularMatrix));
        let tall = vec![vec![q(1), q(0)]];
        assert!(matches!(
            substitute_linear(&p("x"), &tall),
            Err(Error::MatrixShape { .. })
        ));
    }

    #[test]
    fn degree_is_preserved_over_random_changes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = p("x^3*y - 2*x*y + y^2 - 5");
        for _ in 0..20 {
            let m = random_invertible(2, &mut rng);
            assert_eq!(substitute_linear(&f, &m).unwrap().degree(), f.degree());
        }
    }

    #[test]
    fn inverse_change_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = p("x^2*y - 3/2*x + 1");
        for _ in 0..10 {
            let m = random_invertible(2, &mut rng);
            let g = substitute_linear(&f, &m).unwrap();
            let back = substitute_linear(&g, &invert(&m).unwrap()).unwrap();
            assert_eq!(back, f);
        }
    }
}
