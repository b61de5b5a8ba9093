//! Floating-point verification: fibers of generic projections, sheets at
//! infinity and limit directions.

pub mod projection;
pub mod roots;
pub mod sheets;

pub use projection::{projective_distance, Projection};
pub use sheets::{
    analyze_sheets, certify_projection, default_radii, limit_directions, sheet_count, ConeRegion,
    Direction, LimitDirections, SheetAnalysis, SheetParams, SheetReport, TrackDiagnostics,
};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::poly::Polynomial;

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![c64(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients (ascending in `s`) of `f(a + s b)`.
pub fn restrict_to_line(f: &Polynomial, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = f.nvars();
    assert!(a.len() == n && b.len() == n, "line dimension differs from ring");
    let mut powers: Vec<Vec<Vec<Complex64>>> = (0..n).map(|_| vec![vec![c64(1.0, 0.0)]]).collect();
    let mut out: Vec<Complex64> = vec![c64(0.0, 0.0)];
    for (m, c) in f.terms() {
        let mut term = vec![c64(c.to_f64().unwrap_or(f64::NAN), 0.0)];
        for (i, &e) in m.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = poly_mul(powers[i].last().unwrap(), &[a[i], b[i]]);
                powers[i].push(next);
            }
            if e > 0 {
                term = poly_mul(&term, &powers[i][e as usize]);
            }
        }
        if term.len() > out.len() {
            out.resize(term.len(), c64(0.0, 0.0));
        }
        for (k, t) in term.into_iter().enumerate() {
            out[k] += t;
        }
    }
    out
}

/// Evaluates `f` at a complex point.
pub fn eval_complex(f: &Polynomial, x: &[Complex64]) -> Complex64 {
    f.terms()
        .map(|(m, c)| {
            m.exponents()
                .iter()
                .zip(x)
                .fold(c64(c.to_f64().unwrap_or(f64::NAN), 0.0), |acc, (&e, &xi)| {
                    acc * xi.powu(e)
                })
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn line_restriction_matches_pointwise_evaluation() {
        let f = parse_polynomial("x^2*y - 3*y + 1/2", None).unwrap();
        let a = [c64(0.3, -1.0), c64(2.0, 0.5)];
        let b = [c64(-0.7, 0.2), c64(1.1, 1.3)];
        let coeffs = restrict_to_line(&f, &a, &b);
        assert_eq!(coeffs.len(), 4);
        for s in [c64(0.0, 0.0), c64(1.5, -0.5), c64(-2.0, 3.0)] {
            let x: Vec<Complex64> = a.iter().zip(&b).map(|(p, q)| p + s * q).collect();
            let direct = eval_complex(&f, &x);
            assert!((roots::eval(&coeffs, s) - direct).norm() < 1e-9 * (1.0 + direct.norm()));
        }
    }
}
