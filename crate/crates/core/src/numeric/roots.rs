//! Univariate complex root finding by Aberth-Ehrlich iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

/// Horner evaluation of `p` and `p'` at `z`; coefficients are ascending.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Drops leading coefficients with modulus at most `rel * max|c|`.
pub fn trim(coeffs: &[Complex64], rel: f64) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = coeffs.to_vec();
    while let Some(c) = out.last() {
        if c.norm() <= rel * scale {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// All complex roots of the polynomial with ascending coefficients `coeffs`,
/// to relative tolerance `tol`. The leading coefficient must be nonzero.
pub fn roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() || coeffs[n].norm() == 0.0 {
        return Err(Error::Numerical("leading coefficient vanishes".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numerical("non-finite coefficient".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    // Fujiwara bound on root moduli
    let bound = (0..n)
        .map(|k| {
            let m = monic[k].norm();
            let m = if k == 0 { m / 2.0 } else { m };
            m.powf(1.0 / (n - k) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&monic, z[k]);
            // stop once the residual is at rounding level
            let r = z[k].norm();
            let roundoff = monic.iter().rev().fold(0.0, |acc, c| acc * r + c.norm()) * 4.0 * f64::EPSILON * n as f64;
            if p.norm() <= roundoff {
                done[k] = true;
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                Complex64::new(radius * 1e-3, radius * 1e-3)
            } else {
                p / dp
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 { ratio } else { ratio / denom };
            z[k] -= step;
            if step.norm() <= tol * (1.0 + z[k].norm()) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(z);
        }
    }
    Err(Error::Numerical(format!(
        "root iteration did not converge for a degree {n} polynomial"
    )))
}

/// Number of distinct roots after merging those within `sep` of each other.
pub fn count_distinct(roots: &[Complex64], sep: f64) -> usize {
    let mut reps: Vec<Complex64> = Vec::new();
    for &r in roots {
        if !reps.iter().any(|q| (q - r).norm() <= sep * (1.0 + r.norm())) {
            reps.push(r);
        }
    }
    reps.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(rs: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in rs {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            p = next;
        }
        p
    }

    #[test]
    fn recovers_known_roots() {
        let rs = [c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 3.0), c(0.25, -0.25)];
        let found = roots(&from_roots(&rs), 1e-14).unwrap();
        for r in rs {
            let best = found.iter().map(|z| (z - r).norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-9, "missed {r}");
        }
    }

    #[test]
    fn cube_roots_of_unity() {
        let found = roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 1e-14).unwrap();
        assert_eq!(found.len(), 3);
        for z in found {
            assert!((z.powu(3) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn tight_cluster_is_resolved() {
        // (s - 1)^4 = 1e-8: four roots on a circle of radius 1e-2 around 1
        let mut p = from_roots(&[c(1.0, 0.0); 4]);
        p[0] -= 1e-8;
        let found = roots(&p, 1e-12).unwrap();
        for z in &found {
            assert!(((z - 1.0).norm() - 1e-2).abs() < 1e-8);
        }
        assert_eq!(count_distinct(&found, 1e-4), 4);
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        assert!(roots(&[c(1.0, 0.0), c(0.0, 0.0)], 1e-12).is_err());
        assert_eq!(trim(&[c(1.0, 0.0), c(1e-20, 0.0)], 1e-14).len(), 1);
    }

    #[test]
    fn distinct_counting() {
        let rs = [c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(2.0, 0.0)];
        assert_eq!(count_distinct(&rs, 1e-8), 2);
    }
}
