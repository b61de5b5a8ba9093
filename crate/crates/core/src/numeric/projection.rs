//! Generic linear projections `C^n -> C^p` and their kernels.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::c64;
use crate::error::{Error, Result};

/// A `p x n` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    pub matrix: Vec<Vec<Complex64>>,
}

impl Projection {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.matrix[i][j])
    }

    /// Real projection onto the listed coordinates.
    pub fn coordinates(n: usize, keep: &[usize]) -> Projection {
        Projection {
            matrix: keep
                .iter()
                .map(|&k| (0..n).map(|j| c64(if j == k { 1.0 } else { 0.0 }, 0.0)).collect())
                .collect(),
        }
    }

    /// Orthonormal basis of the kernel.
    pub fn kernel(&self) -> Result<Vec<Vec<Complex64>>> {
        let (p, n) = (self.rows(), self.cols());
        if p == 0 || n == 0 || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("projection matrix is empty or ragged".into()));
        }
        let m = self.to_matrix();
        let gram = m.adjoint() * &m;
        let eig = gram.symmetric_eigen();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let top = eig.eigenvalues[idx[n - 1]].abs().max(f64::MIN_POSITIVE);
        let null: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&i| eig.eigenvalues[i].abs() <= 1e-12 * top)
            .collect();
        if null.len() != n.saturating_sub(p) {
            return Err(Error::InvalidArgument(format!(
                "projection has rank {} but {p} rows",
                n - null.len()
            )));
        }
        Ok(null
            .iter()
            .map(|&i| (0..n).map(|r| eig.eigenvectors[(r, i)]).collect())
            .collect())
    }

    /// Distance from a unit vector to the kernel.
    pub fn kernel_distance(&self, u: &[Complex64]) -> Result<f64> {
        let kernel = self.kernel()?;
        let mut residual = u.to_vec();
        for k in &kernel {
            let coeff: Complex64 = k.iter().zip(u).map(|(a, b)| a.conj() * b).sum();
            for (r, a) in residual.iter_mut().zip(k) {
                *r -= coeff * a;
            }
        }
        Ok(norm(&residual) / norm(u).max(f64::MIN_POSITIVE))
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|c| c / n).collect()
}

/// Distance between the complex lines spanned by unit vectors.
pub fn projective_distance(u: &[Complex64], w: &[Complex64]) -> f64 {
    let ip: Complex64 = u.iter().zip(w).map(|(a, b)| a.conj() * b).sum();
    (1.0 - ip.norm_sqr().min(1.0)).max(0.0).sqrt()
}

/// Coordinates adapted to a hypersurface projection: `x = B w + s kappa` with
/// `P B = I` and `P kappa = 0`.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    /// Columns of `B`, each of length `n`.
    pub lift: Vec<Vec<Complex64>>,
    pub kernel: Vec<Complex64>,
    pub projection: Projection,
}

impl Frame {
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Frame {
        loop {
            let q = DMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let Some(inv) = q.clone().try_inverse() else {
                continue;
            };
            let p = n - 1;
            let kernel: Vec<Complex64> = (0..n).map(|i| q[(i, p)]).collect();
            return Frame {
                lift: (0..p).map(|j| (0..n).map(|i| q[(i, j)]).collect()).collect(),
                kernel: normalized(&kernel),
                projection: Projection {
                    matrix: (0..p).map(|i| (0..n).map(|j| inv[(i, j)]).collect()).collect(),
                },
            };
        }
    }

    pub fn from_projection(projection: &Projection, n: usize) -> Result<Frame> {
        if projection.cols() != n || projection.rows() + 1 != n {
            return Err(Error::InvalidArgument(format!(
                "projection must be {}x{n}, got {}x{}",
                n.saturating_sub(1),
                projection.rows(),
                projection.cols()
            )));
        }
        let kernel = projection.kernel()?.remove(0);
        let pinv = projection
            .to_matrix()
            .pseudo_inverse(1e-12)
            .map_err(|e| Error::Numerical(e.to_string()))?;
        Ok(Frame {
            lift: (0..n - 1).map(|j| (0..n).map(|i| pinv[(i, j)]).collect()).collect(),
            kernel,
            projection: projection.clone(),
        })
    }

    /// `B v` for a base point `v` in `C^p`.
    pub fn lift_point(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.kernel.len();
        (0..n)
            .map(|i| self.lift.iter().zip(v).map(|(col, vj)| col[i] * vj).sum())
            .collect()
    }
}
