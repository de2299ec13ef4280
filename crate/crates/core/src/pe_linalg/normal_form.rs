//! Normal form of a Euclidean-skew matrix: an orthonormal basis in which it
//! is block diagonal with blocks `[[0, −λ_i], [λ_i, 0]]`, `0 < λ₁ ≤ … ≤ λ_r`,
//! followed by zeros.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanNormalForm {
    /// Rotation rates, ascending.
    pub angles: Vec<f64>,
    /// Orthonormal basis as columns: `(b₁, b₂)` per rate, then the kernel.
    pub basis: Matrix<f64>,
}

impl EuclideanNormalForm {
    pub fn rank(&self) -> usize {
        2 * self.angles.len()
    }

    /// The block-diagonal matrix the basis is supposed to realize.
    pub fn block_form(&self) -> Matrix<f64> {
        let n = self.basis.rows();
        let mut m = Matrix::zeros(n, n);
        for (k, &l) in self.angles.iter().enumerate() {
            m[(2 * k, 2 * k + 1)] = -l;
            m[(2 * k + 1, 2 * k)] = l;
        }
        m
    }
}

fn fix_sign(v: &mut DVector<f64>, threshold: f64) {
    if let Some(first) = v.iter().find(|x| x.abs() > threshold) {
        if *first < 0.0 {
            *v *= -1.0;
        }
    }
}

pub fn euclidean_skew_normal_form<T: Scalar>(
    b: &Matrix<T>,
    tol: Tolerance,
) -> Result<EuclideanNormalForm> {
    if !b.is_antisymmetric(tol) {
        return Err(Error::NotSkew);
    }
    let n = b.rows();
    let bm: DMatrix<f64> = b.to_nalgebra();
    if n == 0 {
        return Ok(EuclideanNormalForm { angles: vec![], basis: Matrix::zeros(0, 0) });
    }
    // −B² = BᵀB is positive semidefinite with eigenvalues λ², each twice.
    let gram = bm.transpose() * &bm;
    let eig = SymmetricEigen::new(gram);
    let scale = bm.abs().max().max(f64::MIN_POSITIVE);
    let zero_threshold = tol.value() * scale;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());

    let mut kernel: Vec<DVector<f64>> = Vec::new();
    let mut nonzero: Vec<DVector<f64>> = Vec::new();
    for &i in &order {
        let v = eig.eigenvectors.column(i).into_owned();
        if eig.eigenvalues[i].max(0.0).sqrt() <= zero_threshold {
            kernel.push(v);
        } else {
            nonzero.push(v);
        }
    }

    // Greedy pairing: take the candidate with the largest residual against the
    // vectors already chosen, pair it with B·v/λ. Candidates arrive sorted by
    // λ, so planes come out in ascending order.
    let mut chosen: Vec<DVector<f64>> = Vec::new();
    let mut angles = Vec::new();
    let mut remaining = nonzero;
    while !remaining.is_empty() {
        let residuals: Vec<DVector<f64>> = remaining
            .iter()
            .map(|v| {
                let mut r = v.clone();
                for c in &chosen {
                    r -= c * c.dot(v);
                }
                r
            })
            .collect();
        // the first (smallest λ) candidate with a substantial residual
        let Some(idx) = residuals.iter().position(|r| r.norm() > 0.5) else {
            break;
        };
        let mut b1 = residuals[idx].normalize();
        fix_sign(&mut b1, 1e-12);
        let image = &bm * &b1;
        let lambda = image.norm();
        let b2 = image / lambda;
        chosen.push(b1);
        chosen.push(b2);
        angles.push(lambda);
        remaining.remove(idx);
    }

    let mut columns = chosen;
    for mut k in kernel {
        for c in &columns {
            let proj = c.dot(&k);
            k -= c * proj;
        }
        let norm = k.norm();
        if norm > 1e-12 {
            k /= norm;
            fix_sign(&mut k, 1e-12);
            columns.push(k);
        }
    }
    if columns.len() != n {
        return Err(Error::Inconsistent {
            what: "normal form basis size and dimension",
            deviation: (n as f64 - columns.len() as f64).abs(),
            tolerance: 0.0,
        });
    }
    let basis = Matrix::from_fn(n, n, |i, j| columns[j][i]);
    Ok(EuclideanNormalForm { angles, basis })
}
