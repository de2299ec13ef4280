use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::algebra::NilMetricAlgebra;
use crate::curvature::ricci::j_plus_minus;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// Spectra of `𝒥⁺` on `𝔷` and `−𝒥⁻` on `𝔷^⊥` for a Euclidean metric.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EuclideanSpectralReport {
    pub p: usize,
    /// `dim [𝔑, 𝔑]`.
    pub r: usize,
    /// Nonzero eigenvalues of `𝒥⁺|𝔷`, ascending.
    pub mu: Vec<f64>,
    /// Negated nonzero eigenvalues of `𝒥⁻|𝔷^⊥`, ascending.
    pub lambda: Vec<f64>,
    pub scalar: f64,
    /// Orthonormal eigenbasis as columns: `𝔷` first, then `𝔷^⊥`.
    #[serde(skip)]
    pub basis: Matrix<f64>,
}

impl EuclideanSpectralReport {
    pub fn rank_plus(&self) -> usize {
        self.mu.len()
    }

    pub fn rank_minus(&self) -> usize {
        self.lambda.len()
    }
}

/// Orthonormal basis (for `G`) of the span of `family`.
fn orthonormal(gram: &DMatrix<f64>, family: &[Vec<f64>]) -> Vec<DMatrix<f64>> {
    let mut out: Vec<DMatrix<f64>> = Vec::new();
    for v in family {
        let mut w = DMatrix::from_column_slice(v.len(), 1, v);
        for u in &out {
            let c = (u.transpose() * gram * &w)[(0, 0)];
            w -= u * c;
        }
        let norm = (w.transpose() * gram * &w)[(0, 0)].sqrt();
        if norm > 1e-12 {
            out.push(w / norm);
        }
    }
    out
}

/// Restricts the `G`-symmetric `endo` to the span of the orthonormal `basis`
/// and diagonalizes. Returns eigenvalues and eigenvectors in ambient coordinates.
fn restricted_spectrum(gram: &DMatrix<f64>, endo: &DMatrix<f64>, basis: &[DMatrix<f64>]) -> (Vec<f64>, Vec<DMatrix<f64>>) {
    let k = basis.len();
    if k == 0 {
        return (vec![], vec![]);
    }
    let m = DMatrix::from_fn(k, k, |i, j| (basis[i].transpose() * gram * endo * &basis[j])[(0, 0)]);
    let sym = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let mut v = DMatrix::zeros(basis[0].nrows(), 1);
            for (c, b) in eig.eigenvectors.column(i).iter().zip(basis) {
                v += b * *c;
            }
            v
        })
        .collect();
    (values, vectors)
}

pub fn euclidean_spectral_report<T: Scalar>(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<EuclideanSpectralReport> {
    if !alg.space().is_euclidean() {
        return Err(Error::NotEuclidean);
    }
    let n = alg.dim();
    let gram = alg.gram().to_nalgebra();
    let j = j_plus_minus(alg);
    let plus = j.plus.to_nalgebra();
    let minus = j.minus.to_nalgebra();
    let to_f64 = |vs: &[Vec<T>]| -> Vec<Vec<f64>> { vs.iter().map(|v| v.iter().map(Scalar::to_f64).collect()).collect() };
    let z = orthonormal(&gram, &to_f64(alg.center()));
    let zp = orthonormal(&gram, &to_f64(&alg.center_orthogonal(tol)));
    let (mu_all, mu_vecs) = restricted_spectrum(&gram, &plus, &z);
    let (minus_all, minus_vecs) = restricted_spectrum(&gram, &minus, &zp);
    let scale = mu_all.iter().chain(&minus_all).fold(0.0_f64, |a, v| a.max(v.abs())).max(1.0);
    let threshold = tol.value() * scale;
    let mu = mu_all.into_iter().filter(|v| v.abs() > threshold).collect::<Vec<_>>();
    let mut lambda: Vec<f64> = minus_all.into_iter().filter(|v| v.abs() > threshold).map(|v| -v).collect();
    lambda.sort_by(f64::total_cmp);
    let columns: Vec<Vec<f64>> = mu_vecs.iter().chain(&minus_vecs).map(|v| v.iter().copied().collect()).collect();
    Ok(EuclideanSpectralReport {
        p: alg.center_dim(),
        r: alg.derived_ideal(tol).dim(),
        mu,
        lambda,
        scalar: j.sum().trace().to_f64(),
        basis: Matrix::from_columns(n, &columns),
    })
}
