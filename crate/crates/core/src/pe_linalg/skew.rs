use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pe_linalg::PseudoEuclideanSpace;
use crate::scalar::{Scalar, Tolerance};

/// `⟨Ju, v⟩ = −⟨u, Jv⟩` for all `u, v`, i.e. `Jᵀ G + G J = 0`.
pub fn is_skew<T: Scalar>(
    mat: &Matrix<T>,
    space: &PseudoEuclideanSpace<T>,
    tol: Tolerance,
) -> Result<bool> {
    space.check_matrix(mat)?;
    let g = space.gram();
    let s = mat.transpose().mul(g).add(&g.mul(mat));
    Ok(s.is_zero_within(tol))
}

/// Skew-symmetric endomorphism of a pseudo-Euclidean space.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewEndomorphism<T> {
    space: Arc<PseudoEuclideanSpace<T>>,
    mat: Matrix<T>,
}

impl<T: Scalar> SkewEndomorphism<T> {
    pub fn new(space: Arc<PseudoEuclideanSpace<T>>, mat: Matrix<T>, tol: Tolerance) -> Result<Self> {
        if !is_skew(&mat, &space, tol)? {
            return Err(Error::NotSkew);
        }
        Ok(SkewEndomorphism { space, mat })
    }

    pub fn zero(space: Arc<PseudoEuclideanSpace<T>>) -> Self {
        let n = space.dim();
        SkewEndomorphism { space, mat: Matrix::zeros(n, n) }
    }

    /// Skew map `G⁻¹ S` attached to an antisymmetric matrix `S`.
    pub fn from_antisymmetric(
        space: Arc<PseudoEuclideanSpace<T>>,
        s: &Matrix<T>,
        tol: Tolerance,
    ) -> Result<Self> {
        space.check_matrix(s)?;
        if !s.is_antisymmetric(tol) {
            return Err(Error::NotSkew);
        }
        let mat = space.gram_inverse().mul(s);
        Ok(SkewEndomorphism { space, mat })
    }

    pub fn space(&self) -> &Arc<PseudoEuclideanSpace<T>> {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.mat
    }

    pub(crate) fn same_space(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space.gram() == other.space.gram()
    }
}

/// `⟨J, K⟩* = −tr(J ∘ K)`.
pub fn star_product<T: Scalar>(j: &SkewEndomorphism<T>, k: &SkewEndomorphism<T>) -> Result<T> {
    if !j.same_space(k) {
        return Err(Error::SpaceMismatch);
    }
    Ok(-trace_of_product(j.matrix(), k.matrix()))
}

/// `tr(A·B)` without forming the product.
pub fn trace_of_product<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    assert_eq!(a.cols(), b.rows());
    assert_eq!(a.rows(), b.cols());
    let mut acc = T::zero();
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            let y = &b[(k, i)];
            if !x.is_zero() && !y.is_zero() {
                acc = acc + x.clone() * y.clone();
            }
        }
    }
    acc
}
