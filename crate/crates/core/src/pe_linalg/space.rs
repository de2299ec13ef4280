use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// Signature `(q, n − q)`: `q` negative directions out of `n`, with `2q <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    q: usize,
    n: usize,
}

impl Signature {
    pub fn new(q: usize, n: usize) -> Result<Self> {
        if n == 0 || 2 * q > n {
            return Err(Error::InvalidSignature { q, n });
        }
        Ok(Signature { q, n })
    }

    /// Number of negative directions.
    pub fn q(self) -> usize {
        self.q
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Number of positive directions.
    pub fn positive(self) -> usize {
        self.n - self.q
    }

    /// Dimension of the Euclidean tail of a pseudo-Euclidean basis.
    pub fn euclidean_part(self) -> usize {
        self.n - 2 * self.q
    }
}

/// Gram matrix of a pseudo-Euclidean basis `(e₁, ē₁, …, e_q, ē_q, f₁, …, f_{n−2q})`.
pub fn canonical_gram<T: Scalar>(q: usize, n: usize) -> Matrix<T> {
    let mut g = Matrix::zeros(n, n);
    for i in 0..q {
        g[(2 * i, 2 * i + 1)] = T::one();
        g[(2 * i + 1, 2 * i)] = T::one();
    }
    for k in 2 * q..n {
        g[(k, k)] = T::one();
    }
    g
}

/// A real vector space with a nondegenerate symmetric bilinear form, given by
/// its Gram matrix in a distinguished basis.
///
/// Spaces built by [`make_space`] use a pseudo-Euclidean basis. Spaces built
/// from an arbitrary Gram matrix are also supported; operations that depend on
/// the block structure of a pseudo-Euclidean basis check [`Self::is_canonical`].
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoEuclideanSpace<T> {
    signature: Signature,
    gram: Matrix<T>,
    gram_inv: Matrix<T>,
    canonical: bool,
}

pub fn make_space<T: Scalar>(q: usize, n: usize) -> Result<Arc<PseudoEuclideanSpace<T>>> {
    PseudoEuclideanSpace::canonical(q, n).map(Arc::new)
}

impl<T: Scalar> PseudoEuclideanSpace<T> {
    pub fn canonical(q: usize, n: usize) -> Result<Self> {
        let signature = Signature::new(q, n)?;
        let gram = canonical_gram(q, n);
        Ok(PseudoEuclideanSpace { signature, gram_inv: gram.clone(), gram, canonical: true })
    }

    /// Space with an arbitrary symmetric nondegenerate Gram matrix; the
    /// signature is read off the matrix.
    pub fn with_gram(gram: Matrix<T>, tol: Tolerance) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        if !gram.is_symmetric(tol) {
            return Err(Error::NonSymmetricGram);
        }
        let n = gram.rows();
        let gram_inv = gram.inverse(tol).ok_or(Error::DegenerateGram)?;
        let inertia = T::symmetric_inertia(&gram, tol);
        if inertia.zero != 0 {
            return Err(Error::DegenerateGram);
        }
        let signature = Signature::new(inertia.negative, n)?;
        let canonical = gram.approx_eq(&canonical_gram(inertia.negative, n), tol);
        Ok(PseudoEuclideanSpace { signature, gram, gram_inv, canonical })
    }

    pub fn dim(&self) -> usize {
        self.signature.n
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn q(&self) -> usize {
        self.signature.q
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix<T> {
        &self.gram_inv
    }

    /// True when the distinguished basis is pseudo-Euclidean.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_euclidean(&self) -> bool {
        self.signature.q == 0
    }

    pub fn check_vector(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    pub fn check_matrix(&self, m: &Matrix<T>) -> Result<()> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: if m.rows() != self.dim() { m.rows() } else { m.cols() },
            });
        }
        Ok(())
    }

    pub fn inner(&self, u: &[T], v: &[T]) -> T {
        dot(u, &self.gram.mul_vec(v))
    }

    /// Covector `⟨v, ·⟩` in coordinates.
    pub fn lower(&self, v: &[T]) -> Vec<T> {
        self.gram.mul_vec(v)
    }

    /// Vector `x` with `⟨x, ·⟩ = covector`.
    pub fn raise(&self, covector: &[T]) -> Vec<T> {
        self.gram_inv.mul_vec(covector)
    }

    /// Gram matrix `(⟨v_i, v_j⟩)` of a family.
    pub fn gram_of(&self, family: &[Vec<T>]) -> Matrix<T> {
        let lowered: Vec<Vec<T>> = family.iter().map(|v| self.lower(v)).collect();
        Matrix::from_fn(family.len(), family.len(), |i, j| dot(&family[i], &lowered[j]))
    }

    /// Basis of the orthogonal of `span(family)`.
    pub fn orthogonal_complement(&self, family: &[Vec<T>], tol: Tolerance) -> Vec<Vec<T>> {
        if family.is_empty() {
            return (0..self.dim()).map(|k| crate::matrix::unit(self.dim(), k)).collect();
        }
        let rows: Vec<Vec<T>> = family.iter().map(|v| self.lower(v)).collect();
        Matrix::from_rows(rows).expect("uniform lengths").null_space(tol)
    }

    /// Orthogonal projection onto a nondegenerate subspace spanned by `basis`:
    /// `E (Eᵀ G E)⁻¹ Eᵀ G`.
    pub fn orthogonal_projection(&self, basis: &[Vec<T>], tol: Tolerance) -> Result<Matrix<T>> {
        let n = self.dim();
        if basis.is_empty() {
            return Ok(Matrix::zeros(n, n));
        }
        let e = Matrix::from_columns(n, basis);
        let restricted = self.gram_of(basis);
        let inv = restricted.inverse(tol).ok_or(Error::DegenerateGram)?;
        Ok(e.mul(&inv).mul(&e.transpose()).mul(&self.gram))
    }

    /// Same basis, Gram matrix multiplied by `c > 0`.
    pub fn scaled(&self, c: &T, tol: Tolerance) -> Result<Self> {
        if c.sign(tol.value()) <= 0 {
            return Err(Error::constraint("metric scale factor must be positive"));
        }
        Self::with_gram(self.gram.scale(c), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn euclidean_space_has_identity_gram() {
        let s = PseudoEuclideanSpace::<Rational>::canonical(0, 3).unwrap();
        assert_eq!(s.gram(), &Matrix::identity(3));
    }

    #[test]
    fn lorentz_three_space_gram() {
        let s = PseudoEuclideanSpace::<Rational>::canonical(1, 3).unwrap();
        let expected = Matrix::from_i64_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(s.gram(), &expected);
    }

    #[test]
    fn signature_two_five_gram() {
        let s = PseudoEuclideanSpace::<Rational>::canonical(2, 5).unwrap();
        let expected = Matrix::from_i64_rows(&[
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1],
        ]);
        assert_eq!(s.gram(), &expected);
        let inertia = Rational::symmetric_inertia(s.gram(), Tolerance::default());
        assert_eq!((inertia.negative, inertia.positive), (2, 3));
    }

    #[test]
    fn invalid_signatures_rejected() {
        assert!(matches!(
            PseudoEuclideanSpace::<f64>::canonical(2, 3),
            Err(Error::InvalidSignature { q: 2, n: 3 })
        ));
        assert!(PseudoEuclideanSpace::<f64>::canonical(0, 0).is_err());
    }

    #[test]
    fn general_gram_reads_signature() {
        let g = Matrix::<Rational>::from_i64_rows(&[vec![2, 1, 0], vec![1, -1, 0], vec![0, 0, 3]]);
        let s = PseudoEuclideanSpace::with_gram(g, Tolerance::default()).unwrap();
        assert_eq!(s.q(), 1);
        assert!(!s.is_canonical());
        let degenerate = Matrix::<Rational>::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(PseudoEuclideanSpace::with_gram(degenerate, Tolerance::default()).is_err());
    }

    #[test]
    fn complement_of_null_vector_contains_it() {
        let s = PseudoEuclideanSpace::<Rational>::canonical(1, 3).unwrap();
        let e = crate::matrix::unit::<Rational>(3, 0);
        let perp = s.orthogonal_complement(std::slice::from_ref(&e), Tolerance::default());
        assert_eq!(perp.len(), 2);
        let mut family = perp.clone();
        family.push(e.clone());
        assert_eq!(crate::matrix::rank_of(3, &family, Tolerance::default()), 2);
    }
}
