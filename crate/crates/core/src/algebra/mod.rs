//! Pseudo-Euclidean 2-step nilpotent Lie algebras in the structure-endomorphism
//! model: a center basis `(e₁, …, e_p)` and skew maps `J₁, …, J_p` with
//! `[u, v] = Σ ⟨J_i u, v⟩ e_i`.

mod adapted;
mod structure;
mod validate;

use std::sync::Arc;

pub use adapted::AdaptedBasis;
pub use structure::DerivedIdeal;
pub use validate::Violation;

use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, Matrix};
use crate::pe_linalg::PseudoEuclideanSpace;
use crate::scalar::{ConvertScalar, Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct NilMetricAlgebra<T> {
    space: Arc<PseudoEuclideanSpace<T>>,
    center: Vec<Vec<T>>,
    js: Vec<Matrix<T>>,
}

impl<T: Scalar> NilMetricAlgebra<T> {
    /// Builds the algebra and rejects it unless [`validate`](Self::validate)
    /// comes back empty.
    pub fn new(
        space: Arc<PseudoEuclideanSpace<T>>,
        center: Vec<Vec<T>>,
        js: Vec<Matrix<T>>,
        tol: Tolerance,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(space, center, js)?;
        let violations = alg.validate(tol);
        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(Error::InvalidAlgebra(violations))
        }
    }

    /// Only checks shapes. Used for mutation tests and for loading files whose
    /// violations should be reported rather than refused.
    pub fn new_unchecked(
        space: Arc<PseudoEuclideanSpace<T>>,
        center: Vec<Vec<T>>,
        js: Vec<Matrix<T>>,
    ) -> Result<Self> {
        for v in &center {
            space.check_vector(v)?;
        }
        for j in &js {
            space.check_matrix(j)?;
        }
        Ok(NilMetricAlgebra { space, center, js })
    }

    /// From structure constants: `constants[k][(a, b)]` is the `e_k`-component
    /// of `[b_a, b_b]`. Each must be antisymmetric.
    pub fn from_structure_constants(
        space: Arc<PseudoEuclideanSpace<T>>,
        center: Vec<Vec<T>>,
        constants: &[Matrix<T>],
        tol: Tolerance,
    ) -> Result<Self> {
        let mut js = Vec::with_capacity(constants.len());
        for c in constants {
            space.check_matrix(c)?;
            if !c.is_antisymmetric(tol) {
                return Err(Error::constraint("structure constants must be antisymmetric"));
            }
            js.push(space.gram_inverse().mul(c).neg());
        }
        Self::new(space, center, js, tol)
    }

    pub fn space(&self) -> &Arc<PseudoEuclideanSpace<T>> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Number `p` of declared center vectors.
    pub fn center_dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[Vec<T>] {
        &self.center
    }

    pub fn js(&self) -> &[Matrix<T>] {
        &self.js
    }

    pub fn gram(&self) -> &Matrix<T> {
        self.space.gram()
    }

    /// Coefficients `⟨J_i u, v⟩` of `[u, v]` on the center basis.
    pub fn bracket_coefficients(&self, u: &[T], v: &[T]) -> Vec<T> {
        let gv = self.space.lower(v);
        self.js.iter().map(|j| dot(&j.mul_vec(u), &gv)).collect()
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Result<Vec<T>> {
        self.space.check_vector(u)?;
        self.space.check_vector(v)?;
        Ok(self.combine_center(&self.bracket_coefficients(u, v)))
    }

    /// `Σ c_i e_i`.
    pub fn combine_center(&self, coefficients: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        for (c, e) in coefficients.iter().zip(&self.center) {
            axpy(&mut out, c, e);
        }
        out
    }

    /// `[b_a, b_b]` for all pairs of distinguished basis vectors, as
    /// `table[a][b]`.
    pub fn bracket_table(&self) -> Vec<Vec<Vec<T>>> {
        let n = self.dim();
        let gj: Vec<Matrix<T>> = self.js.iter().map(|j| self.gram().mul(j)).collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        // ⟨J_i b_a, b_b⟩ = (G J_i)_{ba}
                        let coeffs: Vec<T> = gj.iter().map(|m| m[(b, a)].clone()).collect();
                        self.combine_center(&coeffs)
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of `ad_g = [g, ·]`.
    pub fn ad(&self, g: &[T]) -> Matrix<T> {
        let n = self.dim();
        let mut ad = Matrix::<T>::zeros(n, n);
        for (j, e) in self.js.iter().zip(&self.center) {
            // row covector of y ↦ ⟨J g, y⟩
            let covector = self.space.lower(&j.mul_vec(g));
            for r in 0..n {
                if e[r].is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = e[r].clone() * covector[c].clone();
                    ad[(r, c)] = ad[(r, c)].clone() + v;
                }
            }
        }
        ad
    }

    /// New center basis `f_j = Σ_i P_ij e_i` with `K_j = Σ_i (P⁻¹)_ji J_i`;
    /// brackets are unchanged.
    pub fn change_center_basis(&self, p: &Matrix<T>, tol: Tolerance) -> Result<Self> {
        let k = self.center_dim();
        if p.rows() != k || p.cols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: p.rows().max(p.cols()) });
        }
        let inv = p.inverse(tol).ok_or(Error::Singular)?;
        let n = self.dim();
        let center = (0..k)
            .map(|j| {
                let mut f = vec![T::zero(); n];
                for i in 0..k {
                    axpy(&mut f, &p[(i, j)], &self.center[i]);
                }
                f
            })
            .collect();
        let js = (0..k)
            .map(|j| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..k {
                    m.add_scaled(&inv[(j, i)], &self.js[i]);
                }
                m
            })
            .collect();
        Ok(NilMetricAlgebra { space: self.space.clone(), center, js })
    }

    /// The same metric Lie algebra written in the basis whose vectors are the
    /// columns of `p`: Gram `PᵀGP`, structure maps `P⁻¹J_iP`, center
    /// vectors `P⁻¹e_i`.
    pub fn change_basis(&self, p: &Matrix<T>, tol: Tolerance) -> Result<Self> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows().max(p.cols()) });
        }
        let inv = p.inverse(tol).ok_or(Error::Singular)?;
        let gram = p.transpose().mul(self.gram()).mul(p);
        let space = Arc::new(PseudoEuclideanSpace::with_gram(gram, tol)?);
        let center = self.center.iter().map(|e| inv.mul_vec(e)).collect();
        let js = self.js.iter().map(|j| inv.mul(j).mul(p)).collect();
        Ok(NilMetricAlgebra { space, center, js })
    }

    /// Same Lie algebra with metric `c·⟨,⟩`; the structure maps become `J/c`
    /// so the bracket is unchanged.
    pub fn with_scaled_metric(&self, c: &T, tol: Tolerance) -> Result<Self> {
        let space = Arc::new(self.space.scaled(c, tol)?);
        let inv = T::one() / c.clone();
        let js = self.js.iter().map(|j| j.scale(&inv)).collect();
        Ok(NilMetricAlgebra { space, center: self.center.clone(), js })
    }

    pub fn convert<U: Scalar>(&self, tol: Tolerance) -> Result<NilMetricAlgebra<U>>
    where
        T: ConvertScalar<U>,
    {
        let space = Arc::new(PseudoEuclideanSpace::with_gram(self.gram().convert(), tol)?);
        let center = self.center.iter().map(|v| v.iter().map(ConvertScalar::convert).collect()).collect();
        let js = self.js.iter().map(Matrix::convert).collect();
        Ok(NilMetricAlgebra { space, center, js })
    }
}
