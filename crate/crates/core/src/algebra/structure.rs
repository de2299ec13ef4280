use crate::algebra::NilMetricAlgebra;
use crate::matrix::{rank_of, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// `[𝔑, 𝔑]` as a basis of `r` vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedIdeal<T> {
    pub basis: Vec<Vec<T>>,
}

impl<T> DerivedIdeal<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl<T: Scalar> NilMetricAlgebra<T> {
    /// Span of `[b_a, b_b]` over all pairs of basis vectors.
    pub fn derived_ideal(&self, tol: Tolerance) -> DerivedIdeal<T> {
        let n = self.dim();
        let table = self.bracket_table();
        let mut brackets = Vec::new();
        for (a, row) in table.into_iter().enumerate() {
            brackets.extend(row.into_iter().skip(a + 1));
        }
        if brackets.is_empty() {
            return DerivedIdeal { basis: vec![] };
        }
        let keep = Matrix::from_columns(n, &brackets).independent_columns(tol);
        DerivedIdeal { basis: keep.into_iter().map(|k| brackets[k].clone()).collect() }
    }

    /// Gram matrix of the declared center basis.
    pub fn center_gram(&self) -> Matrix<T> {
        self.space.gram_of(&self.center)
    }

    /// `𝔷^⊥`.
    pub fn center_orthogonal(&self, tol: Tolerance) -> Vec<Vec<T>> {
        self.space.orthogonal_complement(&self.center, tol)
    }

    /// `dim 𝔷 = 1 = dim [𝔑, 𝔑]` and odd dimension.
    pub fn is_heisenberg(&self, tol: Tolerance) -> bool {
        self.center_dim() == 1 && self.derived_ideal(tol).dim() == 1 && self.dim() % 2 == 1
    }

    /// Euclidean metric and, for an orthonormal center basis,
    /// `J_i² = −P_{𝔷^⊥}` and `J_i J_j = −J_j J_i` (i ≠ j).
    ///
    /// Checked without normalizing: for any center basis with Gram `Γ`,
    /// `J_i J_j + J_j J_i = −2 (Γ⁻¹)_ij P_{𝔷^⊥}`.
    pub fn is_heisenberg_type(&self, tol: Tolerance) -> bool {
        if !self.space.is_euclidean() || self.center.is_empty() {
            return false;
        }
        let Some(gamma_inv) = self.center_gram().inverse(tol) else {
            return false;
        };
        let Ok(proj) = self.space.orthogonal_projection(&self.center_orthogonal(tol), tol) else {
            return false;
        };
        let p = self.center_dim();
        for i in 0..p {
            for j in i..p {
                let anti = self.js[i].mul(&self.js[j]).add(&self.js[j].mul(&self.js[i]));
                let target = proj.scale(&(-T::from_i64(2) * gamma_inv[(i, j)].clone()));
                if !anti.approx_eq(&target, tol) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether a non-null central vector is orthogonal to `[𝔑, 𝔑]`. Such a
    /// vector `z` splits `𝔑 = z^⊥ ⊕ ℝz` as an orthogonal trivial central
    /// extension. Sufficient for reducibility, not necessary.
    pub fn splits_off_abelian_factor(&self, tol: Tolerance) -> bool {
        let n = self.dim();
        let derived = self.derived_ideal(tol);
        // central vectors z = E c with ⟨z, d⟩ = 0 for every d in the derived ideal
        let rows: Vec<Vec<T>> = derived
            .basis
            .iter()
            .map(|d| {
                let gd = self.space.lower(d);
                self.center.iter().map(|e| crate::matrix::dot(e, &gd)).collect()
            })
            .collect();
        let coefficients = if rows.is_empty() {
            (0..self.center_dim()).map(|k| crate::matrix::unit(self.center_dim(), k)).collect()
        } else {
            Matrix::from_rows(rows).expect("uniform rows").null_space(tol)
        };
        let vectors: Vec<Vec<T>> = coefficients.iter().map(|c| self.combine_center(c)).collect();
        if rank_of(n, &vectors, tol) == 0 {
            return false;
        }
        !self.space.gram_of(&vectors).is_zero_within(tol)
    }
}
