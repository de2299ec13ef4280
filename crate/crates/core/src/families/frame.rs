use crate::algebra::NilMetricAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{max_abs_diff_vec, scaled, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// Basis `(E, X₁, X̄₁, …, X_k, X̄_k)` of a Heisenberg algebra with
/// `[X_j, X̄_j] = s_j E` and every other bracket between frame vectors zero.
///
/// In float mode each pair with `s_j > 0` is divided by `√s_j`, so all scales
/// are 1 and the bracket table is the standard one. In exact mode the
/// unnormalized pairs are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergFrame<T> {
    pub center: Vec<T>,
    pub pairs: Vec<(Vec<T>, Vec<T>)>,
    pub scales: Vec<T>,
}

impl<T: Scalar> HeisenbergFrame<T> {
    pub(crate) fn new(center: Vec<T>, pairs: Vec<(Vec<T>, Vec<T>, T)>) -> Self {
        let mut out = HeisenbergFrame { center, pairs: Vec::new(), scales: Vec::new() };
        for (x, xb, s) in pairs {
            let root = if T::is_exact() || s.to_f64() <= 0.0 { None } else { s.try_sqrt() };
            match root {
                Some(root) => {
                    let inv = T::one() / root;
                    out.pairs.push((scaled(&inv, &x), scaled(&inv, &xb)));
                    out.scales.push(T::one());
                }
                None => {
                    out.pairs.push((x, xb));
                    out.scales.push(s);
                }
            }
        }
        out
    }

    /// `k` in `H_{2k+1}`.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        let mut out = vec![self.center.clone()];
        for (x, xb) in &self.pairs {
            out.push(x.clone());
            out.push(xb.clone());
        }
        out
    }

    /// Frame vectors as columns.
    pub fn matrix(&self) -> Matrix<T> {
        Matrix::from_columns(self.center.len(), &self.vectors())
    }

    /// Checks that the frame is a basis with the stated bracket table.
    pub fn check(&self, alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<()> {
        let vectors = self.vectors();
        let n = alg.dim();
        if vectors.len() != n || self.matrix().rank(tol) != n {
            return Err(Error::constraint("frame vectors do not form a basis"));
        }
        let zero = vec![T::zero(); n];
        for a in 0..n {
            for b in a + 1..n {
                let bracket = alg.bracket(&vectors[a], &vectors[b])?;
                let expected = if a % 2 == 1 && b == a + 1 {
                    scaled(&self.scales[a / 2], &self.center)
                } else {
                    zero.clone()
                };
                let deviation = max_abs_diff_vec(&bracket, &expected);
                let bad = if T::is_exact() { bracket != expected } else { deviation > tol.value() };
                if bad {
                    return Err(Error::constraint(format!("frame bracket ({a}, {b}) is off by {deviation:e}")));
                }
            }
        }
        Ok(())
    }

    /// The algebra rewritten in this frame.
    pub fn rewrite(&self, alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
        alg.change_basis(&self.matrix(), tol)
    }
}
