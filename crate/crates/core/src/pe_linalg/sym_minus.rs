use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pe_linalg::{skew::trace_of_product, PseudoEuclideanSpace, SkewEndomorphism};
use crate::scalar::{Scalar, Tolerance};

/// Dimension and signature of `(Sym⁻(V), ⟨,⟩*)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymMinusReport {
    pub dim: usize,
    pub sig_minus: usize,
    pub sig_plus: usize,
}

impl SymMinusReport {
    /// Closed form: dimension `n(n−1)/2`, signature
    /// `(q(n−q), (n(n−1) + 2q(q−n))/2)`.
    pub fn predicted(q: usize, n: usize) -> Self {
        let dim = n * (n - 1) / 2;
        let sig_minus = q * (n - q);
        SymMinusReport { dim, sig_minus, sig_plus: dim - sig_minus }
    }
}

/// Basis `G⁻¹(E_ab − E_ba)`, `a < b`, of the skew maps.
pub fn sym_minus_basis<T: Scalar>(space: &Arc<PseudoEuclideanSpace<T>>) -> Vec<SkewEndomorphism<T>> {
    let n = space.dim();
    let mut basis = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let mut s = Matrix::zeros(n, n);
            s[(a, b)] = T::one();
            s[(b, a)] = -T::one();
            basis.push(
                SkewEndomorphism::from_antisymmetric(space.clone(), &s, Tolerance::default())
                    .expect("elementary antisymmetric matrix"),
            );
        }
    }
    basis
}

/// Counts the signature of the Gram matrix of `⟨,⟩*` on a basis of `Sym⁻(V)`.
pub fn sym_minus_signature<T: Scalar>(
    space: &Arc<PseudoEuclideanSpace<T>>,
    tol: Tolerance,
) -> Result<SymMinusReport> {
    if space.dim() < 2 {
        return Err(Error::TrivialSymMinus);
    }
    let basis = sym_minus_basis(space);
    let gram = Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        -trace_of_product(basis[i].matrix(), basis[j].matrix())
    });
    let inertia = T::symmetric_inertia(&gram, tol);
    if inertia.zero != 0 {
        return Err(Error::DegenerateGram);
    }
    Ok(SymMinusReport { dim: basis.len(), sig_minus: inertia.negative, sig_plus: inertia.positive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pe_linalg::make_space;
    use crate::scalar::Rational;

    fn report(q: usize, n: usize) -> SymMinusReport {
        sym_minus_signature(&make_space::<f64>(q, n).unwrap(), Tolerance::default()).unwrap()
    }

    #[test]
    fn lorentz_three() {
        assert_eq!(report(1, 3), SymMinusReport { dim: 3, sig_minus: 2, sig_plus: 1 });
    }

    #[test]
    fn euclidean_is_definite() {
        assert_eq!(report(0, 3), SymMinusReport { dim: 3, sig_minus: 0, sig_plus: 3 });
    }

    #[test]
    fn lorentz_four() {
        assert_eq!(report(1, 4), SymMinusReport { dim: 6, sig_minus: 3, sig_plus: 3 });
    }

    #[test]
    fn exact_mode_agrees() {
        let s = make_space::<Rational>(2, 6).unwrap();
        let r = sym_minus_signature(&s, Tolerance::default()).unwrap();
        assert_eq!(r, SymMinusReport::predicted(2, 6));
    }

    #[test]
    fn trivial_space_rejected() {
        let s = make_space::<f64>(0, 1).unwrap();
        assert!(matches!(sym_minus_signature(&s, Tolerance::default()), Err(Error::TrivialSymMinus)));
    }
}
