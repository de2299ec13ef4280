use std::fmt;

use serde::Serialize;

use crate::algebra::NilMetricAlgebra;
use crate::matrix::{rank_of, Matrix};
use crate::pe_linalg::is_skew;
use crate::scalar::{Scalar, Tolerance};

/// A failed invariant of [`NilMetricAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    /// Number of center vectors and structure maps differ.
    CountMismatch { center: usize, js: usize },
    NotSkew { index: usize },
    CenterDependent,
    JNotVanishingOnCenter { index: usize },
    /// `∩ ker J_i` differs from the declared center.
    KernelNotCenter { kernel_dim: usize, center_dim: usize },
    DerivedIdealNotInCenter,
    /// Every structure map is zero.
    Abelian,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CountMismatch { center, js } => {
                write!(f, "{center} center vectors but {js} structure maps")
            }
            Violation::NotSkew { index } => write!(f, "J_{} is not skew", index + 1),
            Violation::CenterDependent => f.write_str("center basis is linearly dependent"),
            Violation::JNotVanishingOnCenter { index } => {
                write!(f, "J_{} does not vanish on the center", index + 1)
            }
            Violation::KernelNotCenter { kernel_dim, center_dim } => write!(
                f,
                "kernel ≠ declared center (dim ∩ker J_i = {kernel_dim}, declared {center_dim})"
            ),
            Violation::DerivedIdealNotInCenter => f.write_str("derived ideal not contained in the center"),
            Violation::Abelian => f.write_str("algebra is abelian (all J_i vanish)"),
        }
    }
}

impl<T: Scalar> NilMetricAlgebra<T> {
    /// Every violated invariant; empty for a valid algebra.
    pub fn validate(&self, tol: Tolerance) -> Vec<Violation> {
        let n = self.dim();
        let p = self.center_dim();
        let mut out = Vec::new();
        if self.js.len() != p {
            out.push(Violation::CountMismatch { center: p, js: self.js.len() });
            return out;
        }
        for (index, j) in self.js.iter().enumerate() {
            if !is_skew(j, &self.space, tol).unwrap_or(false) {
                out.push(Violation::NotSkew { index });
            }
        }
        if rank_of(n, &self.center, tol) != p {
            out.push(Violation::CenterDependent);
        }
        for (index, j) in self.js.iter().enumerate() {
            let moves = |e: &Vec<T>| j.mul_vec(e).iter().any(|x| !x.is_negligible(tol.value()));
            if self.center.iter().any(moves) {
                out.push(Violation::JNotVanishingOnCenter { index });
            }
        }
        let kernel = self.common_kernel(tol);
        let joint = rank_of(n, &[kernel.clone(), self.center.clone()].concat(), tol);
        if kernel.len() != p || joint != p {
            out.push(Violation::KernelNotCenter { kernel_dim: kernel.len(), center_dim: p });
        }
        let derived = self.derived_ideal(tol);
        if rank_of(n, &[derived.basis, self.center.clone()].concat(), tol) > rank_of(n, &self.center, tol) {
            out.push(Violation::DerivedIdealNotInCenter);
        }
        if self.js.iter().all(|j| j.is_zero_within(tol)) {
            out.push(Violation::Abelian);
        }
        out
    }

    pub fn is_valid(&self, tol: Tolerance) -> bool {
        self.validate(tol).is_empty()
    }

    /// `∩ ker J_i`, from the null space of the stacked matrices.
    pub fn common_kernel(&self, tol: Tolerance) -> Vec<Vec<T>> {
        let n = self.dim();
        if self.js.is_empty() {
            return (0..n).map(|k| crate::matrix::unit(n, k)).collect();
        }
        Matrix::stack(&self.js).null_space(tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::euclidean_h3;
    use crate::matrix::unit;
    use crate::scalar::Rational;

    #[test]
    fn h3_is_valid() {
        assert!(euclidean_h3::<Rational>().validate(Tolerance::default()).is_empty());
        assert!(euclidean_h3::<f64>().validate(Tolerance::default()).is_empty());
    }

    #[test]
    fn extended_center_rejected() {
        let h3 = euclidean_h3::<Rational>();
        let alg = NilMetricAlgebra::new_unchecked(
            h3.space().clone(),
            vec![unit(3, 0), unit(3, 1)],
            vec![h3.js()[0].clone(), Matrix::zeros(3, 3)],
        )
        .unwrap();
        let v = alg.validate(Tolerance::default());
        assert!(v.iter().any(|x| matches!(x, Violation::KernelNotCenter { .. })), "{v:?}");
        assert!(v.contains(&Violation::JNotVanishingOnCenter { index: 0 }));
        assert!(v.iter().any(|x| x.to_string().starts_with("kernel ≠ declared center")));
    }

    #[test]
    fn zero_maps_rejected() {
        let h3 = euclidean_h3::<Rational>();
        let alg =
            NilMetricAlgebra::new_unchecked(h3.space().clone(), vec![unit(3, 0)], vec![Matrix::zeros(3, 3)])
                .unwrap();
        let v = alg.validate(Tolerance::default());
        assert!(v.contains(&Violation::KernelNotCenter { kernel_dim: 3, center_dim: 1 }));
        assert!(v.contains(&Violation::Abelian));
    }

    #[test]
    fn dropped_map_rejected() {
        let h3 = euclidean_h3::<Rational>();
        let alg = NilMetricAlgebra::new_unchecked(h3.space().clone(), vec![unit(3, 0)], vec![]).unwrap();
        assert_eq!(
            alg.validate(Tolerance::default()),
            vec![Violation::CountMismatch { center: 1, js: 0 }]
        );
    }

    #[test]
    fn non_skew_rejected() {
        let h3 = euclidean_h3::<Rational>();
        let mut j = h3.js()[0].clone();
        j[(1, 2)] = Rational::from_i64(1);
        let alg = NilMetricAlgebra::new_unchecked(h3.space().clone(), vec![unit(3, 0)], vec![j]).unwrap();
        assert!(alg.validate(Tolerance::default()).contains(&Violation::NotSkew { index: 0 }));
    }
}
