use serde::Serialize;

use crate::algebra::{AdaptedBasis, NilMetricAlgebra};
use crate::curvature::levi_civita::scaled_bound;
use crate::curvature::tensor::CurvatureTensor;
use crate::error::{Error, Result};
use crate::matrix::{scaled, Matrix};
use crate::pe_linalg::trace_of_product;
use crate::scalar::{Scalar, Tolerance};

/// `𝔯(b_a, b_b) = tr(w ↦ ℛ(b_a, w, b_b))`, read off the full tensor.
pub fn ricci_bruteforce<T: Scalar>(r: &CurvatureTensor<T>) -> Matrix<T> {
    let n = r.dim();
    Matrix::from_fn(n, n, |a, b| {
        (0..n).fold(T::zero(), |acc, c| acc + r.component(a, c, b, c).clone())
    })
}

/// The symmetric operators `𝒥⁺` and `𝒥⁻` whose forms add up to the Ricci
/// curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct JPlusMinus<T> {
    pub plus: Matrix<T>,
    pub minus: Matrix<T>,
}

impl<T: Scalar> JPlusMinus<T> {
    /// `𝒥 = 𝒥⁺ + 𝒥⁻`.
    pub fn sum(&self) -> Matrix<T> {
        self.plus.add(&self.minus)
    }
}

/// `𝒥⁻ = ½ Σ ⟨e_i,e_j⟩ J_i J_j` and `𝒥⁺ u = −¼ Σ ⟨e_i,u⟩ tr(J_i J_j) e_j`.
pub fn j_plus_minus<T: Scalar>(alg: &NilMetricAlgebra<T>) -> JPlusMinus<T> {
    let n = alg.dim();
    let p = alg.center_dim();
    let js = alg.js();
    let gamma = alg.center_gram();
    let mut minus = Matrix::zeros(n, n);
    let mut plus = Matrix::<T>::zeros(n, n);
    let lowered: Vec<Vec<T>> = alg.center().iter().map(|e| alg.space().lower(e)).collect();
    let half = T::half();
    let quarter = T::quarter();
    for i in 0..p {
        let mut row = Matrix::zeros(n, n);
        for j in 0..p {
            if !gamma[(i, j)].is_zero() {
                row.add_scaled(&gamma[(i, j)], &js[j]);
            }
        }
        minus.add_scaled(&half, &js[i].mul(&row));
        for j in 0..p {
            let tr = trace_of_product(&js[i], &js[j]);
            if tr.is_zero() {
                continue;
            }
            // column u ↦ coefficient ⟨e_i, u⟩ on e_j
            let c = -(quarter.clone() * tr);
            for r in 0..n {
                if alg.center()[j][r].is_zero() {
                    continue;
                }
                let row = c.clone() * alg.center()[j][r].clone();
                for col in 0..n {
                    if !lowered[i][col].is_zero() {
                        plus[(r, col)] = plus[(r, col)].clone() + row.clone() * lowered[i][col].clone();
                    }
                }
            }
        }
    }
    JPlusMinus { plus, minus }
}

/// Form `(⟨𝒥 b_a, b_b⟩)_{ab}` of an endomorphism.
pub fn form_of<T: Scalar>(alg: &NilMetricAlgebra<T>, endo: &Matrix<T>) -> Matrix<T> {
    alg.gram().mul(endo).transpose()
}

/// Endomorphism `𝒥` with `⟨𝒥 u, v⟩ = form(u, v)`.
pub fn endo_of<T: Scalar>(alg: &NilMetricAlgebra<T>, form: &Matrix<T>) -> Matrix<T> {
    alg.space().gram_inverse().mul(&form.transpose())
}

/// `𝔯 = 𝔯⁺ + 𝔯⁻` from the fast decomposition.
pub fn ricci_fast<T: Scalar>(alg: &NilMetricAlgebra<T>) -> Matrix<T> {
    form_of(alg, &j_plus_minus(alg).sum())
}

/// Scalar curvature `tr 𝒥` with the identities `𝔰 = ½ tr 𝒥⁻ = −tr 𝒥⁺`
/// asserted.
pub fn scalar_curvature<T: Scalar>(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<T> {
    let j = j_plus_minus(alg);
    let s = j.sum().trace();
    let from_minus = T::half() * j.minus.trace();
    let from_plus = -j.plus.trace();
    let deviation = (s.clone() - from_minus).magnitude().max((s.clone() - from_plus).magnitude());
    let bound = scaled_bound::<T>(tol, s.magnitude());
    if deviation > bound {
        return Err(Error::Inconsistent { what: "scalar curvature identities", deviation, tolerance: bound });
    }
    Ok(s)
}

/// Ricci form computed from the adapted basis `(w_k)` and its dual `(w^k)`:
/// `𝔯(u,v) = Σ_k ⟨ℛ(u, w_k) v, w^k⟩`. A cross-check on the slot convention,
/// independent of the distinguished basis.
pub fn ricci_in_adapted_basis<T: Scalar>(
    alg: &NilMetricAlgebra<T>,
    r: &CurvatureTensor<T>,
    basis: &AdaptedBasis<T>,
) -> Matrix<T> {
    let n = alg.dim();
    let mut frame: Vec<(Vec<T>, Vec<T>)> = Vec::new();
    for (e, eb) in &basis.pairs {
        frame.push((e.clone(), eb.clone()));
        frame.push((eb.clone(), e.clone()));
    }
    for (v, norm) in basis.f.iter().zip(&basis.f_norms).chain(basis.g.iter().zip(&basis.g_norms)) {
        frame.push((v.clone(), scaled(&(T::one() / norm.clone()), v)));
    }
    let units: Vec<Vec<T>> = (0..n).map(|k| crate::matrix::unit(n, k)).collect();
    Matrix::from_fn(n, n, |a, b| {
        frame.iter().fold(T::zero(), |acc, (w, dual)| {
            let image = r.apply(&units[a], w, &units[b]);
            acc + alg.space().inner(&image, dual)
        })
    })
}

/// Best fit `𝔯 ≈ λ̂⟨,⟩` in the Euclidean Frobenius norm on coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinFit<T> {
    pub lambda: T,
    pub residual: f64,
}

impl<T: Scalar> EinsteinFit<T> {
    pub fn is_einstein(&self, tol: Tolerance) -> bool {
        if T::is_exact() {
            self.residual == 0.0
        } else {
            self.residual <= tol.value()
        }
    }
}

/// `λ̂ = ⟨𝔯, G⟩_F / ⟨G, G⟩_F` (equal to `tr 𝒥 / n` for a pseudo-Euclidean
/// basis) and the residual `‖𝔯 − λ̂G‖_F`.
pub fn einstein_fit<T: Scalar>(alg: &NilMetricAlgebra<T>, ricci: &Matrix<T>) -> EinsteinFit<T> {
    let g = alg.gram();
    let lambda = ricci.frobenius_dot(g) / g.frobenius_sq();
    let diff = ricci.sub(&g.scale(&lambda));
    let residual = diff.frobenius_sq().to_f64().max(0.0).sqrt();
    EinsteinFit { lambda, residual }
}

/// `max |𝒥⁺𝒥⁻|, |𝒥⁻𝒥⁺|`.
pub fn j_product_defect<T: Scalar>(j: &JPlusMinus<T>) -> f64 {
    j.plus.mul(&j.minus).max_abs().max(j.minus.mul(&j.plus).max_abs())
}

/// `max |⟨𝒥⁺u,v⟩ − ⟨u,𝒥⁺v⟩|` and the same for `𝒥⁻`.
pub fn j_symmetry_defect<T: Scalar>(alg: &NilMetricAlgebra<T>, j: &JPlusMinus<T>) -> f64 {
    [&j.plus, &j.minus].iter().fold(0.0, |acc, m| {
        let f = form_of(alg, m);
        acc.max(f.max_abs_diff(&f.transpose()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::euclidean_h3;
    use crate::curvature::tensor::curvature_tensor;
    use crate::matrix::unit;
    use crate::pe_linalg::make_space;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn h3_ricci() {
        let alg = euclidean_h3::<Rational>();
        let tol = Tolerance::default();
        let r = curvature_tensor(&alg, tol).unwrap();
        let expected = Matrix::diagonal(&[q(1, 2), q(-1, 2), q(-1, 2)]);
        assert_eq!(ricci_bruteforce(&r), expected);
        assert_eq!(ricci_fast(&alg), expected);
        assert_eq!(scalar_curvature(&alg, tol).unwrap(), q(-1, 2));
        let basis = alg.build_adapted_basis(tol).unwrap();
        assert_eq!(ricci_in_adapted_basis(&alg, &r, &basis), expected);
    }

    #[test]
    fn h3_j_operators() {
        let alg = euclidean_h3::<Rational>();
        let j = j_plus_minus(&alg);
        assert_eq!(j.plus, Matrix::diagonal(&[q(1, 2), q(0, 1), q(0, 1)]));
        assert_eq!(j.minus, Matrix::diagonal(&[q(0, 1), q(-1, 2), q(-1, 2)]));
        assert_eq!(j_product_defect(&j), 0.0);
        assert_eq!(j_symmetry_defect(&alg, &j), 0.0);
    }

    #[test]
    fn null_center_with_traceless_square() {
        let space = make_space::<Rational>(1, 3).unwrap();
        let k = Matrix::from_i64_rows(&[vec![0, 0, -1], vec![0, 0, 0], vec![0, 1, 0]]);
        let alg = NilMetricAlgebra::new(space, vec![unit(3, 0)], vec![k], Tolerance::default()).unwrap();
        let j = j_plus_minus(&alg);
        assert_eq!(j.plus, Matrix::zeros(3, 3));
        assert_eq!(j.minus, Matrix::zeros(3, 3));
    }

    #[test]
    fn einstein_fit_h3() {
        let alg = euclidean_h3::<Rational>();
        let fit = einstein_fit(&alg, &ricci_fast(&alg));
        // diag(½, −½, −½) against I₃: λ̂ = −1/6
        assert_eq!(fit.lambda, q(-1, 6));
        assert!(fit.residual > 0.1);
        assert!(!fit.is_einstein(Tolerance::default()));
    }
}
