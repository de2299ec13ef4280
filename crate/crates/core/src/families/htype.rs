use super::{require, shape};
use crate::algebra::NilMetricAlgebra;
use crate::error::Result;
use crate::matrix::{unit, Matrix};
use crate::pe_linalg::make_space;
use crate::scalar::{Scalar, Tolerance};

/// Euclidean algebra `𝔷 ⊕ 𝔷^⊥` with orthonormal center `(e₁, …, e_p)` first
/// and `J_i = 0 ⊕ js[i]`. Each `js[i]` must be skew-symmetric with
/// `js[i]² = −1`, and distinct ones must anticommute.
pub fn h_type<T: Scalar>(js: &[Matrix<T>], tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    shape(!js.is_empty(), || "at least one structure map is required".into())?;
    let m = js[0].rows();
    shape(js.iter().all(|j| j.rows() == m && j.cols() == m), || format!("every J must be {m} x {m}"))?;
    let id = Matrix::<T>::identity(m);
    let minus_id = id.neg();
    for (i, j) in js.iter().enumerate() {
        require(j.is_antisymmetric(tol), || format!("J_{} is not skew-symmetric", i + 1))?;
        require(j.mul(j).approx_eq(&minus_id, tol), || format!("J_{}² ≠ -1", i + 1))?;
        for (k, other) in js.iter().enumerate().skip(i + 1) {
            let anti = j.mul(other).add(&other.mul(j));
            require(anti.is_zero_within(tol), || format!("J_{} and J_{} do not anticommute", i + 1, k + 1))?;
        }
    }
    let p = js.len();
    let n = p + m;
    let embedded = js
        .iter()
        .map(|j| {
            let mut big = Matrix::zeros(n, n);
            big.set_block(p, p, j);
            big
        })
        .collect();
    NilMetricAlgebra::new(make_space(0, n)?, (0..p).map(|i| unit(n, i)).collect(), embedded, tol)
}

/// `⊕ [[0, −1], [1, 0]]` on `ℝ^m`, `m` even.
pub fn complex_structure<T: Scalar>(m: usize) -> Matrix<T> {
    assert!(m.is_multiple_of(2), "complex structure needs an even dimension");
    let mut j = Matrix::zeros(m, m);
    for k in 0..m / 2 {
        j[(2 * k + 1, 2 * k)] = T::one();
        j[(2 * k, 2 * k + 1)] = -T::one();
    }
    j
}

/// Left multiplication by `i`, `j`, `k` on the quaternions, basis `(1, i, j, k)`.
pub fn quaternion_units<T: Scalar>() -> [Matrix<T>; 3] {
    let li = Matrix::from_i64_rows(&[vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]]);
    let lj = Matrix::from_i64_rows(&[vec![0, 0, -1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, -1, 0, 0]]);
    let lk = li.mul(&lj);
    [li, lj, lk]
}
