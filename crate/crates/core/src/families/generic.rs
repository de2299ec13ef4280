//! The two general recipes for a skew `J` on `ℝ^{(q,q)} × ℝ^m` with
//! `ker J = span(e₁)` and `tr J² = 0`, written in the block representation
//! `(A, B, X₁, Y₁, …, X_q, Y_q)` of [`SkewRepresentation`].

use serde::{Deserialize, Serialize};

use super::{matrix_from_rows, require, same, shape, HeisFamily1Params};
use crate::algebra::NilMetricAlgebra;
use crate::error::Result;
use crate::matrix::{dot, rank_of, unit};
use crate::pe_linalg::{make_space, q_product, skew_from_representation, SkewRepresentation};
use crate::io::JsonScalar;
use crate::scalar::{Scalar, Tolerance};

/// `m = 2q + 2r + 1`, `Y₁ = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HeisCase1Params<T> {
    pub q: usize,
    pub r: usize,
    /// `2q × 2q`, skew for `⟨,⟩_q`.
    #[serde(with = "crate::io::num")]
    pub a: Vec<Vec<T>>,
    /// `m × m` skew-symmetric.
    #[serde(with = "crate::io::num")]
    pub b: Vec<Vec<T>>,
    /// `X₁, …, X_q`.
    #[serde(with = "crate::io::num")]
    pub x: Vec<Vec<T>>,
    /// `Y₂, …, Y_q`.
    #[serde(with = "crate::io::num")]
    pub y: Vec<Vec<T>>,
}

/// `m = 2r + 1`; the rows of `P̂` are `V̄₁, …, V̄_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HeisCase2Params<T> {
    pub q: usize,
    pub r: usize,
    #[serde(with = "crate::io::num")]
    pub a: Vec<Vec<T>>,
    #[serde(with = "crate::io::num")]
    pub b: Vec<Vec<T>>,
    /// `V₁, …, V_m ∈ ℝ^{2q}` in coordinates `(x₁, y₁, …, x_q, y_q)`.
    #[serde(with = "crate::io::num")]
    pub v: Vec<Vec<T>>,
}

fn build<T: Scalar>(rep: SkewRepresentation<T>, q: usize, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    let n = 2 * q + rep.euclidean_dim();
    let space = make_space(q, n)?;
    let j = skew_from_representation(&rep, space.clone(), tol)?;
    NilMetricAlgebra::new(space, vec![unit(n, 0)], vec![j.into_matrix()], tol)
}

impl<T: Scalar> HeisCase1Params<T> {
    pub fn euclidean_dim(&self) -> usize {
        2 * self.q + 2 * self.r + 1
    }

    fn representation(&self) -> Result<SkewRepresentation<T>> {
        let (q, m) = (self.q, self.euclidean_dim());
        shape(q >= 2, || format!("q = {q} but q >= 2 is required"))?;
        let a = matrix_from_rows(&self.a, 2 * q, 2 * q, "A")?;
        let b = matrix_from_rows(&self.b, m, m, "B")?;
        shape(self.x.len() == q, || format!("expected {q} vectors X_1..X_q"))?;
        shape(self.y.len() + 1 == q, || format!("expected {} vectors Y_2..Y_q", q - 1))?;
        let mut y = vec![vec![T::zero(); m]];
        y.extend(self.y.iter().cloned());
        SkewRepresentation::new(a, b, self.x.clone(), y)
    }

    /// Family 1 written through this recipe.
    pub fn from_family1(p: &HeisFamily1Params<T>) -> Self {
        let (q, r) = (p.q, p.r);
        let m = 2 * q + 2 * r + 1;
        let mut a = vec![vec![T::zero(); 2 * q]; 2 * q];
        for i in 2..=q {
            a[2 * (i - 1)][2 * (i - 1)] = p.a[i - 2].clone();
            a[2 * i - 1][2 * i - 1] = -p.a[i - 2].clone();
        }
        let mut b = vec![vec![T::zero(); m]; m];
        for (k, lam) in p.lambda.iter().enumerate() {
            let (g, gb) = (2 * q - 1 + 2 * k, 2 * q + 2 * k);
            b[gb][g] = lam.clone();
            b[g][gb] = -lam.clone();
        }
        let neg_unit = |k| unit::<T>(m, k).into_iter().map(|v| -v).collect::<Vec<_>>();
        let mut x = vec![neg_unit(0)];
        let mut y = Vec::new();
        for i in 2..=q {
            x.push(neg_unit(1 + 2 * (i - 2)));
            y.push(neg_unit(2 + 2 * (i - 2)));
        }
        HeisCase1Params { q, r, a, b, x, y }
    }
}

/// Checks, in order: the block shape of `A` and `B`; `Ae₁ = 0`;
/// independence of `X₁, X₂, Y₂, …, X_q, Y_q`; `rank B = 2(r+1)`;
/// `span{X, Y} ⊕ Im B = ℝ^m`; `tr A² + tr B² = 4 Σ_{i≥2} X_i·Y_i`.
pub fn heis_generic_case1<T: Scalar>(p: &HeisCase1Params<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    let rep = p.representation()?;
    rep.validate(tol)?;
    let (q, r, m) = (p.q, p.r, p.euclidean_dim());
    let t = tol.value();
    let a = rep.a();
    require((0..2 * q).all(|i| a[(i, 0)].is_negligible(t)), || "Ae₁ ≠ 0".into())?;
    let mut family = vec![p.x[0].clone()];
    for i in 1..q {
        family.push(p.x[i].clone());
        family.push(p.y[i - 1].clone());
    }
    require(rank_of(m, &family, tol) == family.len(), || {
        "X_1, X_2, Y_2, …, X_q, Y_q are linearly dependent".into()
    })?;
    let rank_b = rep.b().rank(tol);
    require(rank_b == 2 * (r + 1), || format!("rank B = {rank_b} ≠ 2(r+1) = {}", 2 * (r + 1)))?;
    let mut all = family.clone();
    all.extend(rep.b().columns());
    require(rank_of(m, &all, tol) == m, || format!("span{{X, Y}} ⊕ Im B ≠ ℝ^{m}"))?;
    let lhs = a.mul(a).trace() + rep.b().mul(rep.b()).trace();
    let rhs = (1..q).fold(T::zero(), |acc, i| acc + dot(&p.x[i], &p.y[i - 1])) * T::from_i64(4);
    require(same(&lhs, &rhs, tol), || format!("tr(A²)+tr(B²) ≠ 4ΣX_i·Y_i ({lhs} vs {rhs})"))?;
    build(rep, q, tol)
}

impl<T: Scalar> HeisCase2Params<T> {
    pub fn euclidean_dim(&self) -> usize {
        2 * self.r + 1
    }

    fn representation(&self) -> Result<SkewRepresentation<T>> {
        let (q, r, m) = (self.q, self.r, self.euclidean_dim());
        shape(q >= 2, || format!("q = {q} but q >= 2 is required"))?;
        shape(r < q, || format!("r = {r} out of range: need r <= q-1"))?;
        let a = matrix_from_rows(&self.a, 2 * q, 2 * q, "A")?;
        let b = matrix_from_rows(&self.b, m, m, "B")?;
        shape(self.v.len() == m && self.v.iter().all(|v| v.len() == 2 * q), || {
            format!("expected {m} vectors V of length {}", 2 * q)
        })?;
        let x = (0..q).map(|i| self.v.iter().map(|v| v[2 * i].clone()).collect()).collect();
        let y = (0..q).map(|i| self.v.iter().map(|v| v[2 * i + 1].clone()).collect()).collect();
        SkewRepresentation::new(a, b, x, y)
    }
}

/// Checks, in order: the block shape of `A` and `B`; each `V_l` lies in
/// `F = span(e₁, e₂, ē₂, …, e_q, ē_q)`; the `V_l` are independent;
/// `rank A = 2(q−r−1)`; `span{V} ⊕ Im A = F`;
/// `tr A² + tr B² = 2 Σ ⟨V_l, V_l⟩_q`.
pub fn heis_generic_case2<T: Scalar>(p: &HeisCase2Params<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    let rep = p.representation()?;
    rep.validate(tol)?;
    let (q, r) = (p.q, p.r);
    let t = tol.value();
    for (l, v) in p.v.iter().enumerate() {
        require(v[1].is_negligible(t), || format!("V_{} ∉ F: nonzero ē_1 component", l + 1))?;
    }
    require(rank_of(2 * q, &p.v, tol) == p.v.len(), || "V_1, …, V_(2r+1) are linearly dependent".into())?;
    let a = rep.a();
    let rank_a = a.rank(tol);
    let expected = 2 * (q - r - 1);
    require(rank_a == expected, || format!("rank A = {rank_a} ≠ 2(q-r-1) = {expected}"))?;
    let mut all = p.v.clone();
    all.extend(a.columns());
    let inside = (0..2 * q).all(|c| a[(1, c)].is_negligible(t));
    require(inside && rank_of(2 * q, &all, tol) == 2 * q - 1, || "span{V} ⊕ Im A ≠ F".into())?;
    let lhs = a.mul(a).trace() + rep.b().mul(rep.b()).trace();
    let rhs = p.v.iter().fold(T::zero(), |acc, v| acc + q_product(v, v)) * T::from_i64(2);
    require(same(&lhs, &rhs, tol), || format!("tr(A²)+tr(B²) ≠ 2Σ⟨V_l,V_l⟩_q ({lhs} vs {rhs})"))?;
    build(rep, q, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::ricci_fast;
    use crate::error::Error;
    use crate::families::heis_family1;
    use crate::matrix::Matrix;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn family1_is_an_instance_of_case1() {
        let tol = Tolerance::default();
        for (qq, r, a, l) in [(2, 0, vec![1], vec![1]), (3, 1, vec![3, 4], vec![3, 4]), (3, 0, vec![3, 4], vec![5])] {
            let p = HeisFamily1Params { q: qq, r, a: a.into_iter().map(q).collect(), lambda: l.into_iter().map(q).collect() };
            let direct = heis_family1(&p, tol).unwrap();
            let generic = heis_generic_case1(&HeisCase1Params::from_family1(&p), tol).unwrap();
            assert_eq!(direct.js(), generic.js());
        }
    }

    #[test]
    fn case1_rejects_zero_b() {
        let p = HeisFamily1Params { q: 2, r: 0, a: vec![q(1)], lambda: vec![q(1)] };
        let mut c = HeisCase1Params::from_family1(&p);
        for row in &mut c.b {
            row.iter_mut().for_each(|v| *v = q(0));
        }
        let err = heis_generic_case1(&c, Tolerance::default()).unwrap_err();
        assert!(matches!(&err, Error::Constraint(m) if m.starts_with("rank B")), "{err}");
    }

    #[test]
    fn case1_rejects_nonzero_a_e1_and_trace() {
        let p = HeisFamily1Params { q: 2, r: 0, a: vec![q(1)], lambda: vec![q(1)] };
        let mut c = HeisCase1Params::from_family1(&p);
        c.a[0][0] = q(1);
        c.a[1][1] = q(-1);
        let err = heis_generic_case1(&c, Tolerance::default()).unwrap_err();
        assert!(matches!(&err, Error::Constraint(m) if m == "Ae₁ ≠ 0"), "{err}");
        let mut c = HeisCase1Params::from_family1(&p);
        c.b[4][3] = q(2);
        c.b[3][4] = q(-2);
        let err = heis_generic_case1(&c, Tolerance::default()).unwrap_err();
        assert!(matches!(&err, Error::Constraint(m) if m.starts_with("tr(A²)+tr(B²)")), "{err}");
    }

    fn smallest_case2() -> HeisCase2Params<Rational> {
        let mut a = vec![vec![q(0); 4]; 4];
        a[2][2] = q(2);
        a[3][3] = q(-2);
        HeisCase2Params { q: 2, r: 0, a, b: vec![vec![q(0)]], v: vec![vec![q(1), q(0), q(1), q(2)]] }
    }

    #[test]
    fn case2_smallest_instance_is_ricci_flat() {
        let alg = heis_generic_case2(&smallest_case2(), Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.space().q(), 2);
        assert_eq!(ricci_fast(&alg), Matrix::zeros(5, 5));
        let j = &alg.js()[0];
        assert_eq!(j.mul(j).trace(), q(0));
    }

    #[test]
    fn case2_rejections() {
        let tol = Tolerance::default();
        let mut p = smallest_case2();
        p.v[0][1] = q(1);
        assert!(heis_generic_case2(&p, tol).unwrap_err().to_string().contains("∉ F"));
        let mut p = smallest_case2();
        p.v[0][3] = q(3);
        assert!(heis_generic_case2(&p, tol).unwrap_err().to_string().contains("tr(A²)+tr(B²)"));
        let mut p = smallest_case2();
        p.v[0] = vec![q(0), q(0), q(2), q(1)];
        assert!(heis_generic_case2(&p, tol).unwrap_err().to_string().contains("⊕ Im A"));
        let mut p = smallest_case2();
        p.a[2][2] = q(0);
        p.a[3][3] = q(0);
        assert!(heis_generic_case2(&p, tol).unwrap_err().to_string().contains("rank A"));
    }
}
