//! Three explicit pseudo-Euclidean metrics on Heisenberg algebras with
//! `ker J = span(e₁)` and `tr J² = 0`, hence Ricci-flat.
//!
//! Bases are written as `(e₁, ē₁, …, e_q, ē_q)` followed by the Euclidean
//! vectors in the order listed on each parameter type.

use serde::{Deserialize, Serialize};

use super::{positive_nondecreasing, require, same, set_image, shape, sum_sq, HeisenbergFrame};
use crate::algebra::NilMetricAlgebra;
use crate::error::Result;
use crate::matrix::{add_vec, scaled, unit, Matrix};
use crate::pe_linalg::make_space;
use crate::io::JsonScalar;
use crate::scalar::{Scalar, Tolerance};

fn e(i: usize) -> usize {
    2 * (i - 1)
}

fn eb(i: usize) -> usize {
    2 * (i - 1) + 1
}

/// Euclidean block `(f, f₁, f̄₁, …, g₁, ḡ₁, …)` on
/// `ℝ^{2q} × ℝ^{2q−1} × ℝ^{2(r+1)}`.
///
/// `Je₁ = 0`, `Jē₁ = −f`, `Je_i = a_i e_i − f̄_{i−1}`, `Jē_i = −a_i ē_i − f_{i−1}`,
/// `Jf = e₁`, `Jf_i = e_{i+1}`, `Jf̄_i = ē_{i+1}`, `Jg_i = λ_i ḡ_i`,
/// `Jḡ_i = −λ_i g_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HeisFamily1Params<T> {
    pub q: usize,
    pub r: usize,
    /// `a₂, …, a_q`.
    #[serde(with = "crate::io::num")]
    pub a: Vec<T>,
    /// `λ₁, …, λ_{r+1}`.
    #[serde(with = "crate::io::num")]
    pub lambda: Vec<T>,
}

struct Layout1 {
    q: usize,
}

impl Layout1 {
    fn f(&self) -> usize {
        2 * self.q
    }
    fn fi(&self, i: usize) -> usize {
        2 * self.q + 1 + 2 * (i - 1)
    }
    fn fbi(&self, i: usize) -> usize {
        2 * self.q + 2 + 2 * (i - 1)
    }
    fn g(&self, i: usize) -> usize {
        4 * self.q - 1 + 2 * (i - 1)
    }
    fn gb(&self, i: usize) -> usize {
        4 * self.q + 2 * (i - 1)
    }
}

impl<T: Scalar> HeisFamily1Params<T> {
    pub fn dim(&self) -> usize {
        2 * (2 * self.q + self.r) + 1
    }

    fn check_shape(&self) -> Result<()> {
        shape(self.q >= 2, || format!("q = {} but q >= 2 is required", self.q))?;
        shape(self.a.len() + 1 == self.q, || format!("expected {} values a_2..a_q", self.q - 1))?;
        shape(self.lambda.len() == self.r + 1, || format!("expected {} values λ_1..λ_(r+1)", self.r + 1))
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        self.check_shape()?;
        positive_nondecreasing(&self.lambda, "λ", tol)?;
        let (sa, sl) = (sum_sq(&self.a), sum_sq(&self.lambda));
        require(same(&sa, &sl, tol), || format!("Σa² ≠ Σλ² ({sa} vs {sl})"))
    }

    /// `a_i` for `i ≥ 2`.
    fn a_at(&self, i: usize) -> T {
        self.a[i - 2].clone()
    }

    fn matrix(&self) -> Matrix<T> {
        let (q, n) = (self.q, self.dim());
        let l = Layout1 { q };
        let one = T::one;
        let mut j = Matrix::zeros(n, n);
        set_image(&mut j, eb(1), l.f(), -one());
        for i in 2..=q {
            set_image(&mut j, e(i), e(i), self.a_at(i));
            set_image(&mut j, e(i), l.fbi(i - 1), -one());
            set_image(&mut j, eb(i), eb(i), -self.a_at(i));
            set_image(&mut j, eb(i), l.fi(i - 1), -one());
        }
        set_image(&mut j, l.f(), e(1), one());
        for i in 1..q {
            set_image(&mut j, l.fi(i), e(i + 1), one());
            set_image(&mut j, l.fbi(i), eb(i + 1), one());
        }
        for (k, lam) in self.lambda.iter().enumerate() {
            let i = k + 1;
            set_image(&mut j, l.g(i), l.gb(i), lam.clone());
            set_image(&mut j, l.gb(i), l.g(i), -lam.clone());
        }
        j
    }
}

pub fn heis_family1<T: Scalar>(params: &HeisFamily1Params<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    params.check(tol)?;
    let n = params.dim();
    NilMetricAlgebra::new(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()], tol)
}

pub fn heis_family1_unchecked<T: Scalar>(params: &HeisFamily1Params<T>) -> Result<NilMetricAlgebra<T>> {
    params.check_shape()?;
    let n = params.dim();
    NilMetricAlgebra::new_unchecked(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()])
}

/// `E = e₁`, `E_i = f̄_i`, `Ē_i = e_{i+1}`, `F₁ = f`, `F̄₁ = ē₁`,
/// `F_i = f_{i−1}`, `F̄_i = ē_i + a_i f̄_{i−1}`, `G_k = g_k`, `Ḡ_k = ḡ_k` with
/// scale `λ_k`.
pub fn heis_family1_frame<T: Scalar>(params: &HeisFamily1Params<T>) -> Result<HeisenbergFrame<T>> {
    params.check_shape()?;
    let (q, n) = (params.q, params.dim());
    let l = Layout1 { q };
    let u = |k| unit::<T>(n, k);
    let mut pairs = Vec::new();
    for i in 1..q {
        pairs.push((u(l.fbi(i)), u(e(i + 1)), T::one()));
    }
    pairs.push((u(l.f()), u(eb(1)), T::one()));
    for i in 2..=q {
        let fb = add_vec(&u(eb(i)), &scaled(&params.a_at(i), &u(l.fbi(i - 1))));
        pairs.push((u(l.fi(i - 1)), fb, T::one()));
    }
    for (k, lam) in params.lambda.iter().enumerate() {
        pairs.push((u(l.g(k + 1)), u(l.gb(k + 1)), lam.clone()));
    }
    Ok(HeisenbergFrame::new(u(0), pairs))
}

/// Euclidean block `(f, f₁, f̄₁, …, f_r, f̄_r)` on `ℝ^{2q} × ℝ^{2r+1}`.
///
/// `Jē₁ = −f`, `Je_i = −f̄_{i−1}`, `Jē_i = −f_{i−1}` for `2 ≤ i ≤ r+1`,
/// `Je_j = a_j e_j`, `Jē_j = −a_j ē_j` for `j ≥ r+2`, `Jf = e₁`,
/// `Jf_i = e_{i+1} + λ_i f̄_i`, `Jf̄_i = ē_{i+1} − λ_i f_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HeisFamily2Params<T> {
    pub q: usize,
    pub r: usize,
    /// `a_{r+2}, …, a_q`.
    #[serde(with = "crate::io::num")]
    pub a: Vec<T>,
    /// `λ₁, …, λ_r`.
    #[serde(with = "crate::io::num")]
    pub lambda: Vec<T>,
}

impl<T: Scalar> HeisFamily2Params<T> {
    pub fn dim(&self) -> usize {
        2 * (self.q + self.r) + 1
    }

    fn check_shape(&self) -> Result<()> {
        shape(self.q >= 2, || format!("q = {} but q >= 2 is required", self.q))?;
        shape(self.r >= 1 && self.r < self.q, || format!("r = {} out of range: need 1 <= r <= q-1", self.r))?;
        shape(self.a.len() + self.r + 1 == self.q, || format!("expected {} values a_(r+2)..a_q", self.q - self.r - 1))?;
        shape(self.lambda.len() == self.r, || format!("expected {} values λ_1..λ_r", self.r))
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        self.check_shape()?;
        positive_nondecreasing(&self.a, "a", tol)?;
        if self.r + 1 == self.q {
            let t = tol.value();
            require(self.lambda.iter().all(|l| l.is_negligible(t)), || {
                "λ_1 = … = λ_r = 0 is required when r = q-1".to_string()
            })
        } else {
            let (sa, sl) = (sum_sq(&self.a), sum_sq(&self.lambda));
            require(same(&sa, &sl, tol), || format!("Σa² ≠ Σλ² ({sa} vs {sl})"))
        }
    }

    fn a_at(&self, j: usize) -> T {
        self.a[j - self.r - 2].clone()
    }

    fn fi(&self, i: usize) -> usize {
        2 * self.q + 1 + 2 * (i - 1)
    }

    fn fbi(&self, i: usize) -> usize {
        2 * self.q + 2 + 2 * (i - 1)
    }

    fn matrix(&self) -> Matrix<T> {
        let (q, r, n) = (self.q, self.r, self.dim());
        let f = 2 * q;
        let one = T::one;
        let mut j = Matrix::zeros(n, n);
        set_image(&mut j, eb(1), f, -one());
        for i in 2..=r + 1 {
            set_image(&mut j, e(i), self.fbi(i - 1), -one());
            set_image(&mut j, eb(i), self.fi(i - 1), -one());
        }
        for k in r + 2..=q {
            set_image(&mut j, e(k), e(k), self.a_at(k));
            set_image(&mut j, eb(k), eb(k), -self.a_at(k));
        }
        set_image(&mut j, f, e(1), one());
        for (idx, lam) in self.lambda.iter().enumerate() {
            let i = idx + 1;
            set_image(&mut j, self.fi(i), e(i + 1), one());
            set_image(&mut j, self.fi(i), self.fbi(i), lam.clone());
            set_image(&mut j, self.fbi(i), eb(i + 1), one());
            set_image(&mut j, self.fbi(i), self.fi(i), -lam.clone());
        }
        j
    }
}

pub fn heis_family2<T: Scalar>(params: &HeisFamily2Params<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    params.check(tol)?;
    let n = params.dim();
    NilMetricAlgebra::new(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()], tol)
}

pub fn heis_family2_unchecked<T: Scalar>(params: &HeisFamily2Params<T>) -> Result<NilMetricAlgebra<T>> {
    params.check_shape()?;
    let n = params.dim();
    NilMetricAlgebra::new_unchecked(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()])
}

/// `E = e₁`, `E_i = f̄_i`, `Ē_i = e_{i+1}`, `F₁ = f`, `F̄₁ = ē₁`,
/// `F_i = λ_{i−1} e_i + f_{i−1}`, `F̄_i = ē_i` for `2 ≤ i ≤ r+1`, and
/// `F_j = e_j`, `F̄_j = ē_j` with scale `a_j` for `j ≥ r+2`.
pub fn heis_family2_frame<T: Scalar>(params: &HeisFamily2Params<T>) -> Result<HeisenbergFrame<T>> {
    params.check_shape()?;
    let (q, r, n) = (params.q, params.r, params.dim());
    let u = |k| unit::<T>(n, k);
    let mut pairs = Vec::new();
    for i in 1..=r {
        pairs.push((u(params.fbi(i)), u(e(i + 1)), T::one()));
    }
    pairs.push((u(2 * q), u(eb(1)), T::one()));
    for i in 2..=r + 1 {
        let fi = add_vec(&scaled(&params.lambda[i - 2], &u(e(i))), &u(params.fi(i - 1)));
        pairs.push((fi, u(eb(i)), T::one()));
    }
    for k in r + 2..=q {
        pairs.push((u(e(k)), u(eb(k)), params.a_at(k)));
    }
    Ok(HeisenbergFrame::new(u(0), pairs))
}

/// Euclidean block `(f)` on `ℝ^{2q} × ℝ`, `q ≥ 3`.
///
/// `Jē₁ = e₂`, `Jf = ē₂`, `Je₂ = ē₃ − f`, `Jē₂ = −e₁ + βe₃`,
/// `Je₃ = −ē₂ + a₃e₃`, `Jē₃ = −βe₂ − a₃ē₃`, `Je_j = a_j e_j`,
/// `Jē_j = −a_j ē_j` for `j ≥ 4`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HeisFamily3Params<T> {
    pub q: usize,
    /// `a₃, …, a_q`.
    #[serde(with = "crate::io::num")]
    pub a: Vec<T>,
    #[serde(with = "crate::io::num")]
    pub beta: T,
}

impl<T: Scalar> HeisFamily3Params<T> {
    pub fn dim(&self) -> usize {
        2 * self.q + 1
    }

    fn check_shape(&self) -> Result<()> {
        shape(self.q >= 3, || format!("q = {} but the construction uses e_3, so q >= 3 is required", self.q))?;
        shape(self.a.len() + 2 == self.q, || format!("expected {} values a_3..a_q", self.q.saturating_sub(2)))
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        self.check_shape()?;
        positive_nondecreasing(&self.a, "a", tol)?;
        let sa = sum_sq(&self.a);
        let two_beta = T::from_i64(2) * self.beta.clone();
        require(same(&sa, &two_beta, tol), || format!("Σa² ≠ 2β ({sa} vs {two_beta})"))
    }

    fn a_at(&self, j: usize) -> T {
        self.a[j - 3].clone()
    }

    fn matrix(&self) -> Matrix<T> {
        let (q, n) = (self.q, self.dim());
        let f = 2 * q;
        let one = T::one;
        let beta = self.beta.clone();
        let mut j = Matrix::zeros(n, n);
        set_image(&mut j, eb(1), e(2), one());
        set_image(&mut j, f, eb(2), one());
        set_image(&mut j, e(2), eb(3), one());
        set_image(&mut j, e(2), f, -one());
        set_image(&mut j, eb(2), e(1), -one());
        set_image(&mut j, eb(2), e(3), beta.clone());
        set_image(&mut j, e(3), eb(2), -one());
        set_image(&mut j, e(3), e(3), self.a_at(3));
        set_image(&mut j, eb(3), e(2), -beta);
        set_image(&mut j, eb(3), eb(3), -self.a_at(3));
        for k in 4..=q {
            set_image(&mut j, e(k), e(k), self.a_at(k));
            set_image(&mut j, eb(k), eb(k), -self.a_at(k));
        }
        j
    }
}

pub fn heis_family3<T: Scalar>(params: &HeisFamily3Params<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    params.check(tol)?;
    let n = params.dim();
    NilMetricAlgebra::new(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()], tol)
}

pub fn heis_family3_unchecked<T: Scalar>(params: &HeisFamily3Params<T>) -> Result<NilMetricAlgebra<T>> {
    params.check_shape()?;
    let n = params.dim();
    NilMetricAlgebra::new_unchecked(make_space(params.q, n)?, vec![unit(n, 0)], vec![params.matrix()])
}

/// `E = e₁`, `F₁ = f`, `F̄₁ = e₂`, `F₂ = ē₁`, `F̄₂ = ē₂`, `F₃ = f + e₃`,
/// `F̄₃ = βē₁ + ē₃` with scale `a₃`, and `F_j = e_j`, `F̄_j = ē_j` with scale
/// `a_j` for `j ≥ 4`.
pub fn heis_family3_frame<T: Scalar>(params: &HeisFamily3Params<T>) -> Result<HeisenbergFrame<T>> {
    params.check_shape()?;
    let (q, n) = (params.q, params.dim());
    let u = |k| unit::<T>(n, k);
    let f = 2 * q;
    let mut pairs = vec![
        (u(f), u(e(2)), T::one()),
        (u(eb(1)), u(eb(2)), T::one()),
        (add_vec(&u(f), &u(e(3))), add_vec(&scaled(&params.beta, &u(eb(1))), &u(eb(3))), params.a_at(3)),
    ];
    for k in 4..=q {
        pairs.push((u(e(k)), u(eb(k)), params.a_at(k)));
    }
    Ok(HeisenbergFrame::new(u(0), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{ricci_bruteforce, ricci_fast, curvature_tensor};
    use crate::error::Error;
    use crate::scalar::Rational;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    fn heisenberg_checks(alg: &NilMetricAlgebra<Rational>, q: usize) {
        let tol = Tolerance::default();
        let n = alg.dim();
        assert_eq!(alg.space().q(), q);
        let j = &alg.js()[0];
        assert_eq!(j.mul(j).trace(), Rational::from_i64(0));
        assert_eq!(j.null_space(tol).len(), 1);
        assert_eq!(j.mul_vec(&unit(n, 0)), vec![Rational::from_i64(0); n]);
        assert!(alg.is_heisenberg(tol));
        assert_eq!(ricci_fast(alg), Matrix::zeros(n, n));
    }

    #[test]
    fn family1_small() {
        let p = HeisFamily1Params { q: 2, r: 0, a: ints(&[1]), lambda: ints(&[1]) };
        let alg = heis_family1(&p, Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 9);
        heisenberg_checks(&alg, 2);
        let r = curvature_tensor(&alg, Tolerance::default()).unwrap();
        assert_eq!(ricci_bruteforce(&r), Matrix::zeros(9, 9));
    }

    #[test]
    fn family1_rejects_trace_mismatch() {
        let p = HeisFamily1Params { q: 2, r: 0, a: ints(&[1]), lambda: ints(&[2]) };
        let err = heis_family1(&p, Tolerance::default()).unwrap_err();
        assert!(matches!(&err, Error::Constraint(m) if m.starts_with("Σa² ≠ Σλ²")), "{err}");
        let forced = heis_family1_unchecked(&p).unwrap();
        assert!(ricci_fast(&forced).max_abs() > 1e-3);
    }

    #[test]
    fn family1_rejects_unsorted_lambda() {
        let p = HeisFamily1Params { q: 3, r: 1, a: ints(&[3, 4]), lambda: ints(&[4, 3]) };
        assert!(heis_family1(&p, Tolerance::default()).is_err());
        let p = HeisFamily1Params { q: 3, r: 1, a: ints(&[3, 4]), lambda: ints(&[-3, 4]) };
        assert!(heis_family1(&p, Tolerance::default()).is_err());
    }

    #[test]
    fn family1_larger() {
        let p = HeisFamily1Params { q: 3, r: 1, a: ints(&[3, 4]), lambda: ints(&[3, 4]) };
        let alg = heis_family1(&p, Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 15);
        heisenberg_checks(&alg, 3);
    }

    #[test]
    fn family2_instances() {
        let p = HeisFamily2Params { q: 3, r: 2, a: vec![], lambda: ints(&[0, 0]) };
        let alg = heis_family2(&p, Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 11);
        heisenberg_checks(&alg, 3);
        let p = HeisFamily2Params { q: 3, r: 1, a: ints(&[1]), lambda: ints(&[1]) };
        let alg = heis_family2(&p, Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 9);
        heisenberg_checks(&alg, 3);
        let p = HeisFamily2Params { q: 4, r: 2, a: ints(&[5]), lambda: ints(&[3, 4]) };
        heisenberg_checks(&heis_family2(&p, Tolerance::default()).unwrap(), 4);
    }

    #[test]
    fn family2_rejections() {
        let tol = Tolerance::default();
        let p = HeisFamily2Params::<Rational> { q: 2, r: 2, a: vec![], lambda: ints(&[0, 0]) };
        assert!(matches!(heis_family2(&p, tol), Err(Error::Format(_))));
        let p = HeisFamily2Params { q: 3, r: 2, a: vec![], lambda: ints(&[1, 0]) };
        assert!(heis_family2(&p, tol).is_err());
        assert!(ricci_fast(&heis_family2_unchecked(&p).unwrap()).max_abs() > 1e-3);
        let p = HeisFamily2Params { q: 3, r: 1, a: ints(&[1]), lambda: ints(&[2]) };
        assert!(heis_family2(&p, tol).is_err());
    }

    #[test]
    fn family3_instances() {
        let p = HeisFamily3Params { q: 3, a: ints(&[2]), beta: Rational::from_i64(2) };
        let alg = heis_family3(&p, Tolerance::default()).unwrap();
        assert_eq!(alg.dim(), 7);
        heisenberg_checks(&alg, 3);
        let p = HeisFamily3Params { q: 4, a: ints(&[1, 1]), beta: Rational::from_i64(1) };
        heisenberg_checks(&heis_family3(&p, Tolerance::default()).unwrap(), 4);
        let p = HeisFamily3Params { q: 3, a: ints(&[1]), beta: Rational::from_i64(1) };
        assert!(heis_family3(&p, Tolerance::default()).is_err());
        let p = HeisFamily3Params { q: 2, a: vec![], beta: Rational::from_i64(0) };
        assert!(matches!(heis_family3(&p, Tolerance::default()), Err(Error::Format(_))));
    }

    #[test]
    fn family3_irrational_parameter_in_float_mode() {
        let p = HeisFamily3Params { q: 3, a: vec![2f64.sqrt()], beta: 1.0 };
        let alg = heis_family3(&p, Tolerance::default()).unwrap();
        assert!(ricci_fast(&alg).max_abs() < 1e-12);
    }

    #[test]
    fn frames_give_the_standard_bracket_table() {
        let tol = Tolerance::default();
        let f1 = HeisFamily1Params { q: 3, r: 1, a: ints(&[3, 4]), lambda: ints(&[3, 4]) };
        let f2 = HeisFamily2Params { q: 4, r: 2, a: ints(&[5]), lambda: ints(&[3, 4]) };
        let f3 = HeisFamily3Params { q: 4, a: ints(&[1, 1]), beta: Rational::from_i64(1) };
        let cases = [
            (heis_family1(&f1, tol).unwrap(), heis_family1_frame(&f1).unwrap()),
            (heis_family2(&f2, tol).unwrap(), heis_family2_frame(&f2).unwrap()),
            (heis_family3(&f3, tol).unwrap(), heis_family3_frame(&f3).unwrap()),
        ];
        for (alg, frame) in cases {
            frame.check(&alg, tol).unwrap();
            assert_eq!(2 * frame.k() + 1, alg.dim());
            let rewritten = frame.rewrite(&alg, tol).unwrap();
            assert_eq!(rewritten.center()[0], unit(alg.dim(), 0));
            let table = rewritten.bracket_table();
            for (k, s) in frame.scales.iter().enumerate() {
                assert_eq!(table[2 * k + 1][2 * k + 2], scaled(s, &unit(alg.dim(), 0)));
            }
            assert_eq!(ricci_fast(&rewritten), Matrix::zeros(alg.dim(), alg.dim()));
        }
    }

    #[test]
    fn float_frames_are_normalized() {
        let tol = Tolerance::default();
        let p = HeisFamily1Params { q: 2, r: 0, a: vec![2.0], lambda: vec![2.0] };
        let frame = heis_family1_frame(&p).unwrap();
        assert!(frame.scales.iter().all(|s| *s == 1.0));
        frame.check(&heis_family1(&p, tol).unwrap(), tol).unwrap();
        let p = HeisFamily3Params { q: 3, a: vec![2.0], beta: 2.0 };
        let frame = heis_family3_frame(&p).unwrap();
        frame.check(&heis_family3(&p, tol).unwrap(), tol).unwrap();
    }
}
