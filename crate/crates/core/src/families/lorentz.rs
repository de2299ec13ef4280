//! Lorentzian metrics on 2-step nilpotent algebras: the Ricci-flat family on
//! `ℝ^{(1,1)} × ℝ^p × ℝ^{2r} × ℝ^q` with basis `(e, ē, f₁…f_p, g₁…g_{2r}, h₁…h_q)`,
//! flat `H₃`, and random Lorentzian metrics on `H_{2k+1}`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{matrix_from_rows, positive_nondecreasing, require, same, shape, sum_sq};
use crate::algebra::NilMetricAlgebra;
use crate::error::Result;
use crate::matrix::{unit, Matrix};
use crate::pe_linalg::{canonical_gram, make_space, PseudoEuclideanSpace};
use crate::io::JsonScalar;
use crate::scalar::{Scalar, Tolerance};

/// Brackets `[ē, g_i] = a_i e + Σ_l x_i^l f_l`, `[ē, h_i] = b_i e + Σ_l y_i^l f_l`,
/// `[g_{2i−1}, g_{2i}] = λ_i e`; all others vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct LorentzFamilyParams<T> {
    pub p: usize,
    pub r: usize,
    pub q: usize,
    /// `M₁ = (x_i^l)`, `2r × p`.
    #[serde(with = "crate::io::num")]
    pub m1: Vec<Vec<T>>,
    /// `M₂ = (y_i^l)`, `q × p`.
    #[serde(with = "crate::io::num")]
    pub m2: Vec<Vec<T>>,
    /// `a₁, …, a_{2r}`.
    #[serde(with = "crate::io::num")]
    pub a: Vec<T>,
    /// `b₁, …, b_q`.
    #[serde(with = "crate::io::num")]
    pub b: Vec<T>,
    /// `λ₁, …, λ_r`.
    #[serde(with = "crate::io::num")]
    pub lambda: Vec<T>,
}

impl<T: Scalar> LorentzFamilyParams<T> {
    /// `p = r = 0`, `q = 1`, `b₁ = 1`: flat `H₃`.
    pub fn three_dimensional() -> Self {
        LorentzFamilyParams {
            p: 0,
            r: 0,
            q: 1,
            m1: vec![],
            m2: vec![vec![]],
            a: vec![],
            b: vec![T::one()],
            lambda: vec![],
        }
    }

    /// `p = r = 1`, `q = 0`, `M₁ = (α, β)ᵀ`, `A = (a₁, a₂)`.
    pub fn five_dimensional(alpha: T, beta: T, a1: T, a2: T, lambda: T) -> Self {
        LorentzFamilyParams {
            p: 1,
            r: 1,
            q: 0,
            m1: vec![vec![alpha], vec![beta]],
            m2: vec![],
            a: vec![a1, a2],
            b: vec![],
            lambda: vec![lambda],
        }
    }

    pub fn dim(&self) -> usize {
        2 + self.p + 2 * self.r + self.q
    }

    pub fn f(&self, l: usize) -> usize {
        2 + l
    }

    pub fn g(&self, i: usize) -> usize {
        2 + self.p + i
    }

    pub fn h(&self, i: usize) -> usize {
        2 + self.p + 2 * self.r + i
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        let (p, r, q) = (self.p, self.r, self.q);
        matrix_from_rows(&self.m1, 2 * r, p, "M1")?;
        matrix_from_rows(&self.m2, q, p, "M2")?;
        shape(self.a.len() == 2 * r, || format!("expected {} values a_i", 2 * r))?;
        shape(self.b.len() == q, || format!("expected {q} values b_i"))?;
        shape(self.lambda.len() == r, || format!("expected {r} values λ_i"))
    }

    pub fn check(&self, tol: Tolerance) -> Result<()> {
        self.check_shape()?;
        positive_nondecreasing(&self.lambda, "λ", tol)?;
        let mut span = vec![self.b.clone()];
        span.extend((0..self.p).map(|l| self.m2.iter().map(|row| row[l].clone()).collect::<Vec<_>>()));
        require(crate::matrix::rank_of(self.q, &span, tol) == self.q, || {
            format!("span{{B, Y_1, …, Y_p}} ≠ ℝ^{}", self.q)
        })?;
        let lhs = sum_sq(self.m1.iter().flatten()) + sum_sq(self.m2.iter().flatten());
        let rhs = sum_sq(&self.lambda);
        require(same(&lhs, &rhs, tol), || format!("tr(M₁ᵀM₁) + tr(M₂ᵀM₂) ≠ Σλ² ({lhs} vs {rhs})"))
    }

    /// Structure constants for the center basis `(e, f₁, …, f_p)`.
    fn structure_constants(&self) -> Vec<Matrix<T>> {
        let n = self.dim();
        let mut out = vec![Matrix::zeros(n, n); 1 + self.p];
        let mut put = |k: usize, a: usize, b: usize, v: &T| {
            out[k][(a, b)] = v.clone();
            out[k][(b, a)] = -v.clone();
        };
        for i in 0..2 * self.r {
            put(0, 1, self.g(i), &self.a[i]);
            for l in 0..self.p {
                put(1 + l, 1, self.g(i), &self.m1[i][l]);
            }
        }
        for i in 0..self.q {
            put(0, 1, self.h(i), &self.b[i]);
            for l in 0..self.p {
                put(1 + l, 1, self.h(i), &self.m2[i][l]);
            }
        }
        for i in 0..self.r {
            put(0, self.g(2 * i), self.g(2 * i + 1), &self.lambda[i]);
        }
        out
    }

    fn center(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        std::iter::once(unit(n, 0)).chain((0..self.p).map(|l| unit(n, self.f(l)))).collect()
    }
}

/// Checks both conditions on the parameters, then builds and validates.
pub fn lorentz_ricci_flat<T: Scalar>(params: &LorentzFamilyParams<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    params.check(tol)?;
    let space = make_space(1, params.dim())?;
    NilMetricAlgebra::from_structure_constants(space, params.center(), &params.structure_constants(), tol)
}

pub fn lorentz_ricci_flat_unchecked<T: Scalar>(params: &LorentzFamilyParams<T>) -> Result<NilMetricAlgebra<T>> {
    params.check_shape()?;
    let space = make_space(1, params.dim())?;
    let js = params.structure_constants().iter().map(|c| space.gram_inverse().mul(c).neg()).collect();
    NilMetricAlgebra::new_unchecked(space, params.center(), js)
}

/// Basis `(e, ē, w)`, `⟨e, ē⟩ = ⟨w, w⟩ = 1`, `Kē = w`, `Kw = −e`.
pub fn flat_h3_lorentz<T: Scalar>() -> NilMetricAlgebra<T> {
    let space = make_space(1, 3).expect("valid signature");
    let k = Matrix::from_i64_rows(&[vec![0, 0, -1], vec![0, 0, 0], vec![0, 1, 0]]);
    NilMetricAlgebra::new(space, vec![unit(3, 0)], vec![k], Tolerance::default()).expect("flat H3 is valid")
}

/// Flat Lorentzian Gram on the bracket basis `(z, x, x̄)` of `H₃`:
/// `⟨z, x⟩ = ⟨x̄, x̄⟩ = 1`.
pub fn flat_h3_gram<T: Scalar>() -> Matrix<T> {
    Matrix::from_i64_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])
}

/// `H_{2k+1}` on the basis `(z, x₁, x̄₁, …, x_k, x̄_k)` with
/// `[x_i, x̄_i] = z`, carrying the metric `gram`.
pub fn lorentz_heisenberg_with_gram<T: Scalar>(k: usize, gram: Matrix<T>, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    let n = 2 * k + 1;
    shape(k >= 1 && gram.rows() == n, || format!("need k >= 1 and a {n} x {n} Gram matrix"))?;
    let space = Arc::new(PseudoEuclideanSpace::with_gram(gram, tol)?);
    let mut c = Matrix::zeros(n, n);
    for i in 0..k {
        c[(1 + 2 * i, 2 + 2 * i)] = T::one();
        c[(2 + 2 * i, 1 + 2 * i)] = -T::one();
    }
    NilMetricAlgebra::from_structure_constants(space, vec![unit(n, 0)], &[c], tol)
}

/// Random Lorentzian metric `PᵀG₀P` on `H_{2k+1}`, where `G₀` is the
/// canonical Lorentzian Gram and `P` a random invertible integer matrix with
/// entries in `[-2, 2]`. Deterministic in `seed`.
pub fn random_lorentz_heisenberg<T: Scalar>(k: usize, seed: u64) -> Result<NilMetricAlgebra<T>> {
    let n = 2 * k + 1;
    shape(k >= 1, || "k >= 1 is required".into())?;
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g0: Matrix<T> = canonical_gram(1, n);
    loop {
        let p = Matrix::from_fn(n, n, |_, _| T::from_i64(rng.gen_range(-2..=2)));
        if p.inverse(tol).is_none() {
            continue;
        }
        let gram = p.transpose().mul(&g0).mul(&p);
        return lorentz_heisenberg_with_gram(k, gram, tol);
    }
}

/// `‖𝔯‖∞ / (‖G‖∞² · max_i ‖J_i‖∞²)`, unchanged when the metric is rescaled.
pub fn scale_normalized_ricci<T: Scalar>(alg: &NilMetricAlgebra<T>, ricci: &Matrix<T>) -> f64 {
    let g = alg.gram().max_abs();
    let j = alg.js().iter().fold(0.0_f64, |acc, m| acc.max(m.max_abs()));
    let scale = g * g * j * j;
    if scale == 0.0 {
        0.0
    } else {
        ricci.max_abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{curvature_tensor, ricci_bruteforce, ricci_fast};
    use crate::error::Error;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn flat_h3_is_flat() {
        let alg = flat_h3_lorentz::<Rational>();
        let r = curvature_tensor(&alg, Tolerance::default()).unwrap();
        assert!(r.is_zero(Tolerance::default()));
        assert_eq!(ricci_bruteforce(&r), Matrix::zeros(3, 3));
        let k = &alg.js()[0];
        assert_eq!(k.mul(k).trace(), q(0));
        assert_eq!(alg.space().inner(&unit(3, 0), &unit(3, 0)), q(0));
    }

    #[test]
    fn three_dimensional_member_is_flat_h3() {
        let alg = lorentz_ricci_flat(&LorentzFamilyParams::<Rational>::three_dimensional(), Tolerance::default()).unwrap();
        assert_eq!(alg, flat_h3_lorentz());
    }

    #[test]
    fn five_dimensional_member() {
        let tol = Tolerance::default();
        let p = LorentzFamilyParams::five_dimensional(q(3), q(4), q(1), q(2), q(5));
        let alg = lorentz_ricci_flat(&p, tol).unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.space().q(), 1);
        assert_eq!(alg.center_dim(), 2);
        let r = curvature_tensor(&alg, tol).unwrap();
        assert_eq!(ricci_bruteforce(&r), Matrix::zeros(5, 5));
        assert!(!alg.center_gram().inverse(tol).is_some());

        let bad = LorentzFamilyParams::five_dimensional(q(3), q(4), q(1), q(2), q(6));
        let err = lorentz_ricci_flat(&bad, tol).unwrap_err();
        assert!(matches!(&err, Error::Constraint(m) if m.starts_with("tr(M₁ᵀM₁)")), "{err}");
        assert!(ricci_fast(&lorentz_ricci_flat_unchecked(&bad).unwrap()).max_abs() > 1e-3);
    }

    #[test]
    fn span_condition() {
        let tol = Tolerance::default();
        let mut p = LorentzFamilyParams::<Rational>::three_dimensional();
        p.b = vec![q(0)];
        let err = lorentz_ricci_flat(&p, tol).unwrap_err();
        assert!(err.to_string().contains("span{B, Y_1, …, Y_p}"), "{err}");
        // the forced algebra has a larger center and fails validation
        let forced = lorentz_ricci_flat_unchecked(&p).unwrap();
        assert!(!forced.is_valid(tol));
    }

    #[test]
    fn generic_member() {
        let tol = Tolerance::default();
        // p=2, r=1, q=2: Σx² + Σy² = 4 + 4 + 1 + 16 = 25 = 5²
        let p = LorentzFamilyParams {
            p: 2,
            r: 1,
            q: 2,
            m1: vec![vec![q(2), q(0)], vec![q(0), q(2)]],
            m2: vec![vec![q(1), q(0)], vec![q(0), q(4)]],
            a: vec![q(1), q(-1)],
            b: vec![q(2), q(3)],
            lambda: vec![q(5)],
        };
        let alg = lorentz_ricci_flat(&p, tol).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(ricci_fast(&alg), Matrix::zeros(8, 8));
        let r = curvature_tensor(&alg, tol).unwrap();
        assert_eq!(ricci_bruteforce(&r), Matrix::zeros(8, 8));
    }

    #[test]
    fn heisenberg_gram_variants() {
        let tol = Tolerance::default();
        let flat = lorentz_heisenberg_with_gram::<Rational>(1, flat_h3_gram(), tol).unwrap();
        assert_eq!(ricci_fast(&flat), Matrix::zeros(3, 3));
        let a = random_lorentz_heisenberg::<Rational>(2, 11).unwrap();
        let b = random_lorentz_heisenberg::<Rational>(2, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.space().q(), 1);
        assert!(a.is_heisenberg(tol));
        let r = ricci_fast(&a);
        assert!(scale_normalized_ricci(&a, &r) > 1e-6);
    }
}
