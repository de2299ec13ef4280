//! Block representation `(A, B, X₁, Y₁, …, X_q, Y_q)` of a skew map in a
//! pseudo-Euclidean basis `(e₁, ē₁, …, e_q, ē_q, f₁, …, f_m)`, `m = n − 2q`:
//!
//! ```text
//!        ⎛ A  P ⎞        P = −(X₁; Y₁; …; X_q; Y_q)        (rows)
//!  Mat = ⎝ P̂  B ⎠        P̂ = (ᵗY₁ ᵗX₁ … ᵗY_q ᵗX_q)          (columns)
//! ```
//!
//! `B` is Euclidean-skew and `A` is skew for `⟨,⟩_q`, which pins its 2×2
//! blocks: `A_ii = diag(a_i, −a_i)` and `A_ji = [[−d, −b], [−c, −a]]` when
//! `A_ij = [[a, b], [c, d]]`, `j > i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::pe_linalg::{skew::trace_of_product, PseudoEuclideanSpace, SkewEndomorphism};
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct SkewRepresentation<T> {
    q: usize,
    a: Matrix<T>,
    b: Matrix<T>,
    x: Vec<Vec<T>>,
    y: Vec<Vec<T>>,
}

/// 2×2 block `[[a, b], [c, d]]` of `A` at block position `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Block2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> SkewRepresentation<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>, x: Vec<Vec<T>>, y: Vec<Vec<T>>) -> Result<Self> {
        if !a.is_square() || !a.rows().is_multiple_of(2) {
            return Err(Error::InvalidRepresentation("A must be 2q x 2q".into()));
        }
        let q = a.rows() / 2;
        let m = b.rows();
        if !b.is_square() {
            return Err(Error::InvalidRepresentation("B must be square".into()));
        }
        if x.len() != q || y.len() != q {
            return Err(Error::InvalidRepresentation(format!("expected {q} X and Y vectors")));
        }
        if x.iter().chain(&y).any(|v| v.len() != m) {
            return Err(Error::InvalidRepresentation(format!("X and Y vectors must have length {m}")));
        }
        Ok(SkewRepresentation { q, a, b, x, y })
    }

    /// Representation of the zero map.
    pub fn zero(q: usize, m: usize) -> Self {
        SkewRepresentation {
            q,
            a: Matrix::zeros(2 * q, 2 * q),
            b: Matrix::zeros(m, m),
            x: vec![vec![T::zero(); m]; q],
            y: vec![vec![T::zero(); m]; q],
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn euclidean_dim(&self) -> usize {
        self.b.rows()
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn x(&self) -> &[Vec<T>] {
        &self.x
    }

    pub fn y(&self) -> &[Vec<T>] {
        &self.y
    }

    /// Diagonal coefficient `a_i` of `A_ii = diag(a_i, −a_i)`.
    pub fn a_diag(&self, i: usize) -> T {
        self.a[(2 * i, 2 * i)].clone()
    }

    pub fn a_block(&self, i: usize, j: usize) -> Block2<T> {
        Block2 {
            a: self.a[(2 * i, 2 * j)].clone(),
            b: self.a[(2 * i, 2 * j + 1)].clone(),
            c: self.a[(2 * i + 1, 2 * j)].clone(),
            d: self.a[(2 * i + 1, 2 * j + 1)].clone(),
        }
    }

    /// Rows `V₁, …, V_m` of `P̂`, vectors of `ℝ^{(q,q)}`.
    pub fn v_rows(&self) -> Vec<Vec<T>> {
        (0..self.euclidean_dim())
            .map(|l| {
                (0..self.q)
                    .flat_map(|i| [self.y[i][l].clone(), self.x[i][l].clone()])
                    .collect()
            })
            .collect()
    }

    /// Checks the block constraints on `A` and the skew-symmetry of `B`.
    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        let t = tol.value();
        for i in 0..self.q {
            let d = self.a_block(i, i);
            if !d.b.is_negligible(t) || !d.c.is_negligible(t) || !(d.a + d.d).is_negligible(t) {
                return Err(Error::InvalidRepresentation(format!(
                    "diagonal block A_{{{i}{i}}} is not of the form diag(a, -a)"
                )));
            }
            for j in i + 1..self.q {
                let upper = self.a_block(i, j);
                let lower = self.a_block(j, i);
                let ok = (lower.a + upper.d).is_negligible(t)
                    && (lower.b + upper.b).is_negligible(t)
                    && (lower.c + upper.c).is_negligible(t)
                    && (lower.d + upper.a).is_negligible(t);
                if !ok {
                    return Err(Error::InvalidRepresentation(format!(
                        "blocks A_{{{i}{j}}} and A_{{{j}{i}}} are not paired"
                    )));
                }
            }
        }
        if !self.b.is_antisymmetric(tol) {
            return Err(Error::InvalidRepresentation("B is not skew-symmetric".into()));
        }
        Ok(())
    }

    /// Assembles the matrix `[[A, P], [P̂, B]]`.
    pub fn to_matrix(&self) -> Matrix<T> {
        let q2 = 2 * self.q;
        let m = self.euclidean_dim();
        let mut mat = Matrix::zeros(q2 + m, q2 + m);
        mat.set_block(0, 0, &self.a);
        mat.set_block(q2, q2, &self.b);
        for i in 0..self.q {
            for l in 0..m {
                mat[(2 * i, q2 + l)] = -self.x[i][l].clone();
                mat[(2 * i + 1, q2 + l)] = -self.y[i][l].clone();
                mat[(q2 + l, 2 * i)] = self.y[i][l].clone();
                mat[(q2 + l, 2 * i + 1)] = self.x[i][l].clone();
            }
        }
        mat
    }
}

/// Reads the representation off a skew map; the space must be canonical.
pub fn representation_of<T: Scalar>(j: &SkewEndomorphism<T>) -> Result<SkewRepresentation<T>> {
    let space = j.space();
    if !space.is_canonical() {
        return Err(Error::NonCanonicalBasis);
    }
    let q = space.q();
    let q2 = 2 * q;
    let m = space.dim() - q2;
    let mat = j.matrix();
    let a = mat.block(0, 0, q2, q2);
    let b = mat.block(q2, q2, m, m);
    let x = (0..q).map(|i| (0..m).map(|l| -mat[(2 * i, q2 + l)].clone()).collect()).collect();
    let y = (0..q).map(|i| (0..m).map(|l| -mat[(2 * i + 1, q2 + l)].clone()).collect()).collect();
    Ok(SkewRepresentation { q, a, b, x, y })
}

pub fn skew_from_representation<T: Scalar>(
    rep: &SkewRepresentation<T>,
    space: Arc<PseudoEuclideanSpace<T>>,
    tol: Tolerance,
) -> Result<SkewEndomorphism<T>> {
    if !space.is_canonical() {
        return Err(Error::NonCanonicalBasis);
    }
    if space.q() != rep.q || space.dim() != 2 * rep.q + rep.euclidean_dim() {
        return Err(Error::SpaceMismatch);
    }
    rep.validate(tol)?;
    SkewEndomorphism::new(space, rep.to_matrix(), tol)
}

/// `⟨u, v⟩_q = Σ (x_i y'_i + y_i x'_i)` on `ℝ^{(q,q)}`, coordinates `(x₁, y₁, …)`.
pub fn q_product<T: Scalar>(u: &[T], v: &[T]) -> T {
    assert_eq!(u.len(), v.len());
    assert_eq!(u.len() % 2, 0);
    (0..u.len() / 2).fold(T::zero(), |acc, i| {
        acc + u[2 * i].clone() * v[2 * i + 1].clone() + u[2 * i + 1].clone() * v[2 * i].clone()
    })
}

/// `tr(J₁ ∘ J₂)` from block data alone:
///
/// `2 Σ a¹_i a²_i − 2 Σ_{l<k} (a¹d² + d¹a² + b¹c² + c¹b²)_{lk}
///  − 2 Σ_l (X¹_l·Y²_l + X²_l·Y¹_l) + tr(B₁B₂)`.
pub fn trace_pair_formula<T: Scalar>(
    r1: &SkewRepresentation<T>,
    r2: &SkewRepresentation<T>,
) -> Result<T> {
    if r1.q != r2.q || r1.euclidean_dim() != r2.euclidean_dim() {
        return Err(Error::SpaceMismatch);
    }
    let two = T::from_i64(2);
    let mut diag = T::zero();
    for i in 0..r1.q {
        diag = diag + r1.a_diag(i) * r2.a_diag(i);
    }
    let mut off = T::zero();
    for l in 0..r1.q {
        for k in l + 1..r1.q {
            let u = r1.a_block(l, k);
            let v = r2.a_block(l, k);
            off = off + u.a * v.d.clone() + u.d * v.a + u.b * v.c + u.c * v.b;
        }
    }
    let mut cross = T::zero();
    for l in 0..r1.q {
        cross = cross + dot(&r1.x[l], &r2.y[l]) + dot(&r2.x[l], &r1.y[l]);
    }
    Ok(two.clone() * diag - two.clone() * off - two * cross + trace_of_product(&r1.b, &r2.b))
}
