use crate::algebra::NilMetricAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{axpy, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// `𝒟_{b_a} b_c` for all basis vectors; `ops[a]` is the matrix of `𝒟_{b_a}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviCivitaTable<T> {
    ops: Vec<Matrix<T>>,
}

impl<T: Scalar> LeviCivitaTable<T> {
    pub fn dim(&self) -> usize {
        self.ops.len()
    }

    /// Matrix of `𝒟_{b_a}`.
    pub fn operator(&self, a: usize) -> &Matrix<T> {
        &self.ops[a]
    }

    /// `𝒟_{b_a} b_b`.
    pub fn coefficient(&self, a: usize, b: usize) -> Vec<T> {
        self.ops[a].column(b)
    }

    /// Matrix of `𝒟_u`.
    pub fn operator_along(&self, u: &[T]) -> Matrix<T> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (a, ua) in u.iter().enumerate() {
            if !ua.is_zero() {
                m.add_scaled(ua, &self.ops[a]);
            }
        }
        m
    }

    pub fn product(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.operator_along(u).mul_vec(v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.ops.iter().zip(&other.ops).fold(0.0, |acc, (a, b)| acc.max(a.max_abs_diff(b)))
    }

    pub fn max_abs(&self) -> f64 {
        self.ops.iter().fold(0.0, |acc, m| acc.max(m.max_abs()))
    }
}

/// Solves `2⟨𝒟_u v, w⟩ = ⟨[u,v],w⟩ + ⟨[w,u],v⟩ + ⟨[w,v],u⟩` on basis
/// triples with the inverse Gram matrix.
pub fn levi_civita_definitional<T: Scalar>(alg: &NilMetricAlgebra<T>) -> LeviCivitaTable<T> {
    let n = alg.dim();
    let g = alg.gram();
    // lowered[a][b] = G [b_a, b_b]
    let lowered: Vec<Vec<Vec<T>>> = alg
        .bracket_table()
        .into_iter()
        .map(|row| row.into_iter().map(|v| g.mul_vec(&v)).collect())
        .collect();
    let half = T::half();
    let ops = (0..n)
        .map(|a| {
            let columns: Vec<Vec<T>> = (0..n)
                .map(|b| {
                    let covector: Vec<T> = (0..n)
                        .map(|c| {
                            half.clone()
                                * (lowered[a][b][c].clone() + lowered[c][a][b].clone() + lowered[c][b][a].clone())
                        })
                        .collect();
                    alg.space().raise(&covector)
                })
                .collect();
            Matrix::from_columns(n, &columns)
        })
        .collect();
    LeviCivitaTable { ops }
}

/// `2𝒟_u v = Σ_i (⟨J_i u, v⟩ e_i − ⟨e_i, v⟩ J_i u − ⟨e_i, u⟩ J_i v)`.
pub fn levi_civita_closed_form<T: Scalar>(alg: &NilMetricAlgebra<T>) -> LeviCivitaTable<T> {
    let n = alg.dim();
    let g = alg.gram();
    let half = T::half();
    let gj: Vec<Matrix<T>> = alg.js().iter().map(|j| g.mul(j)).collect();
    let lowered_center: Vec<Vec<T>> = alg.center().iter().map(|e| g.mul_vec(e)).collect();
    let ops = (0..n)
        .map(|a| {
            let mut m = Matrix::<T>::zeros(n, n);
            for (i, (j, e)) in alg.js().iter().zip(alg.center()).enumerate() {
                let le = &lowered_center[i];
                for b in 0..n {
                    let mut col = vec![T::zero(); n];
                    // ⟨J_i b_a, b_b⟩ = (G J_i)_{ba}
                    axpy(&mut col, &gj[i][(b, a)], e);
                    axpy(&mut col, &-le[b].clone(), &j.column(a));
                    axpy(&mut col, &-le[a].clone(), &j.column(b));
                    for r in 0..n {
                        if !col[r].is_zero() {
                            m[(r, b)] = m[(r, b)].clone() + half.clone() * col[r].clone();
                        }
                    }
                }
            }
            m
        })
        .collect();
    LeviCivitaTable { ops }
}

/// Both constructions, required to agree: exactly in rational mode, within
/// `tol · max(1, ‖Γ‖)` otherwise.
pub fn levi_civita<T: Scalar>(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<LeviCivitaTable<T>> {
    let def = levi_civita_definitional(alg);
    let closed = levi_civita_closed_form(alg);
    let deviation = def.max_abs_diff(&closed);
    let bound = scaled_bound::<T>(tol, def.max_abs());
    if deviation > bound {
        return Err(Error::Inconsistent { what: "Levi-Civita constructions", deviation, tolerance: bound });
    }
    Ok(closed)
}

/// Zero in exact mode, `tol · max(1, scale)` in float mode.
pub(crate) fn scaled_bound<T: Scalar>(tol: Tolerance, scale: f64) -> f64 {
    if T::is_exact() {
        0.0
    } else {
        tol.value() * scale.max(1.0)
    }
}

/// `max |⟨𝒟_a b, c⟩ + ⟨b, 𝒟_a c⟩|` over basis triples.
pub fn metric_compatibility_defect<T: Scalar>(alg: &NilMetricAlgebra<T>, table: &LeviCivitaTable<T>) -> f64 {
    let g = alg.gram();
    // G·𝒟_a is antisymmetric exactly when 𝒟_a is skew
    (0..alg.dim()).fold(0.0, |acc, a| {
        let m = g.mul(table.operator(a));
        acc.max(m.max_abs_diff(&m.transpose().neg()))
    })
}

/// `max |𝒟_a b − 𝒟_b a − [b_a, b_b]|` over basis pairs.
pub fn torsion_defect<T: Scalar>(alg: &NilMetricAlgebra<T>, table: &LeviCivitaTable<T>) -> f64 {
    let n = alg.dim();
    let brackets = alg.bracket_table();
    let mut worst = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            let lhs = crate::matrix::sub_vec(&table.coefficient(a, b), &table.coefficient(b, a));
            worst = worst.max(crate::matrix::max_abs_diff_vec(&lhs, &brackets[a][b]));
        }
    }
    worst
}
