use crate::algebra::NilMetricAlgebra;
use crate::curvature::levi_civita::{levi_civita, scaled_bound, LeviCivitaTable};
use crate::error::{Error, Result};
use crate::matrix::{axpy, Matrix};
use crate::scalar::{Scalar, Tolerance};

/// `ℛ(b_a, b_b)` as endomorphisms, with the sign convention
/// `ℛ(u,v) = 𝒟_{[u,v]} − 𝒟_u𝒟_v + 𝒟_v𝒟_u` (opposite to the usual textbook one).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<T> {
    n: usize,
    maps: Vec<Matrix<T>>,
}

impl<T: Scalar> CurvatureTensor<T> {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Matrix of `w ↦ ℛ(b_a, b_b) w`.
    pub fn map(&self, a: usize, b: usize) -> &Matrix<T> {
        &self.maps[a * self.n + b]
    }

    /// Component `d` of `ℛ(b_a, b_b) b_c`.
    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> &T {
        &self.map(a, b)[(d, c)]
    }

    /// `ℛ(u, v) w` for arbitrary vectors.
    pub fn apply(&self, u: &[T], v: &[T], w: &[T]) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let c = u[a].clone() * v[b].clone();
                axpy(&mut out, &c, &self.map(a, b).mul_vec(w));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.maps.iter().fold(0.0, |acc, m| acc.max(m.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.maps.iter().zip(&other.maps).fold(0.0, |acc, (a, b)| acc.max(a.max_abs_diff(b)))
    }

    pub fn is_zero(&self, tol: Tolerance) -> bool {
        self.maps.iter().all(|m| m.is_zero_within(tol))
    }
}

/// `ℛ(u,v) = 𝒟_{[u,v]} − 𝒟_u𝒟_v + 𝒟_v𝒟_u` composed from a Levi-Civita table.
pub fn curvature_definitional<T: Scalar>(alg: &NilMetricAlgebra<T>, table: &LeviCivitaTable<T>) -> CurvatureTensor<T> {
    let n = alg.dim();
    let brackets = alg.bracket_table();
    let mut maps = vec![Matrix::zeros(n, n); n * n];
    // ℛ(v,u) = −ℛ(u,v) term by term, so only a < b is composed
    for a in 0..n {
        for b in a + 1..n {
            let m = table.operator_along(&brackets[a][b]).sub(&table.operator(a).commutator(table.operator(b)));
            maps[b * n + a] = m.neg();
            maps[a * n + b] = m;
        }
    }
    CurvatureTensor { n, maps }
}

/// Closed form in terms of the structure endomorphisms, evaluated on basis
/// triples `(u, v, w) = (b_a, b_b, b_c)`.
pub fn curvature_closed_form<T: Scalar>(alg: &NilMetricAlgebra<T>) -> CurvatureTensor<T> {
    let n = alg.dim();
    let p = alg.center_dim();
    let g = alg.gram();
    let js = alg.js();
    let center = alg.center();
    let gamma = alg.center_gram();
    let lowered: Vec<Vec<T>> = center.iter().map(|e| g.mul_vec(e)).collect();
    // S_i = G J_i, so ⟨J_i b_a, b_b⟩ = S_i[b][a]
    let s: Vec<Matrix<T>> = js.iter().map(|j| g.mul(j)).collect();
    // T_j = Σ_i ⟨e_i, e_j⟩ S_i
    let t: Vec<Matrix<T>> = (0..p)
        .map(|j| {
            let mut m = Matrix::zeros(n, n);
            for i in 0..p {
                m.add_scaled(&gamma[(i, j)], &s[i]);
            }
            m
        })
        .collect();
    let idx = |j: usize, i: usize| j * p + i;
    let mut prod = Vec::with_capacity(p * p); // J_j J_i
    let mut comm = Vec::with_capacity(p * p); // [J_j, J_i]
    let mut comm_form = Vec::with_capacity(p * p); // G [J_j, J_i]
    let mut cross = Vec::with_capacity(p * p); // J_jᵀ G J_i
    for j in 0..p {
        for i in 0..p {
            let ji = js[j].mul(&js[i]);
            let c = ji.sub(&js[i].mul(&js[j]));
            comm_form.push(g.mul(&c));
            cross.push(js[j].transpose().mul(&s[i]));
            prod.push(ji);
            comm.push(c);
        }
    }
    let quarter = T::quarter();
    let half = T::half();
    // w[k][(x, y)] = ¼⟨e_i, b_x⟩⟨e_j, b_y⟩ for k = (j, i)
    let w: Vec<Matrix<T>> = (0..p)
        .flat_map(|j| (0..p).map(move |i| (j, i)))
        .map(|(j, i)| Matrix::from_fn(n, n, |x, y| quarter.clone() * lowered[i][x].clone() * lowered[j][y].clone()))
        .collect();

    let mut maps = vec![Matrix::zeros(n, n); n * n];
    // antisymmetric in (u, v) after summing over i, j; the diagonal is kept
    // as a check
    for a in 0..n {
        for b in a..n {
            let mut m = Matrix::zeros(n, n);
            for c in 0..n {
                let mut out = vec![T::zero(); n];
                for j in 0..p {
                    let jj = &js[j];
                    // Σ_ij ⟨e_i,e_j⟩ (¼⟨J_i v,w⟩ J_j u − ¼⟨J_i u,w⟩ J_j v − ½⟨J_i u,v⟩ J_j w)
                    accumulate(&mut out, &(quarter.clone() * t[j][(c, b)].clone()), jj, a);
                    accumulate(&mut out, &-(quarter.clone() * t[j][(c, a)].clone()), jj, b);
                    accumulate(&mut out, &-(half.clone() * t[j][(b, a)].clone()), jj, c);
                    let mut coeff_e = T::zero();
                    for i in 0..p {
                        let li = &lowered[i];
                        let k = idx(j, i);
                        // ¼ Σ_ij (⟨e_i,w⟩⟨e_j,v⟩ J_jJ_i u − ⟨e_i,w⟩⟨e_j,u⟩ J_jJ_i v + ⟨e_i,u⟩⟨e_j,v⟩ [J_j,J_i] w)
                        accumulate(&mut out, &w[k][(c, b)], &prod[k], a);
                        accumulate(&mut out, &-w[k][(c, a)].clone(), &prod[k], b);
                        accumulate(&mut out, &w[k][(a, b)], &comm[k], c);
                        // ¼ Σ_ij (⟨e_i,w⟩⟨[J_j,J_i]u,v⟩ + ⟨e_i,v⟩⟨J_j u,J_i w⟩ − ⟨e_i,u⟩⟨J_j v,J_i w⟩) e_j
                        for (x, y) in [(&li[c], &comm_form[k][(b, a)]), (&li[b], &cross[k][(a, c)])] {
                            if !x.is_zero() && !y.is_zero() {
                                coeff_e = coeff_e + x.clone() * y.clone();
                            }
                        }
                        if !li[a].is_zero() && !cross[k][(b, c)].is_zero() {
                            coeff_e = coeff_e - li[a].clone() * cross[k][(b, c)].clone();
                        }
                    }
                    if !coeff_e.is_zero() {
                        axpy(&mut out, &(quarter.clone() * coeff_e), &center[j]);
                    }
                }
                for (r, v) in out.into_iter().enumerate() {
                    m[(r, c)] = v;
                }
            }
            if a != b {
                maps[b * n + a] = m.neg();
            }
            maps[a * n + b] = m;
        }
    }
    CurvatureTensor { n, maps }
}

/// `out += coef · (column `col` of m)`, skipping zeros.
fn accumulate<T: Scalar>(out: &mut [T], coef: &T, m: &Matrix<T>, col: usize) {
    if coef.is_zero() {
        return;
    }
    for (r, o) in out.iter_mut().enumerate() {
        let x = &m[(r, col)];
        if !x.is_zero() {
            *o = o.clone() + coef.clone() * x.clone();
        }
    }
}

/// Curvature by both routes; they must agree (exactly in rational mode).
pub fn curvature_tensor<T: Scalar>(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<CurvatureTensor<T>> {
    let table = levi_civita(alg, tol)?;
    let def = curvature_definitional(alg, &table);
    let closed = curvature_closed_form(alg);
    let deviation = def.max_abs_diff(&closed);
    let bound = scaled_bound::<T>(tol, def.max_abs());
    if deviation > bound {
        return Err(Error::Inconsistent { what: "curvature constructions", deviation, tolerance: bound });
    }
    Ok(def)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::euclidean_h3;
    use crate::matrix::{scaled, unit};
    use crate::pe_linalg::make_space;
    use crate::scalar::Rational;

    #[test]
    fn flat_lorentz_h3_is_flat() {
        let space = make_space::<Rational>(1, 3).unwrap();
        let k = Matrix::from_i64_rows(&[vec![0, 0, -1], vec![0, 0, 0], vec![0, 1, 0]]);
        let alg = NilMetricAlgebra::new(space, vec![unit(3, 0)], vec![k], Tolerance::default()).unwrap();
        let r = curvature_tensor(&alg, Tolerance::default()).unwrap();
        assert!(r.maps.iter().all(|m| *m == Matrix::zeros(3, 3)));
    }

    #[test]
    fn h3_curvature() {
        let alg = euclidean_h3::<Rational>();
        let r = curvature_tensor(&alg, Tolerance::default()).unwrap();
        let (x, y) = (unit(3, 1), unit(3, 2));
        // with this sign convention ℛ(x,y)y = ¾x
        assert_eq!(r.apply(&x, &y, &y), scaled(&Rational::from_ratio(3, 4), &x));
        assert_eq!(r.apply(&y, &x, &y), scaled(&Rational::from_ratio(-3, 4), &x));
    }

    #[test]
    fn central_direction_pairs_vanish_on_flat_lorentz_h3() {
        let space = make_space::<f64>(1, 3).unwrap();
        let k = Matrix::from_i64_rows(&[vec![0, 0, -1], vec![0, 0, 0], vec![0, 1, 0]]);
        let alg = NilMetricAlgebra::new(space, vec![unit(3, 0)], vec![k], Tolerance::default()).unwrap();
        let closed = curvature_closed_form(&alg);
        for b in 0..3 {
            assert!(closed.map(b, 0).is_zero_within(Tolerance::default()));
        }
    }
}
