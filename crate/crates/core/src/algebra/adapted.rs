//! Basis adapted to a possibly degenerate center: isotropic pairs `(e_i, ē_i)`
//! with `e_i` spanning `𝔷 ∩ 𝔷^⊥`, an orthogonal basis of a complement `𝔉` of
//! `𝔷 ∩ 𝔷^⊥` in `𝔷`, and one of a complement `𝔊` in `𝔷^⊥`.

use crate::algebra::NilMetricAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{axpy, rank_of, scaled, Matrix};
use crate::pe_linalg::PseudoEuclideanSpace;
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBasis<T> {
    /// `(e_i, ē_i)` with `⟨e_i, ē_j⟩ = δ_ij`, `⟨e_i, e_j⟩ = ⟨ē_i, ē_j⟩ = 0`.
    pub pairs: Vec<(Vec<T>, Vec<T>)>,
    pub f: Vec<Vec<T>>,
    pub g: Vec<Vec<T>>,
    /// `⟨f_i, f_i⟩`: ±1 whenever the square root exists in the scalar field.
    pub f_norms: Vec<T>,
    pub g_norms: Vec<T>,
}

impl<T: Scalar> AdaptedBasis<T> {
    /// `q' = dim(𝔷 ∩ 𝔷^⊥)`.
    pub fn null_dim(&self) -> usize {
        self.pairs.len()
    }

    /// All vectors, ordered `(e₁, ē₁, …, f₁, …, g₁, …)`.
    pub fn vectors(&self) -> Vec<Vec<T>> {
        let mut out: Vec<Vec<T>> = Vec::new();
        for (e, eb) in &self.pairs {
            out.push(e.clone());
            out.push(eb.clone());
        }
        out.extend(self.f.iter().cloned());
        out.extend(self.g.iter().cloned());
        out
    }

    /// Re-checks every relation the basis is meant to satisfy.
    pub fn check(&self, alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<()> {
        let space = alg.space();
        let n = alg.dim();
        let fail = |what: &str| Err(Error::constraint(format!("adapted basis: {what}")));
        let t = tol.value();
        let zero = |x: T| x.is_negligible(t);
        let all = self.vectors();
        if all.len() != n || rank_of(n, &all, tol) != n {
            return fail("vectors do not form a basis");
        }
        let center_rank = rank_of(n, alg.center(), tol);
        let in_center = |v: &Vec<T>| rank_of(n, &[alg.center().to_vec(), vec![v.clone()]].concat(), tol) == center_rank;
        let orth_center = |v: &Vec<T>| alg.center().iter().all(|z| zero(space.inner(z, v)));
        for (i, (e, eb)) in self.pairs.iter().enumerate() {
            if !in_center(e) || !orth_center(e) {
                return fail("e_i not in the center's radical");
            }
            for (j, (e2, eb2)) in self.pairs.iter().enumerate() {
                let delta = if i == j { T::one() } else { T::zero() };
                if !zero(space.inner(e, e2)) || !zero(space.inner(eb, eb2)) || !zero(space.inner(e, eb2) - delta) {
                    return fail("isotropic pairs are not a Witt basis");
                }
            }
        }
        for (v, norm) in self.f.iter().zip(&self.f_norms).chain(self.g.iter().zip(&self.g_norms)) {
            if !zero(space.inner(v, v) - norm.clone()) || zero(norm.clone()) {
                return fail("recorded norms do not match");
            }
        }
        if !self.f.iter().all(in_center) {
            return fail("f_i outside the center");
        }
        if !self.g.iter().all(orth_center) {
            return fail("g_j not orthogonal to the center");
        }
        let rest: Vec<&Vec<T>> = self.f.iter().chain(&self.g).collect();
        for (i, u) in rest.iter().enumerate() {
            for v in &rest[i + 1..] {
                if !zero(space.inner(u, v)) {
                    return fail("f, g vectors are not mutually orthogonal");
                }
            }
            for (e, eb) in &self.pairs {
                if !zero(space.inner(u, e)) || !zero(space.inner(u, eb)) {
                    return fail("f, g vectors not orthogonal to the isotropic pairs");
                }
            }
        }
        Ok(())
    }
}

/// Vectors of `candidates` completing the independent family `base`, greedily.
fn complement<T: Scalar>(n: usize, base: &[Vec<T>], candidates: &[Vec<T>], tol: Tolerance) -> Vec<Vec<T>> {
    let all = [base.to_vec(), candidates.to_vec()].concat();
    if all.is_empty() {
        return vec![];
    }
    Matrix::from_columns(n, &all)
        .independent_columns(tol)
        .into_iter()
        .filter(|&k| k >= base.len())
        .map(|k| all[k].clone())
        .collect()
}

/// Gram–Schmidt for a family spanning a nondegenerate subspace. A null
/// candidate is replaced by its sum with a partner it pairs with.
fn orthogonalize<T: Scalar>(
    space: &PseudoEuclideanSpace<T>,
    mut family: Vec<Vec<T>>,
    tol: Tolerance,
) -> Result<Vec<Vec<T>>> {
    let threshold = tol.value() * space.gram_of(&family).max_abs().max(1.0);
    let mut out = Vec::with_capacity(family.len());
    while !family.is_empty() {
        let idx = match family.iter().position(|v| !space.inner(v, v).is_negligible(threshold)) {
            Some(i) => i,
            None => {
                let pair = (0..family.len()).find_map(|i| {
                    (i + 1..family.len())
                        .find(|&j| !space.inner(&family[i], &family[j]).is_negligible(threshold))
                        .map(|j| (i, j))
                });
                let (i, j) = pair.ok_or(Error::DegenerateGram)?;
                let partner = family[j].clone();
                axpy(&mut family[i], &T::one(), &partner);
                i
            }
        };
        let v = family.remove(idx);
        let norm = space.inner(&v, &v);
        for w in &mut family {
            let c = space.inner(w, &v) / norm.clone();
            axpy(w, &-c, &v);
        }
        out.push(v);
    }
    Ok(out)
}

/// Scales `v` to norm ±1 when `sqrt|⟨v,v⟩|` exists; returns the final norm.
fn normalize<T: Scalar>(space: &PseudoEuclideanSpace<T>, v: &mut Vec<T>) -> T {
    let norm = space.inner(v, v);
    if let Some(root) = norm.abs().try_sqrt() {
        *v = scaled(&(T::one() / root), v);
        return space.inner(v, v);
    }
    norm
}

impl<T: Scalar> NilMetricAlgebra<T> {
    /// Witt-type completion of the center: see [`AdaptedBasis`].
    pub fn build_adapted_basis(&self, tol: Tolerance) -> Result<AdaptedBasis<T>> {
        let n = self.dim();
        let space = self.space.as_ref();
        let rad: Vec<Vec<T>> = self.center_gram().null_space(tol).iter().map(|c| self.combine_center(c)).collect();

        let f_raw = complement(n, &rad, &self.center, tol);
        let mut f = orthogonalize(space, f_raw, tol)?;
        let f_norms = f.iter_mut().map(|v| normalize(space, v)).collect();

        let g_raw = complement(n, &rad, &self.center_orthogonal(tol), tol);
        let mut g = orthogonalize(space, g_raw, tol)?;
        let g_norms = g.iter_mut().map(|v| normalize(space, v)).collect();

        // W = (𝔉 ⊕ 𝔊)^⊥ is nondegenerate, of dimension 2q', and contains rad.
        let w = space.orthogonal_complement(&[f.clone(), g.clone()].concat(), tol);
        let c = complement(n, &rad, &w, tol);
        if c.len() != rad.len() {
            return Err(Error::Inconsistent {
                what: "radical dimension and its partner count",
                deviation: (c.len() as f64 - rad.len() as f64).abs(),
                tolerance: 0.0,
            });
        }
        let k = rad.len();
        let pairing = Matrix::from_fn(k, k, |i, j| space.inner(&rad[i], &c[j]));
        let inv = pairing.inverse(tol).ok_or(Error::DegenerateGram)?;
        let dual: Vec<Vec<T>> = (0..k)
            .map(|j| {
                let mut v = vec![T::zero(); n];
                for (m, cm) in c.iter().enumerate() {
                    axpy(&mut v, &inv[(m, j)], cm);
                }
                v
            })
            .collect();
        let pairs = (0..k)
            .map(|j| {
                let mut eb = dual[j].clone();
                for (m, e) in rad.iter().enumerate() {
                    let coeff = -T::half() * space.inner(&dual[j], &dual[m]);
                    axpy(&mut eb, &coeff, e);
                }
                (rad[j].clone(), eb)
            })
            .collect();
        Ok(AdaptedBasis { pairs, f, g, f_norms, g_norms })
    }
}
