//! Seeded random 2-step algebras and the oracle cross-checks run over them.
//!
//! Algebras are generated exactly: a basis change `T` built from random
//! shears, an antisymmetric form `S_i` supported on the last `n − p`
//! coordinates of the new basis, and `J_i = −G⁻¹ T⁻ᵀ S_i T⁻¹`, so that the
//! first `p` columns of `T` span the common kernel. Some samples put totally
//! isotropic vectors first in `T` (degenerate center) and some are rewritten
//! in a second random basis (non-pseudo-Euclidean Gram).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::NilMetricAlgebra;
use crate::curvature::{scaled_bound, CurvatureReport};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::parallel::{item_seed, Execution};
use crate::pe_linalg::{make_space, PseudoEuclideanSpace};
use crate::scalar::{ConvertScalar, Mode, Rational, Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusOptions {
    pub max_dim: usize,
    pub max_center: usize,
    pub min_q: usize,
    pub max_q: usize,
    /// Probability of forcing a totally isotropic start of the center.
    pub degenerate_rate: f64,
    /// Probability of rewriting the algebra in a random non-orthonormal basis.
    pub rebase_rate: f64,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { max_dim: 8, max_center: 3, min_q: 0, max_q: 2, degenerate_rate: 0.3, rebase_rate: 0.25 }
    }
}

impl CorpusOptions {
    pub fn euclidean() -> Self {
        CorpusOptions { max_q: 0, degenerate_rate: 0.0, ..Self::default() }
    }
}

fn small_ratio(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(-range..=range), rng.gen_range(1..=3))
}

/// Random invertible `k × k` matrix with small rational entries.
pub fn random_invertible(k: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let tol = Tolerance::default();
    loop {
        let m = Matrix::from_fn(k, k, |_, _| small_ratio(rng, 3));
        if m.inverse(tol).is_some() {
            return m;
        }
    }
}

/// Random skew map `G⁻¹M`, `M` antisymmetric with small rational entries.
pub fn random_skew(space: &PseudoEuclideanSpace<Rational>, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let n = space.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small_ratio(rng, 3);
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    space.gram_inverse().mul(&m)
}

/// Shape `(n, p, q)` with `2q ≤ n`, `n − p ≥ 2`, and `n − p` even when
/// `p = 1` (a single nonzero form must be nondegenerate off its kernel).
fn random_shape(rng: &mut ChaCha8Rng, o: &CorpusOptions) -> (usize, usize, usize) {
    let mut shapes = Vec::new();
    for n in 3..=o.max_dim {
        for p in 1..=o.max_center.min(n - 2) {
            for q in o.min_q..=o.max_q {
                if 2 * q <= n && (p > 1 || (n - p) % 2 == 0) {
                    shapes.push((n, p, q));
                }
            }
        }
    }
    *shapes.choose(rng).expect("options admit at least one shape")
}

/// `count` random column shears `b_j += c b_i`, `c ∈ {±1, ±½}`, applied to
/// `start`. With `forward_only` only `i < j` occurs, which keeps the span of
/// each leading set of columns.
fn shear(mut t: Matrix<Rational>, count: usize, forward_only: bool, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let n = t.rows();
    let choices = [(1, 1), (-1, 1), (1, 2), (-1, 2)];
    for _ in 0..count {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || (forward_only && i > j) {
            continue;
        }
        let (num, den) = *choices.choose(rng).expect("nonempty");
        let c = Rational::from_ratio(num, den);
        for r in 0..n {
            let v = t[(r, i)].clone() * c.clone();
            t[(r, j)] = t[(r, j)].clone() + v;
        }
    }
    t
}

/// Power of two `2^k` with `2^k · m ∈ (½, 1]`.
fn power_of_two_scale(m: f64) -> Rational {
    let k = m.log2().ceil() as i32;
    let two = Rational::from_i64(2);
    let p = (0..k.unsigned_abs()).fold(Rational::from_i64(1), |acc, _| acc * two.clone());
    if k >= 0 {
        Rational::from_i64(1) / p
    } else {
        p
    }
}

/// One valid algebra, deterministic in `seed`. The bracket is rescaled by a
/// power of two so that `max |J_i| ∈ (½, 1]`.
pub fn random_algebra(seed: u64, o: &CorpusOptions) -> NilMetricAlgebra<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = Tolerance::default();
    loop {
        let (n, p, q) = random_shape(&mut rng, o);
        let space = make_space::<Rational>(q, n).expect("valid shape");
        let t = if q > 0 && rng.gen_bool(o.degenerate_rate) {
            // e₁…e_q, f's, ē's: the first columns are null and mutually orthogonal
            let mut order: Vec<usize> = (0..q).map(|i| 2 * i).collect();
            order.extend(2 * q..n);
            order.extend((0..q).map(|i| 2 * i + 1));
            let start = Matrix::from_fn(n, n, |r, c| Rational::from_i64(i64::from(order[c] == r)));
            shear(start, 2 * n, true, &mut rng)
        } else {
            shear(Matrix::identity(n), 2 * n, false, &mut rng)
        };
        let t_inv = t.inverse(tol).expect("shears are invertible");
        let center: Vec<Vec<Rational>> = (0..p).map(|k| t.column(k)).collect();
        let js: Vec<Matrix<Rational>> = (0..p)
            .map(|_| {
                let mut s = Matrix::zeros(n, n);
                for i in p..n {
                    for j in i + 1..n {
                        let v = small_ratio(&mut rng, 3);
                        s[(i, j)] = v.clone();
                        s[(j, i)] = -v;
                    }
                }
                space.gram_inverse().mul(&t_inv.transpose().mul(&s).mul(&t_inv)).neg()
            })
            .collect();
        let Ok(alg) = NilMetricAlgebra::new(space, center, js, tol) else { continue };
        let alg = if rng.gen_bool(o.rebase_rate) {
            let p = shear(Matrix::identity(n), n, false, &mut rng);
            match alg.change_basis(&p, tol) {
                Ok(rebased) => rebased,
                Err(_) => continue,
            }
        } else {
            alg
        };
        let size = alg.js().iter().fold(0.0_f64, |acc, j| acc.max(j.max_abs()));
        let c = power_of_two_scale(size);
        let js = alg.js().iter().map(|j| j.scale(&c)).collect();
        return NilMetricAlgebra::new_unchecked(alg.space().clone(), alg.center().to_vec(), js)
            .expect("same shapes");
    }
}

/// `count` algebras with seeds `seed, seed + 1, …`.
pub fn random_corpus(count: usize, seed: u64, o: &CorpusOptions, exec: Execution) -> Vec<NilMetricAlgebra<Rational>> {
    exec.map_indices(count, |i| random_algebra(item_seed(seed, i), o))
}

/// Converts a corpus algebra to the working scalar type.
pub fn to_scalar<T: Scalar>(alg: &NilMetricAlgebra<Rational>) -> NilMetricAlgebra<T>
where
    Rational: ConvertScalar<T>,
{
    alg.convert(Tolerance::default()).expect("conversion keeps the Gram nondegenerate")
}

/// Largest disagreement of each oracle pair over a corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub count: usize,
    pub seed: u64,
    pub mode: Mode,
    pub tolerance: f64,
    pub max_dim: usize,
    pub degenerate_centers: usize,
    pub non_canonical: usize,
    /// `max |ricci_fast − ricci_bruteforce|`.
    pub max_dev: f64,
    pub max_curvature_dev: f64,
    pub max_scalar_dev: f64,
    pub max_j_product: f64,
    pub max_ricci_asymmetry: f64,
    pub passed: bool,
}

/// Runs every curvature cross-check on `count` random algebras. Each check is
/// gated per algebra against the tolerance scaled by that algebra's data.
pub fn corpus_check<T: Scalar>(count: usize, seed: u64, tol: Tolerance, exec: Execution) -> Result<CorpusSummary>
where
    Rational: ConvertScalar<T>,
{
    let options = CorpusOptions::default();
    let rows = exec.map_indices(count, |i| -> Result<_> {
        let exact = random_algebra(item_seed(seed, i), &options);
        let alg = to_scalar::<T>(&exact);
        let (report, dev) = CurvatureReport::compute_unchecked(&alg, tol)?;
        let gates = [
            (dev.ricci, report.ricci.max_abs()),
            (dev.curvature, report.curvature.max_abs()),
            (dev.scalar, report.scalar.magnitude()),
            (dev.j_product, report.j.plus.max_abs() * report.j.minus.max_abs()),
            (dev.ricci_asymmetry, report.ricci.max_abs()),
        ];
        let ok = gates.iter().all(|&(d, scale)| d <= scaled_bound::<T>(tol, scale));
        let degenerate = exact.center_gram().inverse(tol).is_none();
        Ok((dev, ok, degenerate, !exact.space().is_canonical(), alg.dim()))
    });
    let mut s = CorpusSummary {
        count,
        seed,
        mode: T::MODE,
        tolerance: tol.value(),
        max_dim: 0,
        degenerate_centers: 0,
        non_canonical: 0,
        max_dev: 0.0,
        max_curvature_dev: 0.0,
        max_scalar_dev: 0.0,
        max_j_product: 0.0,
        max_ricci_asymmetry: 0.0,
        passed: true,
    };
    for row in rows {
        let (dev, ok, degenerate, rebased, n) = row?;
        s.max_dev = s.max_dev.max(dev.ricci);
        s.max_curvature_dev = s.max_curvature_dev.max(dev.curvature);
        s.max_scalar_dev = s.max_scalar_dev.max(dev.scalar);
        s.max_j_product = s.max_j_product.max(dev.j_product);
        s.max_ricci_asymmetry = s.max_ricci_asymmetry.max(dev.ricci_asymmetry);
        s.degenerate_centers += usize::from(degenerate);
        s.non_canonical += usize::from(rebased);
        s.max_dim = s.max_dim.max(n);
        s.passed &= ok;
    }
    Ok(s)
}
