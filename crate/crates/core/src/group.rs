//! The simply connected group of a 2-step algebra in exponential coordinates,
//! `x·y = x + y + ½[x, y]`, and its left-invariant metric in coordinate vector
//! fields. Also the closed-form group law and metric of the Lorentzian
//! Ricci-flat family, checked against both.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::NilMetricAlgebra;
use crate::curvature::scaled_bound;
use crate::error::{Error, Result};
use crate::families::{lorentz_ricci_flat, LorentzFamilyParams};
use crate::matrix::{add_vec, axpy, dot, max_abs_diff_vec, Matrix};
use crate::parallel::{item_seed, Execution};
use crate::scalar::{Mode, Scalar, Tolerance};

/// Exponential coordinates over the algebra's distinguished basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn new(coords: Vec<T>) -> Self {
        GroupElement { coords }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { coords: vec![T::zero(); n] }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }
}

/// Gram matrix of the left-invariant metric in the coordinate fields at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricAtPoint<T> {
    pub point: GroupElement<T>,
    pub gram: Matrix<T>,
}

pub fn bch_multiply<T: Scalar>(alg: &NilMetricAlgebra<T>, x: &GroupElement<T>, y: &GroupElement<T>) -> GroupElement<T> {
    let mut out = add_vec(&x.coords, &y.coords);
    let bracket = alg.combine_center(&alg.bracket_coefficients(&x.coords, &y.coords));
    axpy(&mut out, &T::half(), &bracket);
    GroupElement { coords: out }
}

/// `d(L_g)` at the identity: `I + ½ ad_g`.
pub fn left_translation_differential<T: Scalar>(alg: &NilMetricAlgebra<T>, g: &GroupElement<T>) -> Matrix<T> {
    let mut m = Matrix::identity(alg.dim());
    m.add_scaled(&T::half(), &alg.ad(&g.coords));
    m
}

/// `M⁻ᵀ G M⁻¹` with `M = I + ½ ad_g`; since `ad_g² = 0`, `M⁻¹ = I − ½ ad_g`.
pub fn metric_at<T: Scalar>(alg: &NilMetricAlgebra<T>, g: &GroupElement<T>) -> MetricAtPoint<T> {
    let mut inv = Matrix::identity(alg.dim());
    inv.add_scaled(&-T::half(), &alg.ad(&g.coords));
    let gram = inv.transpose().mul(alg.gram()).mul(&inv);
    MetricAtPoint { point: g.clone(), gram }
}

/// Coordinates `(t, t̄, u, v, w)` of the Lorentzian family, in the order of
/// its basis `(e, ē, f, g, h)`.
struct Split<'a, T> {
    t: &'a T,
    tb: &'a T,
    u: &'a [T],
    v: &'a [T],
    w: &'a [T],
}

fn split<'a, T: Scalar>(p: &LorentzFamilyParams<T>, x: &'a [T]) -> Split<'a, T> {
    let (a, b, c) = (2 + p.p, 2 + p.p + 2 * p.r, p.dim());
    Split { t: &x[0], tb: &x[1], u: &x[2..a], v: &x[a..b], w: &x[b..c] }
}

fn column<T: Scalar>(m: &[Vec<T>], l: usize) -> Vec<T> {
    m.iter().map(|row| row[l].clone()).collect()
}

/// Closed-form group law of the Lorentzian Ricci-flat family.
pub fn family_group_law<T: Scalar>(p: &LorentzFamilyParams<T>, x: &[T], y: &[T]) -> Vec<T> {
    let (s1, s2) = (split(p, x), split(p, y));
    let half = T::half();
    // t̄₁ z² − t̄₂ z¹ for z = v or w
    let cross = |z1: &[T], z2: &[T]| -> Vec<T> {
        z1.iter().zip(z2).map(|(a, b)| s1.tb.clone() * b.clone() - s2.tb.clone() * a.clone()).collect()
    };
    let cv = cross(s1.v, s2.v);
    let cw = cross(s1.w, s2.w);
    let mut t = s1.t.clone() + s2.t.clone();
    for (i, lam) in p.lambda.iter().enumerate() {
        let (o, e) = (2 * i, 2 * i + 1);
        let term = s1.v[o].clone() * s2.v[e].clone() - s2.v[o].clone() * s1.v[e].clone();
        t = t + half.clone() * lam.clone() * term;
    }
    t = t + half.clone() * (dot(&p.a, &cv) + dot(&p.b, &cw));
    let mut out = vec![t, s1.tb.clone() + s2.tb.clone()];
    for l in 0..p.p {
        let ul = s1.u[l].clone() + s2.u[l].clone()
            + half.clone() * (dot(&column(&p.m1, l), &cv) + dot(&column(&p.m2, l), &cw));
        out.push(ul);
    }
    out.extend(add_vec(s1.v, s2.v));
    out.extend(add_vec(s1.w, s2.w));
    out
}

/// Closed-form coordinate metric of the Lorentzian Ricci-flat family at `x`.
pub fn family_metric<T: Scalar>(p: &LorentzFamilyParams<T>, x: &[T]) -> Matrix<T> {
    let n = p.dim();
    let s = split(p, x);
    let tb = s.tb.clone();
    let half = T::half();
    let quarter = T::quarter();
    let mut g = Matrix::zeros(n, n);
    let mut put = |i: usize, j: usize, v: T| {
        g[(i, j)] = v.clone();
        g[(j, i)] = v;
    };
    put(0, 1, T::one());
    // X_l·V + Y_l·W
    let xv: Vec<T> = (0..p.p).map(|l| dot(&column(&p.m1, l), s.v) + dot(&column(&p.m2, l), s.w)).collect();
    for l in 0..p.p {
        put(p.f(l), p.f(l), T::one());
        put(1, p.f(l), half.clone() * xv[l].clone());
    }
    let sq = xv.iter().fold(T::zero(), |acc, v| acc + v.clone() * v.clone());
    put(1, 1, dot(&p.a, s.v) + dot(&p.b, s.w) + quarter.clone() * sq);
    let neg_half_tb = -(half.clone() * tb.clone());
    for l in 0..p.p {
        for i in 0..2 * p.r {
            put(p.f(l), p.g(i), neg_half_tb.clone() * p.m1[i][l].clone());
        }
        for j in 0..p.q {
            put(p.f(l), p.h(j), neg_half_tb.clone() * p.m2[j][l].clone());
        }
    }
    // Σ_j v_j X^j + Σ_j w_j Y^j  ∈ ℝ^p
    let mut mix = vec![T::zero(); p.p];
    for (j, vj) in s.v.iter().enumerate() {
        axpy(&mut mix, vj, &p.m1[j]);
    }
    for (j, wj) in s.w.iter().enumerate() {
        axpy(&mut mix, wj, &p.m2[j]);
    }
    let quarter_tb = quarter.clone() * tb.clone();
    for i in 0..2 * p.r {
        let m = i / 2;
        // 1-based index i+1: odd → −λ_m v_{2m}, even → λ_m v_{2m−1}
        let rot = if i % 2 == 0 {
            -(p.lambda[m].clone() * s.v[i + 1].clone())
        } else {
            p.lambda[m].clone() * s.v[i - 1].clone()
        };
        let value = -(half.clone() * (rot + p.a[i].clone() * tb.clone())) - quarter_tb.clone() * dot(&p.m1[i], &mix);
        put(1, p.g(i), value);
    }
    for i in 0..p.q {
        let value = neg_half_tb.clone() * p.b[i].clone() - quarter_tb.clone() * dot(&p.m2[i], &mix);
        put(1, p.h(i), value);
    }
    let tb2 = quarter * tb.clone() * tb;
    let rows: Vec<(usize, &Vec<T>)> =
        (0..2 * p.r).map(|i| (p.g(i), &p.m1[i])).chain((0..p.q).map(|j| (p.h(j), &p.m2[j]))).collect();
    for (a, (ia, ra)) in rows.iter().enumerate() {
        for (ib, rb) in rows.iter().skip(a) {
            let delta = if ia == ib { T::one() } else { T::zero() };
            put(*ia, *ib, delta + tb2.clone() * dot(ra, rb));
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremMainReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub mode: Mode,
    /// `max |bch_multiply − closed-form law|`.
    pub law_deviation: f64,
    /// `max |metric_at − closed-form coefficients|`.
    pub metric_deviation: f64,
    /// `metric_at` had the signature of the algebra at every sample.
    pub signature_preserved: bool,
    /// Bound applied to both deviations: 0 in exact mode.
    pub tolerance: f64,
    pub passed: bool,
}

fn random_point<T: Scalar>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n).map(|_| T::from_ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4))).collect()
}

/// Builds the family algebra and compares both closed forms with the
/// exponential-coordinate machinery at `samples` seeded random points.
pub fn theorem_main_deviations<T: Scalar>(
    params: &LorentzFamilyParams<T>,
    samples: usize,
    seed: u64,
    tol: Tolerance,
    exec: Execution,
) -> Result<TheoremMainReport> {
    let alg = lorentz_ricci_flat(params, tol)?;
    let n = alg.dim();
    let base = T::symmetric_inertia(alg.gram(), tol);
    let per_sample = exec.map_indices(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, i));
        let x = random_point::<T>(&mut rng, n);
        let y = random_point::<T>(&mut rng, n);
        let product = bch_multiply(&alg, &GroupElement::new(x.clone()), &GroupElement::new(y.clone()));
        let law = max_abs_diff_vec(&product.coords, &family_group_law(params, &x, &y));
        let at = metric_at(&alg, &GroupElement::new(x.clone()));
        let metric = at.gram.max_abs_diff(&family_metric(params, &x));
        let signature = T::symmetric_inertia(&at.gram, tol) == base;
        (law, metric, signature, at.gram.max_abs())
    });
    let mut report = TheoremMainReport {
        dim: n,
        samples,
        seed,
        mode: T::MODE,
        law_deviation: 0.0,
        metric_deviation: 0.0,
        signature_preserved: true,
        tolerance: tol.value(),
        passed: true,
    };
    let mut scale: f64 = 1.0;
    for (law, metric, signature, size) in per_sample {
        report.law_deviation = report.law_deviation.max(law);
        report.metric_deviation = report.metric_deviation.max(metric);
        report.signature_preserved &= signature;
        scale = scale.max(size);
    }
    let bound = scaled_bound::<T>(tol, scale);
    report.tolerance = bound;
    report.passed = report.law_deviation <= bound && report.metric_deviation <= bound && report.signature_preserved;
    Ok(report)
}

/// As [`theorem_main_deviations`], failing when any deviation exceeds the
/// tolerance.
pub fn verify_theorem_main<T: Scalar>(
    params: &LorentzFamilyParams<T>,
    samples: usize,
    seed: u64,
    tol: Tolerance,
    exec: Execution,
) -> Result<TheoremMainReport> {
    let report = theorem_main_deviations(params, samples, seed, tol, exec)?;
    if !report.signature_preserved {
        return Err(Error::constraint("metric_at changed signature at a sampled point"));
    }
    for (what, deviation) in [("group law", report.law_deviation), ("coordinate metric", report.metric_deviation)] {
        if deviation > report.tolerance {
            return Err(Error::Inconsistent { what, deviation, tolerance: report.tolerance });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::flat_h3_lorentz;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn identity_and_inverse() {
        let alg = flat_h3_lorentz::<Rational>();
        let x = GroupElement::new(vec![q(1, 2), q(-3, 1), q(2, 3)]);
        assert_eq!(bch_multiply(&alg, &x, &GroupElement::identity(3)), x);
        assert_eq!(bch_multiply(&alg, &x, &x.inverse()), GroupElement::identity(3));
    }

    #[test]
    fn associativity() {
        let p = LorentzFamilyParams::five_dimensional(q(3, 1), q(4, 1), q(1, 1), q(2, 1), q(5, 1));
        let alg = lorentz_ricci_flat(&p, Tolerance::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let [x, y, z] = [0, 1, 2].map(|_| GroupElement::new(random_point::<Rational>(&mut rng, 5)));
            let left = bch_multiply(&alg, &bch_multiply(&alg, &x, &y), &z);
            let right = bch_multiply(&alg, &x, &bch_multiply(&alg, &y, &z));
            assert_eq!(left, right);
        }
    }

    #[test]
    fn differential_matches_finite_differences() {
        let p = LorentzFamilyParams::five_dimensional(3.0, 4.0, 1.0, 2.0, 5.0);
        let alg = lorentz_ricci_flat(&p, Tolerance::default()).unwrap();
        let g = GroupElement::new(vec![0.3, -1.2, 0.7, 2.0, -0.4]);
        let m = left_translation_differential(&alg, &g);
        let h = 1e-6;
        for k in 0..5 {
            let mut y = vec![0.0; 5];
            y[k] = h;
            let plus = bch_multiply(&alg, &g, &GroupElement::new(y.clone()));
            y[k] = -h;
            let minus = bch_multiply(&alg, &g, &GroupElement::new(y));
            for r in 0..5 {
                let fd = (plus.coords[r] - minus.coords[r]) / (2.0 * h);
                assert!((fd - m[(r, k)]).abs() < 1e-6);
            }
        }
        let central = GroupElement::new(vec![1.0, 0.0, 2.0, 0.0, 0.0]);
        assert_eq!(left_translation_differential(&alg, &central), Matrix::identity(5));
    }

    #[test]
    fn metric_at_identity_is_the_algebra_gram() {
        let alg = flat_h3_lorentz::<Rational>();
        assert_eq!(metric_at(&alg, &GroupElement::identity(3)).gram, *alg.gram());
    }

    #[test]
    fn three_dimensional_line_element() {
        // dw² + dt̄ (w dt̄ − t̄ dw + 2 dt) at (t, t̄, w)
        let alg = flat_h3_lorentz::<Rational>();
        let (t, tb, w) = (q(5, 2), q(-7, 3), q(4, 5));
        let at = metric_at(&alg, &GroupElement::new(vec![t, tb.clone(), w.clone()]));
        let zero = q(0, 1);
        let expected = Matrix::from_rows(vec![
            vec![zero.clone(), q(1, 1), zero.clone()],
            vec![q(1, 1), w, -(tb.clone() * q(1, 2))],
            vec![zero, -(tb * q(1, 2)), q(1, 1)],
        ])
        .unwrap();
        assert_eq!(at.gram, expected);
    }

    #[test]
    fn closed_forms_agree_exactly() {
        let tol = Tolerance::default();
        let dim3 = LorentzFamilyParams::<Rational>::three_dimensional();
        let dim5 = LorentzFamilyParams::five_dimensional(q(3, 1), q(4, 1), q(1, 1), q(2, 1), q(5, 1));
        for p in [dim3, dim5] {
            let report = verify_theorem_main(&p, 25, 9, tol, Execution::Sequential).unwrap();
            assert_eq!((report.law_deviation, report.metric_deviation), (0.0, 0.0));
            assert!(report.passed && report.signature_preserved);
        }
    }
}
