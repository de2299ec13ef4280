use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilcurv::corpus::{random_algebra, random_invertible, CorpusOptions};
use nilcurv::curvature::{curvature_tensor, ricci_bruteforce, ricci_fast, scalar_curvature};
use nilcurv::group::{bch_multiply, metric_at, GroupElement};
use nilcurv::io::{read_algebra, write_algebra, AnyAlgebra};
use nilcurv::{Matrix, Mode, NilMetricAlgebra, Rational, Scalar, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn algebra(seed: u64) -> NilMetricAlgebra<Rational> {
    random_algebra(seed, &CorpusOptions::default())
}

fn element(n: usize) -> impl Strategy<Value = GroupElement<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n).prop_map(|v| GroupElement::new(v.into_iter().map(|(a, b)| q(a, b)).collect()))
}

fn algebra_and_elements(count: usize) -> impl Strategy<Value = (NilMetricAlgebra<Rational>, Vec<GroupElement<Rational>>)> {
    any::<u64>().prop_flat_map(move |seed| {
        let alg = algebra(seed);
        let n = alg.dim();
        (Just(alg), prop::collection::vec(element(n), count))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_law_is_associative_with_inverses((alg, g) in algebra_and_elements(3)) {
        let left = bch_multiply(&alg, &bch_multiply(&alg, &g[0], &g[1]), &g[2]);
        let right = bch_multiply(&alg, &g[0], &bch_multiply(&alg, &g[1], &g[2]));
        prop_assert_eq!(left, right);
        let id = GroupElement::identity(alg.dim());
        prop_assert_eq!(bch_multiply(&alg, &g[0], &g[0].inverse()), id.clone());
        prop_assert_eq!(bch_multiply(&alg, &id, &g[1]), g[1].clone());
    }

    #[test]
    fn left_invariant_metric_keeps_its_signature((alg, g) in algebra_and_elements(1)) {
        let at = metric_at(&alg, &g[0]);
        prop_assert_eq!(
            Rational::symmetric_inertia(&at.gram, tol()),
            Rational::symmetric_inertia(alg.gram(), tol())
        );
        prop_assert_eq!(metric_at(&alg, &GroupElement::identity(alg.dim())).gram, alg.gram().clone());
    }

    #[test]
    fn ricci_is_symmetric_and_matches_bruteforce(seed in any::<u64>()) {
        let alg = algebra(seed);
        let fast = ricci_fast(&alg);
        prop_assert_eq!(fast.transpose(), fast.clone());
        prop_assert_eq!(ricci_bruteforce(&curvature_tensor(&alg, tol()).unwrap()), fast);
    }

    #[test]
    fn ricci_transforms_as_a_bilinear_form(seed in any::<u64>(), change in any::<u64>()) {
        let alg = algebra(seed);
        let p = random_invertible(alg.dim(), &mut ChaCha8Rng::seed_from_u64(change));
        let moved = alg.change_basis(&p, tol()).unwrap();
        prop_assert_eq!(ricci_fast(&moved), p.transpose().mul(&ricci_fast(&alg)).mul(&p));
        prop_assert_eq!(scalar_curvature(&moved, tol()).unwrap(), scalar_curvature(&alg, tol()).unwrap());
    }

    #[test]
    fn rescaling_the_metric(seed in any::<u64>(), num in 1i64..=9, den in 1i64..=9) {
        let alg = algebra(seed);
        let c = q(num, den);
        let scaled = alg.with_scaled_metric(&c, tol()).unwrap();
        prop_assert_eq!(ricci_fast(&scaled), ricci_fast(&alg));
        let s = scalar_curvature(&alg, tol()).unwrap();
        prop_assert_eq!(scalar_curvature(&scaled, tol()).unwrap() * c, s);
    }

    #[test]
    fn algebra_files_read_back(seed in any::<u64>()) {
        let alg = algebra(seed);
        let text = write_algebra(&alg).unwrap();
        prop_assert_eq!(read_algebra(&text, None, tol()).unwrap(), AnyAlgebra::Exact(alg.clone()));
        match read_algebra(&text, Some(Mode::Float), tol()).unwrap() {
            AnyAlgebra::Float(f) => {
                let diff = f.gram().max_abs_diff(&alg.gram().to_f64());
                prop_assert!(diff <= 1e-12);
            }
            AnyAlgebra::Exact(_) => prop_assert!(false, "float mode was forced"),
        }
    }
}

#[test]
fn center_is_fixed_by_conjugation() {
    let alg = algebra(3);
    let x: Vec<Rational> = (0..alg.dim()).map(|k| q(k as i64 + 1, 2)).collect();
    let g = GroupElement::new(x);
    let z = GroupElement::new(alg.center()[0].clone());
    let conj = bch_multiply(&alg, &bch_multiply(&alg, &g, &z), &g.inverse());
    assert_eq!(conj, z);
    let zero: Matrix<Rational> = Matrix::zeros(alg.dim(), alg.dim());
    assert_eq!(alg.ad(&alg.center()[0]), zero);
}
