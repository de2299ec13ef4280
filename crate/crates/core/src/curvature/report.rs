use crate::algebra::NilMetricAlgebra;
use crate::curvature::levi_civita::{levi_civita, scaled_bound, LeviCivitaTable};
use crate::curvature::ricci::{
    einstein_fit, endo_of, form_of, j_plus_minus, j_product_defect, ricci_bruteforce, EinsteinFit,
    JPlusMinus,
};
use crate::curvature::tensor::{curvature_closed_form, curvature_definitional, CurvatureTensor};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// Every curvature invariant of an algebra, computed once.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureReport<T> {
    pub levi_civita: LeviCivitaTable<T>,
    pub curvature: CurvatureTensor<T>,
    /// Brute-force Ricci form.
    pub ricci: Matrix<T>,
    /// `𝔯⁺ + 𝔯⁻`.
    pub ricci_fast: Matrix<T>,
    pub j: JPlusMinus<T>,
    /// `𝒥` with `𝔯(u, v) = ⟨𝒥u, v⟩`, from the brute-force form.
    pub ricci_endo: Matrix<T>,
    pub scalar: T,
    pub einstein: EinsteinFit<T>,
}

/// Raw disagreement between the two routes of each quantity.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Deviations {
    pub curvature: f64,
    pub ricci: f64,
    pub ricci_asymmetry: f64,
    pub scalar: f64,
    pub j_product: f64,
}

impl<T: Scalar> CurvatureReport<T> {
    /// Computes everything by both routes without asserting agreement.
    pub fn compute_unchecked(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<(Self, Deviations)> {
        let table = levi_civita(alg, tol)?;
        let curvature = curvature_definitional(alg, &table);
        let closed = curvature_closed_form(alg);
        let ricci = ricci_bruteforce(&curvature);
        let j = j_plus_minus(alg);
        let ricci_fast = form_of(alg, &j.sum());
        let ricci_endo = endo_of(alg, &ricci);
        let scalar = ricci_endo.trace();
        let half_minus = T::half() * j.minus.trace();
        let neg_plus = -j.plus.trace();
        let deviations = Deviations {
            curvature: curvature.max_abs_diff(&closed),
            ricci: ricci.max_abs_diff(&ricci_fast),
            ricci_asymmetry: ricci.max_abs_diff(&ricci.transpose()),
            scalar: (scalar.clone() - half_minus).magnitude().max((scalar.clone() - neg_plus).magnitude()),
            j_product: j_product_defect(&j),
        };
        let einstein = einstein_fit(alg, &ricci);
        let report = CurvatureReport { levi_civita: table, curvature, ricci, ricci_fast, j, ricci_endo, scalar, einstein };
        Ok((report, deviations))
    }

    /// Computes everything and requires every cross-check to pass: exactly in
    /// rational mode, within `tol` scaled by the data otherwise.
    pub fn compute(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<Self> {
        let (report, dev) = Self::compute_unchecked(alg, tol)?;
        let scale = report.curvature.max_abs();
        let checks = [
            ("curvature constructions", dev.curvature, scale),
            ("brute-force and fast Ricci", dev.ricci, report.ricci.max_abs()),
            ("Ricci form and its transpose", dev.ricci_asymmetry, report.ricci.max_abs()),
            ("scalar curvature identities", dev.scalar, report.scalar.magnitude()),
            ("J+J- and zero", dev.j_product, report.j.plus.max_abs() * report.j.minus.max_abs()),
        ];
        for (what, deviation, scale) in checks {
            let bound = scaled_bound::<T>(tol, scale);
            if deviation > bound {
                return Err(Error::Inconsistent { what, deviation, tolerance: bound });
            }
        }
        Ok(report)
    }

    pub fn is_ricci_flat(&self, tol: Tolerance) -> bool {
        self.ricci.is_zero_within(tol)
    }

    pub fn is_flat(&self, tol: Tolerance) -> bool {
        self.curvature.is_zero(tol)
    }

    /// `‖𝔯‖∞`.
    pub fn ricci_sup(&self) -> f64 {
        self.ricci.max_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::euclidean_h3;
    use crate::scalar::Rational;

    #[test]
    fn h3_report_is_consistent() {
        let tol = Tolerance::default();
        let report = CurvatureReport::compute(&euclidean_h3::<Rational>(), tol).unwrap();
        assert_eq!(report.scalar, Rational::from_ratio(-1, 2));
        assert!(!report.is_ricci_flat(tol));
        assert!(!report.is_flat(tol));
        let (_, dev) = CurvatureReport::compute_unchecked(&euclidean_h3::<f64>(), tol).unwrap();
        assert!(dev.curvature < 1e-15 && dev.ricci < 1e-15);
    }
}
