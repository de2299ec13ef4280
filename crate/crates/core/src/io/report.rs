use serde::Serialize;
use serde_json::Value;

use super::num::{matrix_value, scalar_value, JsonScalar};
use crate::algebra::NilMetricAlgebra;
use crate::curvature::CurvatureReport;
use crate::error::Result;
use crate::scalar::{Mode, Tolerance};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportFlags {
    pub ricci_flat: bool,
    pub flat: bool,
    pub heisenberg: bool,
    pub h_type: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EinsteinSummary {
    pub lambda: Value,
    pub residual: f64,
    pub einstein: bool,
}

/// Output of `verify`: curvature invariants in the file's own basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub mode: Mode,
    /// Applied in float mode; exact mode compares exactly.
    pub tolerance: f64,
    pub dim: usize,
    pub q: usize,
    pub center_dim: usize,
    pub ricci: Value,
    pub scalar: Value,
    pub jplus: Value,
    pub jminus: Value,
    pub einstein: EinsteinSummary,
    pub flags: ReportFlags,
}

impl Report {
    pub fn new<T: JsonScalar>(alg: &NilMetricAlgebra<T>, tol: Tolerance) -> Result<Self> {
        let report = CurvatureReport::compute(alg, tol)?;
        Ok(Report {
            mode: T::MODE,
            tolerance: tol.value(),
            dim: alg.dim(),
            q: alg.space().q(),
            center_dim: alg.center_dim(),
            ricci: matrix_value(&report.ricci),
            scalar: scalar_value(&report.scalar),
            jplus: matrix_value(&report.j.plus),
            jminus: matrix_value(&report.j.minus),
            einstein: EinsteinSummary {
                lambda: scalar_value(&report.einstein.lambda),
                residual: report.einstein.residual,
                einstein: report.einstein.is_einstein(tol),
            },
            flags: ReportFlags {
                ricci_flat: report.is_ricci_flat(tol),
                flat: report.is_flat(tol),
                heisenberg: alg.is_heisenberg(tol),
                h_type: alg.is_heisenberg_type(tol),
            },
        })
    }
}
