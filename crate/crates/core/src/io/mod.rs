//! JSON formats: algebra files, curvature reports and family parameters.

mod algebra_file;
mod family;
pub mod num;
mod report;

pub use algebra_file::{algebra_to_value, read_algebra, write_algebra, AnyAlgebra};
pub use family::{build_family, build_family_as, params_from_value, split_mode, HTypeParams, FAMILY_NAMES};
pub use num::{JsonRepr, JsonScalar};
pub use report::{EinsteinSummary, Report, ReportFlags};
