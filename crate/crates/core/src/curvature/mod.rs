//! Levi-Civita product, curvature, Ricci and scalar curvature, each computed
//! from the definition and from closed forms in the structure endomorphisms.
//!
//! Sign convention: `ℛ(u,v) = 𝒟_{[u,v]} − 𝒟_u𝒟_v + 𝒟_v𝒟_u`, the negative of
//! the common textbook one. The Ricci form is `𝔯(u,v) = tr(w ↦ ℛ(u,w)v)`, so
//! the Euclidean Heisenberg algebra still has negative scalar curvature.

mod levi_civita;
mod report;
mod ricci;
mod spectral;
mod tensor;

pub use levi_civita::{
    levi_civita, levi_civita_closed_form, levi_civita_definitional, metric_compatibility_defect,
    torsion_defect, LeviCivitaTable,
};
pub(crate) use levi_civita::scaled_bound;
pub use report::{CurvatureReport, Deviations};
pub use ricci::{
    einstein_fit, endo_of, form_of, j_plus_minus, j_product_defect, j_symmetry_defect, ricci_bruteforce,
    ricci_fast, ricci_in_adapted_basis, scalar_curvature, EinsteinFit, JPlusMinus,
};
pub use spectral::{euclidean_spectral_report, EuclideanSpectralReport};
pub use tensor::{curvature_closed_form, curvature_definitional, curvature_tensor, CurvatureTensor};
