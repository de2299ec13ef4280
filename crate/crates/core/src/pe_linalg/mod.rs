//! Pseudo-Euclidean vector spaces and their skew-symmetric endomorphisms.

mod normal_form;
mod representation;
mod skew;
mod space;
mod sym_minus;

pub use normal_form::{euclidean_skew_normal_form, EuclideanNormalForm};
pub use representation::{
    q_product, representation_of, skew_from_representation, trace_pair_formula, Block2,
    SkewRepresentation,
};
pub use skew::{is_skew, star_product, trace_of_product, SkewEndomorphism};
pub use space::{canonical_gram, make_space, PseudoEuclideanSpace, Signature};
pub use sym_minus::{sym_minus_basis, sym_minus_signature, SymMinusReport};
