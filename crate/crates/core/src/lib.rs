//! Curvature of pseudo-Euclidean 2-step nilpotent Lie algebras.
//!
//! Every computation is generic over [`Scalar`]: exact rationals
//! ([`Rational`]) or `f64` with an explicit [`Tolerance`].

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod corpus;
pub mod curvature;
pub mod error;
pub mod families;
pub mod group;
pub mod io;
pub mod matrix;
pub mod parallel;
pub mod pe_linalg;
pub mod scalar;

pub use algebra::{AdaptedBasis, DerivedIdeal, NilMetricAlgebra, Violation};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use parallel::Execution;
pub use scalar::{Mode, Rational, Scalar, Tolerance};
