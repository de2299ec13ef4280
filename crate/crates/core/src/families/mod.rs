//! Explicit algebras with constraint checking: the three Ricci-flat
//! pseudo-Euclidean Heisenberg families, the two generic Heisenberg
//! constructions, the Lorentzian Ricci-flat family, flat Lorentzian `H₃`,
//! random Lorentzian Heisenberg metrics and H-type algebras.
//!
//! Every checked constructor has an `_unchecked` twin that only checks
//! shapes, so that perturbed parameters can still be turned into an algebra
//! and inspected.

mod frame;
mod generic;
mod heisenberg;
mod htype;
mod lorentz;

pub use frame::HeisenbergFrame;
pub use generic::{heis_generic_case1, heis_generic_case2, HeisCase1Params, HeisCase2Params};
pub use heisenberg::{
    heis_family1, heis_family1_frame, heis_family1_unchecked, heis_family2, heis_family2_frame,
    heis_family2_unchecked, heis_family3, heis_family3_frame, heis_family3_unchecked, HeisFamily1Params,
    HeisFamily2Params, HeisFamily3Params,
};
pub use htype::{complex_structure, h_type, quaternion_units};
pub use lorentz::{
    flat_h3_gram, flat_h3_lorentz, lorentz_heisenberg_with_gram, lorentz_ricci_flat, lorentz_ricci_flat_unchecked,
    random_lorentz_heisenberg, scale_normalized_ricci, LorentzFamilyParams,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Tolerance};

/// `J b_src += c b_dst`.
fn set_image<T: Scalar>(j: &mut Matrix<T>, src: usize, dst: usize, c: T) {
    j[(dst, src)] = j[(dst, src)].clone() + c;
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Constraint(msg()))
    }
}

fn shape(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Format(msg()))
    }
}

fn sum_sq<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
}

/// `a = b` exactly, or up to `tol · max(1, |a|, |b|)` in float mode.
fn same<T: Scalar>(a: &T, b: &T, tol: Tolerance) -> bool {
    let scale = a.magnitude().max(b.magnitude()).max(1.0);
    (a.clone() - b.clone()).is_negligible(tol.value() * scale)
}

/// `0 < v₁ ≤ v₂ ≤ …`.
fn positive_nondecreasing<T: Scalar>(values: &[T], name: &str, tol: Tolerance) -> Result<()> {
    let t = tol.value();
    for (i, v) in values.iter().enumerate() {
        require(v.sign(t) > 0, || format!("{name}_{} = {v} is not positive", i + 1))?;
    }
    for (i, w) in values.windows(2).enumerate() {
        require((w[1].clone() - w[0].clone()).sign(t) >= 0, || {
            format!("{name} must be non-decreasing: {name}_{} > {name}_{}", i + 1, i + 2)
        })?;
    }
    Ok(())
}

fn matrix_from_rows<T: Scalar>(rows: &[Vec<T>], r: usize, c: usize, name: &str) -> Result<Matrix<T>> {
    shape(rows.len() == r && rows.iter().all(|row| row.len() == c), || format!("{name} must be {r} x {c}"))?;
    Ok(Matrix::from_fn(r, c, |i, j| rows[i][j].clone()))
}
