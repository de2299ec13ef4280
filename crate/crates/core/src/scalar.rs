//! Dual-mode scalars.
//!
//! Every routine in the crate is generic over [`Scalar`], implemented for
//! `f64` (tolerance-based comparisons) and [`Rational`] (exact arithmetic,
//! tolerances ignored).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

/// Arbitrary-precision rational number used in exact mode.
pub type Rational = BigRational;

/// Tolerance used when none is given explicitly.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Environment variable overriding [`DEFAULT_TOLERANCE`].
pub const TOLERANCE_ENV: &str = "NILCURV_TOL";

/// Absolute tolerance for floating-point comparisons. Exact scalars ignore it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOLERANCE)
    }
}

impl Tolerance {
    pub fn new(value: f64) -> Self {
        Tolerance(value.abs())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Reads `NILCURV_TOL`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(TOLERANCE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 0.0)
            .map(Tolerance)
            .unwrap_or_default()
    }
}

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

/// Counts of negative, zero and positive eigenvalues of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Square root when it exists in the scalar field.
    fn try_sqrt(&self) -> Option<Self>;

    /// Zero test: `|x| <= threshold` in float mode, `x == 0` in exact mode.
    fn is_negligible(&self, threshold: f64) -> bool;

    /// Inertia of a symmetric matrix; zero eigenvalues are those below
    /// `tol * ‖m‖₂` in float mode.
    fn symmetric_inertia(m: &Matrix<Self>, tol: Tolerance) -> Inertia;

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn quarter() -> Self {
        Self::from_ratio(1, 4)
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Sign of the value after zero-testing with `threshold`.
    fn sign(&self, threshold: f64) -> i8 {
        if self.is_negligible(threshold) {
            0
        } else if self.to_f64() > 0.0 {
            1
        } else {
            -1
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn is_negligible(&self, threshold: f64) -> bool {
        f64::abs(*self) <= threshold
    }

    fn symmetric_inertia(m: &Matrix<Self>, tol: Tolerance) -> Inertia {
        assert!(m.is_square());
        if m.rows() == 0 {
            return Inertia::default();
        }
        let eig = nalgebra::SymmetricEigen::new(m.to_nalgebra());
        let scale = eig.eigenvalues.iter().fold(0.0_f64, |acc, v| acc.max(f64::abs(*v)));
        let threshold = tol.value() * scale;
        let mut inertia = Inertia::default();
        for v in eig.eigenvalues.iter() {
            if f64::abs(*v) <= threshold {
                inertia.zero += 1;
            } else if *v < 0.0 {
                inertia.negative += 1;
            } else {
                inertia.positive += 1;
            }
        }
        inertia
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        (&num * &num == *self.numer() && &den * &den == *self.denom())
            .then(|| BigRational::new(num, den))
    }

    fn is_negligible(&self, _threshold: f64) -> bool {
        self.is_zero()
    }

    fn symmetric_inertia(m: &Matrix<Self>, _tol: Tolerance) -> Inertia {
        congruence_inertia(m)
    }
}

/// Exact inertia by symmetric Gaussian elimination (Sylvester's law).
fn congruence_inertia(m: &Matrix<Rational>) -> Inertia {
    assert!(m.is_square());
    let mut a = m.clone();
    let mut inertia = Inertia::default();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let pivot = match pivot {
            Some(i) => i,
            None => {
                // all remaining diagonal entries vanish: look for an off-diagonal one
                let pair = active.iter().enumerate().find_map(|(k, &i)| {
                    active[k + 1..]
                        .iter()
                        .find(|&&j| !a[(i, j)].is_zero())
                        .map(|&j| (i, j))
                });
                match pair {
                    None => {
                        inertia.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // congruence by x_i += x_j makes the (i, i) entry 2 a_ij
                        let n = a.rows();
                        for k in 0..n {
                            let v = a[(j, k)].clone();
                            a[(i, k)] = a[(i, k)].clone() + v;
                        }
                        for k in 0..n {
                            let v = a[(k, j)].clone();
                            a[(k, i)] = a[(k, i)].clone() + v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[(pivot, pivot)].clone();
        if d.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            let factor = a[(i, pivot)].clone() / d.clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &active {
                let v = factor.clone() * a[(pivot, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - v;
            }
        }
    }
    inertia
}

/// Parses `"n"`, `"n/d"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Some(BigRational::from_integer(n));
    }
    parse_decimal(s)
}

/// `"-1.25e-3"` read as the exact decimal value, not its nearest double.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let (negative, int) = match int.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int.strip_prefix('+').unwrap_or(int)),
    };
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    let shift = exponent.checked_sub(i32::try_from(frac.len()).ok()?)?;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let value = if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    Some(if negative { -value } else { value })
}

/// `"num/den"` string form used by the JSON formats.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact conversion of a finite float.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    BigRational::from_float(v)
}

/// Converts between scalar types: exact → float rounds, float → exact is the
/// exact binary value.
pub trait ConvertScalar<U> {
    fn convert(&self) -> U;
}

impl ConvertScalar<f64> for f64 {
    fn convert(&self) -> f64 {
        *self
    }
}

impl ConvertScalar<f64> for Rational {
    fn convert(&self) -> f64 {
        Scalar::to_f64(self)
    }
}

impl ConvertScalar<Rational> for Rational {
    fn convert(&self) -> Rational {
        self.clone()
    }
}

impl ConvertScalar<Rational> for f64 {
    fn convert(&self) -> Rational {
        BigRational::from_float(*self).expect("finite float")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_only_for_perfect_squares() {
        assert_eq!(Rational::from_ratio(9, 4).try_sqrt(), Some(Rational::from_ratio(3, 2)));
        assert_eq!(Rational::from_i64(2).try_sqrt(), None);
        assert_eq!(Rational::from_i64(-4).try_sqrt(), None);
        assert_eq!(Scalar::try_sqrt(&4.0_f64), Some(2.0));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6"), Some(Rational::from_ratio(1, 2)));
        assert_eq!(parse_rational("-7"), Some(Rational::from_i64(-7)));
        assert_eq!(parse_rational("0.25"), Some(Rational::from_ratio(1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.1"), Some(Rational::from_ratio(1, 10)));
        assert_eq!(parse_rational("-1.5e2"), Some(Rational::from_i64(-150)));
        assert_eq!(parse_rational("25e-2"), Some(Rational::from_ratio(1, 4)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(format_rational(&Rational::from_i64(3)), "3/1");
    }

    #[test]
    fn exact_inertia_of_hyperbolic_plane() {
        let m = Matrix::from_rows(vec![
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::zero()],
        ])
        .unwrap();
        let inertia = Rational::symmetric_inertia(&m, Tolerance::default());
        assert_eq!(inertia, Inertia { negative: 1, zero: 0, positive: 1 });
    }

    #[test]
    fn float_and_exact_inertia_agree() {
        let rows = vec![
            vec![2, 1, 0, 0],
            vec![1, 0, 3, 0],
            vec![0, 3, -1, 0],
            vec![0, 0, 0, 0],
        ];
        let exact = Matrix::<Rational>::from_i64_rows(&rows);
        let float = Matrix::<f64>::from_i64_rows(&rows);
        let a = Rational::symmetric_inertia(&exact, Tolerance::default());
        let b = f64::symmetric_inertia(&float, Tolerance::default());
        assert_eq!(a, b);
        assert_eq!(a.zero, 1);
    }

    #[test]
    fn tolerance_env_fallback() {
        assert_eq!(Tolerance::default().value(), 1e-9);
    }
}
