use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra_file::AnyAlgebra;
use super::num::{infer_mode, JsonScalar};
use crate::algebra::NilMetricAlgebra;
use crate::error::{Error, Result};
use crate::families::{
    flat_h3_lorentz, h_type, heis_family1, heis_family2, heis_family3, heis_generic_case1, heis_generic_case2,
    lorentz_ricci_flat, HeisCase1Params, HeisCase2Params, HeisFamily1Params, HeisFamily2Params, HeisFamily3Params,
    LorentzFamilyParams,
};
use crate::matrix::Matrix;
use crate::scalar::{Mode, Tolerance};

/// Names accepted by [`build_family`].
pub const FAMILY_NAMES: [&str; 8] = ["heis1", "heis2", "heis3", "heis-case1", "heis-case2", "lorentz", "h3-flat", "htype"];

/// `{"js": [...]}`: the blocks of the structure maps on `𝔷^⊥`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: JsonScalar", deny_unknown_fields)]
pub struct HTypeParams<T> {
    #[serde(with = "crate::io::num")]
    pub js: Vec<Matrix<T>>,
}

/// Parses a parameter document and removes its optional `mode` field. The
/// mode is `force`, else the field, else inferred from the values.
pub fn split_mode(text: &str, force: Option<Mode>) -> Result<(Mode, Value)> {
    let mut value: Value = serde_json::from_str(text)?;
    let declared = match value.as_object_mut() {
        Some(map) => match map.remove("mode") {
            Some(m) => Some(serde_json::from_value::<Mode>(m)?),
            None => None,
        },
        None => return Err(Error::Format("parameters must be a JSON object".into())),
    };
    let mode = force.or(declared).unwrap_or_else(|| infer_mode(&value));
    Ok((mode, value))
}

pub fn params_from_value<P: DeserializeOwned>(value: Value) -> Result<P> {
    Ok(serde_json::from_value(value)?)
}

/// Builds the named family from parameters with scalars of type `T`.
pub fn build_family_as<T: JsonScalar>(name: &str, params: Value, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    match name {
        "heis1" => heis_family1(&params_from_value::<HeisFamily1Params<T>>(params)?, tol),
        "heis2" => heis_family2(&params_from_value::<HeisFamily2Params<T>>(params)?, tol),
        "heis3" => heis_family3(&params_from_value::<HeisFamily3Params<T>>(params)?, tol),
        "heis-case1" => heis_generic_case1(&params_from_value::<HeisCase1Params<T>>(params)?, tol),
        "heis-case2" => heis_generic_case2(&params_from_value::<HeisCase2Params<T>>(params)?, tol),
        "lorentz" => lorentz_ricci_flat(&params_from_value::<LorentzFamilyParams<T>>(params)?, tol),
        "htype" => h_type(&params_from_value::<HTypeParams<T>>(params)?.js, tol),
        "h3-flat" => {
            if params.as_object().is_some_and(|m| !m.is_empty()) {
                return Err(Error::Format("h3-flat takes no parameters".into()));
            }
            Ok(flat_h3_lorentz())
        }
        other => Err(Error::Format(format!("unknown family \"{other}\"; expected one of {}", FAMILY_NAMES.join(", ")))),
    }
}

/// Builds the named family from a JSON parameter document (`None` for
/// parameterless families).
pub fn build_family(name: &str, params: Option<&str>, force: Option<Mode>, tol: Tolerance) -> Result<AnyAlgebra> {
    let (mode, value) = split_mode(params.unwrap_or("{}"), force)?;
    Ok(match mode {
        Mode::Exact => AnyAlgebra::Exact(build_family_as(name, value, tol)?),
        Mode::Float => AnyAlgebra::Float(build_family_as(name, value, tol)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Scalar};

    #[test]
    fn lorentz_dim5_params() {
        let text = r#"{"p": 1, "r": 1, "q": 0, "m1": [[3], [4]], "m2": [], "a": [1, 2], "b": [], "lambda": [5]}"#;
        let alg = build_family("lorentz", Some(text), None, Tolerance::default()).unwrap();
        assert_eq!(alg.mode(), Mode::Exact);
        let AnyAlgebra::Exact(alg) = alg else { unreachable!() };
        assert_eq!(alg.dim(), 5);
    }

    #[test]
    fn constraint_named() {
        let text = r#"{"q": 2, "r": 0, "a": [1], "lambda": [2]}"#;
        match build_family("heis1", Some(text), None, Tolerance::default()) {
            Err(Error::Constraint(msg)) => assert!(msg.contains("Σa² ≠ Σλ²"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_roots_select_float() {
        let text = r#"{"q": 3, "a": ["sqrt(2)"], "beta": 1}"#;
        let alg = build_family("heis3", Some(text), None, Tolerance::default()).unwrap();
        assert_eq!(alg.mode(), Mode::Float);
        let exact = build_family("heis3", Some(text), Some(Mode::Exact), Tolerance::default());
        assert!(matches!(exact, Err(Error::Json(_))));
    }

    #[test]
    fn params_round_trip() {
        let p = HeisFamily1Params { q: 2, r: 0, a: vec![Rational::from_ratio(3, 2)], lambda: vec![Rational::from_ratio(-3, 2)] };
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"q":2,"r":0,"a":["3/2"],"lambda":["-3/2"]}"#);
        assert_eq!(serde_json::from_str::<HeisFamily1Params<Rational>>(&text).unwrap(), p);
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(build_family("heis9", None, None, Tolerance::default()), Err(Error::Format(_))));
    }
}
