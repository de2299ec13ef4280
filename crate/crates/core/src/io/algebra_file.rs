use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::num::{infer_mode, JsonRepr, JsonScalar};
use crate::algebra::NilMetricAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pe_linalg::{make_space, PseudoEuclideanSpace};
use crate::scalar::{Mode, Rational, Tolerance};

/// Fields of an algebra file before the scalars are read.
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebraFile {
    dim: usize,
    q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Value>,
    center: Value,
    js: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
}

/// An algebra in whichever arithmetic its file asked for.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Exact(NilMetricAlgebra<Rational>),
    Float(NilMetricAlgebra<f64>),
}

impl AnyAlgebra {
    pub fn mode(&self) -> Mode {
        match self {
            AnyAlgebra::Exact(_) => Mode::Exact,
            AnyAlgebra::Float(_) => Mode::Float,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        match self {
            AnyAlgebra::Exact(a) => write_algebra(a),
            AnyAlgebra::Float(a) => write_algebra(a),
        }
    }
}

fn format_err(what: &str, e: String) -> Error {
    Error::Format(format!("{what}: {e}"))
}

/// JSON document of an algebra. The Gram matrix is omitted when the basis
/// is pseudo-Euclidean.
pub fn algebra_to_value<T: JsonScalar>(alg: &NilMetricAlgebra<T>) -> Result<Value> {
    let space = alg.space();
    let gram = if space.is_canonical() { None } else { Some(space.gram().to_json().map_err(Error::Format)?) };
    let raw = RawAlgebraFile {
        dim: alg.dim(),
        q: space.q(),
        gram,
        center: alg.center().to_vec().to_json().map_err(Error::Format)?,
        js: alg.js().to_vec().to_json().map_err(Error::Format)?,
        mode: Some(T::MODE),
    };
    Ok(serde_json::to_value(raw)?)
}

/// Pretty-printed algebra file with a trailing newline.
pub fn write_algebra<T: JsonScalar>(alg: &NilMetricAlgebra<T>) -> Result<String> {
    let mut text = serde_json::to_string_pretty(&algebra_to_value(alg)?)?;
    text.push('\n');
    Ok(text)
}

fn load<T: JsonScalar>(raw: &RawAlgebraFile, tol: Tolerance) -> Result<NilMetricAlgebra<T>> {
    let n = raw.dim;
    let center = Vec::<Vec<T>>::from_json(&raw.center).map_err(|e| format_err("center", e))?;
    let js = Vec::<Matrix<T>>::from_json(&raw.js).map_err(|e| format_err("js", e))?;
    if let Some(k) = center.iter().position(|v| v.len() != n) {
        return Err(Error::Format(format!("center vector {} has length {}, expected {n}", k + 1, center[k].len())));
    }
    if let Some(k) = js.iter().position(|j| j.rows() != n || j.cols() != n) {
        return Err(Error::Format(format!("J_{} is {} x {}, expected {n} x {n}", k + 1, js[k].rows(), js[k].cols())));
    }
    let space = match &raw.gram {
        None => make_space(raw.q, n)?,
        Some(value) => {
            let gram = Matrix::<T>::from_json(value).map_err(|e| format_err("gram", e))?;
            if gram.rows() != n || gram.cols() != n {
                return Err(Error::Format(format!("gram is {} x {}, expected {n} x {n}", gram.rows(), gram.cols())));
            }
            let space = PseudoEuclideanSpace::with_gram(gram, tol)?;
            if space.q() != raw.q {
                return Err(Error::constraint(format!("gram has q = {} but the file declares q = {}", space.q(), raw.q)));
            }
            Arc::new(space)
        }
    };
    NilMetricAlgebra::new(space, center, js, tol)
}

/// Reads and validates an algebra file. `force` overrides the file's mode;
/// without either, the mode is inferred from the entries.
pub fn read_algebra(text: &str, force: Option<Mode>, tol: Tolerance) -> Result<AnyAlgebra> {
    let raw: RawAlgebraFile = serde_json::from_str(text)?;
    let mode = force.or(raw.mode).unwrap_or_else(|| {
        let mut entries = Map::new();
        entries.insert("center".into(), raw.center.clone());
        entries.insert("js".into(), raw.js.clone());
        if let Some(g) = &raw.gram {
            entries.insert("gram".into(), g.clone());
        }
        infer_mode(&Value::Object(entries))
    });
    Ok(match mode {
        Mode::Exact => AnyAlgebra::Exact(load(&raw, tol)?),
        Mode::Float => AnyAlgebra::Float(load(&raw, tol)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::euclidean_h3;
    use crate::families::flat_h3_lorentz;

    #[test]
    fn exact_file_round_trip() {
        let alg = flat_h3_lorentz::<Rational>();
        let text = write_algebra(&alg).unwrap();
        assert!(text.contains("\"0/1\""));
        assert_eq!(read_algebra(&text, None, Tolerance::default()).unwrap(), AnyAlgebra::Exact(alg));
    }

    #[test]
    fn float_file_round_trip() {
        let alg = euclidean_h3::<f64>().with_scaled_metric(&0.1, Tolerance::default()).unwrap();
        let text = write_algebra(&alg).unwrap();
        assert!(text.contains("\"gram\""));
        assert_eq!(read_algebra(&text, None, Tolerance::default()).unwrap(), AnyAlgebra::Float(alg));
    }

    #[test]
    fn mode_inferred_and_forced() {
        let text = r#"{"dim": 3, "q": 0, "center": [[1, 0, 0]], "js": [[[0, 0, 0], [0, 0, -1], [0, 1, 0]]]}"#;
        let tol = Tolerance::default();
        assert_eq!(read_algebra(text, None, tol).unwrap().mode(), Mode::Exact);
        assert_eq!(read_algebra(text, Some(Mode::Float), tol).unwrap().mode(), Mode::Float);
        let half = text.replace("-1]", "-0.5]").replace("[0, 1, 0]", "[0, 0.5, 0]");
        assert_eq!(read_algebra(&half, None, tol).unwrap().mode(), Mode::Float);
    }

    #[test]
    fn rejections() {
        let tol = Tolerance::default();
        let truncated = r#"{"dim": 3, "q": 0, "center": [[1, 0"#;
        assert!(matches!(read_algebra(truncated, None, tol), Err(Error::Json(_))));
        let short = r#"{"dim": 3, "q": 0, "center": [[1, 0]], "js": [[[0, 0, 0], [0, 0, -1], [0, 1, 0]]]}"#;
        assert!(matches!(read_algebra(short, None, tol), Err(Error::Format(_))));
        let not_skew = r#"{"dim": 3, "q": 0, "center": [[1, 0, 0]], "js": [[[0, 0, 0], [0, 0, 1], [0, 1, 0]]]}"#;
        match read_algebra(not_skew, None, tol) {
            Err(Error::InvalidAlgebra(v)) => assert!(v.iter().any(|v| v.to_string() == "J_1 is not skew")),
            other => panic!("{other:?}"),
        }
        let wrong_q = r#"{"dim": 2, "q": 0, "gram": [[0, 1], [1, 0]], "center": [], "js": []}"#;
        assert!(matches!(read_algebra(wrong_q, None, tol), Err(Error::Constraint(_))));
    }
}
