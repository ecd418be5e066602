//! The JSON interchange format.
//!
//! * complex number — `[re, im]` (a bare number is accepted as a real value);
//! * matrix — row-major nested arrays of complex numbers;
//! * vector — array of complex numbers;
//! * measure — `{"domain": "circle"|"line", "atoms": [{"point", "weight"}]}`,
//!   with real points on the line;
//! * inner function — `{"constant": complex, "zeros": [complex]}`.

use std::path::Path;

use livsic_core::herglotz::{Atom, AtomicMatrixMeasure, Domain, HerglotzData};
use livsic_core::numeric::CMatrix;
use livsic_core::scalar::cx;
use livsic_core::{Inner, Matrix, Measure, Vector, C64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A complex number on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonComplex {
    /// `[re, im]`.
    Pair([f64; 2]),
    /// A real number.
    Real(f64),
}

impl From<C64> for JsonComplex {
    fn from(z: C64) -> Self {
        JsonComplex::Pair([z.re, z.im])
    }
}

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        match z {
            JsonComplex::Pair([a, b]) => cx(a, b),
            JsonComplex::Real(a) => cx(a, 0.0),
        }
    }
}

/// Row-major matrix.
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

/// Measure on the unit circle or the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonMeasure {
    /// `"circle"` or `"line"`.
    pub domain: JsonDomain,
    /// Point masses.
    pub atoms: Vec<JsonAtom>,
}

/// Measure domain tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JsonDomain {
    /// The unit circle.
    Circle,
    /// The real line.
    Line,
}

/// One point mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonAtom {
    /// Location (complex on the circle, real on the line).
    pub point: JsonComplex,
    /// Positive semidefinite weight matrix.
    pub weight: JsonMatrix,
}

/// Scalar inner function `constant · Π (z − a)/(z − ā)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonInner {
    /// Unimodular constant.
    pub constant: JsonComplex,
    /// Zeros in the upper half-plane, with multiplicity.
    pub zeros: Vec<JsonComplex>,
}

/// Herglotz data `(P, Σ)`: the linear coefficient and the line measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonHerglotz {
    /// Coefficient of the linear term.
    pub p: JsonMatrix,
    /// The line measure.
    pub measure: JsonMeasure,
}

/// Input accepted by `transform-measure`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonMeasureInput {
    /// Herglotz data, transformed to a circle measure.
    Herglotz(JsonHerglotz),
    /// A bare measure (circle → Herglotz data; line → circle with `P = 0`).
    Measure(JsonMeasure),
}

/// A sampled matrix function on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonSample {
    /// Real abscissa.
    pub point: f64,
    /// Value at `point`.
    pub value: JsonMatrix,
}

/// A tabulated witness for the divisibility order between two operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonWitness {
    /// Livsic function of the smaller operator.
    pub theta_small: JsonInner,
    /// The mediating characteristic function.
    pub phi: JsonInner,
    /// Line measure of the smaller operator.
    pub sigma_small: JsonMeasure,
    /// Line measure of the larger operator.
    pub sigma_big: JsonMeasure,
    /// `D(t)` at the atoms of `sigma_big`.
    pub d: Vec<JsonSample>,
    /// Images of the domain of the smaller operator, each tabulated at the
    /// atoms.
    pub images: Vec<Vec<JsonSample>>,
}

/// Reads and parses a JSON file; parse errors carry line and column.
pub fn read_json<D: DeserializeOwned>(path: &Path) -> Result<D, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_json(&text, &path.display().to_string())
}

/// Parses JSON text; `origin` names the source in diagnostics.
pub fn parse_json<D: DeserializeOwned>(text: &str, origin: &str) -> Result<D, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Wire form of a complex number.
pub fn complex_to_json(z: C64) -> JsonComplex {
    z.into()
}

/// Wire form of a matrix.
pub fn matrix_to_json(m: &Matrix) -> JsonMatrix {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)].into()).collect())
        .collect()
}

/// Wire form of a column vector.
pub fn vector_to_json(v: &Vector) -> Vec<JsonComplex> {
    v.iter().map(|&z| z.into()).collect()
}

/// Matrix from its wire form; `what` names the field in diagnostics.
pub fn matrix_from_json(m: &JsonMatrix, what: &str) -> Result<Matrix, CliError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if let Some(bad) = m.iter().position(|r| r.len() != cols) {
        return Err(CliError::Field {
            field: what.to_string(),
            message: format!("row {bad} has {} entries, row 0 has {cols}", m[bad].len()),
        });
    }
    Ok(CMatrix::from_row_iterator(
        rows,
        cols,
        m.iter().flatten().map(|&z| C64::from(z)),
    ))
}

/// Square matrix from its wire form.
pub fn square_from_json(m: &JsonMatrix, what: &str) -> Result<Matrix, CliError> {
    let out = matrix_from_json(m, what)?;
    if !out.is_square() || out.nrows() == 0 {
        return Err(CliError::Field {
            field: what.to_string(),
            message: format!(
                "expected a non-empty square matrix, got {}×{}",
                out.nrows(),
                out.ncols()
            ),
        });
    }
    Ok(out)
}

/// Column vector from its wire form.
pub fn vector_from_json(v: &[JsonComplex]) -> Vector {
    Vector::from_iterator(v.len(), v.iter().map(|&z| C64::from(z)))
}

/// Wire form of a scalar inner function.
pub fn inner_to_json(f: &Inner) -> JsonInner {
    JsonInner {
        constant: f.constant().into(),
        zeros: f.zeros().iter().map(|&z| z.into()).collect(),
    }
}

/// Scalar inner function from its wire form.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN inputs must be rejected
pub fn inner_from_json(f: &JsonInner, what: &str) -> Result<Inner, CliError> {
    let constant = C64::from(f.constant);
    if !((constant.norm() - 1.0).abs() <= 1e-9) {
        return Err(CliError::Field {
            field: format!("{what}.constant"),
            message: format!(
                "constant must be unimodular, has modulus {}",
                constant.norm()
            ),
        });
    }
    let zeros: Vec<C64> = f.zeros.iter().map(|&z| z.into()).collect();
    if let Some(z) = zeros.iter().find(|z| !(z.im > 0.0)) {
        return Err(CliError::Field {
            field: format!("{what}.zeros"),
            message: format!("zero {z} is not in the upper half-plane"),
        });
    }
    Ok(Inner::new(constant, zeros))
}

/// Wire form of a measure.
pub fn measure_to_json(m: &Measure) -> JsonMeasure {
    let domain = match m.domain() {
        Domain::Circle => JsonDomain::Circle,
        Domain::Line => JsonDomain::Line,
    };
    let atoms = m
        .atoms()
        .iter()
        .map(|a| JsonAtom {
            point: match domain {
                JsonDomain::Circle => a.point.into(),
                JsonDomain::Line => JsonComplex::Real(a.point.re),
            },
            weight: matrix_to_json(&a.weight),
        })
        .collect();
    JsonMeasure { domain, atoms }
}

/// Measure from its wire form (validated: square PSD weights of equal size,
/// distinct points on the stated domain).
pub fn measure_from_json(m: &JsonMeasure, what: &str) -> Result<Measure, CliError> {
    let domain = match m.domain {
        JsonDomain::Circle => Domain::Circle,
        JsonDomain::Line => Domain::Line,
    };
    let mut atoms = Vec::with_capacity(m.atoms.len());
    for (k, a) in m.atoms.iter().enumerate() {
        atoms.push(Atom {
            point: a.point.into(),
            weight: square_from_json(&a.weight, &format!("{what}.atoms[{k}].weight"))?,
        });
    }
    let dim = atoms.first().map_or(0, |a| a.weight.nrows());
    if dim == 0 {
        return Err(CliError::Field {
            field: format!("{what}.atoms"),
            message: "measure has no atoms".into(),
        });
    }
    AtomicMatrixMeasure::new(domain, dim, atoms, 1e-9).map_err(|e| CliError::Field {
        field: what.to_string(),
        message: e.to_string(),
    })
}

/// Wire form of Herglotz data.
pub fn herglotz_to_json(h: &HerglotzData<f64>) -> JsonHerglotz {
    JsonHerglotz {
        p: matrix_to_json(h.p()),
        measure: measure_to_json(h.measure()),
    }
}

/// Herglotz data from its wire form.
pub fn herglotz_from_json(h: &JsonHerglotz, what: &str) -> Result<HerglotzData<f64>, CliError> {
    let p = square_from_json(&h.p, &format!("{what}.p"))?;
    let measure = measure_from_json(&h.measure, &format!("{what}.measure"))?;
    HerglotzData::new(p, measure, 1e-9).map_err(|e| CliError::Field {
        field: what.to_string(),
        message: e.to_string(),
    })
}

/// Tabulated line function from samples.
pub fn samples_from_json(
    samples: &[JsonSample],
    what: &str,
) -> Result<Vec<(f64, Matrix)>, CliError> {
    samples
        .iter()
        .enumerate()
        .map(|(k, s)| {
            Ok((
                s.point,
                matrix_from_json(&s.value, &format!("{what}[{k}].value"))?,
            ))
        })
        .collect()
}

/// Samples of a line function at the given points.
pub fn samples_to_json(
    points: &[f64],
    f: &livsic_core::extension::LineFn<f64>,
) -> Result<Vec<JsonSample>, CliError> {
    points
        .iter()
        .map(|&t| {
            Ok(JsonSample {
                point: t,
                value: matrix_to_json(&f(t)?),
            })
        })
        .collect()
}

/// Converts any serialisable value to a JSON value (infallible for the
/// wire types above).
pub fn to_value<S: Serialize>(s: &S) -> serde_json::Value {
    serde_json::to_value(s).unwrap_or(serde_json::Value::Null)
}
