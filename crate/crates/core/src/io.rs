//! Scenario files and rendered scheme documents.
//!
//! Scenario files are JSON:
//!
//! ```json
//! {
//!   "shape": [2, 2],
//!   "pre":  {"amps": [[re, im], ...]},
//!   "post": {"amps": [[re, im], ...]},
//!   "labels": [["L", "R"], ["up", "down"]]
//! }
//! ```
//!
//! `post` and `labels` are optional. Amplitudes are written with the
//! shortest round-tripping decimal form, so write-then-read is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hilbert::{Ket, Shape};
use crate::render::{format_value, render_cube, render_grid, render_listing, render_svg};
use crate::scenarios::{custom, Scenario};
use crate::weakvalues::{TensorKind, WeakValueTensor};

fn schema(field: &str) -> Error {
    Error::SchemaViolation(field.to_string())
}

fn parse_amps(value: &Value, field: &str, shape: &Shape) -> Result<Ket> {
    let amps = value
        .get("amps")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(&format!("{field}.amps")))?;
    let amps = amps
        .iter()
        .map(|pair| match pair.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(schema(&format!("{field}.amps"))),
            },
            _ => Err(schema(&format!("{field}.amps"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ket::new(shape.clone(), amps).map_err(|_| schema(&format!("{field}.amps")))
}

/// Parses the scenario JSON schema described in the module docs.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if !root.is_object() {
        return Err(schema("$"));
    }
    let dims = root
        .get("shape")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("shape"))?
        .iter()
        .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| schema("shape")))
        .collect::<Result<Vec<_>>>()?;
    let shape = Shape::new(dims).map_err(|_| schema("shape"))?;

    let pre = parse_amps(root.get("pre").ok_or_else(|| schema("pre"))?, "pre", &shape)?;
    let post = match root.get("post") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_amps(v, "post", &shape)?),
    };
    let labels = match root.get("labels") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_array()
                .ok_or_else(|| schema("labels"))?
                .iter()
                .map(|axis| {
                    axis.as_array()
                        .ok_or_else(|| schema("labels"))?
                        .iter()
                        .map(|l| l.as_str().map(str::to_string).ok_or_else(|| schema("labels")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let mut scenario = custom(pre, post, labels).map_err(|e| match e {
        Error::LabelMismatch(_) => schema("labels"),
        other => other,
    })?;
    if let Some(name) = root.get("name").and_then(Value::as_str) {
        scenario.name = name.to_string();
    }
    Ok(scenario)
}

pub fn read_scenario_file(path: impl AsRef<Path>) -> Result<Scenario> {
    parse_scenario(&fs::read_to_string(path)?)
}

fn amps_json(k: &Ket) -> Value {
    json!({ "amps": k.amps().iter().map(|a| [a.re, a.im]).collect::<Vec<_>>() })
}

pub fn scenario_to_json(s: &Scenario) -> String {
    let mut root = json!({
        "name": s.name,
        "shape": s.shape().dims(),
        "pre": amps_json(&s.pre),
        "labels": s.axis_labels,
    });
    if let Some(post) = &s.post {
        root["post"] = amps_json(post);
    }
    serde_json::to_string_pretty(&root).expect("finite values serialize")
}

pub fn write_scenario_file(s: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, scenario_to_json(s) + "\n")?;
    Ok(())
}

/// Serializable view of a computed tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub scenario: String,
    pub shape: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub kind: String,
    /// `[re, im]` per component, flat big-endian order.
    pub components: Vec<[f64; 2]>,
    pub overlap: [f64; 2],
    pub marginals: Vec<Vec<[f64; 2]>>,
    pub total_sum: [f64; 2],
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

impl SchemeDocument {
    pub fn from_tensor(scenario: &str, t: &WeakValueTensor, labels: &[Vec<String>]) -> Self {
        SchemeDocument {
            scenario: scenario.to_string(),
            shape: t.shape().dims().to_vec(),
            labels: labels.to_vec(),
            kind: t.kind().to_string(),
            components: t.components().iter().copied().map(pair).collect(),
            overlap: pair(t.overlap()),
            marginals: t
                .marginals()
                .into_iter()
                .map(|m| m.into_iter().map(pair).collect())
                .collect(),
            total_sum: pair(t.total_sum()),
        }
    }

    pub fn from_scenario(s: &Scenario) -> Result<Self> {
        Ok(SchemeDocument::from_tensor(&s.name, &s.tensor()?, &s.axis_labels))
    }

    pub fn to_tensor(&self) -> Result<WeakValueTensor> {
        let kind = match self.kind.as_str() {
            "weak" => TensorKind::Weak,
            "expectation" => TensorKind::Expectation,
            _ => return Err(schema("kind")),
        };
        WeakValueTensor::from_parts(
            Shape::new(self.shape.clone()).map_err(|_| schema("shape"))?,
            self.components
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
            kind,
            Complex64::new(self.overlap[0], self.overlap[1]),
        )
        .map_err(|_| schema("components"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite values serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

fn complex_text(c: [f64; 2]) -> String {
    format!("{}{:+.4}i", format_value(c[0]), c[1])
}

/// Human-readable report: header, grid or cube, marginals and total sum.
pub fn render_text(doc: &SchemeDocument) -> Result<String> {
    let t = doc.to_tensor()?;
    let mut out = String::new();
    writeln!(out, "scenario: {}", doc.scenario).unwrap();
    writeln!(
        out,
        "kind: {}, shape: {}, overlap <post|pre>: {}",
        doc.kind,
        t.shape(),
        complex_text(doc.overlap)
    )
    .unwrap();
    writeln!(out).unwrap();
    match t.shape().subsystems() {
        2 => out.push_str(&render_grid(&t, &doc.labels)?),
        3 => out.push_str(&render_cube(&t, &doc.labels)?),
        _ => out.push_str(&render_listing(&t, &doc.labels)?),
    }
    writeln!(out).unwrap();
    writeln!(out, "marginals:").unwrap();
    for (axis, m) in doc.marginals.iter().enumerate() {
        let cells: Vec<String> = m
            .iter()
            .zip(&doc.labels[axis])
            .map(|(v, l)| format!("{l} {}", format_value(v[0])))
            .collect();
        writeln!(out, "  axis {axis}: {}", cells.join(", ")).unwrap();
    }
    writeln!(out, "total sum: {}", complex_text(doc.total_sum)).unwrap();
    Ok(out)
}

pub fn render_scheme(doc: &SchemeDocument, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => render_text(doc),
        OutputFormat::Json => Ok(doc.to_json() + "\n"),
        OutputFormat::Svg => render_svg(&doc.to_tensor()?, &doc.labels),
    }
}

pub fn write_scheme(doc: &SchemeDocument, path: impl AsRef<Path>, format: OutputFormat) -> Result<()> {
    fs::write(path, render_scheme(doc, format)?)?;
    Ok(())
}
