//! JSON experiment records and candidate lists for matching.
//!
//! ```json
//! {
//!   "label": "2 eV emitter",
//!   "fields": {
//!     "zpl_nm": {"value": 573, "uncertainty": 10},
//!     "emission_angle_deg": {"range": [16.24, 20.73]}
//!   },
//!   "weights": {"zpl_nm": 2}
//! }
//! ```
//!
//! Candidates are flat objects keyed by field name (plus `defect_label` and
//! `transition_order`), a fingerprint artifact with a `fingerprint` member,
//! or an array of either. Null, `"-"` and `"out-of-plane"` mark absent values.

use defectprint_core::matching::{Candidate, ExperimentRecord, Field, Measurement, Weights};
use serde_json::{Map, Value};

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentInput {
    pub record: ExperimentRecord,
    pub weights: Weights,
}

/// Line of the first occurrence of `"key"`, for error reporting.
fn line_of(text: &str, key: &str) -> usize {
    let quoted = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&quoted)).map_or(1, |i| i + 1)
}

fn json(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::new(e.line().max(1), format!("invalid JSON: {e}")))
}

fn field_names() -> String {
    Field::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
}

fn field(text: &str, name: &str) -> Result<Field, ParseError> {
    Field::parse(name).ok_or_else(|| {
        ParseError::new(
            line_of(text, name),
            format!("unknown field '{name}' (expected one of {})", field_names()),
        )
    })
}

fn number(v: &Value) -> Option<f64> {
    v.as_f64().filter(|x| x.is_finite())
}

pub fn parse_experiment(text: &str) -> Result<ExperimentInput, ParseError> {
    let root = json(text)?;
    let obj = root
        .as_object()
        .ok_or_else(|| ParseError::new(1, "experiment must be a JSON object"))?;
    let label = obj.get("label").and_then(Value::as_str).unwrap_or("experiment");
    let fields = obj
        .get("fields")
        .and_then(Value::as_object)
        .ok_or_else(|| ParseError::new(1, "experiment needs a 'fields' object"))?;
    let mut record = ExperimentRecord::new(label);
    for (name, spec) in fields {
        let f = field(text, name)?;
        let line = line_of(text, name);
        let bad = |msg: String| ParseError::new(line, format!("{name}: {msg}"));
        let m = if let Some(range) = spec.get("range") {
            let pair = range
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((number(&a[0])?, number(&a[1])?)));
            let (lo, hi) = pair.ok_or_else(|| bad("range must be [low, high]".into()))?;
            Measurement::from_range(lo, hi)
        } else {
            let value = spec
                .get("value")
                .and_then(number)
                .ok_or_else(|| bad("missing numeric 'value'".into()))?;
            let unc = spec
                .get("uncertainty")
                .and_then(number)
                .ok_or_else(|| bad("missing numeric 'uncertainty'".into()))?;
            Measurement::new(value, unc)
        }
        .map_err(|e| bad(e.to_string()))?;
        record.fields.insert(f, m);
    }
    let mut weights = Weights::uniform();
    if let Some(w) = obj.get("weights") {
        let w = w
            .as_object()
            .ok_or_else(|| ParseError::new(line_of(text, "weights"), "'weights' must be an object"))?;
        for (name, v) in w {
            let f = field(text, name)?;
            let x = number(v).filter(|x| *x >= 0.0).ok_or_else(|| {
                ParseError::new(
                    line_of(text, name),
                    format!("weight for {name} must be a non-negative number"),
                )
            })?;
            weights.0.insert(f, x);
        }
    }
    Ok(ExperimentInput { record, weights })
}

fn candidate(text: &str, obj: &Map<String, Value>, position: usize) -> Result<Candidate, ParseError> {
    if let Some(inner) = obj.get("fingerprint").and_then(Value::as_object) {
        return candidate(text, inner, position);
    }
    let label = obj
        .get("defect_label")
        .and_then(Value::as_str)
        .ok_or_else(|| ParseError::new(1, format!("candidate {} has no 'defect_label'", position + 1)))?;
    let order = obj.get("transition_order").and_then(Value::as_u64).unwrap_or(1);
    let order = u32::try_from(order)
        .map_err(|_| ParseError::new(line_of(text, "transition_order"), "transition_order out of range"))?;
    let mut c = Candidate::new(label, order);
    for (name, v) in obj {
        let Some(f) = Field::parse(name) else { continue };
        match v {
            Value::Null => {}
            Value::String(s) if s == "-" || s == defectprint_core::photophysics::OUT_OF_PLANE => {}
            _ => {
                let x = number(v).ok_or_else(|| {
                    ParseError::new(
                        line_of(text, name),
                        format!("candidate '{label}': {name} must be a number"),
                    )
                })?;
                c = c.with(f, x);
            }
        }
    }
    Ok(c.with_derived_lifetime())
}

pub fn parse_candidates(text: &str) -> Result<Vec<Candidate>, ParseError> {
    match json(text)? {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let obj = v
                    .as_object()
                    .ok_or_else(|| ParseError::new(1, format!("candidate {} is not an object", i + 1)))?;
                candidate(text, obj, i)
            })
            .collect(),
        Value::Object(obj) => Ok(vec![candidate(text, &obj, 0)?]),
        _ => Err(ParseError::new(1, "candidates must be an object or an array")),
    }
}
