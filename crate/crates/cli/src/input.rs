//! Input documents: `{"p": 3, "rho": [[0, -1], [1, -1]], "l": 3}` as JSON or TOML.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::Value;

/// A malformed input document. `field` names the offending key, when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: Some(field.into()),
            message: message.into(),
        }
    }

    fn document(message: impl Into<String>) -> Self {
        Self {
            field: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(name) => write!(f, "malformed input: field `{name}`: {}", self.message),
            None => write!(f, "malformed input: {}", self.message),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDoc {
    pub p: i64,
    /// Square, rows of equal length.
    pub rho: Vec<Vec<BigInt>>,
    pub l: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Toml,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "json" => Some(Format::Json),
            "toml" => Some(Format::Toml),
            _ => None,
        }
    }
}

/// Parses a document. Without a format hint, JSON is tried first, then TOML.
pub fn parse_input(text: &str, format: Option<Format>) -> Result<InputDoc, InputError> {
    let value = match format {
        Some(Format::Json) => parse_json(text)?,
        Some(Format::Toml) => parse_toml(text)?,
        None => match parse_json(text) {
            Ok(v) => v,
            Err(json_err) if text.trim_start().starts_with('{') => return Err(json_err),
            Err(_) => parse_toml(text)?,
        },
    };
    from_value(&value)
}

fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::document(format!("invalid JSON: {e}")))
}

fn parse_toml(text: &str) -> Result<Value, InputError> {
    let table: toml::Table =
        toml::from_str(text).map_err(|e| InputError::document(format!("invalid TOML: {e}")))?;
    serde_json::to_value(table).map_err(|e| InputError::document(e.to_string()))
}

fn integer(value: &Value) -> Option<BigInt> {
    match value {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn small_integer(value: &Value, field: &str) -> Result<i64, InputError> {
    let n = integer(value).ok_or_else(|| InputError::field(field, "expected an integer"))?;
    i64::try_from(n).map_err(|_| InputError::field(field, "integer out of range"))
}

pub fn from_value(value: &Value) -> Result<InputDoc, InputError> {
    let obj = value.as_object().ok_or_else(|| {
        InputError::document("expected a table with keys `p`, `rho` and optional `l`")
    })?;
    if let Some(key) = obj
        .keys()
        .find(|k| !["p", "rho", "l"].contains(&k.as_str()))
    {
        return Err(InputError::field(key.clone(), "unknown field"));
    }

    let p = small_integer(
        obj.get("p")
            .ok_or_else(|| InputError::field("p", "missing"))?,
        "p",
    )?;
    let l = obj.get("l").map(|v| small_integer(v, "l")).transpose()?;

    let rows = obj
        .get("rho")
        .ok_or_else(|| InputError::field("rho", "missing"))?
        .as_array()
        .ok_or_else(|| InputError::field("rho", "expected a list of rows"))?;
    let mut rho = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| InputError::field(format!("rho[{i}]"), "expected a list of integers"))?;
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| {
                integer(x).ok_or_else(|| {
                    InputError::field(format!("rho[{i}][{j}]"), "expected an integer")
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parsed.len() != rows.len() {
            return Err(InputError::field(
                format!("rho[{i}]"),
                format!(
                    "row has length {}, but rho must be square with {} rows",
                    parsed.len(),
                    rows.len()
                ),
            ));
        }
        rho.push(parsed);
    }
    if rho.is_empty() {
        return Err(InputError::field("rho", "must have at least one row"));
    }
    Ok(InputDoc { p, rho, l })
}
