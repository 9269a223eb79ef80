//! Line-oriented text formats for geometries, phonon modes, dipole records
//! and run configurations, plus the JSON experiment record.
//!
//! Every parser is a pure function of its input text; file helpers attach the
//! path to the error.

pub mod config;
pub mod dipole;
pub mod experiment;
pub mod geometry;
pub mod phonons;

use std::path::Path;

use crate::error::{AppError, ParseError, Result};

pub use config::{parse_config, write_config, ParsedConfig};
pub use dipole::{parse_dipole, write_dipole};
pub use experiment::{parse_candidates, parse_experiment, ExperimentInput};
pub use geometry::{parse_geometry, write_geometry};
pub use phonons::{parse_phonons, write_phonons};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(AppError::io(path))
}

/// Reads `path` and runs `parse` on it, naming the file in any error.
pub fn read_with<T>(path: &Path, parse: impl FnOnce(&str) -> std::result::Result<T, ParseError>) -> Result<T> {
    let text = read_text(path)?;
    parse(&text).map_err(|source| AppError::Parse {
        file: path.display().to_string(),
        source,
    })
}

/// Non-blank lines with `#` comments removed, paired with 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Locale-independent finite float: plain decimal or exponent notation.
pub(crate) fn parse_f64(token: &str, line: usize, what: &str) -> std::result::Result<f64, ParseError> {
    let ok = !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    match token.parse::<f64>() {
        Ok(v) if ok && v.is_finite() => Ok(v),
        _ => Err(ParseError::new(
            line,
            format!("{what}: expected a number, found '{token}'"),
        )),
    }
}

pub(crate) fn parse_int<T: std::str::FromStr>(
    token: &str,
    line: usize,
    what: &str,
) -> std::result::Result<T, ParseError> {
    token.parse::<T>().map_err(|_| {
        ParseError::new(
            line,
            format!("{what}: expected a non-negative integer, found '{token}'"),
        )
    })
}

/// `key = value`, with the value trimmed.
pub(crate) fn split_key_value(line: &str, number: usize) -> std::result::Result<(&str, &str), ParseError> {
    let (k, v) = line
        .split_once('=')
        .ok_or_else(|| ParseError::new(number, format!("expected 'key = value', found '{line}'")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(ParseError::new(number, "missing key before '='"));
    }
    Ok((k, v.trim()))
}

/// Shortest text that parses back to the same f64.
pub(crate) fn fmt_exact(x: f64) -> String {
    format!("{x:?}")
}
