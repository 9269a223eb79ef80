//! Byte-stable writers: JSON with sorted keys, CSV with a `# key = value`
//! header, and an SVG plot of the PL spectrum. Floats are written at six
//! significant digits.

pub mod csv;
pub mod json;
pub mod svg;

use std::path::Path;

use crate::error::{AppError, Result};

pub use csv::{fingerprint_csv, parse_spectrum_csv, spectral_function_csv, spectrum_csv, SpectrumTable};
pub use json::{fingerprint_json, parse_fingerprint_json, to_canonical_json};
pub use svg::spectrum_svg;

/// `x` rounded to six significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Six-significant-digit text for `x`.
pub fn fmt_sig(x: f64) -> String {
    format!("{:?}", round_sig(x))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(AppError::io(dir))?;
    }
    std::fs::write(path, contents).map_err(AppError::io(path))
}
