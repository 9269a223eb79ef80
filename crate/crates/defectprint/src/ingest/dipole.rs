//! ```text
//! label   = emission
//! spin    = down
//! E_i_eV  = 1.50
//! E_f_eV  = -0.66
//! px      = 0.12 0.0        # real imaginary
//! py      = 0.05 -0.01
//! pz      = 0.0 0.0
//! p_units = atomic          # or hbar_per_angstrom; optional
//! ```

use std::collections::BTreeMap;

use defectprint_core::model::{DipoleRecord, MomentumUnits, SpinChannel};
use num_complex::Complex64;

use super::{content_lines, fmt_exact, parse_f64, split_key_value};
use crate::error::ParseError;

const KEYS: [&str; 8] = ["label", "spin", "E_i_eV", "E_f_eV", "px", "py", "pz", "p_units"];

pub fn parse_dipole(text: &str) -> Result<DipoleRecord, ParseError> {
    let mut seen: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut first = None;
    for (number, line) in content_lines(text) {
        first.get_or_insert(number);
        let (key, value) = split_key_value(line, number)?;
        let Some(&canonical) = KEYS.iter().find(|k| k.eq_ignore_ascii_case(key)) else {
            return Err(ParseError::new(
                number,
                format!("unknown key '{key}' (expected one of {})", KEYS.join(", ")),
            ));
        };
        if let Some((prev, _)) = seen.insert(canonical, (number, value)) {
            return Err(ParseError::new(
                number,
                format!("duplicate key '{canonical}' (first on line {prev})"),
            ));
        }
    }
    let first = first.unwrap_or(1);
    let get = |k: &str| {
        seen.get(k)
            .copied()
            .ok_or_else(|| ParseError::new(first, format!("missing key '{k}'")))
    };

    let (_, label) = get("label")?;
    let (spin_line, spin) = get("spin")?;
    let spin = SpinChannel::parse(spin)
        .ok_or_else(|| ParseError::new(spin_line, format!("spin: expected 'up' or 'down', found '{spin}'")))?;
    let (li, ei) = get("E_i_eV")?;
    let e_i = parse_f64(ei, li, "E_i_eV")?;
    let (lf, ef) = get("E_f_eV")?;
    let e_f = parse_f64(ef, lf, "E_f_eV")?;
    let mut p = [Complex64::new(0.0, 0.0); 3];
    for (slot, key) in p.iter_mut().zip(["px", "py", "pz"]) {
        let (n, v) = get(key)?;
        let parts: Vec<&str> = v.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(ParseError::new(
                n,
                format!("{key}: expected 'real imaginary', found '{v}'"),
            ));
        }
        *slot = Complex64::new(parse_f64(parts[0], n, key)?, parse_f64(parts[1], n, key)?);
    }
    let units = match seen.get("p_units") {
        None => MomentumUnits::default(),
        Some(&(n, v)) => MomentumUnits::parse(v).ok_or_else(|| {
            ParseError::new(
                n,
                format!("p_units: expected 'atomic' or 'hbar_per_angstrom', found '{v}'"),
            )
        })?,
    };
    DipoleRecord::new(label, spin, e_i, e_f, p, units).map_err(|e| ParseError::new(lf, e.to_string()))
}

pub fn write_dipole(rec: &DipoleRecord) -> String {
    let mut out = format!(
        "label = {}\nspin = {}\nE_i_eV = {}\nE_f_eV = {}\n",
        rec.label,
        rec.spin.as_str(),
        fmt_exact(rec.e_initial),
        fmt_exact(rec.e_final)
    );
    for (key, c) in ["px", "py", "pz"].iter().zip(rec.momentum) {
        out.push_str(&format!("{key} = {} {}\n", fmt_exact(c.re), fmt_exact(c.im)));
    }
    out.push_str(&format!("p_units = {}\n", rec.units.as_str()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const VALID: &str = "label = t\nspin = up\nE_i_eV = 0\nE_f_eV = 2\npx = 1 0\npy = 0 0\npz = 0 0\n";

    #[test]
    fn valid_record() {
        let r = parse_dipole(VALID).unwrap();
        assert_eq!(r.momentum[0], Complex64::new(1.0, 0.0));
        assert_eq!(r.units, MomentumUnits::Atomic);
    }

    #[test]
    fn degenerate_rejected() {
        let t = VALID
            .replace("E_i_eV = 0", "E_i_eV = 1")
            .replace("E_f_eV = 2", "E_f_eV = 1");
        assert!(parse_dipole(&t).is_err());
    }

    #[test]
    fn complex_round_trip() {
        let t = VALID.replace("py = 0 0", "py = -0.25 1.5e-3");
        let r = parse_dipole(&t).unwrap();
        assert_eq!(parse_dipole(&write_dipole(&r)).unwrap(), r);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_dipole(&VALID.replace("px = 1 0", "px = 1")).unwrap_err().line, 5);
        assert_eq!(parse_dipole(&format!("{VALID}spin = down\n")).unwrap_err().line, 8);
        assert_eq!(parse_dipole(&format!("{VALID}colour = red\n")).unwrap_err().line, 8);
        assert!(parse_dipole("label = t\n").unwrap_err().message.contains("spin"));
    }
}
