use defectprint_core::fingerprint::Fingerprint;
use defectprint_core::lineshape::PLSpectrum;
use defectprint_core::matching::Candidate;
use defectprint_core::physcore::{ev_to_nm, Spectrum};

use super::fmt_sig;
use crate::error::ParseError;

fn header(meta: &[(&str, String)]) -> String {
    meta.iter().map(|(k, v)| format!("# {k} = {v}\n")).collect()
}

/// PL spectrum rows in ascending energy: energy_eV, wavelength_nm, A, L.
pub fn spectrum_csv(s: &PLSpectrum, meta: &[(&str, String)]) -> String {
    let mut out = header(meta);
    out.push_str("energy_eV,wavelength_nm,A,L\n");
    let l = s.l.as_deref();
    for (i, e) in s.grid.values().enumerate() {
        let nm = if e > 0.0 {
            ev_to_nm(e).map(fmt_sig).unwrap_or_default()
        } else {
            String::new()
        };
        let lv = l.map(|l| fmt_sig(l[i])).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", fmt_sig(e), nm, fmt_sig(s.a[i]), lv));
    }
    out
}

/// S(ħω) rows: energy_eV, S.
pub fn spectral_function_csv(s: &Spectrum, meta: &[(&str, String)]) -> String {
    let mut out = header(meta);
    out.push_str("energy_eV,S\n");
    for (e, v) in s.grid.values().zip(&s.values) {
        out.push_str(&format!("{},{}\n", fmt_sig(e), fmt_sig(*v)));
    }
    out
}

/// One `field,value` row per fingerprint field that has a value.
pub fn fingerprint_csv(fp: &Fingerprint) -> String {
    let mut out = format!(
        "field,value\ndefect_label,{}\ntransition_order,{}\nspin_transition,{}\n",
        fp.defect_label, fp.transition_order, fp.spin_transition
    );
    if let Some(m) = fp.stable_multiplicity {
        out.push_str(&format!("stable_multiplicity,{}\n", m.as_str()));
    }
    for (f, v) in &Candidate::from(fp).values {
        out.push_str(&format!("{},{}\n", f.name(), fmt_sig(*v)));
    }
    for (name, p) in [
        ("excitation_angle_deg", fp.excitation_angle_deg),
        ("emission_angle_deg", fp.emission_angle_deg),
    ] {
        if p.degrees().is_none() {
            out.push_str(&format!("{name},{}\n", defectprint_core::photophysics::OUT_OF_PLANE));
        }
    }
    if let Some(o) = fp.odmr {
        out.push_str(&format!("odmr,{}\n", o.as_str()));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumTable {
    pub metadata: Vec<(String, String)>,
    pub energy: Vec<f64>,
    pub wavelength: Vec<f64>,
    pub a: Vec<f64>,
    pub l: Vec<f64>,
}

pub fn parse_spectrum_csv(text: &str) -> Result<SpectrumTable, ParseError> {
    let mut table = SpectrumTable::default();
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                table.metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        if !seen_header {
            if line != "energy_eV,wavelength_nm,A,L" {
                return Err(ParseError::new(n, format!("unexpected column header '{line}'")));
            }
            seen_header = true;
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            return Err(ParseError::new(n, format!("expected 4 columns, found {}", cols.len())));
        }
        let num = |s: &str, what: &str| -> Result<f64, ParseError> {
            if s.is_empty() {
                return Ok(f64::NAN);
            }
            s.parse::<f64>()
                .map_err(|_| ParseError::new(n, format!("{what}: expected a number, found '{s}'")))
        };
        table.energy.push(num(cols[0], "energy_eV")?);
        table.wavelength.push(num(cols[1], "wavelength_nm")?);
        table.a.push(num(cols[2], "A")?);
        table.l.push(num(cols[3], "L")?);
    }
    if !seen_header {
        return Err(ParseError::new(1, "missing column header"));
    }
    Ok(table)
}
