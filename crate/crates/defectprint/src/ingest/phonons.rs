//! ```text
//! N_atoms
//! MODE k E_meV
//! dx dy dz               (N_atoms lines, unit-normalized Cartesian)
//! MODE k E_meV
//! ...
//! ```
//!
//! Blank lines and `#` comments may appear anywhere.

use defectprint_core::model::{PhononMode, PhononModeSet};

use super::{content_lines, fmt_exact, parse_f64, parse_int};
use crate::error::ParseError;

pub fn parse_phonons(text: &str, expected_atoms: Option<usize>) -> Result<PhononModeSet, ParseError> {
    let mut lines = content_lines(text).peekable();
    let (head_line, head) = lines.next().ok_or_else(|| ParseError::new(1, "empty phonon file"))?;
    let n_atoms: usize = parse_int(head, head_line, "atom count")?;
    if n_atoms == 0 {
        return Err(ParseError::new(head_line, "atom count must be at least 1"));
    }
    if let Some(want) = expected_atoms {
        if want != n_atoms {
            return Err(ParseError::new(
                head_line,
                format!("phonon file is for {n_atoms} atoms, geometry has {want}"),
            ));
        }
    }
    let mut modes = Vec::new();
    while let Some((number, line)) = lines.next() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 || !fields[0].eq_ignore_ascii_case("MODE") {
            return Err(ParseError::new(
                number,
                format!("expected 'MODE k E_meV', found '{line}'"),
            ));
        }
        let index: usize = parse_int(fields[1], number, "mode index")?;
        let energy = parse_f64(fields[2], number, "mode energy")?;
        let mut disp = Vec::with_capacity(n_atoms);
        let mut last = number;
        for a in 0..n_atoms {
            let Some((vn, vline)) = lines.next_if(|(_, l)| !l.to_ascii_uppercase().starts_with("MODE")) else {
                return Err(ParseError::new(
                    last + 1,
                    format!("mode {index}: expected displacement {} of {n_atoms}", a + 1),
                ));
            };
            last = vn;
            let v: Vec<&str> = vline.split_whitespace().collect();
            if v.len() != 3 {
                return Err(ParseError::new(
                    vn,
                    format!("expected 'dx dy dz', found {} fields", v.len()),
                ));
            }
            disp.push([
                parse_f64(v[0], vn, "dx")?,
                parse_f64(v[1], vn, "dy")?,
                parse_f64(v[2], vn, "dz")?,
            ]);
        }
        modes.push(PhononMode::new(index, energy, disp).map_err(|e| ParseError::new(number, e.to_string()))?);
    }
    if modes.is_empty() {
        return Err(ParseError::new(head_line, "no modes found"));
    }
    PhononModeSet::new(n_atoms, modes).map_err(|e| ParseError::new(head_line, e.to_string()))
}

pub fn write_phonons(set: &PhononModeSet) -> String {
    let mut out = format!("{}\n", set.n_atoms());
    for m in set.modes() {
        out.push_str(&format!("MODE {} {}\n", m.index, fmt_exact(m.energy_mev)));
        for d in &m.displacement {
            out.push_str(&format!(
                "{} {} {}\n",
                fmt_exact(d[0]),
                fmt_exact(d[1]),
                fmt_exact(d[2])
            ));
        }
    }
    out
}
