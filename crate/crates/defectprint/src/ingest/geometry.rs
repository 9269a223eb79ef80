//! ```text
//! comment line
//! N
//! SYMBOL MASS X Y Z      (N lines; amu, Å)
//! ```

use defectprint_core::elements::is_element;
use defectprint_core::model::{Atom, Geometry};

use super::{fmt_exact, parse_f64, parse_int};
use crate::error::ParseError;

pub fn parse_geometry(text: &str) -> Result<Geometry, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let comment = match lines.next() {
        Some((_, c)) => c.trim_end().to_string(),
        None => return Err(ParseError::new(1, "empty geometry file")),
    };
    let (n_line, count) = loop {
        match lines.next() {
            Some((n, l)) if !l.trim().is_empty() => break (n, l.trim()),
            Some(_) => continue,
            None => return Err(ParseError::new(2, "missing atom count")),
        }
    };
    let n: usize = parse_int(count, n_line, "atom count")?;
    if n == 0 {
        return Err(ParseError::new(n_line, "atom count must be at least 1"));
    }
    let mut atoms = Vec::with_capacity(n);
    let mut last = n_line;
    for (number, raw) in lines {
        let line = raw.trim();
        last = number;
        if line.is_empty() {
            continue;
        }
        if atoms.len() == n {
            return Err(ParseError::new(
                number,
                format!("header declares {n} atoms but more lines follow"),
            ));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(ParseError::new(
                number,
                format!("expected 'SYMBOL MASS X Y Z', found {} fields", fields.len()),
            ));
        }
        if !is_element(fields[0]) {
            return Err(ParseError::new(
                number,
                format!("unknown element symbol '{}'", fields[0]),
            ));
        }
        let mass = parse_f64(fields[1], number, "mass")?;
        if mass <= 0.0 {
            return Err(ParseError::new(number, format!("mass must be positive, got {mass}")));
        }
        let position = [
            parse_f64(fields[2], number, "x")?,
            parse_f64(fields[3], number, "y")?,
            parse_f64(fields[4], number, "z")?,
        ];
        atoms.push(Atom {
            species: fields[0].to_string(),
            mass,
            position,
        });
    }
    if atoms.len() < n {
        return Err(ParseError::new(
            last + 1,
            format!(
                "expected atom {} of {n} on line {}, found end of file",
                atoms.len() + 1,
                n_line + atoms.len() + 1
            ),
        ));
    }
    Geometry::new(comment, atoms).map_err(|e| ParseError::new(n_line, e.to_string()))
}

pub fn write_geometry(g: &Geometry) -> String {
    let mut out = format!("{}\n{}\n", g.comment.replace('\n', " "), g.len());
    for a in g.atoms() {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            a.species,
            fmt_exact(a.mass),
            fmt_exact(a.position[0]),
            fmt_exact(a.position[1]),
            fmt_exact(a.position[2])
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_atom() {
        let g = parse_geometry("single boron\n1\nB 10.811 0.0 0.0 0.0\n").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.atoms()[0].species, "B");
    }

    #[test]
    fn short_body_names_missing_line() {
        let err = parse_geometry("x\n3\nB 10.811 0 0 0\nN 14.007 1 0 0\n").unwrap_err();
        assert_eq!(err.line, 5);
        assert!(err.message.contains("atom 3 of 3"), "{err}");
    }

    #[test]
    fn bad_fields() {
        assert_eq!(parse_geometry("x\n1\nXx 1 0 0 0\n").unwrap_err().line, 3);
        assert!(parse_geometry("x\n1\nB 10.811 0,5 0 0\n")
            .unwrap_err()
            .message
            .contains("'0,5'"));
        assert!(parse_geometry("x\n1\nB 10.811 0 0\n").is_err());
        assert_eq!(parse_geometry("x\ntwo\n").unwrap_err().line, 2);
        assert_eq!(
            parse_geometry("x\n1\nB 10.811 0 0 0\nN 14.007 0 0 0\n")
                .unwrap_err()
                .line,
            4
        );
    }

    #[test]
    fn supercell_order_preserved() {
        let mut text = String::from("pristine 7x7x1\n98\n");
        for i in 0..98 {
            let (sp, m) = if i % 2 == 0 { ("B", 10.811) } else { ("N", 14.007) };
            text.push_str(&format!("{sp} {m} {} {} 0.0\n", i as f64 * 1.25, (i % 7) as f64 * 2.17));
        }
        let g = parse_geometry(&text).unwrap();
        assert_eq!(g.len(), 98);
        assert_eq!(g.atoms()[97].species, "N");
        assert_eq!(parse_geometry(&write_geometry(&g)).unwrap(), g);
    }
}
