//! `key = value` run configuration with `#` comments. Unknown keys produce
//! warnings; a malformed or out-of-range value is an error naming its key.

use std::collections::BTreeMap;

use defectprint_core::model::{Normalization, RunConfig};

use super::{content_lines, fmt_exact, parse_f64, parse_int, split_key_value};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub config: RunConfig,
    pub warnings: Vec<String>,
}

/// A config value in its natural type, for writing and for JSON metadata.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigValue {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl ConfigValue {
    fn render(&self) -> String {
        match self {
            ConfigValue::Float(v) => fmt_exact(*v),
            ConfigValue::Int(v) => v.to_string(),
            ConfigValue::Bool(v) => v.to_string(),
            ConfigValue::Text(v) => v.clone(),
        }
    }
}

/// Every set key of `cfg` in a fixed order; unset optional values are left out.
pub fn config_entries(cfg: &RunConfig) -> Vec<(&'static str, ConfigValue)> {
    use ConfigValue::*;
    let mut out = vec![
        ("label", Text(cfg.label.clone())),
        ("transition_order", Int(cfg.transition_order.into())),
        ("temperature", Float(cfg.temperature)),
        ("sigma_phonon", Float(cfg.sigma_phonon)),
        ("gamma_damping", Float(cfg.gamma_damping)),
        ("time_step", Float(cfg.time_step)),
        ("n_time_samples", Int(cfg.n_time_samples as u64)),
        ("refractive_index", Float(cfg.refractive_index)),
        ("purcell_factor", Float(cfg.purcell_factor)),
        ("degeneracy_g", Int(cfg.degeneracy_g.into())),
        ("max_phonon_quanta", Int(cfg.max_phonon_quanta.into())),
        ("crystal_axis_angle", Float(cfg.crystal_axis_angle)),
        ("include_near_zero_modes", Bool(cfg.include_near_zero_modes)),
        ("pl_window_below", Float(cfg.pl_window_below)),
        ("pl_window_above", Float(cfg.pl_window_above)),
        ("pl_normalization", Text(cfg.pl_normalization.as_str().to_string())),
    ];
    for (k, v) in [
        ("zpl_energy", cfg.zpl_energy),
        ("w_if", cfg.w_if),
        ("effective_mode_initial", cfg.effective_mode_initial),
        ("effective_mode_final", cfg.effective_mode_final),
        ("relaxation_energy", cfg.relaxation_energy),
        ("energy_singlet", cfg.energy_singlet),
        ("energy_doublet", cfg.energy_doublet),
        ("energy_triplet", cfg.energy_triplet),
    ] {
        if let Some(v) = v {
            out.push((k, Float(v)));
        }
    }
    out
}

fn set(cfg: &mut RunConfig, key: &str, value: &str, line: usize) -> Result<bool, ParseError> {
    let f = |v: &str| parse_f64(v, line, key);
    match key {
        "label" => {
            if value.is_empty() {
                return Err(ParseError::new(line, "label: value must not be empty"));
            }
            cfg.label = value.to_string();
        }
        "transition_order" => cfg.transition_order = parse_int(value, line, key)?,
        "temperature" => cfg.temperature = f(value)?,
        "sigma_phonon" => cfg.sigma_phonon = f(value)?,
        "gamma_damping" => cfg.gamma_damping = f(value)?,
        "time_step" => cfg.time_step = f(value)?,
        "n_time_samples" => cfg.n_time_samples = parse_int(value, line, key)?,
        "zpl_energy" => cfg.zpl_energy = Some(f(value)?),
        "refractive_index" => cfg.refractive_index = f(value)?,
        "purcell_factor" => cfg.purcell_factor = f(value)?,
        "degeneracy_g" => cfg.degeneracy_g = parse_int(value, line, key)?,
        "w_if" => cfg.w_if = Some(f(value)?),
        "effective_mode_initial" => cfg.effective_mode_initial = Some(f(value)?),
        "effective_mode_final" => cfg.effective_mode_final = Some(f(value)?),
        "relaxation_energy" => cfg.relaxation_energy = Some(f(value)?),
        "max_phonon_quanta" => cfg.max_phonon_quanta = parse_int(value, line, key)?,
        "crystal_axis_angle" => cfg.crystal_axis_angle = f(value)?,
        "include_near_zero_modes" => {
            cfg.include_near_zero_modes = match value {
                "true" => true,
                "false" => false,
                _ => {
                    return Err(ParseError::new(
                        line,
                        format!("{key}: expected true or false, found '{value}'"),
                    ))
                }
            }
        }
        "pl_window_below" => cfg.pl_window_below = f(value)?,
        "pl_window_above" => cfg.pl_window_above = f(value)?,
        "pl_normalization" => {
            cfg.pl_normalization = Normalization::parse(value)
                .ok_or_else(|| ParseError::new(line, format!("{key}: expected 'peak' or 'area', found '{value}'")))?
        }
        "energy_singlet" => cfg.energy_singlet = Some(f(value)?),
        "energy_doublet" => cfg.energy_doublet = Some(f(value)?),
        "energy_triplet" => cfg.energy_triplet = Some(f(value)?),
        _ => return Ok(false),
    }
    Ok(true)
}

pub fn parse_config(text: &str) -> Result<ParsedConfig, ParseError> {
    let mut config = RunConfig::default();
    let mut warnings = Vec::new();
    let mut lines_of: BTreeMap<String, usize> = BTreeMap::new();
    for (number, line) in content_lines(text) {
        let (raw_key, value) = split_key_value(line, number)?;
        // W_if is written with a capital in the literature.
        let key = if raw_key == "W_if" { "w_if" } else { raw_key };
        if let Some(prev) = lines_of.get(key) {
            return Err(ParseError::new(
                number,
                format!("duplicate key '{key}' (first on line {prev})"),
            ));
        }
        if set(&mut config, key, value, number)? {
            lines_of.insert(key.to_string(), number);
        } else {
            warnings.push(format!("line {number}: unknown key '{raw_key}' ignored"));
        }
    }
    config.validate().map_err(|e| {
        let msg = e.to_string();
        let line = lines_of
            .iter()
            .filter(|(k, _)| msg.contains(k.as_str()))
            .max_by_key(|(k, _)| k.len())
            .map(|(_, &l)| l)
            .unwrap_or(1);
        ParseError::new(line, msg)
    })?;
    Ok(ParsedConfig { config, warnings })
}

pub fn write_config(cfg: &RunConfig) -> String {
    config_entries(cfg)
        .into_iter()
        .map(|(k, v)| format!("{k} = {}\n", v.render()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_default() {
        let p = parse_config("").unwrap();
        assert_eq!(p.config, RunConfig::default());
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn single_override() {
        let p = parse_config("# room temperature\ntemperature = 300\n").unwrap();
        assert_eq!(p.config, RunConfig::default());
        let p = parse_config("temperature = 4.2  # cryostat\n").unwrap();
        assert_eq!(
            p.config,
            RunConfig {
                temperature: 4.2,
                ..RunConfig::default()
            }
        );
    }

    #[test]
    fn unknown_key_warns() {
        let p = parse_config("colour = blue\n").unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].contains("line 1"));
    }

    #[test]
    fn invalid_value_names_key() {
        let e = parse_config("\nsigma_phonon = abc\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("sigma_phonon"));
        let e = parse_config("temperature = 1\nn_time_samples = 1000\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("n_time_samples"));
        assert!(parse_config("temperature = -3\n").is_err());
    }

    #[test]
    fn full_round_trip() {
        let cfg = RunConfig {
            label: "C2C2".into(),
            zpl_energy: Some(2.16),
            w_if: Some(0.0123),
            effective_mode_initial: Some(38.5),
            effective_mode_final: Some(36.25),
            relaxation_energy: Some(0.17),
            energy_singlet: Some(-812.5),
            energy_triplet: Some(-812.1),
            include_near_zero_modes: true,
            pl_normalization: Normalization::Area,
            ..RunConfig::default()
        };
        assert_eq!(parse_config(&write_config(&cfg)).unwrap().config, cfg);
    }
}
