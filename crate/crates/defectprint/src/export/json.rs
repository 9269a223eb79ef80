use defectprint_core::fingerprint::Fingerprint;
use defectprint_core::lineshape::node_spacing;
use defectprint_core::photophysics::DipoleMoment;
use defectprint_core::physcore::ev_to_nm;
use serde_json::{json, Map, Value};

use super::round_sig;
use crate::error::{AppError, Result};
use crate::ingest::config::{config_entries, ConfigValue};
use crate::pipeline::{FingerprintRun, ZPL_WINDOW};

/// Rounds every float to six significant digits and pretty-prints with
/// sorted keys and a trailing newline.
pub fn to_canonical_json(value: &Value) -> String {
    fn round(v: &Value) -> Value {
        match v {
            Value::Number(n) if n.is_f64() => n
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Value::Array(a) => Value::Array(a.iter().map(round).collect()),
            Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round(v))).collect()),
            other => other.clone(),
        }
    }
    let mut s = serde_json::to_string_pretty(&round(value)).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn dipole(d: &DipoleMoment) -> Value {
    json!({
        "mu_debye": d.mu.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
        "mu_sq_debye2": d.mu_sq,
        "in_plane_visibility": d.in_plane_visibility,
        "polarization_deg": d.polarization,
    })
}

fn check(value: f64, expected: f64, tolerance: f64) -> Value {
    json!({
        "value": value,
        "expected": expected,
        "tolerance": tolerance,
        "pass": (value - expected).abs() <= tolerance,
    })
}

fn checks(fp: &Fingerprint) -> Value {
    use defectprint_core::fingerprint::{DW_TOLERANCE, ETA_TOLERANCE_PP, RECIPROCAL_TOLERANCE, ZPL_TOLERANCE_NM};
    let mut m = Map::new();
    let zpl = ev_to_nm(fp.e0_ev).map(f64::round).unwrap_or(f64::NAN);
    m.insert("zpl_nm_vs_e0".into(), check(fp.zpl_nm, zpl, ZPL_TOLERANCE_NM));
    m.insert("dw_vs_hr".into(), check(fp.dw, (-fp.hr).exp(), DW_TOLERANCE));
    m.insert(
        "tau_r_gamma_r".into(),
        check(fp.tau_r_ns * fp.gamma_r / 1e9, 1.0, RECIPROCAL_TOLERANCE),
    );
    if let (Some(t), Some(g)) = (fp.tau_nr_ns, fp.gamma_nr) {
        m.insert("tau_nr_gamma_nr".into(), check(t * g / 1e9, 1.0, RECIPROCAL_TOLERANCE));
    }
    if let (Some(eta), Some(nr)) = (fp.eta_pct, fp.gamma_nr) {
        m.insert(
            "eta_vs_rates".into(),
            check(eta, 100.0 * fp.gamma_r / (fp.gamma_r + nr), ETA_TOLERANCE_PP),
        );
    }
    Value::Object(m)
}

fn config_value(v: &ConfigValue) -> Value {
    match v {
        ConfigValue::Float(x) => json!(x),
        ConfigValue::Int(x) => json!(x),
        ConfigValue::Bool(x) => json!(x),
        ConfigValue::Text(x) => json!(x),
    }
}

/// The fingerprint artifact: the record itself plus everything needed to
/// reproduce and audit it.
pub fn fingerprint_json(run: &FingerprintRun) -> String {
    let fp = &run.fingerprint;
    let cfg = &run.config;
    let config: Map<String, Value> = config_entries(cfg)
        .iter()
        .map(|(k, v)| (k.to_string(), config_value(v)))
        .collect();
    let modes: Vec<Value> = run
        .vibronic
        .projections
        .iter()
        .map(|p| json!({"index": p.mode_index, "energy_mev": p.energy_mev, "q": p.q, "s": p.s, "near_zero": p.near_zero}))
        .collect();
    let nonrad = run.nonradiative.as_ref().map_or(Value::Null, |n| {
        json!({
            "x_if_amu_a2_per_ev": n.x_if,
            "initial_quantum_ev": n.initial_quantum,
            "final_quantum_ev": n.final_quantum,
            "mode_source": n.mode_source,
            "initial_levels": n.initial_levels,
            "final_levels": n.final_levels,
            "boltzmann_tail": n.boltzmann_tail,
            "fc_deficit": n.fc_deficit,
        })
    });
    let metadata = json!({
        "tool": "defectprint",
        "version": env!("CARGO_PKG_VERSION"),
        "core_version": defectprint_core::VERSION,
        "config": config,
        "conventions": {
            "units": "energies eV, delta_q amu^1/2 Angstrom, dipoles Debye, rates 1/s, lifetimes ns",
            "in_plane_visibility": "(|mu_x|^2 + |mu_y|^2) / |mu|^2",
            "polarization_angle": "angle of the in-plane polarization (dipole + 90 deg) from the nearest crystal axis, in [0, 30] deg",
            "pl_energy_axis": "emission energy; phonon sideband below the ZPL",
            "gamma_damping_per_fs": cfg.gamma_damping,
            "nonradiative_energy_gap_ev": fp.e0_ev,
        },
        "vibronic": {
            "include_near_zero_modes": run.vibronic.include_near_zero,
            "excluded_hr": run.vibronic.excluded_hr,
            "modes": modes,
        },
        "lineshape": {
            "grid_points": run.spectrum.grid.len(),
            "node_spacing_ev": node_spacing(cfg.time_step, cfg.n_time_samples),
            "normalization": cfg.pl_normalization.as_str(),
            "scale_c": run.spectrum.scale_c,
            "zpl_weight": run.zpl_weight,
            "zpl_weight_window_ev": ZPL_WINDOW,
        },
        "dipoles": {
            "excitation": dipole(&run.excitation),
            "emission": dipole(&run.emission),
        },
        "rates": {
            "purcell_factor": run.rates.purcell_applied,
            "total_lifetime_ns": run.rates.total_lifetime_ns(),
        },
        "nonradiative": nonrad,
        "checks": checks(fp),
        "warnings": run.warnings,
    });
    let fingerprint = serde_json::to_value(fp).expect("fingerprint serializes");
    to_canonical_json(&json!({ "fingerprint": fingerprint, "metadata": metadata }))
}

/// Reads a fingerprint artifact (or a bare fingerprint object).
pub fn parse_fingerprint_json(text: &str) -> Result<Fingerprint> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| AppError::Input(format!("line {}: invalid JSON: {e}", e.line().max(1))))?;
    let inner = value.get("fingerprint").cloned().unwrap_or(value);
    serde_json::from_value(inner).map_err(|e| AppError::Input(format!("not a fingerprint: {e}")))
}
