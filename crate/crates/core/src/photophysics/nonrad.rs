//! Non-radiative decay in the static-coupling, one-dimensional phonon
//! approximation:
//!
//! ```text
//! Γ_NR = (2π/ħ)·g·|W_if|²·X_if(T)
//! X_if = Σ_{n,m} p_n |⟨χ_fm|Q − Q_a|χ_in⟩|² δ(m·ħω_f − n·ħω_i − ΔE)
//! ```
//!
//! ΔE > 0 is the electronic energy released, p_n the Boltzmann occupation of
//! the initial oscillator and Q_a its equilibrium. δ is a Gaussian.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::overlap::{OscillatorPair, OverlapTable};
use crate::error::{Error, Result};
use crate::model::RunConfig;
use crate::physcore::constants::{AMU_A2_FS2_TO_EV, BOLTZMANN_EV_K, HBAR_EV_FS, HBAR_EV_S};

/// Largest admissible Boltzmann weight of the highest initial level.
pub const BOLTZMANN_TAIL_LIMIT: f64 = 1e-6;
/// Largest admissible missing fraction of Σ_m |⟨m|Q−Q_a|n⟩|².
pub const FC_SATURATION_LIMIT: f64 = 1e-4;
/// Final-state ladder beyond which the calculation is refused.
pub const MAX_FINAL_QUANTA: usize = 6000;

/// Where the effective mode energies came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ModeSource {
    Configured,
    /// ω = √(2·E_relax/ΔQ²)
    FromRelaxationEnergy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonradiativeRate {
    /// 1/s
    pub rate: f64,
    /// amu·Å²/eV
    pub x_if: f64,
    /// eV
    pub initial_quantum: f64,
    /// eV
    pub final_quantum: f64,
    pub mode_source: ModeSource,
    pub initial_levels: usize,
    pub final_levels: usize,
    pub boltzmann_tail: f64,
    pub fc_deficit: f64,
    pub warnings: Vec<String>,
}

/// Occupations (1 − e^{−x})·e^{−n·x}, x = ħω/k_BT, for n = 0..=n_max.
pub fn boltzmann_weights(quantum: f64, temperature: f64, n_max: usize) -> Vec<f64> {
    if temperature == 0.0 {
        let mut w = alloc::vec![0.0; n_max + 1];
        w[0] = 1.0;
        return w;
    }
    let x = quantum / (BOLTZMANN_EV_K * temperature);
    let z = 1.0 - libm::exp(-x);
    (0..=n_max).map(|n| z * libm::exp(-(n as f64) * x)).collect()
}

fn gaussian(x: f64, sigma: f64) -> f64 {
    libm::exp(-0.5 * (x / sigma) * (x / sigma)) / (sigma * libm::sqrt(2.0 * core::f64::consts::PI))
}

/// Effective initial/final quanta (eV) from the configuration, or derived
/// from the relaxation energy and ΔQ.
pub fn effective_quanta(cfg: &RunConfig, delta_q: f64) -> Result<(f64, f64, ModeSource)> {
    match (cfg.effective_mode_initial, cfg.effective_mode_final) {
        (Some(i), Some(f)) => Ok((i * 1e-3, f * 1e-3, ModeSource::Configured)),
        (Some(i), None) => Ok((i * 1e-3, i * 1e-3, ModeSource::Configured)),
        (None, Some(f)) => Ok((f * 1e-3, f * 1e-3, ModeSource::Configured)),
        (None, None) => {
            let relax = cfg.relaxation_energy.ok_or_else(|| {
                Error::validation(
                    "effective_mode_initial/final or relaxation_energy is required for the non-radiative rate",
                )
            })?;
            if !(delta_q > 0.0) {
                return Err(Error::domain("cannot derive an effective mode from ΔQ = 0"));
            }
            // ω² = 2E/ΔQ² in eV/(amu·Å²) → 1/fs² after unit conversion.
            let omega = libm::sqrt(2.0 * relax / (delta_q * delta_q * AMU_A2_FS2_TO_EV));
            let quantum = HBAR_EV_FS * omega;
            Ok((quantum, quantum, ModeSource::FromRelaxationEnergy))
        }
    }
}

/// Γ_NR for a transition releasing `energy_gap` (eV) along a single mode
/// displaced by `delta_q`. Returns 0 without further work when W_if = 0.
pub fn nonradiative_rate(cfg: &RunConfig, delta_q: f64, energy_gap: f64) -> Result<NonradiativeRate> {
    let w_if = cfg
        .w_if
        .ok_or_else(|| Error::validation("w_if is required for the non-radiative rate"))?;
    if !(energy_gap > 0.0) || !energy_gap.is_finite() {
        return Err(Error::domain("energy gap must be positive"));
    }
    if !(cfg.temperature >= 0.0) {
        return Err(Error::domain("temperature must be non-negative"));
    }
    let (hw_i, hw_f, mode_source) = effective_quanta(cfg, delta_q)?;
    let sigma = cfg.sigma_phonon;
    let n_max = cfg.max_phonon_quanta as usize;

    let weights = boltzmann_weights(hw_i, cfg.temperature, n_max);
    let boltzmann_tail = weights[n_max];
    if n_max > 0 && boltzmann_tail >= BOLTZMANN_TAIL_LIMIT {
        let missing = if cfg.temperature == 0.0 {
            0.0
        } else {
            libm::exp(-((n_max + 1) as f64) * hw_i / (BOLTZMANN_EV_K * cfg.temperature))
        };
        return Err(Error::non_convergence(format!(
            "initial-level occupation not converged: p({n_max}) = {boltzmann_tail:.3e}, \
             tail mass beyond = {missing:.3e}; raise max_phonon_quanta"
        )));
    }

    let top_energy = n_max as f64 * hw_i + energy_gap + 6.0 * sigma;
    let m_needed = libm::ceil(top_energy / hw_f) as usize + n_max;
    if m_needed > MAX_FINAL_QUANTA {
        return Err(Error::non_convergence(format!(
            "{m_needed} final-state quanta needed (limit {MAX_FINAL_QUANTA})"
        )));
    }

    if w_if == 0.0 {
        return Ok(NonradiativeRate {
            rate: 0.0,
            x_if: 0.0,
            initial_quantum: hw_i,
            final_quantum: hw_f,
            mode_source,
            initial_levels: n_max + 1,
            final_levels: m_needed + 1,
            boltzmann_tail,
            fc_deficit: 0.0,
            warnings: Vec::new(),
        });
    }

    let pair = OscillatorPair {
        initial_quantum: hw_i,
        final_quantum: hw_f,
        displacement: delta_q,
    };
    let table = OverlapTable::new(&pair, m_needed, n_max);

    let mut x_if = 0.0;
    let mut fc_deficit: f64 = 0.0;
    for (n, &p) in weights.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let mut sum_sq = 0.0;
        let mut partial = 0.0;
        for m in 0..=m_needed {
            let elem = table.position(m, n);
            let sq = elem * elem;
            sum_sq += sq;
            let mismatch = m as f64 * hw_f - n as f64 * hw_i - energy_gap;
            partial += sq * gaussian(mismatch, sigma);
        }
        x_if += p * partial;
        let deficit = 1.0 - sum_sq / table.position_norm_sq(n);
        if p > BOLTZMANN_TAIL_LIMIT {
            fc_deficit = fc_deficit.max(deficit.abs());
        }
    }
    if !x_if.is_finite() {
        return Err(Error::non_convergence("Franck–Condon sum overflowed"));
    }
    if fc_deficit > FC_SATURATION_LIMIT {
        return Err(Error::non_convergence(format!(
            "Franck–Condon sum not saturated: missing fraction {fc_deficit:.3e} with {} final quanta; \
             raise max_phonon_quanta",
            m_needed
        )));
    }

    let mut warnings = Vec::new();
    if sigma < 0.1 * hw_f {
        warnings.push(format!(
            "delta width {sigma} eV is narrow against the final quantum {hw_f:.4} eV; \
             the rate depends on level alignment"
        ));
    }
    let rate = 2.0 * core::f64::consts::PI / HBAR_EV_S * f64::from(cfg.degeneracy_g) * w_if * w_if * x_if;
    Ok(NonradiativeRate {
        rate,
        x_if,
        initial_quantum: hw_i,
        final_quantum: hw_f,
        mode_source,
        initial_levels: n_max + 1,
        final_levels: m_needed + 1,
        boltzmann_tail,
        fc_deficit,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            w_if: Some(0.05),
            effective_mode_initial: Some(40.0),
            effective_mode_final: Some(35.0),
            sigma_phonon: 0.02,
            ..RunConfig::default()
        }
    }

    #[test]
    fn zero_coupling_zero_rate() {
        let c = RunConfig {
            w_if: Some(0.0),
            ..cfg()
        };
        assert_eq!(nonradiative_rate(&c, 0.5, 1.0).unwrap().rate, 0.0);
    }

    #[test]
    fn missing_inputs_rejected() {
        let c = RunConfig { w_if: None, ..cfg() };
        assert!(nonradiative_rate(&c, 0.5, 1.0).is_err());
        let c = RunConfig {
            effective_mode_initial: None,
            effective_mode_final: None,
            ..cfg()
        };
        assert!(matches!(nonradiative_rate(&c, 0.5, 1.0), Err(Error::Validation(_))));
    }

    #[test]
    fn zero_temperature_uses_ground_level_only() {
        let c = RunConfig {
            temperature: 0.0,
            ..cfg()
        };
        let r = nonradiative_rate(&c, 0.6, 0.8).unwrap();
        let pair = OscillatorPair {
            initial_quantum: 0.040,
            final_quantum: 0.035,
            displacement: 0.6,
        };
        let table = OverlapTable::new(&pair, r.final_levels - 1, c.max_phonon_quanta as usize);
        let x: f64 = (0..r.final_levels)
            .map(|m| table.position(m, 0).powi(2) * gaussian(m as f64 * 0.035 - 0.8, 0.02))
            .sum();
        assert!((r.x_if - x).abs() <= 1e-12 * x);
    }

    #[test]
    fn unconverged_boltzmann_sum_reported() {
        let c = RunConfig {
            max_phonon_quanta: 2,
            temperature: 3000.0,
            ..cfg()
        };
        assert!(matches!(nonradiative_rate(&c, 0.5, 1.0), Err(Error::NonConvergence(_))));
    }

    #[test]
    fn relaxation_energy_route() {
        let c = RunConfig {
            effective_mode_initial: None,
            effective_mode_final: None,
            relaxation_energy: Some(0.2),
            ..cfg()
        };
        let (i, f, src) = effective_quanta(&c, 0.5).unwrap();
        assert_eq!(src, ModeSource::FromRelaxationEnergy);
        assert_eq!(i, f);
        // E_relax = ½ω²ΔQ² ⇒ S = E_relax/ħω.
        let s = 0.5 * crate::physcore::constants::inverse_length_sq(i) * 0.25;
        assert!((s - 0.2 / i).abs() < 1e-12);
    }

    #[test]
    fn rate_scales_with_degeneracy_and_coupling() {
        let base = nonradiative_rate(&cfg(), 0.6, 0.8).unwrap().rate;
        let g2 = nonradiative_rate(
            &RunConfig {
                degeneracy_g: 2,
                ..cfg()
            },
            0.6,
            0.8,
        )
        .unwrap()
        .rate;
        let w2 = nonradiative_rate(
            &RunConfig {
                w_if: Some(0.1),
                ..cfg()
            },
            0.6,
            0.8,
        )
        .unwrap()
        .rate;
        assert!(base > 0.0);
        assert!((g2 / base - 2.0).abs() < 1e-12);
        assert!((w2 / base - 4.0).abs() < 1e-12);
    }
}
