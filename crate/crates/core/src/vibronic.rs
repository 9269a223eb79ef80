//! Configuration-coordinate projections, Huang–Rhys factors and the phonon
//! spectral function S(ħω).
//!
//! With mode displacement patterns Δr_k (unit-normalized, Cartesian) the
//! projection of the ground→excited distortion onto mode k is
//!
//! ```text
//! q_k = Σ_{α,i} √m_α (R_e − R_g)_{αi} Δr_{k,αi}        [amu^½·Å]
//! s_k = ω_k q_k² / 2ħ
//! ```
//!
//! and S(ħω) = Σ_k s_k δ(ħω − ħω_k) with each δ realized as a Gaussian.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{Geometry, PhononModeSet};
use crate::physcore::{constants, gaussian_broaden, EnergyGrid, Spectrum, Stick};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeProjection {
    pub mode_index: usize,
    /// amu^½·Å
    pub q: f64,
    /// Partial Huang–Rhys factor, always ≥ 0.
    pub s: f64,
    pub energy_mev: f64,
    pub near_zero: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VibronicSummary {
    /// amu^½·Å
    pub delta_q: f64,
    pub total_hr: f64,
    pub debye_waller: f64,
    pub spectral_function: Spectrum,
    pub projections: Vec<ModeProjection>,
    /// Huang–Rhys weight carried by near-zero modes that were left out.
    pub excluded_hr: f64,
    pub include_near_zero: bool,
}

/// Partial Huang–Rhys factor for a mode of energy `energy_mev` and
/// projection `q` (amu^½·Å): E·q²/(2ħ²) converted to a pure number.
pub fn partial_hr(energy_mev: f64, q: f64) -> f64 {
    0.5 * constants::inverse_length_sq(energy_mev * 1e-3) * q * q
}

fn check_pair(ground: &Geometry, excited: &Geometry) -> Result<()> {
    if ground.len() != excited.len() {
        return Err(Error::validation(format!(
            "ground has {} atoms, excited has {}",
            ground.len(),
            excited.len()
        )));
    }
    for (i, (g, e)) in ground.atoms().iter().zip(excited.atoms()).enumerate() {
        if g.species != e.species {
            return Err(Error::validation(format!(
                "species mismatch at atom {}: '{}' vs '{}'",
                i + 1,
                g.species,
                e.species
            )));
        }
        if (g.mass - e.mass).abs() > 1e-9 * g.mass {
            return Err(Error::validation(format!("mass mismatch at atom {}", i + 1)));
        }
    }
    Ok(())
}

/// Projects the ground→excited displacement onto every mode.
pub fn config_coordinates(ground: &Geometry, excited: &Geometry, modes: &PhononModeSet) -> Result<Vec<ModeProjection>> {
    check_pair(ground, excited)?;
    if modes.n_atoms() != ground.len() {
        return Err(Error::validation(format!(
            "phonon set has {} atoms, geometry has {}",
            modes.n_atoms(),
            ground.len()
        )));
    }
    let weighted: Vec<[f64; 3]> = ground
        .atoms()
        .iter()
        .zip(excited.atoms())
        .map(|(g, e)| {
            let w = libm::sqrt(g.mass);
            [
                w * (e.position[0] - g.position[0]),
                w * (e.position[1] - g.position[1]),
                w * (e.position[2] - g.position[2]),
            ]
        })
        .collect();
    Ok(modes
        .modes()
        .iter()
        .map(|mode| {
            let mut q = 0.0;
            for (d, r) in weighted.iter().zip(&mode.displacement) {
                q += d[0] * r[0] + d[1] * r[1] + d[2] * r[2];
            }
            ModeProjection {
                mode_index: mode.index,
                q,
                s: partial_hr(mode.energy_mev, q),
                energy_mev: mode.energy_mev,
                near_zero: mode.near_zero,
            }
        })
        .collect())
}

/// Mass-weighted distance between the two geometries, amu^½·Å.
pub fn delta_q(ground: &Geometry, excited: &Geometry) -> Result<f64> {
    check_pair(ground, excited)?;
    let mut sum = 0.0;
    for (g, e) in ground.atoms().iter().zip(excited.atoms()) {
        for i in 0..3 {
            let d = e.position[i] - g.position[i];
            sum += g.mass * d * d;
        }
    }
    Ok(libm::sqrt(sum))
}

/// Broadened S(ħω) over the given projections.
pub fn spectral_function(projections: &[ModeProjection], sigma: f64, grid: EnergyGrid) -> Result<Spectrum> {
    let sticks: Vec<Stick> = projections
        .iter()
        .map(|p| Stick {
            energy: p.energy_mev * 1e-3,
            weight: p.s,
        })
        .collect();
    gaussian_broaden(&sticks, sigma, grid)
}

/// Default grid for S(ħω): from 0 to 10σ past the highest mode, with ten
/// points per σ.
pub fn phonon_grid(projections: &[ModeProjection], sigma: f64) -> Result<EnergyGrid> {
    if !(sigma > 0.0) {
        return Err(Error::domain("broadening width must be positive"));
    }
    let top = projections.iter().map(|p| p.energy_mev * 1e-3).fold(0.0, f64::max);
    let e_max = top + 10.0 * sigma;
    let n = libm::ceil(e_max / (0.1 * sigma)) as usize + 1;
    EnergyGrid::new(0.0, e_max, n)
}

/// ΔQ, S = Σ s_k, DW = exp(−S) and S(ħω) in one pass.
///
/// Near-zero modes are skipped unless `include_near_zero`; the Huang–Rhys
/// weight they would have added is kept in `excluded_hr`.
pub fn vibronic_summary(
    ground: &Geometry,
    excited: &Geometry,
    modes: &PhononModeSet,
    sigma: f64,
    grid: Option<EnergyGrid>,
    include_near_zero: bool,
) -> Result<VibronicSummary> {
    let projections = config_coordinates(ground, excited, modes)?;
    let dq = delta_q(ground, excited)?;
    let (active, skipped): (Vec<ModeProjection>, Vec<ModeProjection>) =
        projections.iter().partition(|p| include_near_zero || !p.near_zero);
    let total_hr: f64 = active.iter().map(|p| p.s).sum();
    let excluded_hr: f64 = skipped.iter().map(|p| p.s).sum();
    let grid = match grid {
        Some(g) => g,
        None => phonon_grid(&active, sigma)?,
    };
    let spectral = spectral_function(&active, sigma, grid)?;
    Ok(VibronicSummary {
        delta_q: dq,
        total_hr,
        debye_waller: debye_waller(total_hr),
        spectral_function: spectral,
        projections,
        excluded_hr,
        include_near_zero,
    })
}

pub fn debye_waller(total_hr: f64) -> f64 {
    libm::exp(-total_hr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Atom, PhononMode};
    use alloc::vec;

    fn one_atom(mass: f64, x: f64) -> Geometry {
        Geometry::new(
            "",
            vec![Atom {
                species: "He".into(),
                mass,
                position: [x, 0.0, 0.0],
            }],
        )
        .unwrap()
    }

    fn x_mode(energy: f64) -> PhononModeSet {
        PhononModeSet::new(1, vec![PhononMode::new(1, energy, vec![[1.0, 0.0, 0.0]]).unwrap()]).unwrap()
    }

    #[test]
    fn hand_computed_projection() {
        let p = config_coordinates(&one_atom(4.0, 0.0), &one_atom(4.0, 0.5), &x_mode(100.0)).unwrap();
        assert!((p[0].q - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_displacement_gives_zero() {
        let g = one_atom(4.0, 0.3);
        let p = config_coordinates(&g, &g, &x_mode(100.0)).unwrap();
        assert_eq!(p[0].q, 0.0);
        assert_eq!(p[0].s, 0.0);
        assert_eq!(delta_q(&g, &g).unwrap(), 0.0);
    }

    #[test]
    fn delta_q_unit_mass() {
        assert!((delta_q(&one_atom(1.0, 0.0), &one_atom(1.0, 0.5)).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn partial_hr_independent_units() {
        // s = ω q²/2ħ in SI: q in sqrt(kg)·m, ω in 1/s, ħ in J·s.
        let (e_mev, q) = (160.0_f64, 0.228_586_944_065_573_14_f64);
        let omega = e_mev * 1e-3 * 1.602_176_634e-19 / 1.054_571_817e-34;
        let q_si = q * (1.660_539_066_60e-27_f64).sqrt() * 1e-10;
        let s_si = omega * q_si * q_si / (2.0 * 1.054_571_817e-34);
        assert!((partial_hr(e_mev, q) - s_si).abs() < 1e-8);
        assert!((s_si - 1.0).abs() < 1e-8);
    }

    #[test]
    fn mismatches_rejected() {
        let g = one_atom(4.0, 0.0);
        let two = Geometry::new(
            "",
            vec![
                Atom {
                    species: "He".into(),
                    mass: 4.0,
                    position: [0.0; 3],
                },
                Atom {
                    species: "He".into(),
                    mass: 4.0,
                    position: [1.0, 0.0, 0.0],
                },
            ],
        )
        .unwrap();
        assert!(delta_q(&g, &two).is_err());
        let other = Geometry::new(
            "",
            vec![Atom {
                species: "Li".into(),
                mass: 4.0,
                position: [0.0; 3],
            }],
        )
        .unwrap();
        assert!(matches!(delta_q(&g, &other), Err(Error::Validation(_))));
    }

    #[test]
    fn spectral_function_integrates_to_sum() {
        let proj = [
            ModeProjection {
                mode_index: 1,
                q: 0.0,
                s: 0.3,
                energy_mev: 80.0,
                near_zero: false,
            },
            ModeProjection {
                mode_index: 2,
                q: 0.0,
                s: 0.7,
                energy_mev: 160.0,
                near_zero: false,
            },
        ];
        let grid = phonon_grid(&proj, 0.005).unwrap();
        let s = spectral_function(&proj, 0.005, grid).unwrap();
        assert!((s.integral() - 1.0).abs() < 5e-3);
    }

    #[test]
    fn near_zero_modes_excluded_by_default() {
        let modes = PhononModeSet::new(
            1,
            vec![
                PhononMode::new(1, 0.5, vec![[1.0, 0.0, 0.0]]).unwrap(),
                PhononMode::new(2, 100.0, vec![[1.0, 0.0, 0.0]]).unwrap(),
            ],
        )
        .unwrap();
        let (g, e) = (one_atom(4.0, 0.0), one_atom(4.0, 0.1));
        let sum = vibronic_summary(&g, &e, &modes, 0.005, None, false).unwrap();
        assert!(sum.excluded_hr > 0.0);
        assert!((sum.total_hr - sum.projections[1].s).abs() < 1e-15);
        let all = vibronic_summary(&g, &e, &modes, 0.005, None, true).unwrap();
        assert!((all.total_hr - sum.total_hr - sum.excluded_hr).abs() < 1e-15);
        assert_eq!(all.excluded_hr, 0.0);
    }

    #[test]
    fn dw_published_values() {
        assert!((debye_waller(0.97) - 0.38).abs() <= 0.01);
        assert!((debye_waller(2.94) - 0.05).abs() <= 0.01);
        assert_eq!(debye_waller(0.0), 1.0);
    }
}
