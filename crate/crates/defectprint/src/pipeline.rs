//! The full fingerprint pipeline: ingest → vibronic → lineshape → dipoles →
//! rates → spin selection → assembly.

use std::path::{Path, PathBuf};

use defectprint_core::fingerprint::Fingerprint;
use defectprint_core::lineshape::{pl_spectrum, zero_phonon_fraction, LineshapeParams, PLSpectrum};
use defectprint_core::model::{DipoleRecord, Geometry, PhononModeSet, RunConfig};
use defectprint_core::photophysics::{
    nonradiative_rate, radiative_rate, select_stable_configuration, transition_dipole, DipoleMoment, Multiplicity,
    NonradiativeRate, OdmrOutlook, RateReport, SpinConfiguration,
};
use defectprint_core::physcore::ev_to_nm;
use defectprint_core::vibronic::{vibronic_summary, VibronicSummary};
use defectprint_core::Error as CoreError;

use crate::error::{AppError, Result, Stage};
use crate::ingest::{parse_config, parse_dipole, parse_geometry, parse_phonons, read_with, ParsedConfig};

/// Half width of the window used to report the zero-phonon weight, eV.
pub const ZPL_WINDOW: f64 = 0.02;

#[derive(Debug, Clone, Default)]
pub struct InputPaths {
    pub config: Option<PathBuf>,
    pub ground: Option<PathBuf>,
    pub excited: Option<PathBuf>,
    pub phonons: Option<PathBuf>,
    pub dipole_excitation: Option<PathBuf>,
    pub dipole_emission: Option<PathBuf>,
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| AppError::Input(format!("missing required --{flag}")))
}

pub fn load_config(paths: &InputPaths) -> Result<ParsedConfig> {
    match &paths.config {
        Some(p) => read_with(p, parse_config),
        None => Ok(ParsedConfig {
            config: RunConfig::default(),
            warnings: Vec::new(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Structures {
    pub ground: Geometry,
    pub excited: Geometry,
    pub phonons: PhononModeSet,
}

pub fn load_structures(paths: &InputPaths) -> Result<Structures> {
    let ground = read_with(required(&paths.ground, "ground")?, parse_geometry)?;
    let excited = read_with(required(&paths.excited, "excited")?, parse_geometry)?;
    if ground.len() != excited.len() {
        return Err(AppError::Stage {
            stage: Stage::Ingest,
            source: CoreError::Validation(format!(
                "ground geometry has {} atoms, excited geometry has {}",
                ground.len(),
                excited.len()
            )),
        });
    }
    let phonons = read_with(required(&paths.phonons, "phonons")?, |t| {
        parse_phonons(t, Some(ground.len()))
    })?;
    Ok(Structures {
        ground,
        excited,
        phonons,
    })
}

pub fn load_dipole(path: &Path) -> Result<DipoleRecord> {
    read_with(path, parse_dipole)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub structures: Structures,
    pub excitation: DipoleRecord,
    pub emission: DipoleRecord,
}

pub fn load_dataset(paths: &InputPaths) -> Result<Dataset> {
    Ok(Dataset {
        structures: load_structures(paths)?,
        excitation: load_dipole(required(&paths.dipole_excitation, "dipole-excitation")?)?,
        emission: load_dipole(required(&paths.dipole_emission, "dipole-emission")?)?,
    })
}

pub fn zpl_energy(cfg: &RunConfig) -> Result<f64> {
    cfg.zpl_energy
        .ok_or_else(|| AppError::Input("zpl_energy must be set in the configuration".into()))
}

pub fn run_vibronic(s: &Structures, cfg: &RunConfig) -> Result<VibronicSummary> {
    vibronic_summary(
        &s.ground,
        &s.excited,
        &s.phonons,
        cfg.sigma_phonon,
        None,
        cfg.include_near_zero_modes,
    )
    .map_err(AppError::stage(Stage::Vibronic))
}

pub fn run_lineshape(v: &VibronicSummary, cfg: &RunConfig) -> Result<PLSpectrum> {
    let params = LineshapeParams {
        zpl_energy: zpl_energy(cfg)?,
        gamma: cfg.gamma_damping,
        dt: cfg.time_step,
        n_time_samples: cfg.n_time_samples,
        window_below: cfg.pl_window_below,
        window_above: cfg.pl_window_above,
        normalization: cfg.pl_normalization,
    };
    pl_spectrum(&v.spectral_function, &params).map_err(AppError::stage(Stage::Lineshape))
}

/// Γ_R from the emission dipole, Γ_NR when W_if is configured.
pub fn run_rates(
    emission: &DipoleMoment,
    delta_q: f64,
    cfg: &RunConfig,
) -> Result<(RateReport, Option<NonradiativeRate>)> {
    let e0 = zpl_energy(cfg)?;
    let bare = radiative_rate(e0, emission.mu_sq, cfg.refractive_index).map_err(AppError::stage(Stage::Rates))?;
    let nonrad = match cfg.w_if {
        Some(_) => Some(nonradiative_rate(cfg, delta_q, e0).map_err(AppError::stage(Stage::NonRadiative))?),
        None => None,
    };
    let report = RateReport::new(bare, nonrad.as_ref().map(|n| n.rate), cfg.purcell_factor)
        .map_err(AppError::stage(Stage::Rates))?;
    Ok((report, nonrad))
}

pub fn run_spin(cfg: &RunConfig) -> Result<Option<(Multiplicity, OdmrOutlook)>> {
    let configs: Vec<SpinConfiguration> = [
        (Multiplicity::Singlet, cfg.energy_singlet),
        (Multiplicity::Doublet, cfg.energy_doublet),
        (Multiplicity::Triplet, cfg.energy_triplet),
    ]
    .into_iter()
    .filter_map(|(multiplicity, e)| {
        e.map(|total_energy| SpinConfiguration {
            multiplicity,
            total_energy,
        })
    })
    .collect();
    if configs.is_empty() {
        return Ok(None);
    }
    let (best, odmr) = select_stable_configuration(&configs).map_err(AppError::stage(Stage::Spin))?;
    Ok(Some((best.multiplicity, odmr)))
}

/// Everything computed on the way to a fingerprint.
#[derive(Debug, Clone)]
pub struct FingerprintRun {
    pub fingerprint: Fingerprint,
    pub config: RunConfig,
    pub vibronic: VibronicSummary,
    pub spectrum: PLSpectrum,
    pub zpl_weight: f64,
    pub excitation: DipoleMoment,
    pub emission: DipoleMoment,
    pub rates: RateReport,
    pub nonradiative: Option<NonradiativeRate>,
    pub warnings: Vec<String>,
}

pub fn run_fingerprint(data: &Dataset, parsed: &ParsedConfig) -> Result<FingerprintRun> {
    let cfg = &parsed.config;
    let e0 = zpl_energy(cfg)?;
    let mut warnings = parsed.warnings.clone();

    let vibronic = run_vibronic(&data.structures, cfg)?;
    if vibronic.excluded_hr > 0.0 {
        warnings.push(format!(
            "near-zero modes excluded, carrying HR {:.3e}",
            vibronic.excluded_hr
        ));
    }
    let spectrum = run_lineshape(&vibronic, cfg)?;
    warnings.extend(spectrum.warnings.iter().cloned());
    let zpl_weight = zero_phonon_fraction(&spectrum, ZPL_WINDOW);

    let axis = cfg.crystal_axis_angle;
    let excitation = transition_dipole(&data.excitation, axis).map_err(AppError::stage(Stage::Dipole))?;
    let emission = transition_dipole(&data.emission, axis).map_err(AppError::stage(Stage::Dipole))?;

    let (rates, nonradiative) = run_rates(&emission, vibronic.delta_q, cfg)?;
    if let Some(nr) = &nonradiative {
        warnings.extend(nr.warnings.iter().cloned());
    }
    let spin = run_spin(cfg)?;

    let fingerprint = Fingerprint {
        defect_label: cfg.label.clone(),
        transition_order: cfg.transition_order,
        stable_multiplicity: spin.map(|s| s.0),
        spin_transition: format!("{0}-{0}", data.emission.spin.as_str()),
        zpl_nm: ev_to_nm(e0).map_err(AppError::stage(Stage::Assembly))?,
        e0_ev: e0,
        delta_q: vibronic.delta_q,
        hr: vibronic.total_hr,
        dw: vibronic.debye_waller,
        excitation_angle_deg: excitation.polarization,
        excitation_visibility: excitation.in_plane_visibility,
        emission_angle_deg: emission.polarization,
        emission_visibility: emission.in_plane_visibility,
        mu_sq_debye2: emission.mu_sq,
        gamma_r: rates.gamma_r,
        tau_r_ns: rates.tau_r_ns,
        gamma_nr: rates.gamma_nr,
        tau_nr_ns: rates.tau_nr_ns,
        eta_pct: rates.eta.map(|e| 100.0 * e),
        odmr: spin.map(|s| s.1),
    };
    fingerprint
        .check_consistency()
        .map_err(AppError::stage(Stage::Assembly))?;

    Ok(FingerprintRun {
        fingerprint,
        config: cfg.clone(),
        vibronic,
        spectrum,
        zpl_weight,
        excitation,
        emission,
        rates,
        nonradiative,
        warnings,
    })
}

/// Loads every input named in `paths` and runs the pipeline.
pub fn fingerprint_from_paths(paths: &InputPaths) -> Result<FingerprintRun> {
    let parsed = load_config(paths)?;
    let data = load_dataset(paths)?;
    run_fingerprint(&data, &parsed)
}
