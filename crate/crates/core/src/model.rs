//! Input domain objects: geometries, phonon modes, dipole records and the
//! run configuration. Constructors validate; parsing lives elsewhere.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::elements;
use crate::error::{Error, Result};

/// Modes below this energy (meV) are treated as translational/rotational.
pub const NEAR_ZERO_MODE_MEV: f64 = 1.0;

/// Eigenvector norms further than this from 1 are rejected.
pub const NORM_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub species: String,
    /// amu
    pub mass: f64,
    /// Å
    pub position: [f64; 3],
}

/// Atomic structure of one electronic state. Atom order is significant:
/// ground and excited geometries are matched index by index.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub comment: String,
    atoms: Vec<Atom>,
}

impl Geometry {
    pub fn new(comment: impl Into<String>, atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::validation("geometry needs at least one atom"));
        }
        for (i, a) in atoms.iter().enumerate() {
            if !elements::is_element(&a.species) {
                return Err(Error::validation(format!(
                    "atom {}: unknown element symbol '{}'",
                    i + 1,
                    a.species
                )));
            }
            if !(a.mass > 0.0) || !a.mass.is_finite() {
                return Err(Error::validation(format!("atom {}: mass must be positive", i + 1)));
            }
            if a.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::validation(format!("atom {}: non-finite position", i + 1)));
            }
        }
        Ok(Self {
            comment: comment.into(),
            atoms,
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Copy with every mass multiplied by `factor`.
    pub fn with_scaled_masses(&self, factor: f64) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                mass: a.mass * factor,
                ..a.clone()
            })
            .collect();
        Self::new(self.comment.clone(), atoms)
    }
}

/// One vibrational mode: energy and unit-normalized Cartesian displacement
/// pattern (not mass-weighted).
#[derive(Debug, Clone, PartialEq)]
pub struct PhononMode {
    /// 1-based label as it appears in the input.
    pub index: usize,
    pub energy_mev: f64,
    pub displacement: Vec<[f64; 3]>,
    pub near_zero: bool,
}

impl PhononMode {
    /// Validates energy and normalization. Vectors within
    /// [`NORM_TOLERANCE`] of unit norm are rescaled to unit norm.
    pub fn new(index: usize, energy_mev: f64, mut displacement: Vec<[f64; 3]>) -> Result<Self> {
        if !energy_mev.is_finite() || energy_mev < 0.0 {
            return Err(Error::validation(format!(
                "mode {index}: energy must be non-negative, got {energy_mev} meV"
            )));
        }
        if displacement.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::validation(format!("mode {index}: non-finite displacement")));
        }
        let norm_sq: f64 = displacement.iter().flatten().map(|x| x * x).sum();
        let norm = libm::sqrt(norm_sq);
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::validation(format!(
                "mode {index}: eigenvector norm² is {norm_sq:.6}, expected 1"
            )));
        }
        if (norm_sq - 1.0).abs() > 1e-12 {
            for r in displacement.iter_mut() {
                for x in r.iter_mut() {
                    *x /= norm;
                }
            }
        }
        Ok(Self {
            index,
            energy_mev,
            displacement,
            near_zero: energy_mev < NEAR_ZERO_MODE_MEV,
        })
    }

    pub fn energy_ev(&self) -> f64 {
        self.energy_mev * 1e-3
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhononModeSet {
    n_atoms: usize,
    modes: Vec<PhononMode>,
}

impl PhononModeSet {
    pub fn new(n_atoms: usize, modes: Vec<PhononMode>) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::validation("phonon set needs at least one atom"));
        }
        for m in &modes {
            if m.displacement.len() != n_atoms {
                return Err(Error::validation(format!(
                    "mode {}: {} displacement rows, expected {}",
                    m.index,
                    m.displacement.len(),
                    n_atoms
                )));
            }
        }
        Ok(Self { n_atoms, modes })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn modes(&self) -> &[PhononMode] {
        &self.modes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SpinChannel {
    Up,
    Down,
}

impl SpinChannel {
    pub fn as_str(self) -> &'static str {
        match self {
            SpinChannel::Up => "up",
            SpinChannel::Down => "down",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "up" => Some(SpinChannel::Up),
            "down" => Some(SpinChannel::Down),
            _ => None,
        }
    }
}

/// Unit of the momentum matrix element stored in a [`DipoleRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentumUnits {
    /// ħ/a₀ (Hartree atomic units).
    #[default]
    Atomic,
    /// ħ/Å.
    HbarPerAngstrom,
}

impl MomentumUnits {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentumUnits::Atomic => "atomic",
            MomentumUnits::HbarPerAngstrom => "hbar_per_angstrom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "atomic" => Some(MomentumUnits::Atomic),
            "hbar_per_angstrom" => Some(MomentumUnits::HbarPerAngstrom),
            _ => None,
        }
    }
}

/// Orbital eigenvalues and the momentum matrix element ⟨ψ_f|p|ψ_i⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleRecord {
    pub label: String,
    pub spin: SpinChannel,
    /// eV
    pub e_initial: f64,
    /// eV
    pub e_final: f64,
    pub momentum: [Complex64; 3],
    pub units: MomentumUnits,
}

impl DipoleRecord {
    pub fn new(
        label: impl Into<String>,
        spin: SpinChannel,
        e_initial: f64,
        e_final: f64,
        momentum: [Complex64; 3],
        units: MomentumUnits,
    ) -> Result<Self> {
        if !e_initial.is_finite() || !e_final.is_finite() {
            return Err(Error::validation("dipole eigenvalues must be finite"));
        }
        if e_initial == e_final {
            return Err(Error::validation("E_i equals E_f: transition energy vanishes"));
        }
        if momentum.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::validation("momentum matrix element must be finite"));
        }
        Ok(Self {
            label: label.into(),
            spin,
            e_initial,
            e_final,
            momentum,
            units,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Normalization {
    #[default]
    Peak,
    Area,
}

impl Normalization {
    pub fn as_str(self) -> &'static str {
        match self {
            Normalization::Peak => "peak",
            Normalization::Area => "area",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "peak" => Some(Normalization::Peak),
            "area" => Some(Normalization::Area),
            _ => None,
        }
    }
}

/// Every tunable of a run. Field defaults are those of [`RunConfig::default`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub label: String,
    pub transition_order: u32,
    /// K
    pub temperature: f64,
    /// Gaussian width for every delta function, eV.
    pub sigma_phonon: f64,
    /// Lorentzian damping of the optical spectral function, 1/fs.
    pub gamma_damping: f64,
    /// fs
    pub time_step: f64,
    pub n_time_samples: usize,
    /// eV. Required by the full pipeline.
    pub zpl_energy: Option<f64>,
    pub refractive_index: f64,
    pub purcell_factor: f64,
    pub degeneracy_g: u32,
    /// Electron–phonon matrix element, eV/(amu^½·Å).
    pub w_if: Option<f64>,
    /// meV
    pub effective_mode_initial: Option<f64>,
    /// meV
    pub effective_mode_final: Option<f64>,
    /// eV, used to derive effective modes when they are not given.
    pub relaxation_energy: Option<f64>,
    pub max_phonon_quanta: u32,
    /// degrees
    pub crystal_axis_angle: f64,
    pub include_near_zero_modes: bool,
    /// Extent of the PL window below the ZPL, eV.
    pub pl_window_below: f64,
    /// Extent of the PL window above the ZPL, eV.
    pub pl_window_above: f64,
    pub pl_normalization: Normalization,
    pub energy_singlet: Option<f64>,
    pub energy_doublet: Option<f64>,
    pub energy_triplet: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            label: "defect".to_string(),
            transition_order: 1,
            temperature: 300.0,
            sigma_phonon: 0.005,
            gamma_damping: 0.0015,
            time_step: 1.0,
            n_time_samples: 16384,
            zpl_energy: None,
            refractive_index: 1.0,
            purcell_factor: 1.0,
            degeneracy_g: 1,
            w_if: None,
            effective_mode_initial: None,
            effective_mode_final: None,
            relaxation_energy: None,
            max_phonon_quanta: 40,
            crystal_axis_angle: 0.0,
            include_near_zero_modes: false,
            pl_window_below: 1.0,
            pl_window_above: 0.2,
            pl_normalization: Normalization::Peak,
            energy_singlet: None,
            energy_doublet: None,
            energy_triplet: None,
        }
    }
}

impl RunConfig {
    /// Checks the invariants that do not depend on other inputs.
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::validation(format!("{name} must be positive, got {v}")))
            }
        };
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(Error::validation("temperature must be non-negative"));
        }
        positive("sigma_phonon", self.sigma_phonon)?;
        positive("gamma_damping", self.gamma_damping)?;
        positive("time_step", self.time_step)?;
        positive("refractive_index", self.refractive_index)?;
        positive("purcell_factor", self.purcell_factor)?;
        positive("pl_window_below", self.pl_window_below)?;
        positive("pl_window_above", self.pl_window_above)?;
        if !self.n_time_samples.is_power_of_two() || self.n_time_samples < 2 {
            return Err(Error::validation("n_time_samples must be a power of two"));
        }
        if self.max_phonon_quanta < 1 {
            return Err(Error::validation("max_phonon_quanta must be at least 1"));
        }
        if self.degeneracy_g < 1 {
            return Err(Error::validation("degeneracy_g must be at least 1"));
        }
        if !self.crystal_axis_angle.is_finite() {
            return Err(Error::validation("crystal_axis_angle must be finite"));
        }
        if let Some(e) = self.zpl_energy {
            positive("zpl_energy", e)?;
        }
        for (name, v) in [
            ("effective_mode_initial", self.effective_mode_initial),
            ("effective_mode_final", self.effective_mode_final),
            ("relaxation_energy", self.relaxation_energy),
        ] {
            if let Some(v) = v {
                positive(name, v)?;
            }
        }
        if let Some(w) = self.w_if {
            if !w.is_finite() {
                return Err(Error::validation("w_if must be finite"));
            }
        }
        Ok(())
    }
}
