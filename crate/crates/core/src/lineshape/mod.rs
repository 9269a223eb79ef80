//! Photoluminescence lineshape from the phonon spectral function.
//!
//! The pipeline is S(ħω) → S(t) → G(t) = exp(S(t) − S(0)) → A → L:
//!
//! ```text
//! S(t)  = ∫ S(E) e^{−iEt/ħ} dE
//! A(E)  = 1/(2πħ) ∫ G(t) e^{i(E_ZPL − E)t/ħ − γ|t|} dt      [1/eV]
//! L(E)  = C·E³·A(E)
//! ```
//!
//! A is stored on the emission-energy axis: the phonon sideband sits below
//! the ZPL. G(−t) = G(t)* because S(E) is real, so only t ≥ 0 is sampled and
//! the integral becomes 2·Re of a one-sided trapezoid sum, evaluated for all
//! transform nodes at once by FFT. Nodes are spaced 2πħ/(n·dt) in energy.

pub mod fft;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::Normalization;
use crate::physcore::constants::HBAR_EV_FS;
use crate::physcore::{EnergyGrid, Spectrum};
use fft::{fft_in_place, Direction};

/// |G(t)|·e^{−γt} must fall below this at the end of the time window.
pub const WINDOW_EDGE_TOLERANCE: f64 = 1e-6;

/// Required ratio of the Nyquist energy πħ/dt to the highest phonon energy.
pub const NYQUIST_MARGIN: f64 = 4.0;

/// Minimum number of grid points per broadening width before a warning.
pub const MIN_POINTS_PER_SIGMA: f64 = 8.0;

/// Samples f(j·dt), j = 0..n.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    /// fs
    pub dt: f64,
    pub samples: Vec<Complex64>,
    pub warnings: Vec<String>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }
}

/// Optical spectral function A and, once normalized, PL intensity L.
#[derive(Debug, Clone, PartialEq)]
pub struct PLSpectrum {
    pub grid: EnergyGrid,
    /// 1/eV
    pub a: Vec<f64>,
    /// Filled by [`pl_intensity`]; L = C·E³·A with E in eV.
    pub l: Option<Vec<f64>>,
    pub normalization: Option<Normalization>,
    pub scale_c: f64,
    /// eV
    pub zpl_energy: f64,
    /// 1/fs
    pub gamma: f64,
    pub warnings: Vec<String>,
}

impl PLSpectrum {
    pub fn a_spectrum(&self) -> Spectrum {
        Spectrum {
            grid: self.grid,
            values: self.a.clone(),
            broadening: None,
        }
    }

    /// Half width at half maximum of the zero-phonon line, eV.
    pub fn zpl_half_width(&self) -> f64 {
        HBAR_EV_FS * self.gamma
    }
}

/// Energy spacing of the transform nodes for a window of `n` samples.
pub fn node_spacing(dt: f64, n: usize) -> f64 {
    2.0 * core::f64::consts::PI * HBAR_EV_FS / (n as f64 * dt)
}

/// Nyquist energy πħ/dt.
pub fn nyquist_energy(dt: f64) -> f64 {
    core::f64::consts::PI * HBAR_EV_FS / dt
}

/// Grid whose nodes coincide with the transform nodes, so that no
/// interpolation error enters A.
pub fn aligned_grid(zpl: f64, below: f64, above: f64, dt: f64, n: usize) -> Result<EnergyGrid> {
    EnergyGrid::anchored(zpl, node_spacing(dt, n), zpl - below, zpl + above)
}

/// S(t) by trapezoid quadrature over the energy grid of `s_of_e`.
pub fn time_spectral_function(s_of_e: &Spectrum, dt: f64, n: usize) -> Result<TimeSeries> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::domain("time step must be positive"));
    }
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::domain("number of time samples must be a power of two"));
    }
    if s_of_e.values.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::domain("spectral function must be non-negative"));
    }
    let grid = s_of_e.grid;
    let h = grid.spacing();
    let mut warnings = Vec::new();
    if let Some(sigma) = s_of_e.broadening {
        if sigma / h < MIN_POINTS_PER_SIGMA {
            warnings.push(format!(
                "energy grid is coarse: {:.1} points per broadening width (want ≥ {})",
                sigma / h,
                MIN_POINTS_PER_SIGMA
            ));
        }
    }
    let peak = s_of_e.max();
    let top = s_of_e
        .values
        .iter()
        .enumerate()
        .rev()
        .find(|(_, &v)| peak > 0.0 && v > 1e-12 * peak)
        .map(|(i, _)| grid.value(i));
    if let Some(top) = top {
        if nyquist_energy(dt) < NYQUIST_MARGIN * top {
            return Err(Error::domain(format!(
                "time step {dt} fs undersamples phonons up to {top:.4} eV: Nyquist energy {:.4} eV < {}×",
                nyquist_energy(dt),
                NYQUIST_MARGIN
            )));
        }
    }

    let mut samples = vec![Complex64::new(0.0, 0.0); n];
    let last = grid.len() - 1;
    for (i, (e, &v)) in grid.values().zip(&s_of_e.values).enumerate() {
        if v == 0.0 {
            continue;
        }
        let w = if i == 0 || i == last { 0.5 * h * v } else { h * v };
        let omega = e / HBAR_EV_FS;
        let step = Complex64::new(libm::cos(omega * dt), -libm::sin(omega * dt));
        let mut phase = Complex64::new(1.0, 0.0);
        for (j, out) in samples.iter_mut().enumerate() {
            if j % 256 == 0 {
                let th = omega * dt * j as f64;
                phase = Complex64::new(libm::cos(th), -libm::sin(th));
            }
            *out += phase * w;
            phase *= step;
        }
    }
    Ok(TimeSeries { dt, samples, warnings })
}

/// G(t) = exp(S(t) − S(0)). G(0) is exactly 1.
pub fn generating_function(s_t: &TimeSeries) -> TimeSeries {
    let s0 = s_t.samples.first().copied().unwrap_or_default();
    let samples = s_t
        .samples
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            if j == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                (s - s0).exp()
            }
        })
        .collect();
    TimeSeries {
        dt: s_t.dt,
        samples,
        warnings: s_t.warnings.clone(),
    }
}

/// A(E) on `grid` for a Lorentzian damping `gamma` (1/fs).
///
/// Values come from the transform nodes by linear interpolation; on a grid
/// from [`aligned_grid`] this is exact. ∫A dE over the full Nyquist band is
/// exactly G(0) = 1.
pub fn optical_spectral_function(g: &TimeSeries, zpl: f64, gamma: f64, grid: EnergyGrid) -> Result<PLSpectrum> {
    let n = g.len();
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::domain("generating function length must be a power of two"));
    }
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain("damping gamma must be positive"));
    }
    if !grid.contains(zpl) {
        return Err(Error::domain(format!("ZPL {zpl} eV lies outside the output grid")));
    }
    let dt = g.dt;
    let t_end = g.time(n - 1);
    let edge = g.samples[n - 1].norm() * libm::exp(-gamma * t_end);
    if edge >= WINDOW_EDGE_TOLERANCE {
        return Err(Error::non_convergence(format!(
            "damped generating function is {edge:.2e} at the window edge ({t_end} fs); \
             increase gamma_damping or n_time_samples"
        )));
    }
    let nyquist = nyquist_energy(dt);
    if grid.e_max() - zpl >= nyquist || zpl - grid.e_min() >= nyquist {
        return Err(Error::domain(format!(
            "output grid extends beyond the Nyquist energy {nyquist:.4} eV around the ZPL"
        )));
    }

    let mut h: Vec<Complex64> = g
        .samples
        .iter()
        .enumerate()
        .map(|(j, &v)| v * libm::exp(-gamma * g.time(j)))
        .collect();
    h[0] *= 0.5;
    fft_in_place(&mut h, Direction::Inverse);
    let prefactor = dt / (core::f64::consts::PI * HBAR_EV_FS);
    let nodes: Vec<f64> = h.iter().map(|c| prefactor * c.re).collect();

    let per_node = n as f64 * dt / (2.0 * core::f64::consts::PI * HBAR_EV_FS);
    let a: Vec<f64> = grid
        .values()
        .map(|e| {
            let mut f = (zpl - e) * per_node;
            if f < 0.0 {
                f += n as f64;
            }
            let mut k = libm::floor(f);
            let mut frac = f - k;
            // Snap nodes hit up to rounding.
            if frac > 1.0 - 1e-9 {
                k += 1.0;
                frac = 0.0;
            } else if frac < 1e-9 {
                frac = 0.0;
            }
            let k0 = (k as usize) % n;
            let k1 = (k0 + 1) % n;
            if frac == 0.0 {
                nodes[k0]
            } else {
                (1.0 - frac) * nodes[k0] + frac * nodes[k1]
            }
        })
        .collect();

    let mut warnings = g.warnings.clone();
    let peak = a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let low = a.iter().copied().fold(f64::INFINITY, f64::min);
    if peak > 0.0 && low < -1e-6 * peak {
        warnings.push(format!(
            "optical spectral function undershoots to {:.3e} of its peak; check sampling",
            low / peak
        ));
    }
    Ok(PLSpectrum {
        grid,
        a,
        l: None,
        normalization: None,
        scale_c: 1.0,
        zpl_energy: zpl,
        gamma,
        warnings,
    })
}

/// Fills L = C·E³·A with C chosen so that max L = 1 (`Peak`) or ∫L dE = 1
/// (`Area`).
pub fn pl_intensity(spectrum: &PLSpectrum, normalization: Normalization) -> Result<PLSpectrum> {
    let raw: Vec<f64> = spectrum
        .grid
        .values()
        .zip(&spectrum.a)
        .map(|(e, &a)| e * e * e * a)
        .collect();
    let reference = match normalization {
        Normalization::Peak => raw.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Normalization::Area => crate::physcore::grid::trapezoid(&raw, spectrum.grid.spacing()),
    };
    if !(reference > 0.0) || !reference.is_finite() {
        return Err(Error::domain("cannot normalize a spectrum without positive weight"));
    }
    let c = 1.0 / reference;
    let mut out = spectrum.clone();
    out.l = Some(raw.iter().map(|v| c * v).collect());
    out.normalization = Some(normalization);
    out.scale_c = c;
    Ok(out)
}

/// Weight of the zero-phonon line: ∫A over ZPL ± `half_width`, divided by
/// the share of a Lorentzian of the configured width that falls inside the
/// window.
pub fn zero_phonon_fraction(spectrum: &PLSpectrum, half_width: f64) -> f64 {
    let zpl = spectrum.zpl_energy;
    let raw = spectrum
        .a_spectrum()
        .integral_between(zpl - half_width, zpl + half_width);
    let enclosed = 2.0 / core::f64::consts::PI * libm::atan(half_width / spectrum.zpl_half_width());
    raw / enclosed
}

/// Parameters for the whole S(ħω) → L chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineshapeParams {
    pub zpl_energy: f64,
    pub gamma: f64,
    pub dt: f64,
    pub n_time_samples: usize,
    pub window_below: f64,
    pub window_above: f64,
    pub normalization: Normalization,
}

/// Runs the full chain on an aligned output grid.
pub fn pl_spectrum(s_of_e: &Spectrum, params: &LineshapeParams) -> Result<PLSpectrum> {
    let s_t = time_spectral_function(s_of_e, params.dt, params.n_time_samples)?;
    let g = generating_function(&s_t);
    let grid = aligned_grid(
        params.zpl_energy,
        params.window_below,
        params.window_above,
        params.dt,
        params.n_time_samples,
    )?;
    let a = optical_spectral_function(&g, params.zpl_energy, params.gamma, grid)?;
    pl_intensity(&a, params.normalization)
}
