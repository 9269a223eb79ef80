use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Closed, uniformly spaced energy interval `[e_min, e_max]` in eV.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnergyGrid {
    e_min: f64,
    e_max: f64,
    n_points: usize,
}

impl EnergyGrid {
    pub fn new(e_min: f64, e_max: f64, n_points: usize) -> Result<Self> {
        if !(e_min.is_finite() && e_max.is_finite()) {
            return Err(Error::domain("grid bounds must be finite"));
        }
        if e_min >= e_max {
            return Err(Error::domain("grid requires e_min < e_max"));
        }
        if n_points < 2 {
            return Err(Error::domain("grid requires at least 2 points"));
        }
        Ok(Self { e_min, e_max, n_points })
    }

    /// Grid with the given spacing whose nodes include `anchor` exactly
    /// (up to rounding), covering at least `[lo, hi]`.
    pub fn anchored(anchor: f64, spacing: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::domain("grid spacing must be positive"));
        }
        if lo >= hi {
            return Err(Error::domain("grid requires lo < hi"));
        }
        let below = libm::ceil((anchor - lo) / spacing - 1e-9);
        let above = libm::ceil((hi - anchor) / spacing - 1e-9);
        let e_min = anchor - below * spacing;
        let e_max = anchor + above * spacing;
        let n = (below + above) as usize + 1;
        Self::new(e_min, e_max, n)
    }

    pub fn e_min(&self) -> f64 {
        self.e_min
    }

    pub fn e_max(&self) -> f64 {
        self.e_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.e_max - self.e_min) / (self.n_points - 1) as f64
    }

    /// Energy of node `i`. The last node is `e_max` exactly.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.e_max
        } else {
            self.e_min + i as f64 * self.spacing()
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.value(i))
    }

    pub fn contains(&self, e: f64) -> bool {
        e >= self.e_min && e <= self.e_max
    }
}

/// Values sampled on an [`EnergyGrid`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Spectrum {
    pub grid: EnergyGrid,
    pub values: Vec<f64>,
    /// Gaussian width used to realize the line shapes, if any.
    pub broadening: Option<f64>,
}

impl Spectrum {
    pub fn zeros(grid: EnergyGrid) -> Self {
        Self {
            grid,
            values: alloc::vec![0.0; grid.len()],
            broadening: None,
        }
    }

    pub fn from_values(grid: EnergyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::validation("spectrum length does not match grid"));
        }
        Ok(Self {
            grid,
            values,
            broadening: None,
        })
    }

    /// Trapezoid integral over the whole grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.values, self.grid.spacing())
    }

    /// Trapezoid integral over the nodes lying in `[lo, hi]`.
    pub fn integral_between(&self, lo: f64, hi: f64) -> f64 {
        let h = self.grid.spacing();
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for (e, &v) in self.grid.values().zip(&self.values) {
            if e < lo || e > hi {
                prev = None;
                continue;
            }
            if let Some(p) = prev {
                total += 0.5 * (p + v) * h;
            }
            prev = Some(v);
        }
        total
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Grid energy of the largest value.
    pub fn argmax_energy(&self) -> f64 {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        self.grid.value(best)
    }

    /// Pointwise sum; both spectra must share the grid.
    pub fn add(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.grid != other.grid {
            return Err(Error::validation("cannot add spectra on different grids"));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Spectrum {
            grid: self.grid,
            values,
            broadening: self.broadening,
        })
    }

    pub fn scaled(&self, factor: f64) -> Spectrum {
        Spectrum {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
            broadening: self.broadening,
        }
    }
}

pub(crate) fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

pub fn ev_to_nm(energy_ev: f64) -> Result<f64> {
    if !(energy_ev > 0.0) || !energy_ev.is_finite() {
        return Err(Error::domain("photon energy must be positive"));
    }
    Ok(super::constants::EV_NM_PRODUCT / energy_ev)
}

pub fn nm_to_ev(wavelength_nm: f64) -> Result<f64> {
    if !(wavelength_nm > 0.0) || !wavelength_nm.is_finite() {
        return Err(Error::domain("wavelength must be positive"));
    }
    Ok(super::constants::EV_NM_PRODUCT / wavelength_nm)
}
