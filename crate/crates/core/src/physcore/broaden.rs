use alloc::vec::Vec;

use super::grid::{EnergyGrid, Spectrum};
use crate::error::{Error, Result};

/// Gaussian tails beyond this many widths are dropped (weight < 1e-31).
const CUTOFF_SIGMAS: f64 = 12.0;

/// A weighted delta function at `energy` (eV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stick {
    pub energy: f64,
    pub weight: f64,
}

impl From<(f64, f64)> for Stick {
    fn from((energy, weight): (f64, f64)) -> Self {
        Stick { energy, weight }
    }
}

/// Replaces each stick by a unit-area Gaussian of width `sigma` scaled by its
/// weight. Sticks near a grid edge lose the part of their area that falls
/// outside the grid.
pub fn gaussian_broaden(sticks: &[Stick], sigma: f64, grid: EnergyGrid) -> Result<Spectrum> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain("broadening width must be positive"));
    }
    if let Some(bad) = sticks.iter().find(|s| !s.energy.is_finite() || !s.weight.is_finite()) {
        return Err(Error::domain(alloc::format!(
            "non-finite stick ({}, {})",
            bad.energy,
            bad.weight
        )));
    }
    let norm = 1.0 / (sigma * libm::sqrt(2.0 * core::f64::consts::PI));
    let reach = CUTOFF_SIGMAS * sigma;
    let values: Vec<f64> = grid
        .values()
        .map(|e| {
            let mut acc = 0.0;
            for s in sticks {
                let x = e - s.energy;
                if x.abs() <= reach {
                    acc += s.weight * norm * libm::exp(-0.5 * (x / sigma) * (x / sigma));
                }
            }
            acc
        })
        .collect();
    Ok(Spectrum {
        grid,
        values,
        broadening: Some(sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> EnergyGrid {
        EnergyGrid::new(0.5, 1.5, 2001).unwrap()
    }

    #[test]
    fn single_stick_unit_area() {
        let s = gaussian_broaden(
            &[Stick {
                energy: 1.0,
                weight: 1.0,
            }],
            0.01,
            grid(),
        )
        .unwrap();
        assert!((s.integral() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn two_sticks_symmetric_about_midpoint() {
        let sticks = [Stick::from((1.0, 1.0)), Stick::from((1.2, 1.0))];
        let g = EnergyGrid::new(0.6, 1.6, 2001).unwrap();
        let s = gaussian_broaden(&sticks, 0.02, g).unwrap();
        // 1.1 eV sits at node 1000; node 1000±k mirror each other.
        for k in 0..1000 {
            let a = s.values[1000 - k];
            let b = s.values[1000 + k];
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-300) + 1e-12, "k={k}");
        }
    }

    #[test]
    fn edge_stick_is_truncated() {
        // Half a Gaussian lies outside the grid. Independent oracle: Simpson
        // rule on a fine grid over the half that remains.
        let sigma = 0.01;
        let s = gaussian_broaden(&[Stick::from((1.5, 1.0))], sigma, grid()).unwrap();
        let n = 20_000;
        let (a, b) = (0.5_f64, 1.5_f64);
        let h = (b - a) / n as f64;
        let f = |x: f64| {
            let z = (x - 1.5) / sigma;
            (-0.5 * z * z).exp() / (sigma * (2.0 * core::f64::consts::PI).sqrt())
        };
        let mut simpson = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            simpson += w * f(a + i as f64 * h);
        }
        simpson *= h / 3.0;
        assert!(s.integral() < 1.0);
        assert!((s.integral() - simpson).abs() < 2e-3);
        assert!((simpson - 0.5).abs() < 1e-6);
    }

    #[test]
    fn empty_sticks_give_zero() {
        let s = gaussian_broaden(&[], 0.01, grid()).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn non_positive_sigma_rejected() {
        assert!(gaussian_broaden(&[], 0.0, grid()).is_err());
        assert!(gaussian_broaden(&[], -0.1, grid()).is_err());
    }
}
