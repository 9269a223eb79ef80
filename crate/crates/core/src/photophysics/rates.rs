use crate::error::{Error, Result};
use crate::physcore::constants::{DEBYE_TO_SI, ELEMENTARY_CHARGE, HBAR_SI, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};

/// Spontaneous emission rate (1/s) for transition energy `e0` (eV), squared
/// dipole `mu_sq` (Debye²) and refractive index `n_d`:
///
/// Γ_R = n_D·E0³·|μ|² / (3π·ε0·ħ⁴·c³), evaluated in SI.
///
/// The dipole already carries the electron charge (Debye is C·m).
pub fn radiative_rate(e0: f64, mu_sq: f64, n_d: f64) -> Result<f64> {
    if !(e0 > 0.0) || !e0.is_finite() {
        return Err(Error::domain("transition energy must be positive"));
    }
    if !(mu_sq >= 0.0) || !mu_sq.is_finite() {
        return Err(Error::domain("squared dipole must be non-negative"));
    }
    if !(n_d > 0.0) {
        return Err(Error::domain("refractive index must be positive"));
    }
    let e_j = e0 * ELEMENTARY_CHARGE;
    let d2 = mu_sq * DEBYE_TO_SI * DEBYE_TO_SI;
    let h4 = HBAR_SI * HBAR_SI * HBAR_SI * HBAR_SI;
    let c3 = SPEED_OF_LIGHT * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    Ok(n_d * e_j * e_j * e_j * d2 / (3.0 * core::f64::consts::PI * VACUUM_PERMITTIVITY * h4 * c3))
}

/// Lifetime in ns; infinite for a zero rate.
pub fn lifetime_ns(rate: f64) -> f64 {
    1e9 / rate
}

/// η = Γ_R / (Γ_R + Γ_NR), as a fraction.
pub fn quantum_efficiency(gamma_r: f64, gamma_nr: f64) -> Result<f64> {
    if !(gamma_r >= 0.0) || !(gamma_nr >= 0.0) {
        return Err(Error::domain("rates must be non-negative"));
    }
    if gamma_r + gamma_nr == 0.0 {
        return Err(Error::domain("quantum efficiency undefined when both rates vanish"));
    }
    Ok(gamma_r / (gamma_r + gamma_nr))
}

pub fn apply_purcell(gamma_r: f64, purcell_factor: f64) -> Result<f64> {
    if !(purcell_factor > 0.0) || !purcell_factor.is_finite() {
        return Err(Error::domain("Purcell factor must be positive"));
    }
    Ok(gamma_r * purcell_factor)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateReport {
    /// 1/s, Purcell factor included
    pub gamma_r: f64,
    pub tau_r_ns: f64,
    /// 1/s; `None` when no electron–phonon coupling was supplied.
    pub gamma_nr: Option<f64>,
    pub tau_nr_ns: Option<f64>,
    /// fraction
    pub eta: Option<f64>,
    pub purcell_applied: f64,
}

impl RateReport {
    /// `gamma_r_bare` is the rate before Purcell scaling.
    pub fn new(gamma_r_bare: f64, gamma_nr: Option<f64>, purcell_factor: f64) -> Result<Self> {
        let gamma_r = apply_purcell(gamma_r_bare, purcell_factor)?;
        let eta = match gamma_nr {
            Some(nr) => Some(quantum_efficiency(gamma_r, nr)?),
            None => None,
        };
        Ok(Self {
            gamma_r,
            tau_r_ns: lifetime_ns(gamma_r),
            gamma_nr,
            tau_nr_ns: gamma_nr.map(lifetime_ns),
            eta,
            purcell_applied: purcell_factor,
        })
    }

    /// Total excited-state lifetime 1/(Γ_R + Γ_NR) in ns.
    pub fn total_lifetime_ns(&self) -> f64 {
        lifetime_ns(self.gamma_r + self.gamma_nr.unwrap_or(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_rate() {
        // Frozen from an independent SI evaluation (scipy CODATA constants).
        let g = radiative_rate(2.066, 1.0, 1.0).unwrap();
        assert!((g - 1_451_089.221_456_328_4).abs() / g < 1e-6);
    }

    #[test]
    fn zero_dipole_zero_rate() {
        assert_eq!(radiative_rate(2.0, 0.0, 1.85).unwrap(), 0.0);
    }

    #[test]
    fn published_lifetime_reciprocal() {
        assert!((lifetime_ns(5.90e7) - 16.94).abs() <= 0.01);
    }

    #[test]
    fn efficiency_rows() {
        let eta = quantum_efficiency(5.90e7, 8.53e8).unwrap() * 100.0;
        assert!((eta - 6.47).abs() <= 0.05);
        let eta = quantum_efficiency(2.42e7, 7.47e5).unwrap() * 100.0;
        assert!((eta - 97.0).abs() <= 0.1);
        assert_eq!(quantum_efficiency(1.0, 0.0).unwrap(), 1.0);
        assert!(quantum_efficiency(0.0, 0.0).is_err());
    }

    #[test]
    fn purcell_scaling() {
        assert_eq!(apply_purcell(3.0e7, 1.0).unwrap(), 3.0e7);
        let r1 = RateReport::new(3.0e7, None, 1.0).unwrap();
        let r2 = RateReport::new(3.0e7, None, 2.0).unwrap();
        assert!((r2.tau_r_ns - r1.tau_r_ns / 2.0).abs() < 1e-12);
        assert!(apply_purcell(1.0, 0.0).is_err());
    }

    #[test]
    fn efficiency_monotone_in_purcell() {
        let mut last = 0.0;
        for i in 1..50 {
            let r = RateReport::new(1e7, Some(5e7), 0.2 * i as f64).unwrap();
            assert!(r.eta.unwrap() > last);
            last = r.eta.unwrap();
        }
    }
}
