//! The per-defect, per-transition optical fingerprint and its
//! self-consistency rules.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::photophysics::{fold_to_axis, Multiplicity, OdmrOutlook, Polarization};
use crate::physcore::ev_to_nm;

/// Allowed |zpl_nm − round(hc/E0)| in nm. Tabulated E0 is itself rounded,
/// so the comparison is made on the integer wavelength.
pub const ZPL_TOLERANCE_NM: f64 = 1.0;
/// Allowed |dw − exp(−hr)|.
pub const DW_TOLERANCE: f64 = 0.005;
/// Allowed |η − Γ_R/(Γ_R + Γ_NR)| in percentage points.
pub const ETA_TOLERANCE_PP: f64 = 0.05;
/// Allowed relative deviation of τ·Γ from 10⁹; covers values written at six
/// significant digits.
pub const RECIPROCAL_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fingerprint {
    pub defect_label: String,
    pub transition_order: u32,
    pub stable_multiplicity: Option<Multiplicity>,
    /// e.g. "down-down"
    pub spin_transition: String,
    pub zpl_nm: f64,
    pub e0_ev: f64,
    /// amu^½·Å
    pub delta_q: f64,
    pub hr: f64,
    pub dw: f64,
    pub excitation_angle_deg: Polarization,
    pub excitation_visibility: f64,
    pub emission_angle_deg: Polarization,
    pub emission_visibility: f64,
    pub mu_sq_debye2: f64,
    /// 1/s
    pub gamma_r: f64,
    pub tau_r_ns: f64,
    pub gamma_nr: Option<f64>,
    pub tau_nr_ns: Option<f64>,
    pub eta_pct: Option<f64>,
    pub odmr: Option<OdmrOutlook>,
}

impl Fingerprint {
    /// Total lifetime 1/(Γ_R + Γ_NR) in ns; Γ_NR counts as 0 when absent.
    pub fn lifetime_ns(&self) -> f64 {
        1e9 / (self.gamma_r + self.gamma_nr.unwrap_or(0.0))
    }

    /// Verifies zpl↔E0, dw↔hr, τ↔Γ and η↔rates.
    pub fn check_consistency(&self) -> Result<()> {
        let zpl = ev_to_nm(self.e0_ev)?;
        if (libm::round(zpl) - self.zpl_nm).abs() > ZPL_TOLERANCE_NM {
            return Err(Error::consistency(format!(
                "zpl_nm {} disagrees with E0 {} eV ({zpl:.2} nm)",
                self.zpl_nm, self.e0_ev
            )));
        }
        let dw = libm::exp(-self.hr);
        if (dw - self.dw).abs() > DW_TOLERANCE {
            return Err(Error::consistency(format!(
                "dw {} disagrees with exp(-hr) = {dw:.4}",
                self.dw
            )));
        }
        check_reciprocal("radiative", self.gamma_r, Some(self.tau_r_ns))?;
        if let Some(nr) = self.gamma_nr {
            check_reciprocal("non-radiative", nr, self.tau_nr_ns)?;
            if let Some(eta) = self.eta_pct {
                let expect = 100.0 * self.gamma_r / (self.gamma_r + nr);
                if (expect - eta).abs() > ETA_TOLERANCE_PP {
                    return Err(Error::consistency(format!(
                        "eta {eta}% disagrees with rates ({expect:.3}%)"
                    )));
                }
            }
        }
        for (name, v) in [
            ("excitation_visibility", self.excitation_visibility),
            ("emission_visibility", self.emission_visibility),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::consistency(format!("{name} {v} outside [0, 1]")));
            }
        }
        for (name, p) in [
            ("excitation_angle_deg", self.excitation_angle_deg),
            ("emission_angle_deg", self.emission_angle_deg),
        ] {
            if let Polarization::InPlane(d) = p {
                if !(0.0..=30.0).contains(&d) || (fold_to_axis(d) - d).abs() > 1e-9 {
                    return Err(Error::consistency(format!("{name} {d} outside [0°, 30°]")));
                }
            }
        }
        Ok(())
    }
}

fn check_reciprocal(name: &str, gamma: f64, tau_ns: Option<f64>) -> Result<()> {
    match tau_ns {
        Some(tau) if gamma > 0.0 => {
            if (tau * gamma / 1e9 - 1.0).abs() > RECIPROCAL_TOLERANCE {
                return Err(Error::consistency(format!(
                    "{name} lifetime {tau} ns is not 1e9/{gamma}"
                )));
            }
            Ok(())
        }
        Some(tau) if tau.is_infinite() => Ok(()),
        Some(tau) => Err(Error::consistency(format!("{name} lifetime {tau} ns with zero rate"))),
        None => Err(Error::consistency(format!("{name} lifetime missing"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn c2c2() -> Fingerprint {
        Fingerprint {
            defect_label: "C2C2".into(),
            transition_order: 1,
            stable_multiplicity: Some(Multiplicity::Singlet),
            spin_transition: "down-down".into(),
            zpl_nm: 573.0,
            e0_ev: 2.16,
            delta_q: 0.44,
            hr: 1.0,
            dw: 0.37,
            excitation_angle_deg: Polarization::InPlane(11.12),
            excitation_visibility: 1.0,
            emission_angle_deg: Polarization::InPlane(12.14),
            emission_visibility: 1.0,
            mu_sq_debye2: 19.2,
            gamma_r: 5.90e7,
            tau_r_ns: 1e9 / 5.90e7,
            gamma_nr: Some(8.53e8),
            tau_nr_ns: Some(1e9 / 8.53e8),
            eta_pct: Some(6.47),
            odmr: Some(OdmrOutlook::Unlikely),
        }
    }

    #[test]
    fn table_row_is_consistent() {
        c2c2().check_consistency().unwrap();
    }

    #[test]
    fn inconsistencies_caught() {
        let mut f = c2c2();
        f.dw = 0.5;
        assert!(matches!(f.check_consistency(), Err(Error::Consistency(_))));
        let mut f = c2c2();
        f.zpl_nm = 600.0;
        assert!(f.check_consistency().is_err());
        let mut f = c2c2();
        f.eta_pct = Some(10.0);
        assert!(f.check_consistency().is_err());
        let mut f = c2c2();
        f.tau_r_ns = 20.0;
        assert!(f.check_consistency().is_err());
    }
}
