//! Choice of the most stable spin configuration and the ODMR outlook that
//! follows from it. A triplet ground configuration makes ODMR likely; that
//! is a heuristic, never a guarantee.

use alloc::format;

use crate::error::{Error, Result};

/// Configurations closer than this (eV) to the minimum are a tie.
pub const TIE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Multiplicity {
    Singlet,
    Doublet,
    Triplet,
}

impl Multiplicity {
    pub fn as_str(self) -> &'static str {
        match self {
            Multiplicity::Singlet => "singlet",
            Multiplicity::Doublet => "doublet",
            Multiplicity::Triplet => "triplet",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum OdmrOutlook {
    Likely,
    Unlikely,
}

impl OdmrOutlook {
    pub fn as_str(self) -> &'static str {
        match self {
            OdmrOutlook::Likely => "likely",
            OdmrOutlook::Unlikely => "unlikely",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConfiguration {
    pub multiplicity: Multiplicity,
    /// eV
    pub total_energy: f64,
}

pub fn select_stable_configuration(configs: &[SpinConfiguration]) -> Result<(SpinConfiguration, OdmrOutlook)> {
    if configs.is_empty() {
        return Err(Error::domain("no spin configurations to compare"));
    }
    if let Some(bad) = configs.iter().find(|c| !c.total_energy.is_finite()) {
        return Err(Error::domain(format!(
            "non-finite total energy for {}",
            bad.multiplicity.as_str()
        )));
    }
    let best = configs
        .iter()
        .copied()
        .min_by(|a, b| a.total_energy.total_cmp(&b.total_energy))
        .expect("non-empty");
    let ties = configs
        .iter()
        .filter(|c| (c.total_energy - best.total_energy).abs() <= TIE_TOLERANCE)
        .count();
    if ties > 1 {
        return Err(Error::domain(format!(
            "ambiguous ground configuration: {ties} configurations within {TIE_TOLERANCE} eV"
        )));
    }
    let outlook = if best.multiplicity == Multiplicity::Triplet {
        OdmrOutlook::Likely
    } else {
        OdmrOutlook::Unlikely
    };
    Ok((best, outlook))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: Multiplicity, e: f64) -> SpinConfiguration {
        SpinConfiguration {
            multiplicity: m,
            total_energy: e,
        }
    }

    #[test]
    fn singlet_lowest() {
        let (c, o) =
            select_stable_configuration(&[cfg(Multiplicity::Triplet, -100.2), cfg(Multiplicity::Singlet, -100.5)])
                .unwrap();
        assert_eq!(c.multiplicity, Multiplicity::Singlet);
        assert_eq!(o, OdmrOutlook::Unlikely);
    }

    #[test]
    fn doublet_lowest() {
        let (c, o) =
            select_stable_configuration(&[cfg(Multiplicity::Doublet, -3.0), cfg(Multiplicity::Triplet, -2.0)]).unwrap();
        assert_eq!(c.multiplicity, Multiplicity::Doublet);
        assert_eq!(o, OdmrOutlook::Unlikely);
    }

    #[test]
    fn triplet_lowest() {
        let (_, o) =
            select_stable_configuration(&[cfg(Multiplicity::Singlet, -1.0), cfg(Multiplicity::Triplet, -1.5)]).unwrap();
        assert_eq!(o, OdmrOutlook::Likely);
    }

    #[test]
    fn tie_is_error() {
        assert!(select_stable_configuration(&[
            cfg(Multiplicity::Singlet, -1.0),
            cfg(Multiplicity::Triplet, -1.0 + 5e-7),
        ])
        .is_err());
        assert!(select_stable_configuration(&[]).is_err());
    }
}
