//! Transition dipole moments, in-plane visibility and polarization angle.
//!
//! The crystal plane is xy. Polarization is perpendicular to the dipole, so
//! the in-plane dipole direction is rotated by 90°, measured from the crystal
//! axis, and folded onto the nearest of the hexagonal axes: the result lies
//! in [0°, 30°].

use alloc::format;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{DipoleRecord, MomentumUnits};
use crate::physcore::constants::{BOHR_RADIUS_ANGSTROM, EA0_TO_DEBYE, HARTREE_EV};

/// Polarization angle from the nearest crystal axis, or a marker for a
/// dipole with no in-plane component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarization {
    /// degrees, in [0, 30]
    InPlane(f64),
    OutOfPlane,
}

/// Text marker for [`Polarization::OutOfPlane`].
pub const OUT_OF_PLANE: &str = "out-of-plane";

impl Polarization {
    pub fn degrees(self) -> Option<f64> {
        match self {
            Polarization::InPlane(d) => Some(d),
            Polarization::OutOfPlane => None,
        }
    }
}

/// Serialized as the angle in degrees, or the string `"out-of-plane"`.
#[cfg(feature = "serde")]
impl serde::Serialize for Polarization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Polarization::InPlane(d) => s.serialize_f64(*d),
            Polarization::OutOfPlane => s.serialize_str(OUT_OF_PLANE),
        }
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Polarization {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Polarization;
            fn expecting(&self, f: &mut core::fmt::Formatter) -> core::fmt::Result {
                write!(f, "an angle in degrees or \"{OUT_OF_PLANE}\"")
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> core::result::Result<Polarization, E> {
                Ok(Polarization::InPlane(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> core::result::Result<Polarization, E> {
                Ok(Polarization::InPlane(v as f64))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> core::result::Result<Polarization, E> {
                Ok(Polarization::InPlane(v as f64))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> core::result::Result<Polarization, E> {
                if v == OUT_OF_PLANE {
                    Ok(Polarization::OutOfPlane)
                } else {
                    Err(E::invalid_value(serde::de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleMoment {
    /// Debye
    pub mu: [Complex64; 3],
    /// Debye²
    pub mu_sq: f64,
    pub in_plane_visibility: f64,
    pub polarization: Polarization,
}

impl DipoleMoment {
    /// Builds the derived quantities from a dipole vector in Debye.
    pub fn from_vector(mu: [Complex64; 3], crystal_axis_angle: f64) -> Result<Self> {
        let comps = [mu[0].norm_sqr(), mu[1].norm_sqr(), mu[2].norm_sqr()];
        let mu_sq = comps[0] + comps[1] + comps[2];
        if !(mu_sq > 0.0) || !mu_sq.is_finite() {
            return Err(Error::domain("dipole moment vanishes"));
        }
        let in_plane = comps[0] + comps[1];
        let mut moment = Self {
            mu,
            mu_sq,
            in_plane_visibility: in_plane / mu_sq,
            polarization: Polarization::OutOfPlane,
        };
        moment.polarization = polarization_angle(&moment, crystal_axis_angle);
        Ok(moment)
    }

    /// |μx|, |μy|, |μz|
    pub fn magnitudes(&self) -> [f64; 3] {
        [self.mu[0].norm(), self.mu[1].norm(), self.mu[2].norm()]
    }
}

/// μ = iħ⟨ψ_f|p|ψ_i⟩ / ((E_f − E_i)·m), in Debye.
pub fn transition_dipole(rec: &DipoleRecord, crystal_axis_angle: f64) -> Result<DipoleMoment> {
    let de = rec.e_final - rec.e_initial;
    if de == 0.0 {
        return Err(Error::domain(format!("degenerate eigenvalues in '{}'", rec.label)));
    }
    // In Hartree atomic units ħ = m = e = 1, so μ[e·a0] = i·p[ħ/a0]/ΔE[Ha].
    let to_atomic = match rec.units {
        MomentumUnits::Atomic => 1.0,
        MomentumUnits::HbarPerAngstrom => BOHR_RADIUS_ANGSTROM,
    };
    let factor = Complex64::new(0.0, to_atomic * EA0_TO_DEBYE * HARTREE_EV / de);
    let mu = [
        rec.momentum[0] * factor,
        rec.momentum[1] * factor,
        rec.momentum[2] * factor,
    ];
    DipoleMoment::from_vector(mu, crystal_axis_angle)
}

/// Distance of an angle (degrees) from the nearest multiple of 60°.
pub fn fold_to_axis(angle: f64) -> f64 {
    let mut x = angle % 60.0;
    if x < 0.0 {
        x += 60.0;
    }
    x.min(60.0 - x)
}

/// Polarization angle from the nearest crystal axis in [0°, 30°].
pub fn polarization_angle(mu: &DipoleMoment, crystal_axis_angle: f64) -> Polarization {
    let [mx, my, _] = mu.magnitudes();
    let in_plane = mx * mx + my * my;
    if in_plane <= 1e-24 * mu.mu_sq {
        return Polarization::OutOfPlane;
    }
    let direction = libm::atan2(my, mx).to_degrees();
    Polarization::InPlane(fold_to_axis(direction + 90.0 - crystal_axis_angle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SpinChannel;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rec(p: [Complex64; 3], ei: f64, ef: f64, units: MomentumUnits) -> DipoleRecord {
        DipoleRecord::new("t", SpinChannel::Down, ei, ef, p, units).unwrap()
    }

    #[test]
    fn in_plane_x_dipole() {
        let m = transition_dipole(&rec([c(1.0), c(0.0), c(0.0)], 0.0, 2.0, MomentumUnits::Atomic), 0.0).unwrap();
        assert_eq!(m.in_plane_visibility, 1.0);
        assert_eq!(m.mu[1], c(0.0));
        assert_eq!(m.polarization, Polarization::InPlane(30.0));
    }

    #[test]
    fn z_dipole_is_out_of_plane() {
        let m = transition_dipole(&rec([c(0.0), c(0.0), c(1.0)], 0.0, 2.0, MomentumUnits::Atomic), 0.0).unwrap();
        assert_eq!(m.in_plane_visibility, 0.0);
        assert_eq!(m.polarization, Polarization::OutOfPlane);
    }

    #[test]
    fn unit_conversion_against_si_route() {
        // Frozen from an SI evaluation: μ = e·ħ·p/(ΔE·m_e) with p = 0.1 ħ/a0,
        // ΔE = 2 eV gives 3.458222 D; p = 1 ħ/Å gives 18.300124 D.
        let m = transition_dipole(&rec([c(0.1), c(0.0), c(0.0)], 0.0, 2.0, MomentumUnits::Atomic), 0.0).unwrap();
        assert!((m.mu_sq.sqrt() - 3.458_222_248_724_578).abs() < 1e-6);
        let m = transition_dipole(
            &rec([c(1.0), c(0.0), c(0.0)], 0.0, 2.0, MomentumUnits::HbarPerAngstrom),
            0.0,
        )
        .unwrap();
        assert!((m.mu_sq.sqrt() - 18.300_124_030_212_71).abs() < 1e-5);
    }

    #[test]
    fn axis_rules() {
        let from_dir = |deg: f64| {
            let r = deg.to_radians();
            DipoleMoment::from_vector([c(r.cos()), c(r.sin()), c(0.0)], 0.0).unwrap()
        };
        assert_eq!(from_dir(0.0).polarization, Polarization::InPlane(30.0));
        let p90 = from_dir(90.0).polarization.degrees().unwrap();
        assert!(p90.abs() < 1e-9);
        for d in [5.0, 17.3, 42.0] {
            let a = from_dir(d).polarization.degrees().unwrap();
            let b = from_dir(d + 60.0).polarization.degrees().unwrap();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn fold_range() {
        for i in -720..720 {
            let f = fold_to_axis(i as f64 * 0.77);
            assert!((0.0..=30.0).contains(&f));
        }
        assert_eq!(fold_to_axis(90.0), 30.0);
        assert_eq!(fold_to_axis(180.0), 0.0);
    }

    #[test]
    fn vanishing_dipole_rejected() {
        assert!(DipoleMoment::from_vector([c(0.0); 3], 0.0).is_err());
    }
}
