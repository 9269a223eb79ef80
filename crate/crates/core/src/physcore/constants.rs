//! Physical constants (CODATA 2018) and the unit conversions built from them.
//!
//! Internal units: energy eV, length Å, mass amu, time fs, dipole Debye.
//! SI appears only inside rate prefactors.

/// Reduced Planck constant, eV·fs.
pub const HBAR_EV_FS: f64 = 0.658_211_956_950_907;
/// Reduced Planck constant, eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569_509_067e-16;
/// Reduced Planck constant, J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Elementary charge, C. Also J per eV.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg.
pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;
/// Electron mass, amu.
pub const ELECTRON_MASS_AMU: f64 = 5.485_799_090_65e-4;
/// Atomic mass constant, kg.
pub const AMU_SI: f64 = 1.660_539_066_60e-27;
/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, eV/K.
pub const BOLTZMANN_EV_K: f64 = 8.617_333_262e-5;
/// h·c in eV·nm.
pub const EV_NM_PRODUCT: f64 = 1_239.841_98;
/// One Debye in C·m (1e-21 / c).
pub const DEBYE_TO_SI: f64 = 3.335_640_951_981_52e-30;
/// Bohr radius, Å.
pub const BOHR_RADIUS_ANGSTROM: f64 = 0.529_177_210_903;
/// Hartree energy, eV.
pub const HARTREE_EV: f64 = 27.211_386_245_988;
/// e·a0 expressed in Debye.
pub const EA0_TO_DEBYE: f64 = 2.541_746_473;

/// 1 amu·Å²/fs² expressed in eV.
///
/// amu·1e-20 m²/1e-30 s² = 1.66053906660e-17 J, divided by e.
pub const AMU_A2_FS2_TO_EV: f64 = AMU_SI * 1e-20 / 1e-30 / ELEMENTARY_CHARGE;

/// Inverse of the mass-weighted harmonic length scale, 1/(amu·Å²), for a
/// quantum of energy `energy_ev`: ω/ħ in the toolkit's unit system.
pub fn inverse_length_sq(energy_ev: f64) -> f64 {
    energy_ev * AMU_A2_FS2_TO_EV / (HBAR_EV_FS * HBAR_EV_FS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amu_conversion_matches_si_route() {
        // Independent: 1 amu * (1e-10 m)^2 / (1e-15 s)^2 in J, then to eV.
        let joules = 1.660_539_066_60e-27_f64 * 1.0e-20 / 1.0e-30;
        let ev = joules / 1.602_176_634e-19;
        assert!((AMU_A2_FS2_TO_EV - ev).abs() / ev < 1e-12);
        assert!((AMU_A2_FS2_TO_EV - 103.6427).abs() / 103.6427 < 1e-4);
    }

    #[test]
    fn inverse_length_for_160_mev() {
        // s = ½αq² = 1 at q = 0.228586944 amu^½·Å (oracle used 103.64269667, 10 digits)
        let q = 0.228_586_944_065_573_14_f64;
        let s = 0.5 * inverse_length_sq(0.16) * q * q;
        assert!((s - 1.0).abs() < 1e-8, "{s}");
    }

    #[test]
    fn hbar_routes_agree() {
        assert!((HBAR_SI / ELEMENTARY_CHARGE - HBAR_EV_S).abs() / HBAR_EV_S < 1e-9);
        assert!((HBAR_EV_S * 1e15 - HBAR_EV_FS).abs() < 1e-12);
    }

    #[test]
    fn debye_is_1e21_over_c() {
        assert!((DEBYE_TO_SI - 1e-21 / SPEED_OF_LIGHT).abs() / DEBYE_TO_SI < 1e-12);
    }

    #[test]
    fn ea0_in_debye() {
        let ea0 = ELEMENTARY_CHARGE * BOHR_RADIUS_ANGSTROM * 1e-10 / DEBYE_TO_SI;
        assert!((ea0 - EA0_TO_DEBYE).abs() < 1e-8);
    }

    #[test]
    fn electron_mass_routes_agree() {
        assert!((ELECTRON_MASS_SI / AMU_SI - ELECTRON_MASS_AMU).abs() / ELECTRON_MASS_AMU < 1e-9);
    }
}
