//! Dipoles, radiative and non-radiative rates, quantum efficiency and
//! spin-configuration selection.

pub mod dipole;
pub mod nonrad;
pub mod overlap;
pub mod rates;
pub mod spin;

pub use dipole::{fold_to_axis, polarization_angle, transition_dipole, DipoleMoment, Polarization, OUT_OF_PLANE};
pub use nonrad::{nonradiative_rate, ModeSource, NonradiativeRate};
pub use overlap::{OscillatorPair, OverlapTable};
pub use rates::{apply_purcell, lifetime_ns, quantum_efficiency, radiative_rate, RateReport};
pub use spin::{select_stable_configuration, Multiplicity, OdmrOutlook, SpinConfiguration};
