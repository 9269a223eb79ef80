//! Constants, unit conversions, energy grids and Gaussian broadening.

pub mod broaden;
pub mod constants;
pub mod grid;

pub use broaden::{gaussian_broaden, Stick};
pub use constants::*;
pub use grid::{ev_to_nm, nm_to_ev, EnergyGrid, Spectrum};
