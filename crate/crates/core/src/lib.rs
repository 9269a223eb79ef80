//! Optical fingerprints of point defects in hexagonal boron nitride from
//! first-principles inputs: vibronic coupling, photoluminescence lineshape,
//! transition dipoles, rates and multi-property matching against experiment.
//!
//! The crate is `no_std` with `alloc`; file formats and the command line live
//! in the `defectprint` crate.

#![no_std]
// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod elements;
pub mod error;
pub mod fingerprint;
pub mod lineshape;
pub mod matching;
pub mod model;
pub mod photophysics;
pub mod physcore;
pub mod vibronic;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use fingerprint::Fingerprint;
pub use matching::{match_candidates, Candidate, ExperimentRecord, Field, MatchResult, Measurement, Weights};
pub use model::{
    Atom, DipoleRecord, Geometry, MomentumUnits, Normalization, PhononMode, PhononModeSet, RunConfig, SpinChannel,
};
