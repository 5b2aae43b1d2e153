//! Key-rate simulation and security analysis for BB84 with weak coherent
//! pulses.
//!
//! The crate models the standard fiber channel, bounds the single-photon
//! contribution either pessimistically (no decoys) or with the
//! Vacuum+Weak decoy estimator, and evaluates the secret-key rate under
//! two post-processing analyses, individual-attack and unconditional
//! (tagged-qubit), which differ only in the privacy-amplification
//! penalty. On top of that sit distance sweeps,
//! optimal-intensity search, cutoff-distance finding, and an analyzer for
//! raw experimental count files.
//!
//! Everything numeric is generic over the scalar type via [`Real`];
//! the `*64` aliases below fix `f64`, the working precision of the CLI
//! and the file formats.

// Validation deliberately uses `!(x > 0)`-style comparisons: unlike
// `x <= 0`, they also reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod experiment;
pub mod math;
pub mod opt;
pub mod postprocess;
pub mod scan;
pub mod scalar;

mod kv;

pub use error::{Error, Result};
pub use postprocess::{E1Source, Scheme};
pub use scalar::Real;
pub use scan::{Mode, MuPolicy};

/// `f64` instantiations used by the CLI and most call sites.
pub type ErrorRate64 = math::ErrorRate<f64>;
pub type Setup64 = channel::SetupParams<f64>;
pub type Observables64 = channel::ChannelObservables<f64>;
pub type Truth64 = channel::PhotonNumberTruth<f64>;
pub type Estimate64 = postprocess::SinglePhotonEstimate<f64>;
pub type RateResult64 = postprocess::RateResult<f64>;
pub type ScanParams64 = scan::ScanParams<f64>;
pub type SweepPoint64 = scan::SweepPoint<f64>;
pub type RawCounts64 = experiment::RawExperimentCounts<f64>;
pub type Report64 = experiment::AnalysisReport<f64>;
