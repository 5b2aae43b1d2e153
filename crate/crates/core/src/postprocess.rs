//! Secure-key-rate computation: single-photon bounds (pessimistic or
//! Vacuum+Weak decoy) feeding the two post-processing analyses.
//!
//! Both analyses share the rate shape
//!
//! ```text
//! R = q * ( -f * Q_mu * H2(E_mu) + Q1 * (1 - penalty(e1)) )
//! ```
//!
//! differing only in the privacy-amplification penalty: `tau(e1) =
//! log2(1 + 4 e1 - 4 e1^2)` for the individual-attack analysis and
//! `H2(e1)` for the unconditional one. Privacy amplification is credited
//! only to the single-photon (untagged) fraction.

use crate::channel::ChannelObservables;
use crate::error::{Error, Result};
use crate::math::{binary_entropy, lutkenhaus_pa_term, multiphoton_probability, ErrorRate};
use crate::scalar::{as_f64, real, Real};

/// Post-processing analysis selecting the privacy-amplification penalty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Individual-attack analysis; penalty `tau(e1)`.
    Lutkenhaus,
    /// Unconditional (tagged-qubit) analysis; penalty `H2(e1)`.
    Gllp,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Lutkenhaus, Scheme::Gllp];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Lutkenhaus => "lutkenhaus",
            Scheme::Gllp => "gllp",
        }
    }

    /// Privacy-amplification penalty, saturated at 1 for `e1 > 1/2` where
    /// no single-photon privacy survives.
    pub fn penalty<T: Real>(self, e1: T) -> T {
        if e1 > real(0.5) {
            return T::one();
        }
        let e = ErrorRate::new(e1).expect("e1 <= 1/2 here");
        match self {
            Scheme::Lutkenhaus => lutkenhaus_pa_term(e).expect("e1 <= 1/2 here"),
            Scheme::Gllp => binary_entropy(e),
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "lutkenhaus" => Ok(Scheme::Lutkenhaus),
            "gllp" => Ok(Scheme::Gllp),
            other => Err(format!("unknown scheme `{other}`")),
        }
    }
}

/// Which QBER feeds the single-photon error bound in the decoy estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum E1Source {
    /// Weak-decoy QBER `E_nu` (the generic estimator).
    Decoy,
    /// Signal QBER `E_mu`; useful when decoy and signal paths see different
    /// hardware imperfections.
    Signal,
}

impl std::str::FromStr for E1Source {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "decoy" => Ok(E1Source::Decoy),
            "signal" => Ok(E1Source::Signal),
            other => Err(format!("unknown e1 source `{other}`")),
        }
    }
}

/// How a [`SinglePhotonEstimate`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    /// All losses and errors attributed to single photons (no decoys).
    Pessimistic,
    /// Vacuum+Weak decoy estimator, `e1` from the weak decoy.
    DecoyVw,
    /// Vacuum+Weak decoy estimator, `e1` from the signal QBER.
    DecoyVwSignalE1,
}

/// Bounds on the single-photon contribution: a lower bound on the gain
/// `Q1` and an upper bound on the error rate `e1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SinglePhotonEstimate<T: Real> {
    /// Lower bound on the single-photon gain `Q1`.
    pub gain_bound: T,
    /// Upper bound on the single-photon error rate `e1`. Only meaningful
    /// for a key when `<= 1/2`; larger values mean the bound is vacuous.
    pub error_bound: T,
    pub method: EstimateMethod,
    /// Tagged (multi-photon) fraction `delta = p_M / Q_mu`; pessimistic
    /// estimates only.
    pub tagged_fraction: Option<T>,
    /// Set when the `e1` numerator came out negative on measured data and
    /// was clamped to zero.
    pub error_bound_clamped: bool,
}

/// Non-decoy bound: attribute every loss and error to single photons.
///
/// `Q1 = Q_mu - p_M` and `e1 = Q_mu E_mu / Q1`. Fails with
/// [`Error::PnsInsecure`] when `Q_mu <= p_M`: every detection may then
/// stem from a multi-photon pulse, and a photon-number-splitting attacker
/// can know the whole key without causing a single error.
pub fn estimate_pessimistic<T: Real>(
    obs: &ChannelObservables<T>,
) -> Result<SinglePhotonEstimate<T>> {
    let p_multi = multiphoton_probability(obs.mu)?;
    let gain_bound = obs.gain - p_multi;
    if !(gain_bound > T::zero()) {
        return Err(Error::PnsInsecure {
            gain: as_f64(obs.gain),
            multiphoton: as_f64(p_multi),
        });
    }
    Ok(SinglePhotonEstimate {
        gain_bound,
        error_bound: obs.gain * obs.qber.value() / gain_bound,
        method: EstimateMethod::Pessimistic,
        tagged_fraction: Some(p_multi / obs.gain),
        error_bound_clamped: false,
    })
}

/// Vacuum+Weak decoy bound.
///
/// ```text
/// Q1 >= mu^2 e^-mu / (mu nu - nu^2)
///       * ( Q_nu e^nu - Q_mu e^mu nu^2/mu^2 - (mu^2 - nu^2)/mu^2 * Y0 )
/// e1 <= (E_nu Q_nu e^nu - Y0/2) / (Q1 e^mu nu / mu)        (decoy source)
/// e1 <= (E_mu Q_mu e^mu - Y0/2) / (Q1 e^mu)                (signal source)
/// ```
///
/// with `Y0` read from the vacuum-decoy gain. A negative `e1` numerator
/// (possible on fluctuating measured data) is clamped to zero and flagged.
pub fn estimate_decoy_vw<T: Real>(
    obs: &ChannelObservables<T>,
    e1_source: E1Source,
) -> Result<SinglePhotonEstimate<T>> {
    let decoy = obs.decoy()?;
    let (mu, nu) = (obs.mu, decoy.nu);
    let y0 = decoy.vacuum_gain;
    let e0: T = real(0.5);

    let prefactor = mu * mu * (-mu).exp() / (mu * nu - nu * nu);
    let bracket = decoy.gain * nu.exp()
        - obs.gain * mu.exp() * nu * nu / (mu * mu)
        - (mu * mu - nu * nu) / (mu * mu) * y0;
    let gain_bound = prefactor * bracket;
    if !(gain_bound > T::zero()) {
        return Err(Error::EstimatorCollapse(as_f64(gain_bound)));
    }

    let (numerator, denominator, method) = match e1_source {
        E1Source::Decoy => (
            decoy.qber.value() * decoy.gain * nu.exp() - e0 * y0,
            gain_bound * mu.exp() * nu / mu,
            EstimateMethod::DecoyVw,
        ),
        E1Source::Signal => (
            obs.qber.value() * obs.gain * mu.exp() - e0 * y0,
            gain_bound * mu.exp(),
            EstimateMethod::DecoyVwSignalE1,
        ),
    };
    let clamped = numerator < T::zero();
    Ok(SinglePhotonEstimate {
        gain_bound,
        error_bound: numerator.max(T::zero()) / denominator,
        method,
        tagged_fraction: None,
        error_bound_clamped: clamped,
    })
}

/// A key rate and its two components under one scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateResult<T: Real> {
    pub scheme: Scheme,
    /// Secret bits per transmitted pulse; negative values are preserved so
    /// that cutoff searches can see the sign change.
    pub rate: T,
    /// Error-correction cost `q * f * Q_mu * H2(E_mu)`.
    pub ec_term: T,
    /// Privacy-amplification yield `q * Q1 * (1 - penalty(e1))`.
    pub pa_term: T,
    /// Error-correction efficiency `f` used.
    pub ec_efficiency: T,
}

/// Secret-key rate under `scheme` for the given observables and
/// single-photon bounds. `ec_efficiency >= 1` (1.16 for Cascade).
pub fn key_rate<T: Real>(
    scheme: Scheme,
    obs: &ChannelObservables<T>,
    estimate: &SinglePhotonEstimate<T>,
    ec_efficiency: T,
) -> Result<RateResult<T>> {
    if !(ec_efficiency >= T::one()) {
        return Err(Error::EcEfficiencyRange(as_f64(ec_efficiency)));
    }
    let q = obs.sift_factor;
    let ec_term = q * ec_efficiency * obs.gain * binary_entropy(obs.qber);
    let pa_term = q * estimate.gain_bound * (T::one() - scheme.penalty(estimate.error_bound));
    Ok(RateResult {
        scheme,
        rate: pa_term - ec_term,
        ec_term,
        pa_term,
        ec_efficiency,
    })
}

/// Final key length `floor(N * R)` in bits, zero when the rate is not
/// positive.
pub fn final_key_length<T: Real>(rate: T, pulses: u64) -> u64 {
    if !(rate > T::zero()) {
        return 0;
    }
    let bits = (real::<T>(pulses as f64) * rate).floor();
    bits.to_u64().unwrap_or(0)
}
