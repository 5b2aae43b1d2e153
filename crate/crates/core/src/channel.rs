//! Fiber-channel model: maps a hardware setup and a distance to the
//! protocol-level gains and QBERs, and exposes the underlying per-photon-
//! number yields for oracle comparisons.
//!
//! The model is the standard one for a phase-randomized weak coherent
//! source over lossy fiber with a threshold detector:
//!
//! ```text
//! eta    = eta_bob * 10^(-alpha * L / 10)
//! eta_i  = 1 - (1 - eta)^i
//! Y_i    = Y0 + eta_i - Y0 * eta_i
//! e_i Y_i = e0 * Y0 + e_d * eta_i          (e0 = 1/2)
//! Q_I    = 1 - (1 - Y0) e^(-eta I)          (intensity I)
//! E_I Q_I = e0 * Y0 + e_d * (1 - e^(-eta I))
//! ```
//!
//! The closed forms for `Q_I` and `E_I Q_I` are the exact Poisson sums of
//! the per-photon-number quantities, so the decomposition
//! `sum_i Q_i = Q_mu` holds to rounding error rather than to `O(Y0^2)`.

use crate::error::{Error, Result};
use crate::kv::KvFile;
use crate::math::{poisson_weight, ErrorRate};
use crate::scalar::{as_f64, real, Real};

/// Hardware and channel parameters of a QKD setup.
#[derive(Clone, Debug, PartialEq)]
pub struct SetupParams<T: Real> {
    pub name: String,
    /// Operating wavelength in nm (informational).
    pub wavelength_nm: T,
    /// Fiber loss coefficient in dB/km.
    pub alpha_db_per_km: T,
    /// Detector misalignment error probability, `< 1/2`.
    pub misalignment: T,
    /// Background click probability per pulse (dark counts plus stray
    /// light), `Y0`.
    pub background_rate: T,
    /// Internal transmittance and detector efficiency on the receiver side.
    pub receiver_efficiency: T,
}

impl<T: Real> SetupParams<T> {
    pub fn new(
        name: impl Into<String>,
        wavelength_nm: T,
        alpha_db_per_km: T,
        misalignment: T,
        background_rate: T,
        receiver_efficiency: T,
    ) -> Result<Self> {
        if !(alpha_db_per_km > T::zero()) {
            return Err(Error::SetupParamRange {
                name: "alpha_db_per_km",
                value: as_f64(alpha_db_per_km),
            });
        }
        if !(misalignment >= T::zero() && misalignment < real(0.5)) {
            return Err(Error::SetupParamRange {
                name: "e_d",
                value: as_f64(misalignment),
            });
        }
        if !(background_rate >= T::zero() && background_rate < T::one()) {
            return Err(Error::SetupParamRange {
                name: "y0",
                value: as_f64(background_rate),
            });
        }
        if !(receiver_efficiency > T::zero() && receiver_efficiency <= T::one()) {
            return Err(Error::SetupParamRange {
                name: "eta_bob",
                value: as_f64(receiver_efficiency),
            });
        }
        Ok(Self {
            name: name.into(),
            wavelength_nm,
            alpha_db_per_km,
            misalignment,
            background_rate,
            receiver_efficiency,
        })
    }

    /// The four built-in experiment setups, addressable by name.
    pub fn builtin(name: &str) -> Result<Self> {
        let p = |w, a, ed, y0, eb| {
            Self::new(
                name.to_ascii_uppercase(),
                real(w),
                real(a),
                real(ed),
                real(y0),
                real(eb),
            )
            .expect("built-in parameters are valid")
        };
        match name.to_ascii_uppercase().as_str() {
            "T8" => Ok(p(830.0, 2.5, 0.01, 1e-7, 0.0792)),
            "G13" => Ok(p(1300.0, 0.32, 0.0014, 1.64e-4, 0.0814)),
            "KTH" => Ok(p(1550.0, 0.2, 0.01, 4e-4, 0.1430)),
            "GYS" => Ok(p(1550.0, 0.21, 0.033, 1.7e-6, 0.045)),
            other => Err(Error::UnknownSetup(other.to_string())),
        }
    }

    pub fn builtin_names() -> [&'static str; 4] {
        ["T8", "G13", "KTH", "GYS"]
    }

    /// Parses the plain-text setup format: one `key = value` per line,
    /// `#` comments, required keys `name, wavelength_nm, alpha_db_per_km,
    /// e_d, y0, eta_bob`.
    pub fn parse(text: &str) -> Result<Self> {
        let kv = KvFile::parse(text)?;
        let (name, _) = kv.require("name")?;
        Self::new(
            name,
            real(kv.require_f64("wavelength_nm")?),
            real(kv.require_f64("alpha_db_per_km")?),
            real(kv.require_f64("e_d")?),
            real(kv.require_f64("y0")?),
            real(kv.require_f64("eta_bob")?),
        )
    }
}

/// Overall transmittance at `distance_km`, receiver efficiency included:
/// `eta = eta_bob * 10^(-alpha * L / 10)`.
pub fn transmittance<T: Real>(setup: &SetupParams<T>, distance_km: T) -> T {
    debug_assert!(distance_km >= T::zero());
    let ten: T = real(10.0);
    setup.receiver_efficiency * ten.powf(-setup.alpha_db_per_km * distance_km / ten)
}

/// Weak-decoy and vacuum-decoy observables attached to [`ChannelObservables`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoyObservables<T: Real> {
    /// Weak-decoy intensity `nu`.
    pub nu: T,
    /// Weak-decoy gain `Q_nu`.
    pub gain: T,
    /// Weak-decoy QBER `E_nu`.
    pub qber: ErrorRate<T>,
    /// Vacuum-decoy gain `Q_vac`; estimates the background rate `Y0`.
    pub vacuum_gain: T,
}

/// Protocol-level quantities for one signal intensity, either simulated or
/// measured: the sift factor `q`, the signal gain `Q_mu` and QBER `E_mu`,
/// and optionally the decoy-state block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelObservables<T: Real> {
    /// Basis-sift factor `q` (sifted signal pulses per transmitted pulse).
    pub sift_factor: T,
    /// Signal intensity `mu`.
    pub mu: T,
    /// Signal gain `Q_mu` per sifted-basis pulse.
    pub gain: T,
    /// Signal QBER `E_mu`.
    pub qber: ErrorRate<T>,
    pub decoy: Option<DecoyObservables<T>>,
}

impl<T: Real> ChannelObservables<T> {
    /// Builds observables from measured values (no channel model involved).
    pub fn new(sift_factor: T, mu: T, gain: T, qber: ErrorRate<T>) -> Result<Self> {
        if !(mu > T::zero()) {
            return Err(Error::IntensityRange(as_f64(mu)));
        }
        if !(sift_factor > T::zero() && sift_factor <= T::one()) {
            return Err(Error::SetupParamRange {
                name: "q",
                value: as_f64(sift_factor),
            });
        }
        if !(gain > T::zero() && gain <= T::one()) {
            return Err(Error::DegenerateChannel);
        }
        Ok(Self {
            sift_factor,
            mu,
            gain,
            qber,
            decoy: None,
        })
    }

    pub fn with_decoy(
        mut self,
        nu: T,
        gain: T,
        qber: ErrorRate<T>,
        vacuum_gain: T,
    ) -> Result<Self> {
        if !(nu > T::zero() && nu < self.mu) {
            return Err(Error::DecoyIntensityRange {
                nu: as_f64(nu),
                mu: as_f64(self.mu),
            });
        }
        if !(gain > T::zero() && gain <= T::one()) {
            return Err(Error::DegenerateChannel);
        }
        if !(vacuum_gain >= T::zero()) {
            return Err(Error::SetupParamRange {
                name: "q_vac",
                value: as_f64(vacuum_gain),
            });
        }
        self.decoy = Some(DecoyObservables {
            nu,
            gain,
            qber,
            vacuum_gain,
        });
        Ok(self)
    }

    pub fn decoy(&self) -> Result<&DecoyObservables<T>> {
        self.decoy.as_ref().ok_or(Error::MissingDecoyBlock)
    }
}

/// Gain at one intensity: `1 - (1 - Y0) e^(-eta I)`, written in `expm1`
/// form because the gain sits many orders below 1 at long distance.
#[inline]
fn model_gain<T: Real>(y0: T, eta: T, intensity: T) -> T {
    let x = -eta * intensity;
    -x.exp_m1() + y0 * x.exp()
}

/// `E_I * Q_I`: background errors plus misalignment.
#[inline]
fn model_error_gain<T: Real>(y0: T, e_d: T, eta: T, intensity: T) -> T {
    real::<T>(0.5) * y0 - e_d * (-eta * intensity).exp_m1()
}

/// Simulates the observables at `distance_km` for signal intensity `mu`,
/// optionally with a weak decoy at `nu` and the vacuum decoy.
pub fn simulate_observables<T: Real>(
    setup: &SetupParams<T>,
    distance_km: T,
    mu: T,
    nu: Option<T>,
    sift_factor: T,
) -> Result<ChannelObservables<T>> {
    if !(distance_km >= T::zero()) {
        return Err(Error::DistanceRange(as_f64(distance_km)));
    }
    let eta = transmittance(setup, distance_km);
    let y0 = setup.background_rate;
    let e_d = setup.misalignment;

    let gain = model_gain(y0, eta, mu);
    if !(gain > T::zero()) {
        return Err(Error::DegenerateChannel);
    }
    let qber = ErrorRate::new(model_error_gain(y0, e_d, eta, mu) / gain)?;
    let obs = ChannelObservables::new(sift_factor, mu, gain, qber)?;

    match nu {
        None => Ok(obs),
        Some(nu) => {
            let decoy_gain = model_gain(y0, eta, nu);
            if !(decoy_gain > T::zero()) {
                return Err(Error::DegenerateChannel);
            }
            let decoy_qber = ErrorRate::new(model_error_gain(y0, e_d, eta, nu) / decoy_gain)?;
            obs.with_decoy(nu, decoy_gain, decoy_qber, y0)
        }
    }
}

/// Ground truth for one photon-number component of the source.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhotonNumberTruth<T: Real> {
    pub photon_number: u32,
    /// Yield `Y_i`: detection probability given an `i`-photon pulse.
    pub yield_prob: T,
    /// Error rate `e_i` of the `i`-photon component.
    pub error_rate: ErrorRate<T>,
    /// Gain `Q_i = Y_i * mu^i e^(-mu) / i!`.
    pub gain: T,
}

/// True `(Y_i, e_i, Q_i)` of the model at one photon number: the oracle
/// that estimator bounds are tested against.
pub fn photon_number_truth<T: Real>(
    setup: &SetupParams<T>,
    distance_km: T,
    mu: T,
    photon_number: u32,
) -> Result<PhotonNumberTruth<T>> {
    if !(distance_km >= T::zero()) {
        return Err(Error::DistanceRange(as_f64(distance_km)));
    }
    let eta = transmittance(setup, distance_km);
    let y0 = setup.background_rate;
    // eta_i = 1 - (1 - eta)^i, kept in expm1/ln_1p form for tiny eta
    let eta_i = if photon_number == 0 {
        T::zero()
    } else {
        -(real::<T>(f64::from(photon_number)) * (-eta).ln_1p()).exp_m1()
    };
    let yield_prob = y0 + eta_i - y0 * eta_i;
    let error_rate = if yield_prob > T::zero() {
        ErrorRate::new((real::<T>(0.5) * y0 + setup.misalignment * eta_i) / yield_prob)?
    } else {
        ErrorRate::half()
    };
    Ok(PhotonNumberTruth {
        photon_number,
        yield_prob,
        error_rate,
        gain: yield_prob * poisson_weight(mu, photon_number)?,
    })
}

/// Single-photon ground truth, `photon_number_truth` at `i = 1`.
pub fn true_single_photon<T: Real>(
    setup: &SetupParams<T>,
    distance_km: T,
    mu: T,
) -> Result<PhotonNumberTruth<T>> {
    photon_number_truth(setup, distance_km, mu, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gys() -> SetupParams<f64> {
        SetupParams::builtin("GYS").unwrap()
    }

    #[test]
    fn builtins_carry_table_values() {
        let s = gys();
        assert_eq!(s.alpha_db_per_km, 0.21);
        assert_eq!(s.misalignment, 0.033);
        assert_eq!(s.background_rate, 1.7e-6);
        assert_eq!(s.receiver_efficiency, 0.045);
        for name in SetupParams::<f64>::builtin_names() {
            assert!(SetupParams::<f64>::builtin(name).is_ok());
        }
        assert!(matches!(
            SetupParams::<f64>::builtin("NIST"),
            Err(Error::UnknownSetup(_))
        ));
    }

    #[test]
    fn transmittance_reference_points() {
        let s = gys();
        assert_eq!(transmittance(&s, 0.0), 0.045);
        // 10 dB of loss at 0.21 dB/km
        assert!((transmittance(&s, 47.62) - 4.4997927721e-3).abs() < 1e-10);
        assert!(transmittance(&s, 1e4) < 1e-40);
    }

    #[test]
    fn gain_reference_point() {
        let obs = simulate_observables(&gys(), 0.0, 0.1, None, 0.5).unwrap();
        assert!((obs.gain - 4.4915825376e-3).abs() < 1e-12);
        assert!(obs.qber.value() < 0.5);
    }

    #[test]
    fn no_error_sources_means_zero_qber() {
        let s = SetupParams::<f64>::new("clean", 1550.0, 0.2, 0.0, 0.0, 0.5).unwrap();
        let obs = simulate_observables(&s, 10.0, 0.5, None, 0.5).unwrap();
        assert_eq!(obs.qber.value(), 0.0);
    }

    #[test]
    fn lossless_channel_detects_any_photon() {
        let s = SetupParams::<f64>::new("ideal", 1550.0, 1e-12, 0.0, 0.0, 1.0).unwrap();
        let obs = simulate_observables(&s, 0.0, 0.5, None, 0.5).unwrap();
        assert!((obs.gain - (1.0 - (-0.5f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn degenerate_channel_is_an_error() {
        let s = SetupParams::<f64>::new("dead", 1550.0, 10.0, 0.0, 0.0, 1e-3).unwrap();
        assert_eq!(
            simulate_observables(&s, 4000.0, 1e-6, None, 0.5),
            Err(Error::DegenerateChannel)
        );
    }

    #[test]
    fn decoy_block_population() {
        let obs = simulate_observables(&gys(), 20.0, 0.48, Some(0.05), 0.5).unwrap();
        let d = obs.decoy().unwrap();
        assert_eq!(d.nu, 0.05);
        assert_eq!(d.vacuum_gain, 1.7e-6);
        assert!(d.gain < obs.gain);
        assert!(d.qber.value() > obs.qber.value());
    }

    #[test]
    fn decoy_intensity_ordering_enforced() {
        assert!(matches!(
            simulate_observables(&gys(), 0.0, 0.1, Some(0.1), 0.5),
            Err(Error::DecoyIntensityRange { .. })
        ));
        assert!(matches!(
            simulate_observables(&gys(), 0.0, 0.1, Some(0.2), 0.5),
            Err(Error::DecoyIntensityRange { .. })
        ));
    }

    #[test]
    fn single_photon_reference_point() {
        let t = true_single_photon(&gys(), 0.0, 0.55).unwrap();
        assert!((t.yield_prob - 0.0450016235).abs() < 1e-9);
        assert!((t.gain - 1.4280022980e-2).abs() < 1e-11);
        assert!((t.error_rate.value() - 0.0330176977).abs() < 1e-9);
    }

    #[test]
    fn misalignment_only_when_no_background() {
        let s = SetupParams::<f64>::new("nb", 1550.0, 0.2, 0.02, 0.0, 0.3).unwrap();
        let t = true_single_photon(&s, 15.0, 0.5).unwrap();
        assert!((t.error_rate.value() - 0.02).abs() < 1e-15);
    }

    #[test]
    fn background_only_means_half_error() {
        // eta = 0 is unreachable through the model, so emulate it at enormous
        // distance where the transmittance underflows against Y0.
        let t = true_single_photon(&gys(), 5000.0, 0.5).unwrap();
        assert!((t.error_rate.value() - 0.5).abs() < 1e-6);
        assert!((t.yield_prob - 1.7e-6).abs() < 1e-12);
    }

    #[test]
    fn photon_number_decomposition_matches_closed_forms() {
        for name in SetupParams::<f64>::builtin_names() {
            let s = SetupParams::<f64>::builtin(name).unwrap();
            for d in [0.0, 20.0, 50.0, 100.0] {
                let eta = transmittance(&s, d);
                for mu in [0.1, 0.48, eta] {
                    let obs = simulate_observables(&s, d, mu, None, 0.5).unwrap();
                    let mut gain_sum = 0.0;
                    let mut err_sum = 0.0;
                    for i in 0..=50 {
                        let t = photon_number_truth(&s, d, mu, i).unwrap();
                        gain_sum += t.gain;
                        err_sum += t.error_rate.value() * t.gain;
                    }
                    let rel = |a: f64, b: f64| ((a - b) / b).abs();
                    assert!(
                        rel(gain_sum, obs.gain) < 1e-10,
                        "{name} d={d} mu={mu}: gain {gain_sum} vs {}",
                        obs.gain
                    );
                    assert!(
                        rel(err_sum, obs.qber.value() * obs.gain) < 1e-10,
                        "{name} d={d} mu={mu}: error gain {err_sum} vs {}",
                        obs.qber.value() * obs.gain
                    );
                }
            }
        }
    }

    #[test]
    fn gain_decreases_and_qber_increases_with_distance() {
        let s = gys();
        let mut prev = simulate_observables(&s, 0.0, 0.48, None, 0.5).unwrap();
        for k in 1..=40 {
            let d = 5.0 * f64::from(k);
            let obs = simulate_observables(&s, d, 0.48, None, 0.5).unwrap();
            assert!(obs.gain < prev.gain, "gain not decreasing at {d} km");
            assert!(
                obs.qber.value() > prev.qber.value(),
                "QBER not increasing at {d} km"
            );
            prev = obs;
        }
    }

    #[test]
    fn qber_saturates_at_half_far_out() {
        let obs = simulate_observables(&gys(), 600.0, 0.48, None, 0.5).unwrap();
        assert!((obs.qber.value() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn parse_setup_roundtrip() {
        let text = "\
# custom rig
name = lab1
wavelength_nm = 1550
alpha_db_per_km = 0.19
e_d = 0.015
y0 = 2.0e-6
eta_bob = 0.12
";
        let s = SetupParams::<f64>::parse(text).unwrap();
        assert_eq!(s.name, "lab1");
        assert_eq!(s.alpha_db_per_km, 0.19);
        assert_eq!(s.background_rate, 2.0e-6);
    }

    #[test]
    fn parse_rejects_missing_and_invalid() {
        assert_eq!(
            SetupParams::<f64>::parse("name = x\n").unwrap_err(),
            Error::MissingKey("wavelength_nm")
        );
        let bad = "name = x\nwavelength_nm = 1550\nalpha_db_per_km = 0\ne_d = 0.01\ny0 = 1e-7\neta_bob = 0.1\n";
        assert!(matches!(
            SetupParams::<f64>::parse(bad),
            Err(Error::SetupParamRange {
                name: "alpha_db_per_km",
                ..
            })
        ));
        let bad_ed = "name = x\nwavelength_nm = 1550\nalpha_db_per_km = 0.2\ne_d = 0.5\ny0 = 1e-7\neta_bob = 0.1\n";
        assert!(matches!(
            SetupParams::<f64>::parse(bad_ed),
            Err(Error::SetupParamRange { name: "e_d", .. })
        ));
    }

    #[test]
    fn invalid_scalar_inputs_are_rejected() {
        assert!(matches!(
            simulate_observables(&gys(), -1.0, 0.1, None, 0.5),
            Err(Error::DistanceRange(_))
        ));
        assert!(matches!(
            simulate_observables(&gys(), 1.0, 0.0, None, 0.5),
            Err(Error::IntensityRange(_))
        ));
        assert!(matches!(
            simulate_observables(&gys(), 1.0, 0.1, None, 0.0),
            Err(Error::SetupParamRange { name: "q", .. })
        ));
    }
}
