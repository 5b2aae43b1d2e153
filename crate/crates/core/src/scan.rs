//! Distance sweeps, optimal-intensity search, and secure-cutoff-distance
//! finding.
//!
//! Intensity policy: in non-decoy mode the auto intensity follows the
//! `mu = eta` rule at each distance. In decoy mode the auto intensity is
//! chosen once per setup (the rate-optimal intensity at the reference
//! distance) and held fixed across the sweep, matching how an experiment
//! runs one transmitter setting for a whole campaign.

use std::io;

use crate::channel::{simulate_observables, transmittance, ChannelObservables, SetupParams};
use crate::error::{Error, Result};
use crate::opt::{bisect_positive_edge, grid_then_golden_max};
use crate::postprocess::{
    estimate_decoy_vw, estimate_pessimistic, key_rate, E1Source, Scheme, SinglePhotonEstimate,
};
use crate::scalar::{real, Real};

/// Reference distance at which the decoy-mode auto intensity is fixed.
const REFERENCE_DISTANCE_KM: f64 = 0.0;

/// Number of coarse grid points bracketing the 1-D intensity search.
const MU_GRID_POINTS: usize = 64;

/// Absolute tolerance of the intensity search.
const MU_TOLERANCE: f64 = 1e-4;

/// Resolution of the cutoff-distance bisection, in km.
const DISTANCE_RESOLUTION_KM: f64 = 0.01;

/// Upper bound of the cutoff search, in km.
const DISTANCE_CAP_KM: f64 = 2e4;

/// Whether single-photon bounds come from decoy states or from the
/// pessimistic no-decoy assumption.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    NonDecoy,
    Decoy,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::NonDecoy => "nondecoy",
            Mode::Decoy => "decoy",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "nondecoy" => Ok(Mode::NonDecoy),
            "decoy" => Ok(Mode::Decoy),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Signal-intensity policy for sweeps and cutoff searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MuPolicy<T: Real> {
    /// `mu = eta(distance)` in non-decoy mode; the fixed per-setup optimum
    /// in decoy mode.
    Auto,
    Fixed(T),
}

/// Everything a sweep needs besides the setup and the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanParams<T: Real> {
    pub mode: Mode,
    pub mu_policy: MuPolicy<T>,
    /// Weak-decoy intensity (decoy mode only).
    pub nu: T,
    /// Basis-sift factor `q`.
    pub sift_factor: T,
    /// Error-correction efficiency `f`.
    pub ec_efficiency: T,
    /// QBER source for the decoy single-photon error bound.
    pub e1_source: E1Source,
}

impl<T: Real> Default for ScanParams<T> {
    fn default() -> Self {
        Self {
            mode: Mode::NonDecoy,
            mu_policy: MuPolicy::Auto,
            nu: real(0.05),
            sift_factor: real(0.5),
            ec_efficiency: real(1.16),
            e1_source: E1Source::Decoy,
        }
    }
}

/// One sweep sample. Rates keep their sign except at flagged points,
/// where no estimate exists and the rate is reported as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint<T: Real> {
    pub distance_km: T,
    pub mu: T,
    pub rate_lutkenhaus: T,
    pub rate_gllp: T,
    pub gain: T,
    pub qber: T,
    pub gain_bound: Option<T>,
    pub error_bound: Option<T>,
    pub flag: PointFlag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFlag {
    Ok,
    /// The pessimistic estimator found no untagged qubits left.
    PnsInsecure,
    /// The decoy estimator's single-photon gain bound collapsed.
    EstimatorCollapse,
}

fn observe<T: Real>(
    setup: &SetupParams<T>,
    params: &ScanParams<T>,
    distance_km: T,
    mu: T,
) -> Result<ChannelObservables<T>> {
    let nu = match params.mode {
        Mode::NonDecoy => None,
        Mode::Decoy => Some(params.nu),
    };
    simulate_observables(setup, distance_km, mu, nu, params.sift_factor)
}

fn estimate<T: Real>(
    params: &ScanParams<T>,
    obs: &ChannelObservables<T>,
) -> Result<SinglePhotonEstimate<T>> {
    match params.mode {
        Mode::NonDecoy => estimate_pessimistic(obs),
        Mode::Decoy => estimate_decoy_vw(obs, params.e1_source),
    }
}

/// Signed rate, with estimator failures mapped to `-inf` so that cutoff
/// bisection sees them as "no key".
fn rate_or_neg_inf<T: Real>(
    setup: &SetupParams<T>,
    params: &ScanParams<T>,
    distance_km: T,
    mu: T,
    scheme: Scheme,
) -> T {
    let rate = observe(setup, params, distance_km, mu)
        .and_then(|obs| {
            let est = estimate(params, &obs)?;
            key_rate(scheme, &obs, &est, params.ec_efficiency)
        })
        .map(|r| r.rate);
    rate.unwrap_or_else(|_| T::neg_infinity())
}

/// Best intensity and the rate it achieves, sign unchecked.
fn argmax_mu<T: Real>(
    setup: &SetupParams<T>,
    distance_km: T,
    scheme: Scheme,
    params: &ScanParams<T>,
) -> (T, T) {
    let lo = match params.mode {
        Mode::NonDecoy => real(MU_TOLERANCE),
        Mode::Decoy => params.nu + real(MU_TOLERANCE),
    };
    if !(lo < T::one()) {
        // decoy intensity at or above the search cap leaves no room
        return (lo, T::neg_infinity());
    }
    grid_then_golden_max(
        |mu| rate_or_neg_inf(setup, params, distance_km, mu, scheme),
        lo,
        T::one(),
        MU_GRID_POINTS,
        real(MU_TOLERANCE),
    )
}

/// Intensity maximizing the key rate over `mu` in `(0, 1]` at one distance,
/// to absolute tolerance 1e-4. Fails with [`Error::NoPositiveRate`] when no
/// intensity yields a positive rate.
pub fn optimal_mu<T: Real>(
    setup: &SetupParams<T>,
    distance_km: T,
    scheme: Scheme,
    params: &ScanParams<T>,
) -> Result<T> {
    // Surface parameter errors before the search maps them to -inf.
    observe(setup, params, distance_km, params.nu + real(MU_TOLERANCE))?;
    let (mu, best) = argmax_mu(setup, distance_km, scheme, params);
    if best > T::zero() {
        Ok(mu)
    } else {
        Err(Error::NoPositiveRate)
    }
}

/// Resolves the sweep intensity policy. Decoy auto fixes the intensity at
/// the reference distance, optimizing the unconditional-analysis rate and
/// reusing the same intensity for the other scheme's curve, since a
/// transmitter runs one signal setting. The returned closure maps each
/// distance to the intensity to transmit.
fn resolve_mu_policy<T: Real>(
    setup: &SetupParams<T>,
    params: &ScanParams<T>,
) -> Result<impl Fn(T) -> T> {
    enum Resolved<T> {
        PerDistanceEta,
        Fixed(T),
    }
    let resolved = match (params.mode, params.mu_policy) {
        (_, MuPolicy::Fixed(mu)) => {
            if !(mu > T::zero()) {
                return Err(Error::IntensityRange(crate::scalar::as_f64(mu)));
            }
            Resolved::Fixed(mu)
        }
        (Mode::NonDecoy, MuPolicy::Auto) => Resolved::PerDistanceEta,
        (Mode::Decoy, MuPolicy::Auto) => {
            let (mu, _) = argmax_mu(setup, real(REFERENCE_DISTANCE_KM), Scheme::Gllp, params);
            Resolved::Fixed(mu)
        }
    };
    let setup = setup.clone();
    Ok(move |distance_km: T| match resolved {
        Resolved::PerDistanceEta => transmittance(&setup, distance_km),
        Resolved::Fixed(mu) => mu,
    })
}

/// Intensity the sweep policy transmits at `distance_km`.
pub fn policy_mu<T: Real>(
    setup: &SetupParams<T>,
    params: &ScanParams<T>,
    distance_km: T,
) -> Result<T> {
    Ok(resolve_mu_policy(setup, params)?(distance_km))
}

/// Runs the sweep over an ascending distance grid, one point per distance.
/// Estimator failures become flagged zero-rate points; other errors abort.
pub fn sweep<T: Real>(
    setup: &SetupParams<T>,
    params: &ScanParams<T>,
    distances: &[T],
) -> Result<Vec<SweepPoint<T>>> {
    if distances.is_empty() || distances.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::DistanceGrid);
    }
    let mu_at = resolve_mu_policy(setup, params)?;

    let mut points = Vec::with_capacity(distances.len());
    for &distance_km in distances {
        let mu = mu_at(distance_km);
        let obs = observe(setup, params, distance_km, mu)?;
        let point = match estimate(params, &obs) {
            Ok(est) => {
                let lut = key_rate(Scheme::Lutkenhaus, &obs, &est, params.ec_efficiency)?;
                let gllp = key_rate(Scheme::Gllp, &obs, &est, params.ec_efficiency)?;
                SweepPoint {
                    distance_km,
                    mu,
                    rate_lutkenhaus: lut.rate,
                    rate_gllp: gllp.rate,
                    gain: obs.gain,
                    qber: obs.qber.value(),
                    gain_bound: Some(est.gain_bound),
                    error_bound: Some(est.error_bound),
                    flag: PointFlag::Ok,
                }
            }
            Err(Error::PnsInsecure { .. }) | Err(Error::EstimatorCollapse(_)) => {
                let flag = match params.mode {
                    Mode::NonDecoy => PointFlag::PnsInsecure,
                    Mode::Decoy => PointFlag::EstimatorCollapse,
                };
                SweepPoint {
                    distance_km,
                    mu,
                    rate_lutkenhaus: T::zero(),
                    rate_gllp: T::zero(),
                    gain: obs.gain,
                    qber: obs.qber.value(),
                    gain_bound: None,
                    error_bound: None,
                    flag,
                }
            }
            Err(other) => return Err(other),
        };
        points.push(point);
    }
    Ok(points)
}

/// Largest distance with a positive key rate, located by doubling plus
/// bisection to 0.01 km. Fails with [`Error::NoPositiveRate`] when the
/// rate is not positive at distance zero; the search is capped at
/// 20000 km.
pub fn max_distance<T: Real>(
    setup: &SetupParams<T>,
    scheme: Scheme,
    params: &ScanParams<T>,
) -> Result<T> {
    let mu_at = resolve_mu_policy(setup, params)?;
    let rate = |d: T| rate_or_neg_inf(setup, params, d, mu_at(d), scheme);

    // Propagate a real error (bad q, bad nu, ...) rather than -inf.
    observe(setup, params, T::zero(), mu_at(T::zero()))?;
    if !(rate(T::zero()) > T::zero()) {
        return Err(Error::NoPositiveRate);
    }
    Ok(bisect_positive_edge(
        rate,
        T::zero(),
        real(10.0),
        real(DISTANCE_CAP_KM),
        real(DISTANCE_RESOLUTION_KM),
    )
    .unwrap_or_else(|| real(DISTANCE_CAP_KM)))
}

/// Writes sweep points in the CSV schema
/// `distance_km,mu,scheme,mode,Q_mu,E_mu,Q1_bound,e1_bound,R`,
/// one row per (distance, scheme). Rates are clamped at zero here; flagged
/// points carry empty bound fields.
pub fn write_csv<T: Real, W: io::Write>(
    out: &mut W,
    mode: Mode,
    schemes: &[Scheme],
    points: &[SweepPoint<T>],
) -> io::Result<()> {
    writeln!(out, "distance_km,mu,scheme,mode,Q_mu,E_mu,Q1_bound,e1_bound,R")?;
    for p in points {
        for &scheme in schemes {
            let rate = match scheme {
                Scheme::Lutkenhaus => p.rate_lutkenhaus,
                Scheme::Gllp => p.rate_gllp,
            };
            let rate = if rate > T::zero() { rate } else { T::zero() };
            let bound = |v: Option<T>| v.map(|x| format!("{x:.6e}")).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{:.6e},{:.6e},{},{},{:.5e}",
                p.distance_km,
                p.mu,
                scheme.as_str(),
                mode.as_str(),
                p.gain,
                p.qber,
                bound(p.gain_bound),
                bound(p.error_bound),
                rate,
            )?;
        }
    }
    Ok(())
}
