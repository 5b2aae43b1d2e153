//! Analysis of a real decoy-state run: ingest raw pulse/detection counts,
//! derive the security parameters, and chain the Vacuum+Weak estimator and
//! both key-rate analyses down to final key lengths.
//!
//! Published parameter tables sometimes disagree with the naive count
//! ratios (duty-cycle and calibration corrections are applied upstream and
//! rarely documented). The analyzer therefore computes every parameter
//! from the raw counts, accepts per-parameter overrides, and reports both
//! values with provenance so the discrepancy stays visible.

use crate::channel::ChannelObservables;
use crate::error::{Error, Result};
use crate::kv::KvFile;
use crate::math::ErrorRate;
use crate::postprocess::{
    estimate_decoy_vw, final_key_length, key_rate, E1Source, RateResult, Scheme,
    SinglePhotonEstimate,
};
use crate::scalar::{as_f64, real, Real};

/// Slack allowed on the pulse-budget check `n_mu + n_nu + n_vac <= n`;
/// published tables round each block independently and can overshoot.
const PULSE_BUDGET_SLACK: f64 = 0.01;

/// Raw counts of one decoy-state run: total pulses, the vacuum-decoy
/// block, the signal block, and the weak-decoy block.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawExperimentCounts<T: Real> {
    /// Total pulses sent (`n`).
    pub pulses_total: u64,
    /// Vacuum-decoy pulses (`n_vac`) and detections (`k_vac`).
    pub vacuum_pulses: u64,
    pub vacuum_detections: u64,
    /// Signal intensity (`mu`).
    pub mu: T,
    /// Signal pulses (`n_mu`), the sifted-basis subset (`n_mu_s`), sifted
    /// detections (`k_mu_s`), and erroneous sifted bits (`k_mu_err`).
    pub signal_pulses: u64,
    pub signal_sifted_pulses: u64,
    pub signal_detections: u64,
    pub signal_errors: u64,
    /// Weak-decoy intensity (`nu`) and its block (`n_nu`, `n_nu_s`,
    /// `k_nu_s`, `k_nu_err`).
    pub decoy_pulses: u64,
    pub decoy_sifted_pulses: u64,
    pub decoy_detections: u64,
    pub decoy_errors: u64,
    pub nu: T,
}

impl<T: Real> RawExperimentCounts<T> {
    /// Checks the count orderings and the pulse budget.
    pub fn validate(&self) -> Result<()> {
        let chain = |err: &str| Err(Error::CountConstraint(err.to_string()));
        if self.pulses_total == 0 {
            return chain("n must be positive");
        }
        if !(self.mu > T::zero()) {
            return Err(Error::IntensityRange(as_f64(self.mu)));
        }
        if !(self.nu > T::zero() && self.nu < self.mu) {
            return Err(Error::DecoyIntensityRange {
                nu: as_f64(self.nu),
                mu: as_f64(self.mu),
            });
        }
        if self.signal_errors > self.signal_detections {
            return chain("k_mu_err <= k_mu_s");
        }
        if self.signal_detections > self.signal_sifted_pulses {
            return chain("k_mu_s <= n_mu_s");
        }
        if self.signal_sifted_pulses > self.signal_pulses {
            return chain("n_mu_s <= n_mu");
        }
        if self.signal_pulses > self.pulses_total {
            return chain("n_mu <= n");
        }
        if self.decoy_errors > self.decoy_detections {
            return chain("k_nu_err <= k_nu_s");
        }
        if self.decoy_detections > self.decoy_sifted_pulses {
            return chain("k_nu_s <= n_nu_s");
        }
        if self.decoy_sifted_pulses > self.decoy_pulses {
            return chain("n_nu_s <= n_nu");
        }
        if self.decoy_pulses > self.pulses_total {
            return chain("n_nu <= n");
        }
        if self.vacuum_detections > self.vacuum_pulses {
            return chain("k_vac <= n_vac");
        }
        if self.vacuum_pulses > self.pulses_total {
            return chain("n_vac <= n");
        }
        let budget = (self.pulses_total as f64) * (1.0 + PULSE_BUDGET_SLACK);
        let used = self.signal_pulses as f64 + self.decoy_pulses as f64 + self.vacuum_pulses as f64;
        if used > budget {
            return chain("n_mu + n_nu + n_vac <= n");
        }
        Ok(())
    }

    /// Parses the plain-text raw-counts format; keys are `n, n_vac, k_vac,
    /// mu, n_mu, n_mu_s, k_mu_s, k_mu_err, nu, n_nu, n_nu_s, k_nu_s,
    /// k_nu_err`, one `key = value` per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let kv = KvFile::parse(text)?;
        let counts = Self {
            pulses_total: kv.require_u64("n")?,
            vacuum_pulses: kv.require_u64("n_vac")?,
            vacuum_detections: kv.require_u64("k_vac")?,
            mu: real(kv.require_f64("mu")?),
            signal_pulses: kv.require_u64("n_mu")?,
            signal_sifted_pulses: kv.require_u64("n_mu_s")?,
            signal_detections: kv.require_u64("k_mu_s")?,
            signal_errors: kv.require_u64("k_mu_err")?,
            nu: real(kv.require_f64("nu")?),
            decoy_pulses: kv.require_u64("n_nu")?,
            decoy_sifted_pulses: kv.require_u64("n_nu_s")?,
            decoy_detections: kv.require_u64("k_nu_s")?,
            decoy_errors: kv.require_u64("k_nu_err")?,
        };
        counts.validate()?;
        Ok(counts)
    }
}

/// Where a derived parameter's value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ComputedFromRaw,
    SuppliedOverride,
}

/// One security parameter: the value in use, plus the raw-count ratio it
/// would have had without an override.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedParam<T: Real> {
    pub value: T,
    pub computed: T,
    pub provenance: Provenance,
}

impl<T: Real> DerivedParam<T> {
    fn computed(value: T) -> Self {
        Self {
            value,
            computed: value,
            provenance: Provenance::ComputedFromRaw,
        }
    }

    fn override_with(&mut self, value: Option<T>) {
        if let Some(v) = value {
            self.value = v;
            self.provenance = Provenance::SuppliedOverride;
        }
    }
}

/// The six parameters feeding the security analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedParams<T: Real> {
    /// `q = n_mu_s / n`.
    pub sift_factor: DerivedParam<T>,
    /// `Q_mu = k_mu_s / n_mu_s`.
    pub signal_gain: DerivedParam<T>,
    /// `E_mu = k_mu_err / k_mu_s`.
    pub signal_qber: DerivedParam<T>,
    /// `Y0 = Q_vac = k_vac / n_vac`.
    pub background_rate: DerivedParam<T>,
    /// `Q_nu = k_nu_s / n_nu_s`.
    pub decoy_gain: DerivedParam<T>,
    /// `E_nu = k_nu_err / k_nu_s`.
    pub decoy_qber: DerivedParam<T>,
}

/// Optional replacements for individual derived parameters, keyed as
/// `q, q_mu, e_mu, y0, q_nu, e_nu`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides<T: Real> {
    pub sift_factor: Option<T>,
    pub signal_gain: Option<T>,
    pub signal_qber: Option<T>,
    pub background_rate: Option<T>,
    pub decoy_gain: Option<T>,
    pub decoy_qber: Option<T>,
}

impl<T: Real> Overrides<T> {
    pub fn set(&mut self, key: &str, value: T) -> Result<()> {
        match key.to_ascii_lowercase().as_str() {
            "q" => self.sift_factor = Some(value),
            "q_mu" => self.signal_gain = Some(value),
            "e_mu" => self.signal_qber = Some(value),
            "y0" => self.background_rate = Some(value),
            "q_nu" => self.decoy_gain = Some(value),
            "e_nu" => self.decoy_qber = Some(value),
            other => return Err(Error::UnknownOverride(other.to_string())),
        }
        Ok(())
    }
}

fn ratio<T: Real>(
    num: u64,
    den: u64,
    den_name: &'static str,
    target: &'static str,
) -> Result<T> {
    if den == 0 {
        return Err(Error::ZeroCount {
            name: den_name,
            target,
        });
    }
    Ok(real::<T>(num as f64) / real(den as f64))
}

/// Derives the security parameters from raw counts, all marked as
/// computed. Zero denominators are reported by name.
pub fn derive_params<T: Real>(raw: &RawExperimentCounts<T>) -> Result<DerivedParams<T>> {
    Ok(DerivedParams {
        sift_factor: DerivedParam::computed(ratio(
            raw.signal_sifted_pulses,
            raw.pulses_total,
            "n",
            "q",
        )?),
        signal_gain: DerivedParam::computed(ratio(
            raw.signal_detections,
            raw.signal_sifted_pulses,
            "n_mu_s",
            "Q_mu",
        )?),
        signal_qber: DerivedParam::computed(ratio(
            raw.signal_errors,
            raw.signal_detections,
            "k_mu_s",
            "E_mu",
        )?),
        background_rate: DerivedParam::computed(ratio(
            raw.vacuum_detections,
            raw.vacuum_pulses,
            "n_vac",
            "Y0",
        )?),
        decoy_gain: DerivedParam::computed(ratio(
            raw.decoy_detections,
            raw.decoy_sifted_pulses,
            "n_nu_s",
            "Q_nu",
        )?),
        decoy_qber: DerivedParam::computed(ratio(
            raw.decoy_errors,
            raw.decoy_detections,
            "k_nu_s",
            "E_nu",
        )?),
    })
}

impl<T: Real> DerivedParams<T> {
    pub fn apply(&mut self, overrides: &Overrides<T>) {
        self.sift_factor.override_with(overrides.sift_factor);
        self.signal_gain.override_with(overrides.signal_gain);
        self.signal_qber.override_with(overrides.signal_qber);
        self.background_rate
            .override_with(overrides.background_rate);
        self.decoy_gain.override_with(overrides.decoy_gain);
        self.decoy_qber.override_with(overrides.decoy_qber);
    }

    pub fn to_observables(&self, mu: T, nu: T) -> Result<ChannelObservables<T>> {
        ChannelObservables::new(
            self.sift_factor.value,
            mu,
            self.signal_gain.value,
            ErrorRate::new(self.signal_qber.value)?,
        )?
        .with_decoy(
            nu,
            self.decoy_gain.value,
            ErrorRate::new(self.decoy_qber.value)?,
            self.background_rate.value,
        )
    }
}

/// Rate and final key length under one scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeOutcome<T: Real> {
    pub rate: RateResult<T>,
    pub key_bits: u64,
}

/// Full output of [`analyze`].
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport<T: Real> {
    pub pulses_total: u64,
    pub mu: T,
    pub nu: T,
    pub params: DerivedParams<T>,
    pub e1_source: E1Source,
    pub ec_efficiency: T,
    pub estimate: SinglePhotonEstimate<T>,
    pub lutkenhaus: SchemeOutcome<T>,
    pub gllp: SchemeOutcome<T>,
}

/// Runs the whole post-processing chain on one raw data set:
/// derive (with overrides) -> Vacuum+Weak bounds -> both key rates ->
/// final key lengths. Errors name the failing stage.
pub fn analyze<T: Real>(
    raw: &RawExperimentCounts<T>,
    overrides: &Overrides<T>,
    e1_source: E1Source,
    ec_efficiency: T,
) -> Result<AnalysisReport<T>> {
    raw.validate().map_err(|e| e.at_stage("validate-counts"))?;
    let mut params = derive_params(raw).map_err(|e| e.at_stage("derive-params"))?;
    params.apply(overrides);
    let obs = params
        .to_observables(raw.mu, raw.nu)
        .map_err(|e| e.at_stage("derive-params"))?;
    let estimate =
        estimate_decoy_vw(&obs, e1_source).map_err(|e| e.at_stage("estimate-decoy-vw"))?;
    let outcome = |scheme| -> Result<SchemeOutcome<T>> {
        let rate =
            key_rate(scheme, &obs, &estimate, ec_efficiency).map_err(|e| e.at_stage("key-rate"))?;
        Ok(SchemeOutcome {
            key_bits: final_key_length(rate.rate, raw.pulses_total),
            rate,
        })
    };
    Ok(AnalysisReport {
        pulses_total: raw.pulses_total,
        mu: raw.mu,
        nu: raw.nu,
        params,
        e1_source,
        ec_efficiency,
        estimate,
        lutkenhaus: outcome(Scheme::Lutkenhaus)?,
        gllp: outcome(Scheme::Gllp)?,
    })
}

impl<T: Real> AnalysisReport<T> {
    /// Human-readable report; echoes provenance per parameter.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "decoy-state analysis: N = {} pulses, mu = {}, nu = {}",
            self.pulses_total, self.mu, self.nu
        );
        let _ = writeln!(s, "derived parameters:");
        let mut param = |name: &str, p: &DerivedParam<T>, percent: bool| {
            let shown = |v: T| {
                if percent {
                    format!("{:.4}%", v * real::<T>(100.0))
                } else {
                    format!("{v:.6e}")
                }
            };
            match p.provenance {
                Provenance::ComputedFromRaw => {
                    let _ = writeln!(s, "  {:5} = {:<14} computed from raw", name, shown(p.value));
                }
                Provenance::SuppliedOverride => {
                    let _ = writeln!(
                        s,
                        "  {:5} = {:<14} override (raw ratio {})",
                        name,
                        shown(p.value),
                        shown(p.computed)
                    );
                }
            }
        };
        param("q", &self.params.sift_factor, false);
        param("Q_mu", &self.params.signal_gain, false);
        param("E_mu", &self.params.signal_qber, true);
        param("Y_0", &self.params.background_rate, false);
        param("Q_nu", &self.params.decoy_gain, false);
        param("E_nu", &self.params.decoy_qber, true);
        let source = match self.e1_source {
            E1Source::Decoy => "weak-decoy QBER",
            E1Source::Signal => "signal QBER",
        };
        let _ = writeln!(s, "single-photon bounds (vacuum+weak, e1 from {source}):");
        let _ = writeln!(s, "  Q_1 >= {:.6e}", self.estimate.gain_bound);
        let _ = writeln!(
            s,
            "  e_1 <= {:.4}%{}",
            self.estimate.error_bound * real::<T>(100.0),
            if self.estimate.error_bound_clamped {
                "  (numerator clamped to 0)"
            } else {
                ""
            }
        );
        let _ = writeln!(s, "key rates (f_ec = {}):", self.ec_efficiency);
        let _ = writeln!(
            s,
            "  lutkenhaus  R = {:.6e}   key = {} bits",
            self.lutkenhaus.rate.rate, self.lutkenhaus.key_bits
        );
        let _ = writeln!(
            s,
            "  gllp        R = {:.6e}   key = {} bits",
            self.gllp.rate.rate, self.gllp.key_bits
        );
        s
    }

    /// Machine-readable key-value block with the same field names as the
    /// input format plus the derived and final quantities.
    pub fn render_machine(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.pulses_total);
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "nu = {}", self.nu);
        let mut param = |name: &str, p: &DerivedParam<T>| {
            let _ = writeln!(s, "{name} = {:.6e}", p.value);
            let _ = writeln!(s, "{name}_computed = {:.6e}", p.computed);
        };
        param("q", &self.params.sift_factor);
        param("q_mu", &self.params.signal_gain);
        param("e_mu", &self.params.signal_qber);
        param("y0", &self.params.background_rate);
        param("q_nu", &self.params.decoy_gain);
        param("e_nu", &self.params.decoy_qber);
        let _ = writeln!(s, "q1_bound = {:.6e}", self.estimate.gain_bound);
        let _ = writeln!(s, "e1_bound = {:.6e}", self.estimate.error_bound);
        let _ = writeln!(
            s,
            "e1_source = {}",
            match self.e1_source {
                E1Source::Decoy => "decoy",
                E1Source::Signal => "signal",
            }
        );
        let _ = writeln!(s, "f_ec = {}", self.ec_efficiency);
        let _ = writeln!(s, "r_lutkenhaus = {:.6e}", self.lutkenhaus.rate.rate);
        let _ = writeln!(s, "r_gllp = {:.6e}", self.gllp.rate.rate);
        let _ = writeln!(s, "k_lutkenhaus = {}", self.lutkenhaus.key_bits);
        let _ = writeln!(s, "k_gllp = {}", self.gllp.key_bits);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 60 km run, 104.8M pulses.
    fn sixty_km() -> RawExperimentCounts<f64> {
        RawExperimentCounts {
            pulses_total: 104_800_000,
            vacuum_pulses: 16_630_000,
            vacuum_detections: 1033,
            mu: 0.55,
            signal_pulses: 66_860_000,
            signal_sifted_pulses: 33_400_000,
            signal_detections: 60_500,
            signal_errors: 1845,
            nu: 0.152,
            decoy_pulses: 21_340_000,
            decoy_sifted_pulses: 10_690_000,
            decoy_detections: 5397,
            decoy_errors: 455,
        }
    }

    fn published_overrides() -> Overrides<f64> {
        let mut o = Overrides::default();
        o.set("y0", 1.11e-4).unwrap();
        o.set("q_nu", 5.47e-4).unwrap();
        o
    }

    #[test]
    fn derive_matches_count_ratios() {
        let p = derive_params(&sixty_km()).unwrap();
        assert!((p.sift_factor.value - 0.3187022900763359).abs() < 1e-15);
        assert!((p.signal_gain.value - 1.811377245508982e-3).abs() < 1e-17);
        assert!((p.signal_qber.value - 0.03049586776859504).abs() < 1e-15);
        assert!((p.background_rate.value - 6.211665664461816e-5).abs() < 1e-18);
        assert!((p.decoy_gain.value - 5.048643592142189e-4).abs() < 1e-17);
        assert!((p.decoy_qber.value - 0.08430609597924774).abs() < 1e-15);
        assert_eq!(p.sift_factor.provenance, Provenance::ComputedFromRaw);
    }

    #[test]
    fn zero_error_counts_give_zero_qber() {
        let mut raw = sixty_km();
        raw.signal_errors = 0;
        raw.decoy_errors = 0;
        let p = derive_params(&raw).unwrap();
        assert_eq!(p.signal_qber.value, 0.0);
        assert_eq!(p.decoy_qber.value, 0.0);
    }

    #[test]
    fn zero_denominators_are_named() {
        let mut raw = sixty_km();
        raw.signal_detections = 0;
        raw.signal_errors = 0;
        assert_eq!(
            derive_params(&raw).unwrap_err(),
            Error::ZeroCount {
                name: "k_mu_s",
                target: "E_mu"
            }
        );
        let err = analyze(&raw, &Overrides::default(), E1Source::Signal, 1.16).unwrap_err();
        assert!(err.to_string().starts_with("derive-params:"));
    }

    #[test]
    fn count_orderings_enforced() {
        let mut raw = sixty_km();
        raw.signal_errors = raw.signal_detections + 1;
        assert!(matches!(
            raw.validate(),
            Err(Error::CountConstraint(ref m)) if m.contains("k_mu_err")
        ));
        let mut raw = sixty_km();
        raw.signal_pulses = raw.pulses_total + 1;
        assert!(raw.validate().is_err());
        let mut raw = sixty_km();
        raw.vacuum_pulses = 60_000_000; // blows the pulse budget
        assert!(matches!(
            raw.validate(),
            Err(Error::CountConstraint(ref m)) if m.contains("n_mu + n_nu + n_vac")
        ));
    }

    #[test]
    fn published_tables_fit_within_budget_slack() {
        // The three pulse blocks round up to 104.83M against N = 104.8M;
        // the 1% slack must absorb that.
        assert!(sixty_km().validate().is_ok());
    }

    #[test]
    fn overrides_surface_both_values() {
        let mut p = derive_params(&sixty_km()).unwrap();
        p.apply(&published_overrides());
        assert_eq!(p.background_rate.value, 1.11e-4);
        assert_eq!(p.background_rate.provenance, Provenance::SuppliedOverride);
        assert!((p.background_rate.computed - 6.211665664461816e-5).abs() < 1e-18);
        assert_eq!(p.decoy_gain.value, 5.47e-4);
        assert!((p.decoy_gain.computed - 5.048643592142189e-4).abs() < 1e-17);
        assert_eq!(p.signal_gain.provenance, Provenance::ComputedFromRaw);
    }

    #[test]
    fn unknown_override_key_rejected() {
        let mut o = Overrides::<f64>::default();
        assert_eq!(
            o.set("q_vac", 1.0).unwrap_err(),
            Error::UnknownOverride("q_vac".into())
        );
    }

    #[test]
    fn analyze_reproduces_the_sixty_km_numbers() {
        let report = analyze(
            &sixty_km(),
            &published_overrides(),
            E1Source::Signal,
            1.16,
        )
        .unwrap();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        assert!(rel(report.estimate.gain_bound, 8.495645596136227e-4) < 1e-12);
        assert!(rel(report.estimate.error_bound, 0.027330243733950727) < 1e-12);
        assert!(rel(report.lutkenhaus.rate.rate, 9.944845148186692e-5) < 1e-12);
        assert!(rel(report.gllp.rate.rate, 8.996238510768015e-5) < 1e-12);
        assert_eq!(report.lutkenhaus.key_bits, 10422);
        assert_eq!(report.gllp.key_bits, 9428);
        assert!(!report.estimate.error_bound_clamped);
    }

    #[test]
    fn analyze_without_overrides_uses_raw_ratios() {
        let report = analyze(&sixty_km(), &Overrides::default(), E1Source::Signal, 1.16).unwrap();
        assert!(report.estimate.gain_bound > 0.0);
        assert!(report.estimate.error_bound > 0.0);
        assert_eq!(
            report.params.background_rate.provenance,
            Provenance::ComputedFromRaw
        );
        // smaller Y0 and Q_nu than the published values -> different bounds
        assert!(report.estimate.gain_bound < 8.495645596136227e-4);
    }

    #[test]
    fn analyze_names_the_failing_stage() {
        let mut o = published_overrides();
        o.set("q_nu", 1e-9).unwrap(); // collapses the gain bound
        let err = analyze(&sixty_km(), &o, E1Source::Signal, 1.16).unwrap_err();
        assert!(err.to_string().starts_with("estimate-decoy-vw:"), "{err}");
        let err = analyze(&sixty_km(), &published_overrides(), E1Source::Signal, 0.5).unwrap_err();
        assert!(err.to_string().starts_with("key-rate:"), "{err}");
    }

    #[test]
    fn reports_are_deterministic_and_carry_provenance() {
        let run = || {
            analyze(
                &sixty_km(),
                &published_overrides(),
                E1Source::Signal,
                1.16,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.render_machine(), b.render_machine());
        let text = a.render_text();
        assert!(text.contains("override (raw ratio 6.211666e-5)"), "{text}");
        assert!(text.contains("override (raw ratio 5.048644e-4)"), "{text}");
        let machine = a.render_machine();
        assert!(machine.contains("y0 = 1.110000e-4"));
        assert!(machine.contains("y0_computed = 6.211666e-5"));
        assert!(machine.contains("k_lutkenhaus = 10422"));
    }

    #[test]
    fn parse_roundtrip() {
        let text = "\
# 60 km run
n = 104800000
n_vac = 16630000
k_vac = 1033
mu = 0.55
n_mu = 66860000
n_mu_s = 33400000
k_mu_s = 60500
k_mu_err = 1845
nu = 0.152
n_nu = 21340000
n_nu_s = 10690000
k_nu_s = 5397
k_nu_err = 455
";
        assert_eq!(RawExperimentCounts::<f64>::parse(text).unwrap(), sixty_km());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            RawExperimentCounts::<f64>::parse("n = 10\n").unwrap_err(),
            Error::MissingKey("n_vac")
        );
        let bad = "n = ten\n";
        assert!(matches!(
            RawExperimentCounts::<f64>::parse(bad),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
