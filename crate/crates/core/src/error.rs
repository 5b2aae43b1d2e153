//! Error type shared by every module.
//!
//! Diagnostics carry `f64` snapshots of the offending values so the enum
//! stays independent of the scalar type parameter.

/// Everything that can go wrong between raw inputs and a key rate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("error rate {0} is outside [0, 1]")]
    ErrorRateRange(f64),

    #[error("privacy-amplification penalty is undefined for error rate {0} > 1/2")]
    PaTermRange(f64),

    #[error("mean photon number must be positive (got {0})")]
    IntensityRange(f64),

    #[error("decoy intensity must satisfy 0 < nu < mu (got nu = {nu}, mu = {mu})")]
    DecoyIntensityRange { nu: f64, mu: f64 },

    #[error("grid step {0} is outside (0, 1e-4]")]
    GridStepRange(f64),

    #[error("distance must be nonnegative (got {0} km)")]
    DistanceRange(f64),

    #[error("setup parameter `{name}` out of range (got {value})")]
    SetupParamRange { name: &'static str, value: f64 },

    #[error("channel gain underflowed to zero at the requested distance")]
    DegenerateChannel,

    #[error(
        "PNS-insecure: signal gain {gain:e} does not exceed the multi-photon \
         probability {multiphoton:e}; every detection may come from a tagged pulse"
    )]
    PnsInsecure { gain: f64, multiphoton: f64 },

    #[error("observables carry no decoy block")]
    MissingDecoyBlock,

    #[error("single-photon gain estimate collapsed to {0:e}")]
    EstimatorCollapse(f64),

    #[error("error-correction efficiency must be >= 1 (got {0})")]
    EcEfficiencyRange(f64),

    #[error("no positive key rate anywhere in the search range")]
    NoPositiveRate,

    #[error("distance grid must be nonempty and strictly ascending")]
    DistanceGrid,

    #[error("count `{name}` is zero; cannot derive {target}")]
    ZeroCount {
        name: &'static str,
        target: &'static str,
    },

    #[error("count constraint violated: {0}")]
    CountConstraint(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("unknown override key `{0}` (expected one of q, q_mu, e_mu, y0, q_nu, e_nu)")]
    UnknownOverride(String),

    #[error("unknown setup `{0}` (built-ins: T8, G13, KTH, GYS)")]
    UnknownSetup(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Tags an error with the pipeline stage it came from.
    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
