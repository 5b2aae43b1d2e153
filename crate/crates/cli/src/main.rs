//! `keyrate`: BB84 weak-coherent-pulse key-rate simulation and
//! decoy-state experiment analysis from the command line.

// `!(x > 0)`-style checks also reject NaN flag values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use keyrate_core::experiment::{analyze, Overrides, RawExperimentCounts};
use keyrate_core::math::pa_term_max_deviation;
use keyrate_core::scan::{self, ScanParams};
use keyrate_core::{E1Source, Mode, MuPolicy, Scheme, ScanParams64, Setup64};

#[derive(Parser)]
#[command(
    name = "keyrate",
    version,
    about = "BB84 weak-coherent-pulse key rates: simulation sweeps, \
             privacy-term comparison, intensity optimization, and \
             decoy-state experiment analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the two privacy-amplification penalties and report the
    /// largest deviation between them
    PrivacyCompare {
        /// Scan grid step over the error rate, in (0, 1e-4]
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },
    /// Sweep key rates over distance and emit CSV
    Simulate {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Scheme column selection: lutkenhaus, gllp, or both
        #[arg(long, default_value = "both")]
        scheme: SchemeArg,
        /// First grid distance in km
        #[arg(long, default_value_t = 0.0)]
        dmin: f64,
        /// Last grid distance in km; defaults to the cutoff plus 10 km
        #[arg(long)]
        dmax: Option<f64>,
        /// Grid step in km
        #[arg(long, default_value_t = 1.0)]
        dstep: f64,
        /// Write CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest distance with a positive key rate
    MaxDistance {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "both")]
        scheme: SchemeArg,
    },
    /// Rate-optimal signal intensity at one distance
    OptimalMu {
        #[command(flatten)]
        setup: SetupArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "both")]
        scheme: SchemeArg,
        /// Distance in km
        #[arg(long)]
        distance: f64,
    },
    /// Analyze a raw-counts file from a decoy-state run
    Analyze {
        /// Raw-counts file (key = value lines)
        #[arg(long)]
        data: PathBuf,
        /// Replace a derived parameter, e.g. `--override y0=1.11e-4`;
        /// keys: q, q_mu, e_mu, y0, q_nu, e_nu
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// QBER source for the single-photon error bound
        #[arg(long = "e1-source", default_value = "signal")]
        e1_source: E1Source,
        /// Error-correction efficiency
        #[arg(long = "f-ec", default_value_t = 1.16)]
        f_ec: f64,
        /// Append the machine-readable key-value block
        #[arg(long)]
        machine: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetupArgs {
    /// Built-in setup name: T8, G13, KTH, or GYS
    #[arg(long)]
    setup: Option<String>,
    /// Setup parameter file (key = value lines)
    #[arg(long)]
    setup_file: Option<PathBuf>,
}

impl SetupArgs {
    fn load(&self) -> Result<Setup64> {
        match (&self.setup, &self.setup_file) {
            (Some(name), None) => Ok(Setup64::builtin(name)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Setup64::parse(&text).with_context(|| format!("parsing {}", path.display()))
            }
            _ => unreachable!("clap enforces exactly one"),
        }
    }
}

#[derive(Args)]
struct ModelArgs {
    /// Estimation mode: nondecoy or decoy
    #[arg(long, default_value = "nondecoy")]
    mode: Mode,
    /// Signal intensity: `auto` (mu = eta in nondecoy mode, per-setup
    /// optimum in decoy mode) or a fixed value
    #[arg(long, default_value = "auto")]
    mu: MuArg,
    /// Weak-decoy intensity
    #[arg(long, default_value_t = 0.05)]
    nu: f64,
    /// Basis-sift factor q
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Error-correction efficiency
    #[arg(long = "f-ec", default_value_t = 1.16)]
    f_ec: f64,
}

impl ModelArgs {
    fn scan_params(&self) -> ScanParams64 {
        ScanParams {
            mode: self.mode,
            mu_policy: self.mu.0,
            nu: self.nu,
            sift_factor: self.q,
            ec_efficiency: self.f_ec,
            ..ScanParams::default()
        }
    }
}

#[derive(Clone, Copy)]
struct MuArg(MuPolicy<f64>);

impl FromStr for MuArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(MuArg(MuPolicy::Auto));
        }
        s.parse::<f64>()
            .map(|v| MuArg(MuPolicy::Fixed(v)))
            .map_err(|_| format!("expected `auto` or a number, got `{s}`"))
    }
}

#[derive(Clone, Copy)]
enum SchemeArg {
    Both,
    One(Scheme),
}

impl SchemeArg {
    fn schemes(self) -> Vec<Scheme> {
        match self {
            SchemeArg::Both => Scheme::ALL.to_vec(),
            SchemeArg::One(s) => vec![s],
        }
    }
}

impl FromStr for SchemeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("both") {
            return Ok(SchemeArg::Both);
        }
        Scheme::from_str(s).map(SchemeArg::One)
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::PrivacyCompare { step } => privacy_compare(step),
        Command::Simulate {
            setup,
            model,
            scheme,
            dmin,
            dmax,
            dstep,
            out,
        } => simulate(&setup, &model, scheme, dmin, dmax, dstep, out.as_deref()),
        Command::MaxDistance {
            setup,
            model,
            scheme,
        } => max_distance(&setup, &model, scheme),
        Command::OptimalMu {
            setup,
            model,
            scheme,
            distance,
        } => optimal_mu(&setup, &model, scheme, distance),
        Command::Analyze {
            data,
            overrides,
            e1_source,
            f_ec,
            machine,
        } => run_analyze(&data, &overrides, e1_source, f_ec, machine),
    }
}

fn privacy_compare(step: f64) -> Result<()> {
    let (e, deviation) = pa_term_max_deviation(step)?;
    println!(
        "max deviation {:.2}% at e = {:.2}%",
        deviation * 100.0,
        e.value() * 100.0
    );
    Ok(())
}

fn simulate(
    setup: &SetupArgs,
    model: &ModelArgs,
    scheme: SchemeArg,
    dmin: f64,
    dmax: Option<f64>,
    dstep: f64,
    out: Option<&std::path::Path>,
) -> Result<()> {
    if !(dstep > 0.0) {
        bail!("--dstep must be positive");
    }
    if dmin < 0.0 {
        bail!("--dmin must be nonnegative");
    }
    let setup = setup.load()?;
    let params = model.scan_params();

    let dmax = match dmax {
        Some(d) => d,
        None => default_dmax(&setup, &params, dstep),
    };
    if dmax < dmin {
        bail!("--dmax must be at least --dmin");
    }
    let mut grid = Vec::new();
    let mut k = 0u64;
    loop {
        let d = dmin + dstep * k as f64;
        if d > dmax + 1e-9 {
            break;
        }
        grid.push(d);
        k += 1;
    }

    let points = scan::sweep(&setup, &params, &grid)?;
    let flagged = points
        .iter()
        .filter(|p| p.flag != scan::PointFlag::Ok)
        .count();
    if flagged > 0 {
        eprintln!(
            "note: {flagged} of {} points flagged insecure (no single-photon \
             estimate; R reported as 0)",
            points.len()
        );
    }

    let mut csv = Vec::new();
    scan::write_csv(&mut csv, params.mode, &scheme.schemes(), &points)?;
    match out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().write_all(&csv)?,
    }
    Ok(())
}

/// Default sweep end: cutoff plus 10 km (individual-attack cutoff, the
/// longer one), rounded up to the grid step; 100 km when no distance has a
/// positive rate.
fn default_dmax(setup: &Setup64, params: &ScanParams64, dstep: f64) -> f64 {
    match scan::max_distance(setup, Scheme::Lutkenhaus, params) {
        Ok(cutoff) => ((cutoff + 10.0) / dstep).ceil() * dstep,
        Err(_) => 100.0,
    }
}

fn max_distance(setup: &SetupArgs, model: &ModelArgs, scheme: SchemeArg) -> Result<()> {
    let setup = setup.load()?;
    let params = model.scan_params();
    for scheme in scheme.schemes() {
        let cutoff = scan::max_distance(&setup, scheme, &params)
            .map_err(|e| anyhow!(e).context(format!("max-distance ({})", scheme.as_str())))?;
        let mu = scan::policy_mu(&setup, &params, cutoff)?;
        let obs = keyrate_core::channel::simulate_observables(
            &setup,
            cutoff,
            mu,
            match params.mode {
                Mode::Decoy => Some(params.nu),
                Mode::NonDecoy => None,
            },
            params.sift_factor,
        )?;
        println!(
            "{}: max distance {:.2} km (mu = {:.5}, E_mu at cutoff = {:.3}%)",
            scheme.as_str(),
            cutoff,
            mu,
            obs.qber.value() * 100.0
        );
    }
    Ok(())
}

fn optimal_mu(setup: &SetupArgs, model: &ModelArgs, scheme: SchemeArg, distance: f64) -> Result<()> {
    let setup = setup.load()?;
    let params = model.scan_params();
    for scheme in scheme.schemes() {
        let mu = scan::optimal_mu(&setup, distance, scheme, &params)
            .map_err(|e| anyhow!(e).context(format!("optimal-mu ({})", scheme.as_str())))?;
        let fixed = ScanParams {
            mu_policy: MuPolicy::Fixed(mu),
            ..params
        };
        let point = scan::sweep(&setup, &fixed, &[distance])?;
        let rate = match scheme {
            Scheme::Lutkenhaus => point[0].rate_lutkenhaus,
            Scheme::Gllp => point[0].rate_gllp,
        };
        println!(
            "{}: optimal mu {:.5} at {distance} km (R = {:.5e})",
            scheme.as_str(),
            mu,
            rate
        );
    }
    Ok(())
}

fn run_analyze(
    data: &std::path::Path,
    override_args: &[String],
    e1_source: E1Source,
    f_ec: f64,
    machine: bool,
) -> Result<()> {
    let text =
        fs::read_to_string(data).with_context(|| format!("reading {}", data.display()))?;
    let raw = RawExperimentCounts::<f64>::parse(&text)
        .map_err(|e| anyhow!(e).context(format!("parsing {}", data.display())))?;

    let mut overrides = Overrides::default();
    for arg in override_args {
        let (key, value) = arg
            .split_once('=')
            .ok_or_else(|| anyhow!("--override expects KEY=VALUE, got `{arg}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| anyhow!("--override {key}: `{value}` is not a number"))?;
        overrides.set(key.trim(), value)?;
    }

    let report = analyze(&raw, &overrides, e1_source, f_ec)?;
    print!("{}", report.render_text());
    if machine {
        println!();
        print!("{}", report.render_machine());
    }
    Ok(())
}
