//! Command-line driver: figure data as CSV, marginals and reconstructions as
//! JSON, and a self-verification report.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 for usage and I/O
//! errors.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_i, DEFAULT_ORDER};
use crate::states::{basis_state, cat_state, von_mises_state, DensityMatrix, FourierState};
use crate::thermal::{thermal_density, thermal_wigner, ThermalParams};
use crate::wigner::{
    marginal_momentum, reconstruct_density, uniform_axis, von_mises_wigner_integral,
    wigner_density, wigner_function, CardinalSeries, PhasePoint, WignerGrid,
};

mod verify;

pub use verify::{run_verification, InvariantReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Basis-state profile `2π V_m` (with `ħ` restored when `--hbar` is given)
    Fig1,
    /// Cat-state curves `2π V_f` for each angle in `--theta-list`
    Fig2,
    /// Von Mises curves `2π I_0(2s) V` against `p - p_e`
    Fig3,
    /// Thermal Wigner function `V`
    Thermal,
    /// Momentum marginal as a cardinal series (JSON)
    Marginals,
    /// Density matrix recovered from Wigner samples (JSON)
    Reconstruct,
    /// Invariant suite (JSON report)
    Verify,
}

/// State used by `marginals` and `reconstruct` when `--state` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Basis,
    Cat,
    VonMises,
    Thermal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TolProfile {
    Default,
    Strict,
    Loose,
}

impl TolProfile {
    /// Factor applied to every verification tolerance.
    pub fn scale(self) -> f64 {
        match self {
            TolProfile::Default => 1.0,
            TolProfile::Strict => 0.1,
            TolProfile::Loose => 100.0,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "cylwig",
    version,
    about = "Wigner functions on the cylinder S¹×ℝ"
)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Von Mises concentration
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    /// Von Mises mean angular momentum
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pe: f64,
    /// Cat-state relative phase
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long = "eps-beta", default_value_t = 1.0)]
    pub eps_beta: f64,
    /// Covering parameter for the basis state
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Planck constant for `fig1`
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Basis-state index
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    /// Comma-separated angles
    #[arg(long = "theta-list", value_delimiter = ',', allow_hyphen_values = true)]
    pub theta_list: Option<Vec<f64>>,
    #[arg(long = "p-min", default_value_t = -3.0, allow_hyphen_values = true)]
    pub p_min: f64,
    #[arg(long = "p-max", default_value_t = 3.0, allow_hyphen_values = true)]
    pub p_max: f64,
    #[arg(long = "p-steps", default_value_t = 601)]
    pub p_steps: usize,
    #[arg(long, value_enum, default_value_t = Family::VonMises)]
    pub family: Family,
    /// JSON file holding a FourierState or DensityMatrix
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "tol-profile", value_enum, default_value_t = TolProfile::Default)]
    pub tol_profile: TolProfile,
    /// Perturb the sinc kernel used by `verify`
    #[arg(long = "fault-inject")]
    pub fault_inject: bool,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub s: f64,
    pub pe: f64,
    pub alpha: f64,
    pub eps_beta: f64,
    pub delta: f64,
    pub hbar: f64,
    pub m: i64,
    pub thetas: Vec<f64>,
    pub p_axis: Vec<f64>,
    pub family: Family,
    pub state: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub tol_profile: TolProfile,
    pub fault_inject: bool,
}

fn default_thetas(command: Command) -> Vec<f64> {
    match command {
        Command::Fig2 => vec![0.0, PI / 4.0, PI / 2.0],
        Command::Fig3 => vec![-PI, -PI / 2.0, 0.0, PI / 2.0, PI],
        _ => vec![0.0],
    }
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<Self> {
        if args.p_steps < 2 {
            return domain(format!(
                "--p-steps must be at least 2, got {}",
                args.p_steps
            ));
        }
        if !(args.hbar > 0.0 && args.hbar.is_finite()) {
            return domain(format!("--hbar must be positive, got {}", args.hbar));
        }
        if args.hbar != 1.0 && args.command != Command::Fig1 {
            return domain("--hbar only applies to fig1");
        }
        let thetas = args
            .theta_list
            .unwrap_or_else(|| default_thetas(args.command));
        if thetas.is_empty() || thetas.iter().any(|t| !t.is_finite()) {
            return domain("--theta-list must hold finite angles");
        }
        Ok(Self {
            command: args.command,
            s: args.s,
            pe: args.pe,
            alpha: args.alpha,
            eps_beta: args.eps_beta,
            delta: args.delta,
            hbar: args.hbar,
            m: args.m,
            thetas,
            p_axis: uniform_axis(args.p_min, args.p_max, args.p_steps)?,
            family: args.family,
            state: args.state,
            out: args.out,
            tol_profile: args.tol_profile,
            fault_inject: args.fault_inject,
        })
    }
}

/// A pure or mixed state read from the command line.
#[derive(Debug, Clone)]
pub enum Source {
    Pure(FourierState),
    Mixed(DensityMatrix),
}

impl Source {
    pub fn from_config(cfg: &RunConfig) -> Result<Self> {
        if let Some(path) = &cfg.state {
            return Self::from_json(&std::fs::read_to_string(path)?);
        }
        Ok(match cfg.family {
            Family::Basis => Source::Pure(basis_state(cfg.m, cfg.delta)?),
            Family::Cat => Source::Pure(cat_state(cfg.alpha)?),
            Family::VonMises => Source::Pure(von_mises_state(cfg.s, cfg.pe, None)?),
            Family::Thermal => Source::Mixed(thermal_density(&ThermalParams::new(cfg.eps_beta)?)?),
        })
    }

    /// Accepts either JSON shape; a `coeffs` field marks a pure state.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("coeffs").is_some() {
            Ok(Source::Pure(serde_json::from_value(value)?))
        } else {
            Ok(Source::Mixed(serde_json::from_value(value)?))
        }
    }

    pub fn wigner(&self, at: PhasePoint) -> Result<f64> {
        match self {
            Source::Pure(s) => wigner_function(s, at),
            Source::Mixed(r) => wigner_density(r, at),
        }
    }

    pub fn marginal(&self) -> Result<CardinalSeries> {
        match self {
            Source::Pure(s) => marginal_momentum(s),
            Source::Mixed(r) => marginal_momentum(r),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            Source::Pure(s) => crate::states::pure_density(s),
            Source::Mixed(r) => r.clone(),
        }
    }
}

/// Output of the `reconstruct` command. Parses as a [`DensityMatrix`] too.
#[derive(Debug, Serialize)]
pub struct ReconstructReport {
    pub delta: f64,
    pub n_min: i64,
    pub entries: Vec<Vec<[f64; 2]>>,
    pub trace_deficit: f64,
    /// Largest entrywise distance to the source density matrix.
    pub max_deviation: f64,
}

fn fig1(cfg: &RunConfig) -> Result<WignerGrid> {
    let st = basis_state(cfg.m, cfg.delta)?;
    let h = cfg.hbar;
    // 2πħ V^ħ(θ, p) = 2π V(θ, p/ħ)
    WignerGrid::sample(&cfg.thetas, &cfg.p_axis, |at| {
        Ok(2.0 * PI * wigner_function(&st, PhasePoint::new(at.theta(), at.p() / h))?)
    })
}

fn fig2(cfg: &RunConfig) -> Result<WignerGrid> {
    let st = cat_state(cfg.alpha)?;
    WignerGrid::sample(&cfg.thetas, &cfg.p_axis, |at| {
        Ok(2.0 * PI * wigner_function(&st, at)?)
    })
}

/// Tolerance of the agreement between the coefficient sum and the integral form.
const FIG3_CROSS_CHECK: f64 = 1e-9;

fn fig3(cfg: &RunConfig) -> Result<WignerGrid> {
    let st = von_mises_state(cfg.s, cfg.pe, None)?;
    let scale = 2.0 * PI * bessel_i(0, 2.0 * cfg.s)?;
    let pe = cfg.pe;
    WignerGrid::sample(&cfg.thetas, &cfg.p_axis, |at| {
        let shifted = PhasePoint::new(at.theta(), pe + at.p());
        let v = wigner_function(&st, shifted)?;
        let check = von_mises_wigner_integral(cfg.s, pe, shifted, DEFAULT_ORDER)?;
        if (v - check).abs() > FIG3_CROSS_CHECK {
            return Err(Error::Numeric(format!(
                "integral form disagrees by {:.3e} at θ = {}, p - p_e = {}",
                (v - check).abs(),
                at.theta(),
                at.p()
            )));
        }
        Ok(scale * v)
    })
}

fn thermal(cfg: &RunConfig) -> Result<WignerGrid> {
    let tp = ThermalParams::new(cfg.eps_beta)?;
    WignerGrid::sample(&cfg.thetas, &cfg.p_axis, |at| Ok(thermal_wigner(&tp, at)))
}

fn reconstruct(cfg: &RunConfig) -> Result<ReconstructReport> {
    let source = Source::from_config(cfg)?;
    let rho = source.density();
    let r = reconstruct_density(
        |at| source.wigner(at).unwrap_or(f64::NAN),
        rho.n_min(),
        rho.n_max(),
        rho.delta(),
    )?;
    let d = rho.dim();
    let entries = r
        .entries()
        .chunks(d)
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    Ok(ReconstructReport {
        delta: rho.delta(),
        n_min: rho.n_min(),
        entries,
        trace_deficit: r.trace_deficit(),
        max_deviation: r.max_deviation(&rho),
    })
}

fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Runs one command, writing its output to `out`. Returns the process exit code.
pub fn run<W: Write>(cfg: &RunConfig, out: W) -> Result<i32> {
    match cfg.command {
        Command::Fig1 => fig1(cfg)?.write_csv(out)?,
        Command::Fig2 => fig2(cfg)?.write_csv(out)?,
        Command::Fig3 => fig3(cfg)?.write_csv(out)?,
        Command::Thermal => thermal(cfg)?.write_csv(out)?,
        Command::Marginals => write_json(&Source::from_config(cfg)?.marginal()?, out)?,
        Command::Reconstruct => write_json(&reconstruct(cfg)?, out)?,
        Command::Verify => {
            let report = run_verification(cfg.tol_profile, cfg.fault_inject);
            write_json(&report, out)?;
            return Ok(if report.iter().all(|r| r.pass) { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Exit code for an error: numerical failures count as failed checks.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Numeric(_) => 1,
        _ => 2,
    }
}

/// Parses `argv`, runs, and reports errors on standard error.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = RunConfig::from_args(args).and_then(|cfg| match &cfg.out {
        Some(path) => run(&cfg, BufWriter::new(File::create(path)?)),
        None => run(&cfg, BufWriter::new(io::stdout().lock())),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cylwig: {e}");
            exit_code(&e)
        }
    }
}
