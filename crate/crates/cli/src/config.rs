//! Command-line flags and the validated run configuration echoed into every artifact.

use bilap_core::coefficients::Sigma;
use bilap_core::delaunay::CMode;
use bilap_core::rational::{fmt_q, parse_q};
use bilap_core::Q;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

pub const BUILD_ID: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(
    name = "bilap",
    version,
    about = "Cylindrical reductions of fourth-order Gross-Pitaevskii systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Autonomous coefficients from every route, with a verdict per constant.
    Coeffs(CommonArgs),
    /// Sign chart of K0..K3, J0 over a grid of exponents.
    Signs {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of evenly spaced exponents on [2_**, 2**-1] per dimension.
        #[arg(long)]
        s_grid: Option<u32>,
    },
    /// Asymptotic regime and predicted singular profile.
    Classify(CommonArgs),
    /// Integrate the autonomous cylinder system and record the energy.
    Integrate {
        #[command(flatten)]
        common: CommonArgs,
        /// Initial scalar data v, v', v'', v''' placed on the first axis, or all 4p entries.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_value = "1,0,0,0"
        )]
        init: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
        t_end: f64,
    },
    /// Limiting levels, the level identity and randomized monotonicity trials.
    Pohozaev {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 20.0)]
        t_end: f64,
    },
    /// Delaunay orbits of the critical equation by shooting on v''(0).
    Shoot {
        #[command(flatten)]
        common: CommonArgs,
        /// Minimum values as fractions of a0.
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.6,0.9")]
        a: Vec<f64>,
        /// Also write the sampled orbits.
        #[arg(long)]
        orbit_samples: Option<usize>,
    },
    /// Power-law or log-corrected fit of radial samples.
    Fit {
        #[command(flatten)]
        common: CommonArgs,
        /// CSV file with columns r,value; '#' lines are skipped.
        #[arg(long, conflicts_with = "synthetic")]
        input: Option<PathBuf>,
        /// Built-in sample set instead of an input file.
        #[arg(long, value_enum)]
        synthetic: Option<Synthetic>,
        #[arg(long, value_enum, default_value_t = FitModel::Power)]
        model: FitModel,
    },
    /// Run the invariant suites and emit the discrepancy ledger.
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CModeArg {
    Measured,
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Synthetic {
    /// `K0^{1/(s-1)} r^{-4/(s-1)}` on r in [1e-4, 1].
    Power,
    /// The logarithmic profile on r in [1e-12, e^-3].
    Aviles,
    /// Unit bubble far field on r in [1e2, 1e4].
    Bubble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    Power,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Dimension: `5`, a range `5:12`, or a list `5,6,8`.
    #[arg(long)]
    pub n: Option<String>,
    /// Exponent(s) as `p/q`, integers or exact decimals, comma separated.
    #[arg(long)]
    pub s: Option<String>,
    /// Number of components.
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cylinder orientation `+1`, `-1` or `auto` (the vote over the printed formulas).
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub sigma: String,
    #[arg(long, value_enum, default_value_t = CModeArg::Measured)]
    pub c_mode: CModeArg,
    #[arg(long, default_value_t = 20240607)]
    pub seed: u64,
    /// Restrict `verify` to the named suites.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Write a companion gnuplot script next to the CSV output.
    #[arg(long)]
    pub gnuplot: bool,
    /// Worker threads for sweeps; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Everything a command needs, validated before any computation.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub args: Vec<String>,
    pub build: &'static str,
    pub n: Vec<u32>,
    #[serde(serialize_with = "ser_qs")]
    pub s: Vec<Q>,
    pub p: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    #[serde(serialize_with = "ser_sigma")]
    pub sigma: Option<Sigma>,
    pub c_mode: CModeArg,
    pub seed: u64,
    pub suites: Vec<String>,
    pub gnuplot: bool,
    pub jobs: Option<usize>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

fn ser_sigma<S: serde::Serializer>(v: &Option<Sigma>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(if x.value() > 0 { "+1" } else { "-1" }),
        None => s.serialize_str("auto"),
    }
}

impl RunConfig {
    pub fn from_args(command: &str, args: Vec<String>, c: &CommonArgs) -> Result<Self, String> {
        let n = match &c.n {
            Some(t) => parse_n(t)?,
            None => vec![],
        };
        let s = match &c.s {
            Some(t) => t
                .split(',')
                .map(|x| parse_q(x).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![],
        };
        if c.p == 0 {
            return Err("--p must be at least 1".into());
        }
        if !(c.rel_tol > 0.0 && c.abs_tol > 0.0) {
            return Err("tolerances must be positive".into());
        }
        let sigma = match c.sigma.as_str() {
            "auto" => None,
            "+1" | "1" | "plus" => Some(Sigma::Plus),
            "-1" | "minus" => Some(Sigma::Minus),
            other => return Err(format!("--sigma expects +1, -1 or auto, got '{other}'")),
        };
        if c.gnuplot && c.out.is_none() {
            return Err("--gnuplot needs --out".into());
        }
        if c.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        Ok(Self {
            command: command.into(),
            args,
            build: BUILD_ID,
            n,
            s,
            p: c.p,
            rel_tol: c.rel_tol,
            abs_tol: c.abs_tol,
            format: c.format,
            out: c.out.clone(),
            sigma,
            c_mode: c.c_mode,
            seed: c.seed,
            suites: c.suite.clone(),
            gnuplot: c.gnuplot,
            jobs: c.jobs,
        })
    }

    pub fn c_mode(&self) -> CMode {
        match self.c_mode {
            CModeArg::Measured => CMode::Measured,
            CModeArg::Unit => CMode::Unit,
        }
    }

    pub fn require_n(&self) -> Result<&[u32], String> {
        if self.n.is_empty() {
            return Err(format!("{} needs --n", self.command));
        }
        Ok(&self.n)
    }

    pub fn require_s(&self) -> Result<&[Q], String> {
        if self.s.is_empty() {
            return Err(format!("{} needs --s", self.command));
        }
        Ok(&self.s)
    }

    pub fn single(&self) -> Result<(u32, Q), String> {
        let (n, s) = (self.require_n()?, self.require_s()?);
        if n.len() != 1 || s.len() != 1 {
            return Err(format!("{} takes a single --n and --s", self.command));
        }
        Ok((n[0], s[0].clone()))
    }

    /// `# key = value` lines echoing the configuration.
    pub fn header_lines(&self, sigma: Sigma, extra: &[(String, String)]) -> Vec<String> {
        let mut h = vec![
            format!("build = {}", self.build),
            format!("command = {}", self.command),
            format!("args = {}", self.args.join(" ")),
            format!(
                "n = {}",
                self.n
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            format!(
                "s = {}",
                self.s.iter().map(fmt_q).collect::<Vec<_>>().join(",")
            ),
            format!("p = {}", self.p),
            format!("rel_tol = {:e}", self.rel_tol),
            format!("abs_tol = {:e}", self.abs_tol),
            format!("sigma = {}", sigma.label()),
            format!(
                "c_mode = {}",
                match self.c_mode {
                    CModeArg::Measured => "measured",
                    CModeArg::Unit => "unit",
                }
            ),
            format!("seed = {}", self.seed),
        ];
        h.extend(extra.iter().map(|(k, v)| format!("{k} = {v}")));
        h
    }
}

/// `5`, `5:12` (inclusive) or `5,6,8`.
pub fn parse_n(text: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("cannot read '{text}' as a dimension, range a:b or list");
    let mut out = Vec::new();
    for part in text.split(',') {
        if let Some((a, b)) = part.split_once(':') {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.trim().parse().map_err(|_| bad())?);
        }
    }
    if let Some(n) = out.iter().find(|&&n| n < 5) {
        return Err(format!("dimension n = {n} must be at least 5"));
    }
    Ok(out)
}
