use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use scarf_core::ScarfParameters;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "scarf-scatter",
    version,
    about = "Scattering from the complex Scarf II potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmitivities and reflectivities in both channels over an energy grid (CSV).
    Scan(ScanArgs),
    /// One of the four reference scans: general, sign-flipped, mixed, PT (CSV).
    Figure1(FigureArgs),
    /// Spectral singularities and, for imaginary α or β, bound states (JSON).
    Ss(SsArgs),
    /// Both bound-state branches for α = iγ, β = iδ (JSON).
    BoundStates(BoundArgs),
    /// Symmetry properties of R and T over a k-grid (JSON or text table).
    Invariance(InvarianceArgs),
    /// Closed form against the transfer-matrix solver (JSON).
    OracleCheck(OracleArgs),
    /// Coefficients and symmetry class of a parameter set (JSON).
    Describe(DescribeArgs),
    /// The potential sampled at slab midpoints (CSV accepted by `invariance --potential`).
    Sample(SampleArgs),
}

/// Accepts decimals and `sqrt:X` / `-sqrt:X` for exact square roots.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) if r.starts_with("sqrt:") => (-1.0, r),
        _ => (1.0, s),
    };
    let value = if let Some(arg) = rest.strip_prefix("sqrt:") {
        let x: f64 = arg.parse().map_err(|_| format!("bad number in '{s}'"))?;
        if !(x >= 0.0) {
            return Err(format!("sqrt of negative or invalid value in '{s}'"));
        }
        sign * x.sqrt()
    } else {
        rest.parse()
            .map_err(|_| format!("expected a number or sqrt:X, got '{s}'"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("non-finite value '{s}'"))
    }
}

/// Potential parameters, either via `(m, n, α, β)` or the raw `(A, B)`.
#[derive(Debug, Args, Clone, Default)]
#[command(group(ArgGroup::new("parametrized").multiple(true)))]
#[command(group(ArgGroup::new("raw").multiple(true).conflicts_with("parametrized")))]
pub struct ParamArgs {
    #[arg(long, group = "parametrized")]
    pub m: Option<u32>,
    #[arg(long, group = "parametrized")]
    pub n: Option<u32>,
    /// Real part of α (accepts sqrt:X).
    #[arg(long, group = "parametrized", value_parser = parse_real, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, group = "parametrized", value_parser = parse_real, allow_hyphen_values = true)]
    pub alpha_im: Option<f64>,
    /// Real part of β (accepts sqrt:X).
    #[arg(long, group = "parametrized", value_parser = parse_real, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, group = "parametrized", value_parser = parse_real, allow_hyphen_values = true)]
    pub beta_im: Option<f64>,
    #[arg(long, group = "raw", value_parser = parse_real, allow_hyphen_values = true)]
    pub a_re: Option<f64>,
    #[arg(long, group = "raw", value_parser = parse_real, allow_hyphen_values = true)]
    pub a_im: Option<f64>,
    #[arg(long, group = "raw", value_parser = parse_real, allow_hyphen_values = true)]
    pub b_re: Option<f64>,
    #[arg(long, group = "raw", value_parser = parse_real, allow_hyphen_values = true)]
    pub b_im: Option<f64>,
}

impl ParamArgs {
    fn any_raw(&self) -> bool {
        [self.a_re, self.a_im, self.b_re, self.b_im].iter().any(Option::is_some)
    }

    fn any_parametrized(&self) -> bool {
        self.m.is_some()
            || self.n.is_some()
            || [self.alpha, self.alpha_im, self.beta, self.beta_im]
                .iter()
                .any(Option::is_some)
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.alpha.unwrap_or(0.0), self.alpha_im.unwrap_or(0.0))
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta.unwrap_or(0.0), self.beta_im.unwrap_or(0.0))
    }

    pub fn to_params(&self) -> Result<ScarfParameters, CliError> {
        if self.any_raw() {
            let a = Complex64::new(self.a_re.unwrap_or(0.0), self.a_im.unwrap_or(0.0));
            let b = Complex64::new(self.b_re.unwrap_or(0.0), self.b_im.unwrap_or(0.0));
            Ok(ScarfParameters::direct(a, b)?)
        } else if self.any_parametrized() {
            Ok(ScarfParameters::from_parametrization(
                self.m.unwrap_or(0),
                self.n.unwrap_or(0),
                self.alpha(),
                self.beta(),
            )?)
        } else {
            Err(CliError::Usage(
                "no potential given: use --m/--n/--alpha/--beta or --a-re/--a-im/--b-re/--b-im".into(),
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Case {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_parser = parse_real)]
    pub emin: f64,
    #[arg(long, value_parser = parse_real)]
    pub emax: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    pub spacing: Spacing,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub case: Case,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SsArgs {
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// α; combine with --alpha-im for the imaginary sector.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0")]
    pub alpha: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0")]
    pub alpha_im: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0")]
    pub beta: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0")]
    pub beta_im: f64,
    /// Also run the pole-ratio test on every record.
    #[arg(long)]
    pub confirm: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub delta: f64,
    #[arg(long)]
    pub confirm: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct InvarianceArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Sampled potential CSV (x_mid,V_re,V_im) instead of Scarf parameters.
    #[arg(long, conflicts_with_all = ["parametrized", "raw"])]
    pub potential: Option<PathBuf>,
    #[arg(long, value_parser = parse_real, default_value = "0.2")]
    pub kmin: f64,
    #[arg(long, value_parser = parse_real, default_value = "3")]
    pub kmax: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Use a reference parameter set instead of explicit parameters.
    #[arg(long, value_enum, conflicts_with_all = ["parametrized", "raw"])]
    pub case: Option<Case>,
    /// Wavenumbers to test; defaults to 10 points spread over [0.3, 3].
    #[arg(long, value_parser = parse_real, value_delimiter = ',')]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 4000)]
    pub slabs: usize,
    #[arg(long, value_parser = parse_real, default_value = "20")]
    pub half_width: f64,
    #[arg(long, value_parser = parse_real, default_value = "5e-3")]
    pub threshold: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DescribeArgs {
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 4000)]
    pub slabs: usize,
    #[arg(long, value_parser = parse_real, default_value = "20")]
    pub half_width: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
