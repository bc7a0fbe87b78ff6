use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{parse_vector, ConfigMap, SweepConfig};
use super::estimate::{estimate_beta, estimate_delta_n};
use super::svg::render_svg;
use super::sweep::run_sweep;
use super::validate::{run_validation, Family, ValidateOptions};
use crate::error::{Error, Result};
use crate::hydrogen::{convergence_report, HydrogenResponse};
use crate::tensor::bianisotropic_12;
use crate::units::{derive_pair, StaticFieldConfig, CODATA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_POLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "meresp", version, about = "Magneto-electric response of two-body bound states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate chi over a frequency grid and write CSV (and optionally SVG)
    Sweep(ModelArgs),
    /// Dimensionless field strength e^2 |B0||E0| / (c m^2 omega0^2)
    EstimateBeta(BetaArgs),
    /// Refractive-index change (N/V) chi_12 / (eps0 c) from the static hydrogen response
    EstimateDn(DnArgs),
    /// Compare main evaluation paths against the oracles
    Validate(ValidateArgs),
    /// chi_12 of hydrogen as n_max grows
    Converge(ConvergeArgs),
}

#[derive(Args, Debug, Default)]
struct ModelArgs {
    /// ho or hydrogen
    #[arg(long)]
    model: Option<String>,
    /// flat key = value file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    omega_min: Option<String>,
    #[arg(long)]
    omega_max: Option<String>,
    #[arg(long)]
    points: Option<String>,
    /// log or linear
    #[arg(long)]
    spacing: Option<String>,
    /// static electric field, V/m, as x,y,z
    #[arg(long, allow_hyphen_values = true)]
    e0: Option<String>,
    /// static magnetic field, T, as x,y,z
    #[arg(long, allow_hyphen_values = true)]
    b0: Option<String>,
    /// hydrogen line width, rad/s
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    n_max: Option<String>,
    /// oscillator trap frequency, rad/s
    #[arg(long)]
    omega0: Option<String>,
    /// CSV output path (stdout if absent)
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    svg: Option<String>,
    /// frequency column unit: rad_s or hz
    #[arg(long)]
    axis: Option<String>,
}

impl ModelArgs {
    fn config(&self) -> Result<SweepConfig> {
        let mut map = match &self.config {
            Some(p) => ConfigMap::load(p)?,
            None => ConfigMap::new(),
        };
        let mut flags = ConfigMap::new();
        for (key, val) in [
            ("model", &self.model),
            ("omega_min", &self.omega_min),
            ("omega_max", &self.omega_max),
            ("points", &self.points),
            ("spacing", &self.spacing),
            ("e0", &self.e0),
            ("b0", &self.b0),
            ("gamma", &self.gamma),
            ("n_max", &self.n_max),
            ("omega0", &self.omega0),
            ("out", &self.out),
            ("svg", &self.svg),
            ("axis", &self.axis),
        ] {
            if let Some(v) = val {
                flags.set(key, v)?;
            }
        }
        map.overlay(&flags);
        SweepConfig::from_map(&map)
    }
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1e5,0,0")]
    e0: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0,10,0")]
    b0: String,
    #[arg(long, default_value_t = 1.0e16)]
    omega0: f64,
    /// particle mass in kg (defaults to the electron mass)
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Args, Debug)]
struct DnArgs {
    /// number density N/V, m^-3
    #[arg(long, default_value_t = 1.0e25)]
    density: f64,
    /// use this chi_12 (C m / T) instead of computing it
    #[arg(long, allow_hyphen_values = true)]
    chi12: Option<f64>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// run one family only: ho, hydrogen, radial or gaunt
    #[arg(long)]
    only: Option<String>,
    /// fault injection: perturb the main-path value of the named check
    #[arg(long)]
    perturb: Option<String>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long, default_value_t = 0.0)]
    omega: f64,
    /// comma-separated increasing cutoffs
    #[arg(long, default_value = "5,10,15,20")]
    n_max_list: String,
    #[arg(long, default_value_t = 1e-3)]
    tolerance: f64,
    #[command(flatten)]
    model: ModelArgs,
}

fn sweep(args: &ModelArgs) -> Result<i32> {
    let cfg = args.config()?;
    let res = run_sweep(&cfg)?;
    match &cfg.out {
        Some(p) => {
            let f = std::fs::File::create(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            res.write_csv(std::io::BufWriter::new(f))?;
        }
        None => res.write_csv(std::io::stdout().lock())?,
    }
    if let Some(p) = &cfg.svg {
        std::fs::write(p, render_svg(&res)).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
    }
    Ok(EXIT_OK)
}

fn beta(args: &BetaArgs) -> Result<i32> {
    let fields = StaticFieldConfig::new(parse_vector(&args.e0)?, parse_vector(&args.b0)?)?;
    // a pair whose reduced mass is `mass` to double precision
    let mass = args.mass.unwrap_or(CODATA.m_electron);
    let pair = derive_pair(mass, mass * 1e30, CODATA.e_charge)?;
    println!("beta = {:e}", estimate_beta(&fields, args.omega0, &pair)?);
    Ok(EXIT_OK)
}

fn delta_n(args: &DnArgs) -> Result<i32> {
    let chi12 = match args.chi12 {
        Some(c) => c,
        None => {
            let cfg = args.model.config()?;
            let r = HydrogenResponse::new(&cfg.hydrogen_model()?)?;
            let chi = bianisotropic_12(&r.chi_total(0.0)?);
            println!("chi12(0) = {:e} {:+e}i C m/T", chi.re, chi.im);
            chi.norm()
        }
    };
    println!("delta_n = {:e}", estimate_delta_n(args.density, chi12)?);
    Ok(EXIT_OK)
}

fn validate(args: &ValidateArgs) -> Result<i32> {
    let opts = ValidateOptions {
        only: args.only.as_deref().map(str::parse::<Family>).transpose()?,
        perturb: args.perturb.clone(),
    };
    let report = run_validation(&opts)?;
    println!("{report}");
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_VALIDATION })
}

fn converge(args: &ConvergeArgs) -> Result<i32> {
    let cfg = args.model.config()?;
    let list = args
        .n_max_list
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Config(format!("bad n_max '{s}'"))))
        .collect::<Result<Vec<_>>>()?;
    let model = cfg.hydrogen_model()?;
    let rep = convergence_report(&model, args.omega, &list, args.tolerance).map_err(|e| match e {
        Error::Domain(s) => Error::Config(s),
        other => other,
    })?;
    println!("n_max,re_chi12,im_chi12,rel_change");
    for (k, (n, chi)) in rep.rows.iter().enumerate() {
        let change = if k == 0 { String::new() } else { format!("{:e}", rep.relative_changes[k - 1]) };
        println!("{n},{:e},{:e},{change}", chi.re, chi.im);
    }
    println!("monotone_tail = {}", rep.monotone_tail);
    if rep.flagged {
        println!("FLAG: last two rows differ by more than {:e}", rep.tolerance);
    }
    Ok(EXIT_OK)
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Sweep(a) => sweep(a),
        Command::EstimateBeta(a) => beta(a),
        Command::EstimateDn(a) => delta_n(a),
        Command::Validate(a) => validate(a),
        Command::Converge(a) => converge(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole { .. } => EXIT_POLE,
        Error::Domain(_) | Error::Config(_) | Error::Io(_) => EXIT_CONFIG,
    }
}
