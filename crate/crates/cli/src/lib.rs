//! Command-line front end for `relkort`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use relkort_core::io::{self as rio, ProfileTable};
use relkort_core::jump::{continue_family, family_row_at, maxwell, pressure_window};
use relkort_core::nonbaro::{nonbaro_profile, slice, Eos2d};
use relkort_core::profile::{heteroclinic_quadrature, heteroclinic_shoot, Direction};
use relkort_core::tensor::tabulate;
use relkort_core::verify::{verify_profile, VerifyReport};
use relkort_core::{Eos, Error, Tolerances};

/// Canonical EOS used when `--eos` is not given.
pub const CUBIC_VDW_JSON: &str = include_str!("../examples/cubic-vdw.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Fwd,
    Bwd,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Fwd => Direction::Forward,
            DirectionArg::Bwd => Direction::Backward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quadrature,
    Shoot,
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("expected a finite value >= 0, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("expected a finite value > 0, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(x) => Err(format!("expected a finite value, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "relkort", version, about = "Phase-boundary profiles of relativistic Euler-Korteweg fluids")]
pub struct RunConfig {
    /// EOS JSON file (defaults to the bundled cubic van der Waals law)
    #[arg(long, global = true)]
    pub eos: Option<PathBuf>,
    /// output file (defaults to standard output)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_parser = positive)]
    pub tol_root: Option<f64>,
    #[arg(long, global = true, value_parser = positive)]
    pub tol_newton: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spinodal, validation report and pressure window of the EOS
    EosInspect,
    /// Maxwell equal-area states at m = 0
    Maxwell,
    /// End-state family by continuation in m
    Family {
        #[arg(long, default_value_t = 0.01, value_parser = positive)]
        dm: f64,
        #[arg(long, value_parser = non_negative)]
        m_max: Option<f64>,
    },
    /// Heteroclinic profile at one value of m
    Profile(ProfileArgs),
    /// Re-check a profile CSV
    Verify {
        #[arg(long)]
        profile: PathBuf,
        /// non-barotropic EOS, for tables written by `nonbaro`
        #[arg(long)]
        eos2d: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01, value_parser = positive)]
        dm: f64,
    },
    /// Profile of the isentropic slice of a non-barotropic EOS
    Nonbaro {
        #[arg(long)]
        eos2d: PathBuf,
        #[arg(long, value_parser = finite)]
        s_star: f64,
        #[command(flatten)]
        profile: ProfileArgs,
    },
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = non_negative)]
    pub m: f64,
    #[arg(long, value_enum, default_value_t = DirectionArg::Fwd)]
    pub direction: DirectionArg,
    #[arg(long, default_value_t = 4001, value_parser = clap::value_parser!(u64).range(3..))]
    pub samples: u64,
    /// continuation step used to reach m
    #[arg(long, default_value_t = 0.01, value_parser = positive)]
    pub dm: f64,
    #[arg(long, value_enum, default_value_t = Method::Quadrature)]
    pub method: Method,
}

/// Result of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// `verify` found a tolerance breach
    Breach,
}

impl RunConfig {
    pub fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(t) = self.tol_root {
            tol.root = t;
        }
        if let Some(t) = self.tol_newton {
            tol.newton = t;
        }
        tol
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::File { path: path.to_owned(), source })
}

fn load_eos(config: &RunConfig, tol: &Tolerances) -> Result<Eos, CliError> {
    let text = match &config.eos {
        Some(p) => read_text(p)?,
        None => CUBIC_VDW_JSON.to_owned(),
    };
    let eos = Eos::from_json(&text)?;
    Ok(match eos.clone().with_spinodal(tol) {
        Ok(e) => e,
        Err(_) => eos,
    })
}

fn load_eos2d(path: &Path) -> Result<Eos2d, CliError> {
    Ok(Eos2d::from_json(&read_text(path)?)?)
}

fn emit(config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.out {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::File { path: p.clone(), source }),
        None => io::stdout().write_all(bytes).map_err(|source| CliError::File { path: "<stdout>".into(), source }),
    }
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s.into_bytes()
}

fn csv_line(fields: &[f64]) -> String {
    fields.iter().map(|&x| rio::fmt_f64(x)).collect::<Vec<_>>().join(",")
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let line = |s: &mut String, k: &str, v: f64, lim: Option<f64>| {
        s.push_str(&match lim {
            Some(l) => format!("{k:<18} {v:.6e}  (limit {l:e})\n"),
            None => format!("{k:<18} {v}\n"),
        })
    };
    line(&mut s, "m", r.m, None);
    line(&mut s, "c", r.c, None);
    line(&mut s, "q1", r.q1, None);
    s.push_str(&format!("{:<18} {}\n", "samples", r.samples));
    line(&mut s, "J_residual", r.j_residual_max, Some(r.limits.first_integral));
    line(&mut s, "dev01", r.dev01, Some(r.limits.flux));
    line(&mut s, "dev11", r.dev11, Some(r.limits.flux));
    line(&mut s, "fd_residual", r.fd_residual, Some(r.limits.fd_residual));
    line(&mut s, "normalization", r.normalization_max, Some(r.limits.normalization));
    line(&mut s, "number_flux", r.number_flux_max, Some(r.limits.number_flux));
    s.push_str(&format!("{:<18} {}\n", "monotone", r.monotone));
    if r.passed() {
        s.push_str("PASS\n");
    } else {
        s.push_str(&format!("FAIL: {}\n", r.breaches.join(", ")));
    }
    s
}

/// Runs one subcommand and writes its artifact.
pub fn dispatch(config: &RunConfig) -> Result<Outcome, CliError> {
    let tol = config.tolerances();
    match &config.command {
        Command::EosInspect => {
            let eos = load_eos(config, &tol)?;
            let report = eos.validate(&tol);
            let spinodal = eos.spinodal(&tol).ok();
            let window = pressure_window(&eos, &tol).ok();
            match config.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let (lo, hi) = eos.domain();
                    let v = json!({
                        "domain": [lo, hi],
                        "spinodal": spinodal,
                        "pressure_window": window,
                        "validation": report,
                    });
                    emit(config, &json_bytes(&v))?;
                }
                Format::Csv => {
                    let (lo, hi) = eos.domain();
                    let n = tol.grid.max(2);
                    let mut s = String::from("nu,r,r1,r2,pressure,cs2\n");
                    for i in 0..n {
                        let nu = if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
                        let p = eos.eval(nu)?;
                        s.push_str(&csv_line(&[p.nu, p.r, p.r1, p.r2, p.pressure, p.cs2]));
                        s.push('\n');
                    }
                    emit(config, s.as_bytes())?;
                }
            }
        }
        Command::Maxwell => {
            let eos = load_eos(config, &tol)?;
            let ms = maxwell(&eos, &tol)?;
            match config.format.unwrap_or(Format::Json) {
                Format::Json => emit(config, &json_bytes(&serde_json::to_value(ms).expect("plain struct")))?,
                Format::Csv => {
                    let s = format!("pi_star,c,nu_minus0,nu_plus0\n{}\n", csv_line(&[ms.pi_star, ms.c, ms.nu_minus0, ms.nu_plus0]));
                    emit(config, s.as_bytes())?;
                }
            }
        }
        Command::Family { dm, m_max } => {
            let eos = load_eos(config, &tol)?;
            let fam = continue_family(&eos, *dm, *m_max, &tol)?;
            if let Some(reason) = &fam.stop_reason {
                eprintln!("family stopped at m = {}: {reason}", fam.m_bar_numeric);
            }
            match config.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut buf = Vec::new();
                    rio::write_family_csv(&mut buf, &fam.rows)?;
                    emit(config, &buf)?;
                }
                Format::Json => emit(config, &json_bytes(&serde_json::to_value(&fam).expect("plain struct")))?,
            }
        }
        Command::Profile(args) => {
            let eos = load_eos(config, &tol)?;
            let row = family_row_at(&eos, args.m, args.dm, &tol)?;
            let dir = args.direction.into();
            let profile = match args.method {
                Method::Quadrature => heteroclinic_quadrature(&eos, &row, dir, args.samples as usize, &tol)?,
                Method::Shoot => heteroclinic_shoot(&eos, &row, dir, &tol)?,
            };
            write_profile(config, &tabulate(&eos, &profile)?, None)?;
        }
        Command::Nonbaro { eos2d, s_star, profile: args } => {
            if args.method == Method::Shoot {
                return Err(CliError::Usage("nonbaro supports --method quadrature only".into()));
            }
            let e2 = load_eos2d(eos2d)?;
            let out = nonbaro_profile(&e2, *s_star, args.m, args.direction.into(), args.samples as usize, args.dm, &tol)?;
            write_profile(config, &tabulate(&out.slice, &out.profile)?, Some(*s_star))?;
        }
        Command::Verify { profile, eos2d, dm } => {
            let text = read_text(profile)?;
            let table: ProfileTable = rio::read_profile_csv(text.as_bytes())?;
            let eos = match (eos2d, table.s_star) {
                (Some(p), Some(s)) => slice(&load_eos2d(p)?, s, &tol)?,
                (Some(_), None) => return Err(CliError::Usage("--eos2d given but the profile has no s column".into())),
                (None, Some(_)) => return Err(CliError::Usage("profile has an s column; pass --eos2d".into())),
                (None, None) => load_eos(config, &tol)?,
            };
            let report = verify_profile(&eos, &table, *dm, &tol)?;
            match config.format {
                Some(Format::Json) => emit(config, &json_bytes(&serde_json::to_value(&report).expect("plain struct")))?,
                _ => emit(config, verify_text(&report).as_bytes())?,
            }
            if !report.passed() {
                return Ok(Outcome::Breach);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn write_profile(config: &RunConfig, rows: &[relkort_core::ProfileRow], s_star: Option<f64>) -> Result<(), CliError> {
    if config.format == Some(Format::Json) {
        let mut v = serde_json::to_value(rows).expect("plain struct");
        if let Some(s) = s_star {
            v = json!({ "s": s, "rows": v });
        }
        return emit(config, &json_bytes(&v));
    }
    let mut buf = Vec::new();
    rio::write_profile_csv(&mut buf, rows, s_star)?;
    emit(config, &buf)
}

/// Parses `args`, runs, and maps the result to a process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&config) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Breach) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
