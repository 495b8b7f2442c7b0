//! Non-barotropic laws `ρ̃(n, s)` and their isentropic slices.
//!
//! On an isentropic solution `s ≡ s*` the law reduces to the barotropic
//! `r(n) = ρ̃(n, s*)` with pressure `n ∂ρ̃/∂n − ρ̃`, and every profile of the
//! slice is a profile of the full model.

use serde::{Deserialize, Serialize};

use crate::eos::{Capillarity, EnergyLaw, Eos};
use crate::error::{Error, Result};
use crate::jump::{family_row_at, FamilyRow};
use crate::poly::Polynomial;
use crate::profile::{heteroclinic_quadrature, Direction, ProfileSolution};
use crate::spline::CubicSpline;
use crate::tolerances::Tolerances;

/// Coefficients `c[i][j]` of `Σ c[i][j] nⁱ sʲ`.
type Grid = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq)]
enum Energy2d {
    Polynomial(Grid),
    /// `rho[i][j] = ρ̃(n[i], s[j])`
    Tabulated { n: Vec<f64>, s: Vec<f64>, rho: Grid },
}

#[derive(Debug, Clone, PartialEq)]
enum Kappa2d {
    Constant(f64),
    Polynomial(Grid),
}

/// Energy law in two variables: particle density `n` and specific entropy `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eos2d {
    energy: Energy2d,
    kappa: Kappa2d,
    n_domain: (f64, f64),
    s_range: (f64, f64),
}

/// Coefficients in `n` of a tensor-product polynomial frozen at `s`.
fn freeze(grid: &Grid, s: f64) -> Vec<f64> {
    grid.iter().map(|row| Polynomial::new(row.clone()).eval(s)).collect()
}

fn check_grid(grid: &Grid, what: &str) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|row| row.is_empty() || row.iter().any(|c| !c.is_finite())) {
        return Err(Error::Config(format!("{what} coefficients must be finite and non-empty")));
    }
    Ok(())
}

impl Eos2d {
    pub fn from_config(config: &Eos2dConfig) -> Result<Self> {
        let kappa = match config.kappa() {
            Kappa2dConfig::Constant { value } if value.is_finite() => Kappa2d::Constant(*value),
            Kappa2dConfig::Polynomial { coeffs } => {
                check_grid(coeffs, "kappa")?;
                Kappa2d::Polynomial(coeffs.clone())
            }
            _ => return Err(Error::Config("kappa must be finite".into())),
        };
        let eos = match config {
            Eos2dConfig::Polynomial { coeffs, domain, s_range, .. } => {
                check_grid(coeffs, "energy")?;
                Eos2d { energy: Energy2d::Polynomial(coeffs.clone()), kappa, n_domain: (domain[0], domain[1]), s_range: (s_range[0], s_range[1]) }
            }
            Eos2dConfig::Tabulated { n, s, rho, domain, s_range, .. } => {
                if rho.len() != n.len() || rho.iter().any(|row| row.len() != s.len()) {
                    return Err(Error::Config("rho must have one row per n value and one column per s value".into()));
                }
                if s.len() < 4 || s.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::Config("s grid needs at least 4 strictly increasing values".into()));
                }
                let n_domain = domain.map_or((n[0], n[n.len() - 1]), |d| (d[0], d[1]));
                let s_range = s_range.map_or((s[0], s[s.len() - 1]), |r| (r[0], r[1]));
                if s_range.0 < s[0] || s_range.1 > s[s.len() - 1] {
                    return Err(Error::Config("s_range exceeds the tabulated s grid".into()));
                }
                Eos2d { energy: Energy2d::Tabulated { n: n.clone(), s: s.clone(), rho: rho.clone() }, kappa, n_domain, s_range }
            }
        };
        if !(eos.s_range.0 <= eos.s_range.1) {
            return Err(Error::Config(format!("empty entropy range [{}, {}]", eos.s_range.0, eos.s_range.1)));
        }
        Ok(eos)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Eos2dConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_config(&config)
    }

    pub fn s_range(&self) -> (f64, f64) {
        self.s_range
    }

    pub fn n_domain(&self) -> (f64, f64) {
        self.n_domain
    }

    /// Barotropic law at fixed entropy, before any van der Waals checks.
    fn freeze(&self, s: f64) -> Result<Eos> {
        let law = match &self.energy {
            Energy2d::Polynomial(grid) => EnergyLaw::polynomial(freeze(grid, s)),
            Energy2d::Tabulated { n, s: sg, rho } => {
                let r = rho
                    .iter()
                    .map(|row| Ok(CubicSpline::new(sg.clone(), row.clone())?.eval(s)[0]))
                    .collect::<Result<Vec<f64>>>()?;
                EnergyLaw::Tabulated(CubicSpline::new(n.clone(), r)?)
            }
        };
        let kappa = match &self.kappa {
            Kappa2d::Constant(k) => Capillarity::Constant(*k),
            Kappa2d::Polynomial(grid) => Capillarity::polynomial(freeze(grid, s)),
        };
        Eos::new(law, kappa, self.n_domain)
    }
}

/// The isentropic slice `r(n) = ρ̃(n, s*)`, validated and carrying its spinodal.
pub fn slice(eos2d: &Eos2d, s_star: f64, tol: &Tolerances) -> Result<Eos> {
    let (lo, hi) = eos2d.s_range;
    if !(s_star >= lo && s_star <= hi) {
        return Err(Error::EntropyOutOfRange { s: s_star, lo, hi });
    }
    let eos = eos2d.freeze(s_star)?;
    let report = eos.validate(tol);
    if !report.passed() {
        let source = Error::Config(format!("slice fails validation: {report:?}"));
        return Err(Error::SliceNotVanDerWaals { s: s_star, source: Box::new(source) });
    }
    eos.with_spinodal(tol).map_err(|e| Error::SliceNotVanDerWaals { s: s_star, source: Box::new(e) })
}

/// A profile of the isentropic slice at `s*`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonbaroProfile {
    pub s_star: f64,
    pub slice: Eos,
    pub row: FamilyRow,
    pub profile: ProfileSolution,
}

/// Slices at `s*` and runs the barotropic pipeline on the slice.
pub fn nonbaro_profile(
    eos2d: &Eos2d,
    s_star: f64,
    m: f64,
    direction: Direction,
    n_samples: usize,
    dm: f64,
    tol: &Tolerances,
) -> Result<NonbaroProfile> {
    let eos = slice(eos2d, s_star, tol)?;
    let row = family_row_at(&eos, m, dm, tol)?;
    let profile = heteroclinic_quadrature(&eos, &row, direction, n_samples, tol)?;
    Ok(NonbaroProfile { s_star, slice: eos, row, profile })
}

/// JSON form of an [`Eos2d`]: the barotropic schema with an added `s` axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Eos2dConfig {
    Polynomial {
        /// `coeffs[i][j]` multiplies `nⁱ sʲ`
        coeffs: Grid,
        domain: [f64; 2],
        s_range: [f64; 2],
        #[serde(default)]
        kappa: Kappa2dConfig,
    },
    Tabulated {
        n: Vec<f64>,
        s: Vec<f64>,
        /// `rho[i][j] = ρ̃(n[i], s[j])`
        rho: Grid,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s_range: Option<[f64; 2]>,
        #[serde(default)]
        kappa: Kappa2dConfig,
    },
}

impl Eos2dConfig {
    fn kappa(&self) -> &Kappa2dConfig {
        match self {
            Eos2dConfig::Polynomial { kappa, .. } | Eos2dConfig::Tabulated { kappa, .. } => kappa,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Kappa2dConfig {
    Constant { value: f64 },
    Polynomial { coeffs: Grid },
}

impl Default for Kappa2dConfig {
    fn default() -> Self {
        Kappa2dConfig::Constant { value: 1.0 }
    }
}
