//! Barotropic equations of state written through the conjugate index.
//!
//! The energy density is given as a function `r(ν)` of the conjugate index,
//! so that the Lichnerowicz index is `f = r'(ν)` and the pressure is
//! `p̌(ν) = ν r'(ν) - r(ν)`. Van der Waals type laws have a spinodal interval
//! `(ν_A, ν_B)` on which `r'' < 0`; outside of it the law is convex and the
//! two branches `(ν_lo, ν_A)`, `(ν_B, ν_hi)` carry the two stable phases.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots;
use crate::spline::CubicSpline;
use crate::tolerances::Tolerances;

/// Coefficients of the canonical cubic van der Waals test law,
/// `r(ν) = ν⁴/12 − ν³/2 + ν² + ν/2 − 1/20`, for which `r'' = (ν−1)(ν−2)`.
pub const CUBIC_VDW_COEFFS: [f64; 5] = [-0.05, 0.5, 1.0, -0.5, 1.0 / 12.0];
pub const CUBIC_VDW_DOMAIN: [f64; 2] = [0.2, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `(ν_lo, ν_A)`
    Low,
    /// `(ν_B, ν_hi)`
    High,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnergyLaw {
    Polynomial {
        r: Polynomial,
        r1: Polynomial,
        r2: Polynomial,
        r3: Polynomial,
    },
    Tabulated(CubicSpline),
}

impl EnergyLaw {
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let r = Polynomial::new(coeffs);
        let r1 = r.derivative();
        let r2 = r1.derivative();
        let r3 = r2.derivative();
        EnergyLaw::Polynomial { r, r1, r2, r3 }
    }

    fn derivs(&self, nu: f64) -> [f64; 4] {
        match self {
            EnergyLaw::Polynomial { r, r1, r2, r3 } => [r.eval(nu), r1.eval(nu), r2.eval(nu), r3.eval(nu)],
            EnergyLaw::Tabulated(s) => s.eval(nu),
        }
    }
}

/// Capillarity coefficient κ(ν).
#[derive(Debug, Clone, PartialEq)]
pub enum Capillarity {
    Constant(f64),
    Polynomial { kappa: Polynomial, kappa1: Polynomial },
}

impl Capillarity {
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        let kappa = Polynomial::new(coeffs);
        let kappa1 = kappa.derivative();
        Capillarity::Polynomial { kappa, kappa1 }
    }

    fn eval(&self, nu: f64) -> (f64, f64) {
        match self {
            Capillarity::Constant(k) => (*k, 0.0),
            Capillarity::Polynomial { kappa, kappa1 } => (kappa.eval(nu), kappa1.eval(nu)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinodal {
    pub nu_a: f64,
    pub nu_b: f64,
}

/// Thermodynamic quantities at one value of the conjugate index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatePoint {
    pub nu: f64,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    /// p̌ = ν r' − r
    pub pressure: f64,
    /// Lichnerowicz index f = r'
    pub f: f64,
    /// ν r'' / r', the squared sound speed where positive
    pub cs2: f64,
}

/// Barotropic EOS: energy law, capillarity and domain.
///
/// Values are immutable; [`Eos::with_spinodal`] returns a copy carrying the
/// detected spinodal so later queries skip the scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Eos {
    law: EnergyLaw,
    kappa: Capillarity,
    domain: (f64, f64),
    spinodal: Option<Spinodal>,
}

impl Eos {
    pub fn new(law: EnergyLaw, kappa: Capillarity, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
            return Err(Error::Config(format!("domain must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
        }
        if let EnergyLaw::Tabulated(s) = &law {
            let k = s.knots();
            if lo < k[0] || hi > k[k.len() - 1] {
                return Err(Error::Config(format!(
                    "domain [{lo}, {hi}] exceeds the table range [{}, {}]",
                    k[0],
                    k[k.len() - 1]
                )));
            }
        }
        Ok(Self { law, kappa, domain, spinodal: None })
    }

    pub fn polynomial(coeffs: &[f64], domain: (f64, f64), kappa: Capillarity) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("polynomial coefficients must be finite and non-empty".into()));
        }
        Self::new(EnergyLaw::polynomial(coeffs.to_vec()), kappa, domain)
    }

    /// The canonical cubic van der Waals law on `[0.2, 4]` with κ ≡ 1.
    pub fn cubic_vdw() -> Self {
        Self::polynomial(&CUBIC_VDW_COEFFS, (CUBIC_VDW_DOMAIN[0], CUBIC_VDW_DOMAIN[1]), Capillarity::Constant(1.0))
            .expect("canonical EOS is well formed")
    }

    pub fn from_config(config: &EosConfig) -> Result<Self> {
        match config {
            EosConfig::Polynomial { coeffs, domain, kappa } => Self::polynomial(coeffs, (domain[0], domain[1]), kappa.build()?),
            EosConfig::Tabulated { nu, r, domain, kappa } => {
                let spline = CubicSpline::new(nu.clone(), r.clone())?;
                let domain = match domain {
                    Some(d) => (d[0], d[1]),
                    None => (nu[0], nu[nu.len() - 1]),
                };
                Self::new(EnergyLaw::Tabulated(spline), kappa.build()?, domain)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: EosConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_config(&config)
    }

    pub fn law(&self) -> &EnergyLaw {
        &self.law
    }

    pub fn capillarity(&self) -> &Capillarity {
        &self.kappa
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn contains(&self, nu: f64) -> bool {
        nu >= self.domain.0 && nu <= self.domain.1
    }

    pub fn check_domain(&self, nu: f64) -> Result<()> {
        if self.contains(nu) {
            Ok(())
        } else {
            Err(Error::Domain { nu, lo: self.domain.0, hi: self.domain.1 })
        }
    }

    /// `[r, r', r'', r''']` at `nu`, without a domain check.
    pub fn derivs(&self, nu: f64) -> [f64; 4] {
        self.law.derivs(nu)
    }

    pub fn r(&self, nu: f64) -> f64 {
        self.law.derivs(nu)[0]
    }

    pub fn r1(&self, nu: f64) -> f64 {
        self.law.derivs(nu)[1]
    }

    pub fn r2(&self, nu: f64) -> f64 {
        self.law.derivs(nu)[2]
    }

    pub fn r3(&self, nu: f64) -> f64 {
        self.law.derivs(nu)[3]
    }

    /// p̌(ν) = ν r'(ν) − r(ν)
    pub fn pressure(&self, nu: f64) -> f64 {
        let [r, r1, ..] = self.law.derivs(nu);
        nu * r1 - r
    }

    /// dp̌/dν = ν r''(ν)
    pub fn pressure_slope(&self, nu: f64) -> f64 {
        nu * self.r2(nu)
    }

    /// `(κ, κ')` at `nu`.
    pub fn kappa(&self, nu: f64) -> (f64, f64) {
        self.kappa.eval(nu)
    }

    pub fn eval(&self, nu: f64) -> Result<StatePoint> {
        self.check_domain(nu)?;
        let [r, r1, r2, _] = self.law.derivs(nu);
        Ok(StatePoint {
            nu,
            r,
            r1,
            r2,
            pressure: nu * r1 - r,
            f: r1,
            cs2: nu * r2 / r1,
        })
    }

    /// Cached spinodal, or a fresh scan when none is cached.
    pub fn spinodal(&self, tol: &Tolerances) -> Result<Spinodal> {
        match self.spinodal {
            Some(s) => Ok(s),
            None => self.find_spinodal(tol),
        }
    }

    pub fn cached_spinodal(&self) -> Option<Spinodal> {
        self.spinodal
    }

    /// Locates the two sign changes of r'' on the domain.
    pub fn find_spinodal(&self, tol: &Tolerances) -> Result<Spinodal> {
        let (lo, hi) = self.domain;
        let changes = roots::sign_changes(|nu| self.r2(nu), lo, hi, tol.grid);
        match changes.as_slice() {
            [] => Err(Error::NoSpinodal),
            [(a0, a1, false), (b0, b1, true)] => {
                let nu_a = roots::bisect(|nu| self.r2(nu), *a0, *a1, tol.root).ok_or(Error::MalformedSpinodal { changes: 2 })?;
                let nu_b = roots::bisect(|nu| self.r2(nu), *b0, *b1, tol.root).ok_or(Error::MalformedSpinodal { changes: 2 })?;
                Ok(Spinodal { nu_a, nu_b })
            }
            other => Err(Error::MalformedSpinodal { changes: other.len() }),
        }
    }

    /// Borrows `self` if the spinodal is cached, otherwise returns a copy
    /// with the scan done once.
    pub fn ensure_spinodal(&self, tol: &Tolerances) -> Result<Cow<'_, Eos>> {
        if self.spinodal.is_some() {
            Ok(Cow::Borrowed(self))
        } else {
            Ok(Cow::Owned(self.clone().with_spinodal(tol)?))
        }
    }

    pub fn with_spinodal(mut self, tol: &Tolerances) -> Result<Self> {
        self.spinodal = Some(self.find_spinodal(tol)?);
        Ok(self)
    }

    /// Closed interval of a convex branch. A law without spinodal is convex
    /// on its whole domain, which then serves as either branch.
    pub fn branch_interval(&self, branch: Branch, tol: &Tolerances) -> Result<(f64, f64)> {
        let (lo, hi) = self.domain;
        match self.spinodal(tol) {
            Ok(s) => Ok(match branch {
                Branch::Low => (lo, s.nu_a),
                Branch::High => (s.nu_b, hi),
            }),
            Err(Error::NoSpinodal) => Ok((lo, hi)),
            Err(e) => Err(e),
        }
    }

    /// Grid check of `r > 0`, `ν r' > r` and `κ > 0`, plus the largest
    /// squared sound speed over the stable (r'' > 0) part of the grid.
    pub fn validate(&self, tol: &Tolerances) -> ValidationReport {
        let (lo, hi) = self.domain;
        let n = tol.grid.max(2);
        let mut energy = Check::pass();
        let mut pressure = Check::pass();
        let mut kappa = Check::pass();
        let mut max_cs2 = f64::NEG_INFINITY;
        for i in 0..n {
            let nu = if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
            let [r, r1, r2, _] = self.law.derivs(nu);
            energy.record(r > 0.0, nu);
            pressure.record(nu * r1 > r, nu);
            kappa.record(self.kappa.eval(nu).0 > 0.0, nu);
            if r2 > 0.0 && r1 > 0.0 {
                max_cs2 = max_cs2.max(nu * r2 / r1);
            }
        }
        let max_cs2_stable = if max_cs2.is_finite() { Some(max_cs2) } else { None };
        ValidationReport {
            energy_positive: energy,
            pressure_positive: pressure,
            kappa_positive: kappa,
            max_cs2_stable,
            causality_warning: max_cs2_stable.is_some_and(|c| c > 1.0),
        }
    }

    /// Legendre-conjugate pressure π(f) = ν f − r(ν) with r'(ν) = f on `branch`.
    pub fn legendre_pressure(&self, f: f64, branch: Branch, tol: &Tolerances) -> Result<f64> {
        let (a, b) = self.branch_interval(branch, tol)?;
        let (fa, fb) = (self.r1(a), self.r1(b));
        if !(f >= fa && f <= fb) {
            return Err(Error::Range { f, branch, lo: fa, hi: fb });
        }
        let nu = roots::newton_bracketed(|nu| self.r1(nu) - f, |nu| self.r2(nu), a, b, tol.root)
            .ok_or(Error::Range { f, branch, lo: fa, hi: fb })?;
        Ok(nu * f - self.r(nu))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub passed: bool,
    /// first grid ν at which the condition fails
    pub first_violation: Option<f64>,
}

impl Check {
    fn pass() -> Self {
        Self { passed: true, first_violation: None }
    }

    fn record(&mut self, ok: bool, nu: f64) {
        if !ok && self.passed {
            self.passed = false;
            self.first_violation = Some(nu);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub energy_positive: Check,
    pub pressure_positive: Check,
    pub kappa_positive: Check,
    pub max_cs2_stable: Option<f64>,
    /// squared sound speed exceeds 1 somewhere on the stable region
    pub causality_warning: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.energy_positive.passed && self.pressure_positive.passed && self.kappa_positive.passed
    }
}

/// JSON form of an EOS.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum EosConfig {
    Polynomial {
        /// ascending powers of ν
        coeffs: Vec<f64>,
        domain: [f64; 2],
        #[serde(default)]
        kappa: KappaConfig,
    },
    Tabulated {
        nu: Vec<f64>,
        r: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<[f64; 2]>,
        #[serde(default)]
        kappa: KappaConfig,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum KappaConfig {
    Constant { value: f64 },
    Polynomial { coeffs: Vec<f64> },
}

impl Default for KappaConfig {
    fn default() -> Self {
        KappaConfig::Constant { value: 1.0 }
    }
}

impl KappaConfig {
    pub fn build(&self) -> Result<Capillarity> {
        match self {
            KappaConfig::Constant { value } if value.is_finite() => Ok(Capillarity::Constant(*value)),
            KappaConfig::Polynomial { coeffs } if !coeffs.is_empty() && coeffs.iter().all(|c| c.is_finite()) => {
                Ok(Capillarity::polynomial(coeffs.clone()))
            }
            _ => Err(Error::Config("kappa must be finite".into())),
        }
    }
}
