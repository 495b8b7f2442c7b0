//! Traveling-wave profiles on the critical level set.
//!
//! With `U¹ = m/ν` the profile equation becomes the planar system
//!
//! ```text
//! ν̇ = ω,    κ(ν) ω̇ = r'(ν) − ½ κ'(ν) ω² − a'(ν),    a(ν) = c √(m² + ν²)
//! ```
//!
//! which conserves `J = r − ½ κ ω² − a`. The end states are saddles on the
//! level set `J = −q¹`, and the two heteroclinic orbits joining them are
//! mirror images under `ω ↦ −ω`.

use std::cell::RefCell;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use ode_solvers::{Dop853, OutputType, System, Vector2};
use serde::{Deserialize, Serialize};

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::jump::FamilyRow;
use crate::roots;
use crate::tolerances::Tolerances;

/// Clip distance of the sampled profile from each end state, relative to `ν⁺ − ν⁻`.
pub const TAIL_CLIP: f64 = 1e-6;
/// Launch offset of the shot orbit from `ν⁻`, relative to `ν⁺ − ν⁻`.
pub const LAUNCH_OFFSET: f64 = 1e-8;
/// Samples closer than this fraction of `ν⁺ − ν⁻` to an end state are left
/// out of [`profile_residual`].
pub const RESIDUAL_CORE: f64 = 0.02;

/// below this fraction of `ν⁺ − ν⁻` from a saddle the radicand is integrated from it
const NEAR_SADDLE: f64 = 1e-2;
const GAUSS_NODES: usize = 24;
/// window padding of the stationary-point scan, relative to `ν⁺ − ν⁻`
const SCAN_PAD: f64 = 1e-7;
const SHOOT_RTOL: f64 = 1e-13;
const SHOOT_ATOL: f64 = 1e-16;
/// x¹ spacing of the dense output of the shot orbit
const SHOOT_OUTPUT_STEP: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub nu: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// from ν⁻ to ν⁺, ω > 0
    #[serde(rename = "fwd")]
    Forward,
    /// from ν⁺ to ν⁻, ω < 0
    #[serde(rename = "bwd")]
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fwd" | "forward" => Ok(Direction::Forward),
            "bwd" | "backward" => Ok(Direction::Backward),
            other => Err(Error::Config(format!("unknown direction {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub x1: f64,
    pub nu: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSolution {
    pub samples: Vec<ProfileSample>,
    pub direction: Direction,
    pub m: f64,
    pub c: f64,
    pub q1: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    /// centre value ν⁰, where `x¹ = 0`
    pub nu_center: f64,
    /// max distance of the terminal samples to their end states
    pub endpoint_gap: f64,
    /// exponential rates `√(j''/κ)` of the approach to ν⁻ and ν⁺
    pub tail_rates: [f64; 2],
}

impl ProfileSolution {
    /// Cubic Hermite interpolation of `(ν, ω)` at `x1`, using `ω = dν/dx¹`.
    /// `None` outside the sampled range.
    pub fn interpolate(&self, x1: f64) -> Option<PhasePoint> {
        let s = &self.samples;
        if s.len() < 2 || x1 < s[0].x1 || x1 > s[s.len() - 1].x1 {
            return None;
        }
        let k = s.partition_point(|p| p.x1 <= x1).clamp(1, s.len() - 1);
        let (a, b) = (&s[k - 1], &s[k]);
        let h = b.x1 - a.x1;
        let t = (x1 - a.x1) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t),
            t * (1.0 - t) * (1.0 - t),
            t * t * (3.0 - 2.0 * t),
            t * t * (t - 1.0),
        );
        let nu = h00 * a.nu + h10 * h * a.omega + h01 * b.nu + h11 * h * b.omega;
        let (d00, d10, d01, d11) = (6.0 * t * (t - 1.0), (1.0 - t) * (1.0 - 3.0 * t), 6.0 * t * (1.0 - t), t * (3.0 * t - 2.0));
        let omega = (d00 * a.nu + d01 * b.nu) / h + d10 * a.omega + d11 * b.omega;
        Some(PhasePoint { nu, omega })
    }

    /// Largest `|J(ν, ω) + q¹|` over the samples.
    pub fn first_integral_drift(&self, eos: &Eos) -> Result<f64> {
        self.samples.iter().try_fold(0.0f64, |acc, p| {
            let j = first_integral(eos, self.m, self.c, PhasePoint { nu: p.nu, omega: p.omega })?;
            Ok(acc.max((j + self.q1).abs()))
        })
    }

    /// Checks ordering and sign invariants: `x¹` strictly increasing, ν
    /// strictly monotone in the profile direction, and ω of the right sign.
    pub fn check_monotone(&self) -> Result<()> {
        let s = self.direction.sign();
        for (i, w) in self.samples.windows(2).enumerate() {
            if w[1].x1 <= w[0].x1 {
                return Err(Error::InvalidProfile(format!("x1 not increasing at sample {}", i + 1)));
            }
            if s * (w[1].nu - w[0].nu) <= 0.0 {
                return Err(Error::InvalidProfile(format!("nu not strictly monotone at sample {}", i + 1)));
            }
        }
        if let Some(i) = self.samples.iter().position(|p| s * p.omega <= 0.0) {
            return Err(Error::InvalidProfile(format!("omega has the wrong sign at sample {i}")));
        }
        Ok(())
    }

    /// Image under `(x¹, ν, ω) ↦ (−x¹, ν, −ω)`.
    pub fn mirrored(&self) -> ProfileSolution {
        let samples = self.samples.iter().rev().map(|p| ProfileSample { x1: -p.x1, nu: p.nu, omega: -p.omega }).collect();
        ProfileSolution {
            samples,
            direction: match self.direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            },
            ..self.clone()
        }
    }
}

/// Value and first two derivatives of `a(ν) = c √(m² + ν²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amc {
    pub a: f64,
    pub da: f64,
    pub d2a: f64,
}

pub fn a_mc(m: f64, c: f64, nu: f64) -> Amc {
    let s2 = m * m + nu * nu;
    let s = s2.sqrt();
    Amc { a: c * s, da: c * nu / s, d2a: c * m * m / (s2 * s) }
}

/// `[j, j', j'']` for the reduced potential `j = r − a`.
pub fn reduced_potential(eos: &Eos, m: f64, c: f64, nu: f64) -> [f64; 3] {
    let [r, r1, r2, _] = eos.derivs(nu);
    let a = a_mc(m, c, nu);
    [r - a.a, r1 - a.da, r2 - a.d2a]
}

fn check_point(eos: &Eos, p: PhasePoint) -> Result<(f64, f64)> {
    eos.check_domain(p.nu)?;
    let (k, k1) = eos.kappa(p.nu);
    if !(k > 0.0) {
        return Err(Error::Config(format!("kappa({}) = {k} is not positive", p.nu)));
    }
    Ok((k, k1))
}

fn field(eos: &Eos, m: f64, c: f64, nu: f64, omega: f64) -> (f64, f64) {
    let (k, k1) = eos.kappa(nu);
    let r1 = eos.r1(nu);
    let da = a_mc(m, c, nu).da;
    (omega, (r1 - 0.5 * k1 * omega * omega - da) / k)
}

pub fn vector_field(eos: &Eos, m: f64, c: f64, p: PhasePoint) -> Result<(f64, f64)> {
    check_point(eos, p)?;
    Ok(field(eos, m, c, p.nu, p.omega))
}

pub fn first_integral(eos: &Eos, m: f64, c: f64, p: PhasePoint) -> Result<f64> {
    let (k, _) = check_point(eos, p)?;
    Ok(eos.r(p.nu) - 0.5 * k * p.omega * p.omega - a_mc(m, c, p.nu).a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StationaryKind {
    Saddle,
    Center,
    /// `j'' = 0` to working precision
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub nu: f64,
    pub kind: StationaryKind,
    /// eigenvalues `±√(j''/κ)` of the linearisation
    pub eigenvalues: [Complex64; 2],
    /// `J(ν*, 0)`
    pub j_value: f64,
}

/// The stationary triple saddle, centre, saddle in order of increasing ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryReport {
    pub points: [StationaryPoint; 3],
}

impl StationaryReport {
    pub fn center(&self) -> f64 {
        self.points[1].nu
    }
}

/// All zeros of `j'` on `[lo, hi]`, located by a grid scan and bisection.
pub fn stationary_points(eos: &Eos, m: f64, c: f64, lo: f64, hi: f64, tol: &Tolerances) -> Result<Vec<StationaryPoint>> {
    eos.check_domain(lo)?;
    eos.check_domain(hi)?;
    let dj = |nu: f64| reduced_potential(eos, m, c, nu)[1];
    roots::sign_changes(dj, lo, hi, tol.grid)
        .into_iter()
        .map(|(a, b, _)| {
            let nu = roots::bisect(dj, a, b, tol.root).unwrap_or(0.5 * (a + b));
            let [j, _, j2] = reduced_potential(eos, m, c, nu);
            let (k, _) = eos.kappa(nu);
            let lam = Complex64::new(j2 / k, 0.0).sqrt();
            let kind = if j2 > 0.0 {
                StationaryKind::Saddle
            } else if j2 < 0.0 {
                StationaryKind::Center
            } else {
                StationaryKind::Degenerate
            };
            Ok(StationaryPoint { nu, kind, eigenvalues: [lam, -lam], j_value: j })
        })
        .collect()
}

/// Classifies the zeros of `j'` between the end states of `row`, both
/// included.
pub fn classify_stationary(eos: &Eos, row: &FamilyRow, tol: &Tolerances) -> Result<StationaryReport> {
    let pad = SCAN_PAD * (row.nu_plus - row.nu_minus);
    let (dlo, dhi) = eos.domain();
    let lo = (row.nu_minus - pad).max(dlo);
    let hi = (row.nu_plus + pad).min(dhi);
    let pts = stationary_points(eos, row.m, row.c, lo, hi, tol)?;
    let points: [StationaryPoint; 3] =
        pts.try_into().map_err(|v: Vec<_>| Error::UnexpectedStationaryCount { found: v.len() })?;
    use StationaryKind::*;
    let pattern_ok = matches!([points[0].kind, points[1].kind, points[2].kind], [Saddle, Center, Saddle]);
    let ordered = points[0].j_value < points[1].j_value && points[2].j_value < points[1].j_value;
    if !pattern_ok || !ordered {
        return Err(Error::UnexpectedStationaryCount { found: 3 });
    }
    Ok(StationaryReport { points })
}

/// `j + q¹` on the level set, integrated from the nearest saddle where the
/// direct difference would cancel.
struct LevelSet<'a> {
    eos: &'a Eos,
    m: f64,
    c: f64,
    saddles: [(f64, f64); 2],
    near: f64,
    gauss: GaussLegendre,
}

impl<'a> LevelSet<'a> {
    fn new(eos: &'a Eos, row: &FamilyRow) -> Self {
        let offset = |nu: f64| reduced_potential(eos, row.m, row.c, nu)[0] + row.q1;
        LevelSet {
            eos,
            m: row.m,
            c: row.c,
            saddles: [(row.nu_minus, offset(row.nu_minus)), (row.nu_plus, offset(row.nu_plus))],
            near: NEAR_SADDLE * (row.nu_plus - row.nu_minus),
            gauss: GaussLegendre::new(NonZeroUsize::new(GAUSS_NODES).unwrap()),
        }
    }

    fn radicand(&self, nu: f64, q1: f64) -> f64 {
        for &(s, offset) in &self.saddles {
            if (nu - s).abs() < self.near {
                return offset + self.gauss.integrate(s, nu, |t| reduced_potential(self.eos, self.m, self.c, t)[1]);
            }
        }
        reduced_potential(self.eos, self.m, self.c, nu)[0] + q1
    }
}

fn tail_rates(eos: &Eos, row: &FamilyRow) -> [f64; 2] {
    [row.nu_minus, row.nu_plus].map(|nu| {
        let j2 = reduced_potential(eos, row.m, row.c, nu)[2];
        (j2 / eos.kappa(nu).0).max(0.0).sqrt()
    })
}

/// Heteroclinic orbit on `J = −q¹` by quadrature of `dx¹ = dν/ω(ν)`.
///
/// Samples lie on a uniform ν-grid clipped `TAIL_CLIP·(ν⁺ − ν⁻)` away from
/// both end states. `x¹ = 0` at the centre value ν⁰.
pub fn heteroclinic_quadrature(
    eos: &Eos,
    row: &FamilyRow,
    direction: Direction,
    n_samples: usize,
    tol: &Tolerances,
) -> Result<ProfileSolution> {
    if n_samples < 3 {
        return Err(Error::TooFewSamples { found: n_samples, needed: 3 });
    }
    eos.check_domain(row.nu_minus)?;
    eos.check_domain(row.nu_plus)?;
    let report = classify_stationary(eos, row, tol)?;
    let nu0 = report.center();
    let width = row.nu_plus - row.nu_minus;
    let eps = TAIL_CLIP * width;
    let (lo, hi) = (row.nu_minus + eps, row.nu_plus - eps);
    let level = LevelSet::new(eos, row);

    let omega_of = |nu: f64| -> Result<f64> {
        let rad = level.radicand(nu, row.q1);
        if rad < -tol.first_integral {
            return Err(Error::NegativeRadicand { nu, value: rad });
        }
        Ok((2.0 * rad.max(0.0) / eos.kappa(nu).0).sqrt())
    };

    let last = (n_samples - 1) as f64;
    let nus: Vec<f64> = (0..n_samples)
        .map(|i| if i + 1 == n_samples { hi } else { lo + (hi - lo) * (i as f64 / last) })
        .collect();
    let omegas = nus.iter().map(|&nu| omega_of(nu)).collect::<Result<Vec<f64>>>()?;
    if let Some(i) = omegas.iter().position(|&w| !(w > 0.0)) {
        return Err(Error::NegativeRadicand { nu: nus[i], value: 0.0 });
    }

    let segment = |a: f64, b: f64| -> f64 {
        let f = |nu: f64| {
            let rad = level.radicand(nu, row.q1).max(f64::MIN_POSITIVE);
            (eos.kappa(nu).0 / (2.0 * rad)).sqrt()
        };
        quadrature::double_exponential::integrate(f, a, b, 1e-14 * (b - a).max(1e-300)).integral
    };

    // x¹ = 0 at ν⁰; integrate outwards from the cell containing it
    let k = nus.partition_point(|&nu| nu <= nu0).clamp(1, n_samples - 1);
    let mut xs = vec![0.0; n_samples];
    xs[k - 1] = -segment(nus[k - 1], nu0);
    xs[k] = segment(nu0, nus[k]);
    for i in (0..k - 1).rev() {
        xs[i] = xs[i + 1] - segment(nus[i], nus[i + 1]);
    }
    for i in k + 1..n_samples {
        xs[i] = xs[i - 1] + segment(nus[i - 1], nus[i]);
    }

    let samples = (0..n_samples).map(|i| ProfileSample { x1: xs[i], nu: nus[i], omega: omegas[i] }).collect();
    let forward = ProfileSolution {
        samples,
        m: row.m,
        c: row.c,
        q1: row.q1,
        nu_minus: row.nu_minus,
        nu_plus: row.nu_plus,
        nu_center: nu0,
        endpoint_gap: eps,
        tail_rates: tail_rates(eos, row),
        direction: Direction::Forward,
    };
    Ok(match direction {
        Direction::Forward => forward,
        Direction::Backward => forward.mirrored(),
    })
}

enum ShotState {
    Running,
    Arrived,
    Escaped(String),
}

struct ShotOrbit<'a> {
    eos: &'a Eos,
    m: f64,
    c: f64,
    q1: f64,
    sign: f64,
    window: (f64, f64),
    target: f64,
    drift_limit: f64,
    state: &'a RefCell<ShotState>,
}

impl System<f64, Vector2<f64>> for ShotOrbit<'_> {
    fn system(&self, _x: f64, y: &Vector2<f64>, dy: &mut Vector2<f64>) {
        let nu = y[0].clamp(self.eos.domain().0, self.eos.domain().1);
        let (a, b) = field(self.eos, self.m, self.c, nu, y[1]);
        dy[0] = a;
        dy[1] = b;
    }

    fn solout(&mut self, _x: f64, y: &Vector2<f64>, _dy: &Vector2<f64>) -> bool {
        let (nu, omega) = (y[0], y[1]);
        let mut state = self.state.borrow_mut();
        if !(nu > self.window.0 && nu < self.window.1) {
            *state = ShotState::Escaped("left the window between the end states".into());
        } else if self.sign * omega <= 0.0 {
            *state = ShotState::Escaped("turned back before reaching the target state".into());
        } else {
            let (k, _) = self.eos.kappa(nu);
            let j = self.eos.r(nu) - 0.5 * k * omega * omega - a_mc(self.m, self.c, nu).a;
            if (j + self.q1).abs() > self.drift_limit {
                *state = ShotState::Escaped(format!("drifted off the level set by {:e}", (j + self.q1).abs()));
            } else if self.sign * (nu - self.target) >= 0.0 {
                *state = ShotState::Arrived;
            }
        }
        !matches!(*state, ShotState::Running)
    }
}

/// Heteroclinic orbit by integrating the profile ODE from the unstable
/// manifold of the departure saddle.
///
/// The orbit starts `LAUNCH_OFFSET·(ν⁺ − ν⁻)` from the departure state and
/// stops `TAIL_CLIP·(ν⁺ − ν⁻)` short of the arrival state. The phase is
/// fixed by `x¹ = 0` at ν⁰, located by Hermite interpolation.
pub fn heteroclinic_shoot(eos: &Eos, row: &FamilyRow, direction: Direction, tol: &Tolerances) -> Result<ProfileSolution> {
    eos.check_domain(row.nu_minus)?;
    eos.check_domain(row.nu_plus)?;
    let nu0 = classify_stationary(eos, row, tol)?.center();
    let width = row.nu_plus - row.nu_minus;
    let delta = LAUNCH_OFFSET * width;
    let eps = TAIL_CLIP * width;
    let rates = tail_rates(eos, row);
    let sign = direction.sign();
    let (start, target, lam) = match direction {
        Direction::Forward => (row.nu_minus + delta, row.nu_plus - eps, rates[0]),
        Direction::Backward => (row.nu_plus - delta, row.nu_minus + eps, rates[1]),
    };
    let omega_start = sign * lam * delta;
    let span = 4.0 * ((width / delta).ln() / rates[0].min(rates[1]) + (width / eps).ln() / rates[0].min(rates[1])) + 100.0;

    let state = RefCell::new(ShotState::Running);
    let orbit = ShotOrbit {
        eos,
        m: row.m,
        c: row.c,
        q1: row.q1,
        sign,
        window: (row.nu_minus, row.nu_plus),
        target,
        drift_limit: 1e-6 * (1.0 + row.q1.abs()),
        state: &state,
    };
    let mut solver = Dop853::new(orbit, 0.0, span, SHOOT_OUTPUT_STEP, Vector2::new(start, omega_start), SHOOT_RTOL, SHOOT_ATOL);
    solver.set_output(OutputType::Dense);
    let integrated = solver.integrate();
    let xs = solver.x_out().clone();
    let ys = solver.y_out().clone();
    let (x_last, nu_last) = match (xs.last(), ys.last()) {
        (Some(&x), Some(y)) => (x, y[0]),
        _ => (0.0, start),
    };
    let escaped = |reason: String| Error::OrbitEscaped { x1: x_last, nu: nu_last, reason };
    if let Err(e) = integrated {
        return Err(escaped(format!("integrator failed: {e:?}")));
    }
    match state.into_inner() {
        ShotState::Arrived => {}
        ShotState::Escaped(reason) => return Err(escaped(reason)),
        ShotState::Running => return Err(escaped("did not reach the target state".into())),
    }

    let mut samples: Vec<ProfileSample> =
        xs.iter().zip(&ys).map(|(&x1, y)| ProfileSample { x1, nu: y[0], omega: y[1] }).collect();
    let shift = center_crossing(&samples, nu0, sign).ok_or_else(|| escaped("never crossed the centre value".into()))?;
    for p in &mut samples {
        p.x1 -= shift;
    }
    let arrival = match direction {
        Direction::Forward => row.nu_plus,
        Direction::Backward => row.nu_minus,
    };
    let gap = delta.max((arrival - nu_last).abs());
    Ok(ProfileSolution {
        samples,
        direction,
        m: row.m,
        c: row.c,
        q1: row.q1,
        nu_minus: row.nu_minus,
        nu_plus: row.nu_plus,
        nu_center: nu0,
        endpoint_gap: gap,
        tail_rates: rates,
    })
}

/// `x¹` where the orbit passes `nu0`, by Hermite inversion on the bracketing step.
fn center_crossing(samples: &[ProfileSample], nu0: f64, sign: f64) -> Option<f64> {
    let k = samples.windows(2).position(|w| sign * (w[0].nu - nu0) <= 0.0 && sign * (w[1].nu - nu0) > 0.0)?;
    let (a, b) = (samples[k], samples[k + 1]);
    let h = b.x1 - a.x1;
    let hermite = |t: f64| {
        (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t) * a.nu
            + t * (1.0 - t) * (1.0 - t) * h * a.omega
            + t * t * (3.0 - 2.0 * t) * b.nu
            + t * t * (t - 1.0) * h * b.omega
            - nu0
    };
    let t = roots::bisect(hermite, 0.0, 1.0, 1e-15)?;
    Some(a.x1 + t * h)
}

/// Max-norm over interior samples of `f̄(ν, ν̇, ν̈) √(1 + m²/ν²) − c`, with
/// ν̇ and ν̈ from three-point differences on the (non-uniform) `x¹` grid.
///
/// Only samples at least `RESIDUAL_CORE·(ν⁺ − ν⁻)` away from both end
/// states enter; in the exponential tails the sample spacing in `x¹` grows
/// too fast for second-order differences. A profile with `ν⁺ = ν⁻` uses all
/// interior samples.
pub fn profile_residual(eos: &Eos, profile: &ProfileSolution, m: f64, c: f64) -> Result<f64> {
    let s = &profile.samples;
    if s.len() < 5 {
        return Err(Error::TooFewSamples { found: s.len(), needed: 5 });
    }
    let (lo, hi) = (profile.nu_minus.min(profile.nu_plus), profile.nu_minus.max(profile.nu_plus));
    let core = RESIDUAL_CORE * (hi - lo);
    let mut worst = 0.0f64;
    for i in 1..s.len() - 1 {
        let (p, q, n) = (&s[i - 1], &s[i], &s[i + 1]);
        if hi > lo && (q.nu - lo < core || hi - q.nu < core) {
            continue;
        }
        eos.check_domain(q.nu)?;
        let (h0, h1) = (q.x1 - p.x1, n.x1 - q.x1);
        let d1 = (-h1 / (h0 * (h0 + h1))) * p.nu + ((h1 - h0) / (h0 * h1)) * q.nu + (h0 / (h1 * (h0 + h1))) * n.nu;
        let d2 = 2.0 * (p.nu / (h0 * (h0 + h1)) - q.nu / (h0 * h1) + n.nu / (h1 * (h0 + h1)));
        let (k, k1) = eos.kappa(q.nu);
        let f_bar = eos.r1(q.nu) - 0.5 * k1 * d1 * d1 - k * d2;
        let res = f_bar * (1.0 + (m / q.nu).powi(2)).sqrt() - c;
        worst = worst.max(res.abs());
    }
    Ok(worst)
}
