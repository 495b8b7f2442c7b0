//! Kinematics and the extended stress-energy tensor along profiles.
//!
//! Metric signature is `(−, +, +, +)`, so `U⁰ = √(1 + (U¹)²)`, and the
//! projector is `Πᵅᵝ = gᵅᵝ + UᵅUᵝ`. Profiles are static in `x⁰` and the only
//! non-zero gradient component is `ν^{,1} = ν̇`.

use serde::{Deserialize, Serialize};

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::profile::{self, PhasePoint, ProfileSolution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicState {
    pub u0: f64,
    pub u1: f64,
}

/// `U¹ = m/ν`, `U⁰ = √(1 + (U¹)²)`.
pub fn lift_velocity(nu: f64, m: f64) -> KinematicState {
    let u1 = m / nu;
    KinematicState { u0: u1.hypot(1.0), u1 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedState {
    pub rho_bar: f64,
    pub p_bar: f64,
    pub f_bar: f64,
}

/// Extended energy, pressure and Lichnerowicz index at one point of a
/// static profile.
pub fn extended_state(eos: &Eos, nu: f64, nu_dot: f64, nu_ddot: f64) -> Result<ExtendedState> {
    eos.check_domain(nu)?;
    let [r, r1, ..] = eos.derivs(nu);
    let (k, k1) = eos.kappa(nu);
    let rho_bar = r + 0.5 * k * nu_dot * nu_dot;
    let f_bar = r1 - 0.5 * k1 * nu_dot * nu_dot - k * nu_ddot;
    Ok(ExtendedState { rho_bar, p_bar: nu * f_bar - rho_bar, f_bar })
}

/// The `(0,0)`, `(0,1)` and `(1,1)` components of a symmetric tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarTensor {
    pub t00: f64,
    pub t01: f64,
    pub t11: f64,
}

/// `T̄ᵅᵝ = ρ̄ UᵅUᵝ + p̄ Πᵅᵝ + κ ν^{,α} ν^{,β}`.
pub fn stress_energy(eos: &Eos, nu: f64, nu_dot: f64, nu_ddot: f64, m: f64) -> Result<PlanarTensor> {
    let e = extended_state(eos, nu, nu_dot, nu_ddot)?;
    let u = lift_velocity(nu, m);
    let (k, _) = eos.kappa(nu);
    let w = e.rho_bar + e.p_bar;
    Ok(PlanarTensor {
        t00: e.rho_bar * u.u0 * u.u0 + e.p_bar * (u.u0 * u.u0 - 1.0),
        t01: w * u.u0 * u.u1,
        t11: w * u.u1 * u.u1 + e.p_bar + k * nu_dot * nu_dot,
    })
}

/// Full Korteweg tensor `Kᵅᵝ = −ν (κ ν^{,γ})_{,γ} Πᵅᵝ + κ ν^{,α} ν^{,β}`
/// for a static profile, where `(κ ν^{,γ})_{,γ} = κ' ν̇² + κ ν̈`.
///
/// Only its second part enters [`stress_energy`]; the scalar part is folded
/// into the extended pressure.
pub fn korteweg_tensor(eos: &Eos, nu: f64, nu_dot: f64, nu_ddot: f64, m: f64) -> Result<PlanarTensor> {
    eos.check_domain(nu)?;
    let (k, k1) = eos.kappa(nu);
    let u = lift_velocity(nu, m);
    let div = k1 * nu_dot * nu_dot + k * nu_ddot;
    let s = -nu * div;
    Ok(PlanarTensor {
        t00: s * (u.u0 * u.u0 - 1.0),
        t01: s * u.u0 * u.u1,
        t11: s * (1.0 + u.u1 * u.u1) + k * nu_dot * nu_dot,
    })
}

/// One profile sample with its kinematics and flux components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub x1: f64,
    pub nu: f64,
    pub omega: f64,
    pub u0: f64,
    pub u1: f64,
    /// `J(ν, ω) + q¹`
    pub j_residual: f64,
    pub t01: f64,
    pub t11: f64,
}

/// Evaluates kinematics and `T̄⁰¹`, `T̄¹¹` at every sample, with ν̈ taken
/// from the profile ODE.
pub fn tabulate(eos: &Eos, profile: &ProfileSolution) -> Result<Vec<ProfileRow>> {
    profile
        .samples
        .iter()
        .map(|s| {
            let p = PhasePoint { nu: s.nu, omega: s.omega };
            let (_, nu_ddot) = profile::vector_field(eos, profile.m, profile.c, p)?;
            let j = profile::first_integral(eos, profile.m, profile.c, p)?;
            let t = stress_energy(eos, s.nu, s.omega, nu_ddot, profile.m)?;
            let u = lift_velocity(s.nu, profile.m);
            Ok(ProfileRow {
                x1: s.x1,
                nu: s.nu,
                omega: s.omega,
                u0: u.u0,
                u1: u.u1,
                j_residual: j + profile.q1,
                t01: t.t01,
                t11: t.t11,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxDeviation {
    /// `max |T̄⁰¹ − q⁰| / max(1, |q⁰|)`
    pub dev01: f64,
    /// `max |T̄¹¹ − q¹| / |q¹|`
    pub dev11: f64,
}

pub fn flux_deviation(rows: &[ProfileRow], q0: f64, q1: f64) -> Result<FluxDeviation> {
    if q1 == 0.0 {
        return Err(Error::InvalidProfile("q1 = 0, relative flux deviation undefined".into()));
    }
    let (mut d01, mut d11) = (0.0f64, 0.0f64);
    for r in rows {
        d01 = d01.max((r.t01 - q0).abs());
        d11 = d11.max((r.t11 - q1).abs());
    }
    Ok(FluxDeviation { dev01: d01 / q0.abs().max(1.0), dev11: d11 / q1.abs() })
}

/// Deviation of the fluxes from their end-state values `q⁰ = c m` and `q¹`.
pub fn flux_constancy(eos: &Eos, profile: &ProfileSolution) -> Result<FluxDeviation> {
    let rows = tabulate(eos, profile)?;
    flux_deviation(&rows, profile.c * profile.m, profile.q1)
}
