//! Independent re-check of a stored profile table.

use serde::{Deserialize, Serialize};

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::io::ProfileTable;
use crate::jump::family_row_at;
use crate::profile::{profile_residual, Direction, ProfileSample, ProfileSolution};
use crate::tensor::{flux_deviation, tabulate};
use crate::tolerances::Tolerances;

/// Thresholds applied by [`verify_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyLimits {
    pub first_integral: f64,
    pub flux: f64,
    pub fd_residual: f64,
    pub normalization: f64,
    pub number_flux: f64,
}

impl VerifyLimits {
    pub fn new(tol: &Tolerances) -> Self {
        VerifyLimits { first_integral: tol.first_integral, flux: 1e-8, fd_residual: 1e-5, normalization: 1e-14, number_flux: 1e-13 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub m: f64,
    pub c: f64,
    pub q1: f64,
    pub samples: usize,
    pub direction: Direction,
    pub j_residual_max: f64,
    pub dev01: f64,
    pub dev11: f64,
    pub fd_residual: f64,
    pub normalization_max: f64,
    pub number_flux_max: f64,
    pub monotone: bool,
    pub limits: VerifyLimits,
    /// names of the checks that failed
    pub breaches: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.breaches.is_empty()
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Recovers `m` from `ν U¹`, recomputes the end states by continuation with
/// step `dm`, and re-evaluates every profile diagnostic from `(x¹, ν, ω)`.
pub fn verify_profile(eos: &Eos, table: &ProfileTable, dm: f64, tol: &Tolerances) -> Result<VerifyReport> {
    let rows = &table.rows;
    if rows.len() < 5 {
        return Err(Error::TooFewSamples { found: rows.len(), needed: 5 });
    }
    let m = median(rows.iter().map(|r| r.nu * r.u1).collect());
    let row = family_row_at(eos, m.max(0.0), dm, tol)?;
    let direction = if rows[rows.len() - 1].nu >= rows[0].nu { Direction::Forward } else { Direction::Backward };
    let profile = ProfileSolution {
        samples: rows.iter().map(|r| ProfileSample { x1: r.x1, nu: r.nu, omega: r.omega }).collect(),
        direction,
        m: row.m,
        c: row.c,
        q1: row.q1,
        nu_minus: row.nu_minus,
        nu_plus: row.nu_plus,
        nu_center: f64::NAN,
        endpoint_gap: f64::NAN,
        tail_rates: [f64::NAN; 2],
    };
    let fresh = tabulate(eos, &profile)?;
    let dev = flux_deviation(&fresh, row.q0, row.q1)?;
    let j_residual_max = fresh.iter().map(|r| r.j_residual.abs()).fold(0.0, f64::max);
    let fd_residual = profile_residual(eos, &profile, row.m, row.c)?;
    let normalization_max = rows.iter().map(|r| (r.u0 * r.u0 - r.u1 * r.u1 - 1.0).abs()).fold(0.0, f64::max);
    let number_flux_max = rows.iter().map(|r| (r.nu * r.u1 - row.m).abs()).fold(0.0, f64::max) / row.m.max(1.0);
    let monotone = profile.check_monotone().is_ok();

    let limits = VerifyLimits::new(tol);
    let mut breaches = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            breaches.push(name.to_string());
        }
    };
    check("first_integral", j_residual_max < limits.first_integral);
    check("dev01", dev.dev01 < limits.flux);
    check("dev11", dev.dev11 < limits.flux);
    check("fd_residual", fd_residual < limits.fd_residual);
    check("normalization", normalization_max < limits.normalization);
    check("number_flux", number_flux_max < limits.number_flux);
    check("monotone", monotone);

    Ok(VerifyReport {
        m: row.m,
        c: row.c,
        q1: row.q1,
        samples: rows.len(),
        direction,
        j_residual_max,
        dev01: dev.dev01,
        dev11: dev.dev11,
        fd_residual,
        normalization_max,
        number_flux_max,
        monotone,
        limits,
        breaches,
    })
}
