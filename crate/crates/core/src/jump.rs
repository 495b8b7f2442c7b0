//! End states of phase boundaries.
//!
//! For a mass-flux parameter `m ≥ 0` the jump conditions reduce to a
//! self-intersection of the planar curve
//!
//! ```text
//! X_m(ν) = ( r'(ν)² (1 + m²/ν²),  p̌(ν) + r'(ν) m² / ν )
//! ```
//!
//! with one point on each convex branch. At `m = 0` the intersection is the
//! Maxwell equal-area pair; for small `m > 0` it is continued by Newton's
//! method.

use serde::{Deserialize, Serialize};

use crate::eos::{Branch, Eos};
use crate::error::{Error, Result};
use crate::roots;
use crate::tolerances::Tolerances;

const MAX_NEWTON_ITERATIONS: usize = 50;
const MAX_HALVINGS: usize = 8;
const MAX_FAMILY_ROWS: usize = 100_000;
/// inset of the pressure window, relative to its width
const WINDOW_INSET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellStates {
    pub pi_star: f64,
    pub c: f64,
    pub nu_minus0: f64,
    pub nu_plus0: f64,
}

/// Converged intersection of `X_m` at one value of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndStates {
    pub m: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub c: f64,
    pub q1: f64,
    /// max-norm of `X_m(ν⁻) − X_m(ν⁺)`
    pub residual: f64,
    pub jacobian_det: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub m: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub c: f64,
    pub q1: f64,
    pub q0: f64,
}

impl From<EndStates> for FamilyRow {
    fn from(e: EndStates) -> Self {
        FamilyRow {
            m: e.m,
            nu_minus: e.nu_minus,
            nu_plus: e.nu_plus,
            c: e.c,
            q1: e.q1,
            q0: e.c * e.m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndStateFamily {
    pub rows: Vec<FamilyRow>,
    /// largest m reached by the continuation
    pub m_bar_numeric: f64,
    /// sign of the transversality determinant along the branch
    pub det_sign: f64,
    pub halvings: usize,
    /// why marching stopped before `m_max`, if it did
    pub stop_reason: Option<String>,
}

/// Point of `X_m` together with its ν-derivative.
fn curve_with_slope(eos: &Eos, m: f64, nu: f64) -> ([f64; 2], [f64; 2]) {
    let [r, r1, r2, _] = eos.derivs(nu);
    let m2 = m * m;
    let g = 1.0 + m2 / (nu * nu);
    let x1 = r1 * r1 * g;
    let x2 = nu * r1 - r + r1 * m2 / nu;
    let dx1 = 2.0 * r1 * r2 * g - 2.0 * r1 * r1 * m2 / (nu * nu * nu);
    let dx2 = nu * r2 + m2 * (r2 / nu - r1 / (nu * nu));
    ([x1, x2], [dx1, dx2])
}

pub fn curve_point(eos: &Eos, m: f64, nu: f64) -> Result<[f64; 2]> {
    eos.check_domain(nu)?;
    Ok(curve_with_slope(eos, m, nu).0)
}

/// Residuals of the reduced jump conditions at a single state.
pub fn rh_residual(eos: &Eos, nu: f64, m: f64, c: f64, q1: f64) -> Result<(f64, f64)> {
    let [x1, x2] = curve_point(eos, m, nu)?;
    Ok((x1 - c * c, x2 - q1))
}

/// `(p̌(ν_B), p̌(ν_A))`, the pressures for which both phases have a root.
pub fn pressure_window(eos: &Eos, tol: &Tolerances) -> Result<(f64, f64)> {
    let s = eos.spinodal(tol)?;
    let (p_b, p_a) = (eos.pressure(s.nu_b), eos.pressure(s.nu_a));
    if p_b >= p_a {
        return Err(Error::WindowCollapse { p_b, p_a });
    }
    Ok((p_b, p_a))
}

/// Root of `p̌(ν) = π` on one convex branch.
pub fn pressure_root(eos: &Eos, pi: f64, branch: Branch, tol: &Tolerances) -> Result<f64> {
    let (p_lo, p_hi) = pressure_window(eos, tol)?;
    let slack = tol.root * (p_lo.abs() + p_hi.abs()).max(1.0);
    if !(pi >= p_lo - slack && pi <= p_hi + slack) {
        return Err(Error::PressureOutOfWindow { pi, lo: p_lo, hi: p_hi });
    }
    let (a, b) = eos.branch_interval(branch, tol)?;
    let g = |nu: f64| eos.pressure(nu) - pi;
    // p̌ increases on both convex branches; the spinodal-side edge is accepted
    // within the closed window, a miss at the outer edge is a truncation
    let (ga, gb) = (g(a), g(b));
    match branch {
        Branch::Low if ga > 0.0 => return Err(Error::Bracket { pi, branch }),
        Branch::Low if gb <= 0.0 => return Ok(b),
        Branch::High if gb < 0.0 => return Err(Error::Bracket { pi, branch }),
        Branch::High if ga >= 0.0 => return Ok(a),
        _ => {}
    }
    roots::newton_bracketed(g, |nu| eos.pressure_slope(nu), a, b, tol.root).ok_or(Error::Bracket { pi, branch })
}

/// `(ν₋(π), ν₊(π))`.
pub fn pressure_roots(eos: &Eos, pi: f64, tol: &Tolerances) -> Result<(f64, f64)> {
    Ok((pressure_root(eos, pi, Branch::Low, tol)?, pressure_root(eos, pi, Branch::High, tol)?))
}

/// Equal-area function `I(π) = r'(ν₊(π)) − r'(ν₋(π))`.
pub fn area_function(eos: &Eos, pi: f64, tol: &Tolerances) -> Result<f64> {
    let (lo, hi) = pressure_roots(eos, pi, tol)?;
    Ok(eos.r1(hi) - eos.r1(lo))
}

/// Pressures where both branch roots exist inside the domain.
pub fn admissible_pressures(eos: &Eos, tol: &Tolerances) -> Result<(f64, f64)> {
    let (p_b, p_a) = pressure_window(eos, tol)?;
    let (lo, hi) = eos.domain();
    Ok((p_b.max(eos.pressure(lo)), p_a.min(eos.pressure(hi))))
}

pub fn maxwell(eos: &Eos, tol: &Tolerances) -> Result<MaxwellStates> {
    let eos = &*eos.ensure_spinodal(tol)?;
    let (p_b, p_a) = pressure_window(eos, tol)?;
    let (lo, hi) = admissible_pressures(eos, tol)?;
    let inset = WINDOW_INSET * (p_a - p_b);
    let (a, b) = (lo + inset, hi - inset);
    if a >= b {
        return Err(Error::NoEqualArea { lo, hi });
    }
    let area = |pi: f64| area_function(eos, pi, tol).unwrap_or(f64::NAN);
    let slope = |pi: f64| match pressure_roots(eos, pi, tol) {
        Ok((l, h)) => 1.0 / h - 1.0 / l,
        Err(_) => f64::NAN,
    };
    let pi_star = roots::newton_bracketed(area, slope, a, b, tol.root).ok_or(Error::NoEqualArea { lo, hi })?;
    let (nu_minus0, nu_plus0) = pressure_roots(eos, pi_star, tol)?;
    Ok(MaxwellStates {
        pi_star,
        c: eos.r1(nu_minus0),
        nu_minus0,
        nu_plus0,
    })
}

/// Jacobian of `(ν⁻, ν⁺) ↦ X_m(ν⁻) − X_m(ν⁺)`.
pub fn end_state_jacobian(eos: &Eos, m: f64, nu_minus: f64, nu_plus: f64) -> [[f64; 2]; 2] {
    let (_, dl) = curve_with_slope(eos, m, nu_minus);
    let (_, dh) = curve_with_slope(eos, m, nu_plus);
    [[dl[0], -dh[0]], [dl[1], -dh[1]]]
}

fn intersection_residual(eos: &Eos, m: f64, z: (f64, f64)) -> f64 {
    let (l, _) = curve_with_slope(eos, m, z.0);
    let (h, _) = curve_with_slope(eos, m, z.1);
    (l[0] - h[0]).abs().max((l[1] - h[1]).abs())
}

/// Self-intersection of `X_m` by damped Newton from `seed = (ν⁻, ν⁺)`.
pub fn end_states(eos: &Eos, m: f64, seed: (f64, f64), tol: &Tolerances) -> Result<EndStates> {
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::Config(format!("mass flux m must be finite and non-negative, got {m}")));
    }
    let eos = &*eos.ensure_spinodal(tol)?;
    let (lo_a, lo_b) = eos.branch_interval(Branch::Low, tol)?;
    let (hi_a, hi_b) = eos.branch_interval(Branch::High, tol)?;
    let on_branches = |z: (f64, f64)| z.0 >= lo_a && z.0 < lo_b && z.1 > hi_a && z.1 <= hi_b;
    if !on_branches(seed) {
        return Err(Error::SpinodalCrossing { nu_minus: seed.0, nu_plus: seed.1 });
    }

    let step = |z: (f64, f64)| -> Option<(f64, f64)> {
        let (l, _) = curve_with_slope(eos, m, z.0);
        let (h, _) = curve_with_slope(eos, m, z.1);
        let f = [l[0] - h[0], l[1] - h[1]];
        let j = end_state_jacobian(eos, m, z.0, z.1);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let d0 = -(j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let d1 = -(-j[1][0] * f[0] + j[0][0] * f[1]) / det;
        Some((d0, d1))
    };

    let mut z = seed;
    let mut res = intersection_residual(eos, m, z);
    let mut iterations = 0;
    while res >= tol.newton {
        if iterations == MAX_NEWTON_ITERATIONS {
            return Err(Error::NewtonDiverged { residual: res, iterations });
        }
        iterations += 1;
        let dz = step(z).ok_or(Error::NewtonDiverged { residual: res, iterations })?;
        let mut lambda = 1.0;
        let mut left_branch = false;
        let mut accepted = None;
        for _ in 0..30 {
            let trial = (z.0 + lambda * dz.0, z.1 + lambda * dz.1);
            if !on_branches(trial) {
                left_branch = true;
            } else {
                let r = intersection_residual(eos, m, trial);
                if r <= (1.0 - 1e-4 * lambda) * res {
                    accepted = Some((trial, r));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, r)) => {
                z = trial;
                res = r;
            }
            None if left_branch => return Err(Error::SpinodalCrossing { nu_minus: z.0 + dz.0, nu_plus: z.1 + dz.1 }),
            None => return Err(Error::NewtonDiverged { residual: res, iterations }),
        }
    }
    // polish while the residual keeps dropping
    for _ in 0..3 {
        let Some(dz) = step(z) else { break };
        let trial = (z.0 + dz.0, z.1 + dz.1);
        if !on_branches(trial) {
            break;
        }
        let r = intersection_residual(eos, m, trial);
        if r < res {
            z = trial;
            res = r;
        } else {
            break;
        }
    }

    let [x1, x2] = curve_with_slope(eos, m, z.0).0;
    let j = end_state_jacobian(eos, m, z.0, z.1);
    Ok(EndStates {
        m,
        nu_minus: z.0,
        nu_plus: z.1,
        c: x1.sqrt(),
        q1: x2,
        residual: res,
        jacobian_det: j[0][0] * j[1][1] - j[0][1] * j[1][0],
        iterations,
    })
}

/// Marches `m = 0, dm, 2dm, …`, seeding each Newton solve with the previous
/// row. A failed step halves `dm` (at most eight times over the run); a
/// converged step is rejected if the transversality determinant changed sign.
pub fn continue_family(eos: &Eos, dm: f64, m_max: Option<f64>, tol: &Tolerances) -> Result<EndStateFamily> {
    if !(dm > 0.0 && dm.is_finite()) {
        return Err(Error::Config(format!("continuation step must be positive, got {dm}")));
    }
    if let Some(mm) = m_max {
        if !(mm >= 0.0 && mm.is_finite()) {
            return Err(Error::Config(format!("m_max must be finite and non-negative, got {mm}")));
        }
    }
    let eos = &*eos.ensure_spinodal(tol)?;
    let ms = maxwell(eos, tol)?;
    let first = end_states(eos, 0.0, (ms.nu_minus0, ms.nu_plus0), tol)?;
    let det_sign = first.jacobian_det.signum();
    let mut rows = vec![FamilyRow::from(first)];
    let mut step = dm;
    let mut halvings = 0;
    let mut stop_reason = None;

    loop {
        let last = *rows.last().unwrap();
        if m_max.is_some_and(|mm| last.m >= mm) {
            break;
        }
        if rows.len() >= MAX_FAMILY_ROWS {
            stop_reason = Some(format!("row limit {MAX_FAMILY_ROWS} reached"));
            break;
        }
        let mut m = last.m + step;
        if let Some(mm) = m_max {
            m = m.min(mm);
        }
        let attempt = end_states(eos, m, (last.nu_minus, last.nu_plus), tol).and_then(|e| {
            if e.jacobian_det.signum() == det_sign {
                Ok(e)
            } else {
                Err(Error::NewtonDiverged { residual: e.residual, iterations: e.iterations })
            }
        });
        match attempt {
            Ok(e) => rows.push(FamilyRow::from(e)),
            Err(e) => {
                if halvings == MAX_HALVINGS {
                    stop_reason = Some(format!("step failed at m = {m} after {halvings} halvings: {e}"));
                    break;
                }
                halvings += 1;
                step *= 0.5;
            }
        }
    }
    let m_bar_numeric = rows.last().unwrap().m;
    Ok(EndStateFamily { rows, m_bar_numeric, det_sign, halvings, stop_reason })
}

/// Family row at exactly `m`, reached by continuation with step `dm`.
pub fn family_row_at(eos: &Eos, m: f64, dm: f64, tol: &Tolerances) -> Result<FamilyRow> {
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::Config(format!("mass flux m must be finite and non-negative, got {m}")));
    }
    let family = continue_family(eos, dm, Some(m), tol)?;
    let last = *family.rows.last().unwrap();
    if last.m == m {
        Ok(last)
    } else {
        Err(Error::BeyondFamily { m, m_bar: family.m_bar_numeric })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn curve_point_examples() {
        let eos = Eos::cubic_vdw();
        let [x1, x2] = curve_point(&eos, 0.0, 1.0).unwrap();
        assert!((x1 - 16.0 / 9.0).abs() < 1e-15);
        assert!((x2 - 0.30).abs() < 1e-15);
        let [_, x2] = curve_point(&eos, 0.1, 1.0).unwrap();
        assert!((x2 - (0.30 + 0.01 * 4.0 / 3.0)).abs() < 1e-15);
        for nu in [0.3, 1.7, 3.2] {
            let [x1, x2] = curve_point(&eos, 0.0, nu).unwrap();
            assert_eq!(x1, eos.r1(nu).powi(2));
            assert_eq!(x2, eos.pressure(nu));
        }
        assert!(curve_point(&eos, 0.0, 5.0).is_err());
    }

    #[test]
    fn curve_slope_matches_finite_differences() {
        let eos = Eos::cubic_vdw();
        for (m, nu) in [(0.0, 0.5), (0.2, 2.7), (0.7, 1.3)] {
            let (_, d) = curve_with_slope(&eos, m, nu);
            let h = 1e-6;
            let p = curve_with_slope(&eos, m, nu + h).0;
            let q = curve_with_slope(&eos, m, nu - h).0;
            for k in 0..2 {
                assert!((d[k] - (p[k] - q[k]) / (2.0 * h)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pressure_root_edges() {
        let eos = Eos::cubic_vdw();
        let t = tol();
        let nu = pressure_root(&eos, 0.30, Branch::Low, &t).unwrap();
        assert!((nu - 1.0).abs() < 1e-6);
        let nu = pressure_root(&eos, 0.05, Branch::High, &t).unwrap();
        assert!((nu - 2.0).abs() < 1e-6);
        // p̌(0) = 0.05 lies left of the domain
        assert_eq!(pressure_root(&eos, 0.05, Branch::Low, &t), Err(Error::Bracket { pi: 0.05, branch: Branch::Low }));
        assert!(matches!(pressure_roots(&eos, 0.4, &t), Err(Error::PressureOutOfWindow { .. })));
    }

    #[test]
    fn maxwell_needs_a_spinodal() {
        let convex = Eos::polynomial(&[0.0, 1.0, 0.5], (0.2, 4.0), crate::Capillarity::Constant(1.0)).unwrap();
        assert_eq!(maxwell(&convex, &tol()), Err(Error::NoSpinodal));
    }

    #[test]
    fn end_states_rejects_spinodal_seed() {
        let eos = Eos::cubic_vdw();
        let err = end_states(&eos, 0.05, (1.5, 1.6), &tol()).unwrap_err();
        assert!(matches!(err, Error::SpinodalCrossing { .. } | Error::NewtonDiverged { .. }));
    }

    #[test]
    fn maxwell_fixed_point() {
        let eos = Eos::cubic_vdw();
        let t = tol();
        let ms = maxwell(&eos, &t).unwrap();
        let e = end_states(&eos, 0.0, (ms.nu_minus0, ms.nu_plus0), &t).unwrap();
        assert!((e.nu_minus - ms.nu_minus0).abs() < 1e-12);
        assert!((e.nu_plus - ms.nu_plus0).abs() < 1e-12);
        assert!((e.c - ms.c).abs() < 1e-12);
        assert!((e.q1 - ms.pi_star).abs() < 1e-12);
        let (a, b) = rh_residual(&eos, ms.nu_minus0, 0.0, ms.c, ms.pi_star).unwrap();
        assert!(a.abs() < t.root && b.abs() < t.root);
        // ν = 1.5 is the centre value: r'(1.5) = c, so only the pressure row is off
        let (a, b) = rh_residual(&eos, 1.5, 0.0, ms.c, ms.pi_star).unwrap();
        assert!(a.abs() < 1e-12);
        assert!((b - (0.190625 - 0.2375)).abs() < 1e-12);
    }

    #[test]
    fn family_basic_shape() {
        let eos = Eos::cubic_vdw();
        let t = tol();
        let fam = continue_family(&eos, 0.01, None, &t).unwrap();
        assert!(fam.rows.len() >= 2);
        assert!(fam.stop_reason.is_some());
        for row in &fam.rows {
            assert_eq!(row.q0, row.c * row.m);
            assert!(row.nu_minus < 1.0 && row.nu_plus > 2.0);
        }
        assert!(fam.rows.windows(2).all(|w| w[1].m > w[0].m));
        let capped = continue_family(&eos, 0.01, Some(0.055), &t).unwrap();
        assert_eq!(capped.rows.last().unwrap().m, 0.055);
        assert!(capped.stop_reason.is_none());
        assert!(matches!(family_row_at(&eos, 5.0, 0.01, &t), Err(Error::BeyondFamily { .. })));
    }
}
