use proptest::prelude::*;
use relkort_core::jump::family_row_at;
use relkort_core::profile::{a_mc, heteroclinic_quadrature, vector_field};
use relkort_core::tensor::{extended_state, flux_constancy, flux_deviation, lift_velocity, stress_energy, tabulate};
use relkort_core::{Direction, Eos, PhasePoint, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn cubic() -> Eos {
    Eos::cubic_vdw().with_spinodal(&tol()).unwrap()
}

proptest! {
    #[test]
    fn normalization(nu in 0.2f64..4.0, m in 0.0f64..0.26) {
        let u = lift_velocity(nu, m);
        prop_assert!((u.u0 * u.u0 - u.u1 * u.u1 - 1.0).abs() < 1e-14);
        prop_assert!((nu * u.u1 - m).abs() <= 1e-16 * (1.0 + m));
    }

    #[test]
    fn extended_legendre_relation(nu in 0.2f64..4.0, d in -1.0f64..1.0, dd in -1.0f64..1.0) {
        let eos = cubic();
        let e = extended_state(&eos, nu, d, dd).unwrap();
        prop_assert!((e.p_bar - (nu * e.f_bar - e.rho_bar)).abs() < 1e-14 * (1.0 + e.p_bar.abs()));
        prop_assert!((e.f_bar - (eos.r1(nu) - dd)).abs() < 1e-14 * (1.0 + e.f_bar.abs()));
    }
}

#[test]
fn lichnerowicz_index_is_proportional_to_u0() {
    let eos = cubic();
    let t = tol();
    for m in [0.0, 0.05, 0.2] {
        let row = family_row_at(&eos, m, 0.01, &t).unwrap();
        let p = heteroclinic_quadrature(&eos, &row, Direction::Forward, 1001, &t).unwrap();
        for s in &p.samples {
            let (_, dd) = vector_field(&eos, m, row.c, PhasePoint { nu: s.nu, omega: s.omega }).unwrap();
            let e = extended_state(&eos, s.nu, s.omega, dd).unwrap();
            let u = lift_velocity(s.nu, m);
            // f̄ = a'(ν) = c ν / √(m² + ν²) = c / U⁰
            assert!((e.f_bar * u.u0 - row.c).abs() < 1e-8, "m={m} nu={}", s.nu);
            assert!((e.f_bar - a_mc(m, row.c, s.nu).da).abs() < 1e-10);
        }
    }
}

#[test]
fn fluxes_constant_and_capillary_term_nonnegative() {
    let eos = cubic();
    let t = tol();
    let row = family_row_at(&eos, 0.05, 0.01, &t).unwrap();
    let p = heteroclinic_quadrature(&eos, &row, Direction::Forward, 2001, &t).unwrap();
    let d = flux_constancy(&eos, &p).unwrap();
    assert!(d.dev01 < 1e-8 && d.dev11 < 1e-8, "{d:?}");
    for s in &p.samples {
        let (_, dd) = vector_field(&eos, row.m, row.c, PhasePoint { nu: s.nu, omega: s.omega }).unwrap();
        let with = stress_energy(&eos, s.nu, s.omega, dd, row.m).unwrap();
        let e = extended_state(&eos, s.nu, s.omega, dd).unwrap();
        let u = lift_velocity(s.nu, row.m);
        let korteweg = with.t11 - (e.rho_bar + e.p_bar) * u.u1 * u.u1 - e.p_bar;
        assert!(korteweg >= 0.0);
    }
}

#[test]
fn perturbed_slope_is_detected() {
    let eos = cubic();
    let t = tol();
    let row = family_row_at(&eos, 0.05, 0.01, &t).unwrap();
    let mut p = heteroclinic_quadrature(&eos, &row, Direction::Forward, 2001, &t).unwrap();
    let k = p.samples.len() / 2;
    p.samples[k].omega *= 1.01;
    let rows = tabulate(&eos, &p).unwrap();
    let d = flux_deviation(&rows, row.q0, row.q1).unwrap();
    assert!(d.dev11 > 1e-4, "{d:?}");
}
