use rand::{rngs::StdRng, Rng, SeedableRng};
use relkort_core::jump::{family_row_at, maxwell, FamilyRow};
use relkort_core::profile::{
    classify_stationary, first_integral, heteroclinic_quadrature, heteroclinic_shoot, profile_residual, vector_field,
};
use relkort_core::{Direction, Eos, Error, PhasePoint, StationaryKind, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn cubic() -> Eos {
    Eos::cubic_vdw().with_spinodal(&tol()).unwrap()
}

fn row(eos: &Eos, m: f64) -> FamilyRow {
    family_row_at(eos, m, 0.01, &tol()).unwrap()
}

/// `J` and its gradient written out independently for the canonical law.
fn j_oracle(m: f64, c: f64, nu: f64, w: f64) -> (f64, f64, f64) {
    let r = nu.powi(4) / 12.0 - nu.powi(3) / 2.0 + nu * nu + 0.5 * nu - 0.05;
    let r1 = nu.powi(3) / 3.0 - 1.5 * nu * nu + 2.0 * nu + 0.5;
    let s = (m * m + nu * nu).sqrt();
    (r - 0.5 * w * w - c * s, r1 - c * nu / s, -w)
}

#[test]
fn first_integral_is_conserved_by_the_field() {
    let eos = cubic();
    let r = row(&eos, 0.1);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10_000 {
        let p = PhasePoint { nu: rng.random_range(0.2..4.0), omega: rng.random_range(-2.0..2.0) };
        let (f0, f1) = vector_field(&eos, r.m, r.c, p).unwrap();
        let (j, jn, jw) = j_oracle(r.m, r.c, p.nu, p.omega);
        assert!((first_integral(&eos, r.m, r.c, p).unwrap() - j).abs() < 1e-12 * (1.0 + j.abs()));
        let dot = jn * f0 + jw * f1;
        assert!(dot.abs() < 1e-12 * (1.0 + j.abs()), "{p:?}: {dot}");
        // dropping the ½ breaks conservation
        let wrong = (jn * f0 - 2.0 * p.omega * f1).abs();
        assert!(p.omega.abs() < 1e-3 || wrong > 1e-6);
    }
}

fn rk4_step(eos: &Eos, m: f64, c: f64, p: PhasePoint, h: f64) -> PhasePoint {
    let f = |q: PhasePoint| vector_field(eos, m, c, q).unwrap();
    let add = |q: PhasePoint, k: (f64, f64), s: f64| PhasePoint { nu: q.nu + s * k.0, omega: q.omega + s * k.1 };
    let k1 = f(p);
    let k2 = f(add(p, k1, h / 2.0));
    let k3 = f(add(p, k2, h / 2.0));
    let k4 = f(add(p, k3, h));
    PhasePoint { nu: p.nu + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0), omega: p.omega + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1) }
}

#[test]
fn rk4_orbit_around_center_keeps_j() {
    let eos = cubic();
    let r = row(&eos, 0.1);
    let center = classify_stationary(&eos, &r, &tol()).unwrap().center();
    let mut p = PhasePoint { nu: center + 1e-3, omega: 0.0 };
    let j0 = first_integral(&eos, r.m, r.c, p).unwrap();
    let h = 1e-3;
    let mut drift = 0.0f64;
    for _ in 0..50_000 {
        p = rk4_step(&eos, r.m, r.c, p, h);
        drift = drift.max((first_integral(&eos, r.m, r.c, p).unwrap() - j0).abs());
    }
    assert!(drift < 1e-9, "{drift}");
}

#[test]
fn stationary_pattern() {
    let eos = cubic();
    for m in [0.0, 0.1, 0.25] {
        let r = row(&eos, m);
        let rep = classify_stationary(&eos, &r, &tol()).unwrap();
        let kinds: Vec<_> = rep.points.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [StationaryKind::Saddle, StationaryKind::Center, StationaryKind::Saddle]);
        assert!((rep.points[0].nu - r.nu_minus).abs() < 1e-9 && (rep.points[2].nu - r.nu_plus).abs() < 1e-9);
        assert!((rep.points[0].j_value - rep.points[2].j_value).abs() < 1e-10);
        assert!((rep.points[0].j_value + r.q1).abs() < 1e-10);
    }
}

#[test]
fn shoot_agrees_with_quadrature() {
    let eos = cubic();
    let t = tol();
    for m in [0.0, 0.05, 0.15] {
        let r = row(&eos, m);
        let q = heteroclinic_quadrature(&eos, &r, Direction::Forward, 2001, &t).unwrap();
        let s = heteroclinic_shoot(&eos, &r, Direction::Forward, &t).unwrap();
        assert!(s.first_integral_drift(&eos).unwrap() < 1e-8);
        let lo = q.samples.first().unwrap().x1.max(s.samples.first().unwrap().x1);
        let hi = q.samples.last().unwrap().x1.min(s.samples.last().unwrap().x1);
        let mut worst = 0.0f64;
        for smp in q.samples.iter().filter(|p| p.x1 >= lo && p.x1 <= hi) {
            let p = s.interpolate(smp.x1).unwrap();
            worst = worst.max((p.nu - smp.nu).abs());
        }
        assert!(worst < 1e-6, "m={m}: {worst}");
    }
}

#[test]
fn mismatched_flux_makes_the_shot_escape() {
    let eos = cubic();
    let mut r = row(&eos, 0.05);
    r.q1 *= 1.01;
    assert!(matches!(heteroclinic_shoot(&eos, &r, Direction::Forward, &tol()), Err(Error::OrbitEscaped { .. })));
}

#[test]
fn static_end_states_are_maxwell() {
    let eos = cubic();
    let ms = maxwell(&eos, &tol()).unwrap();
    let r = row(&eos, 0.0);
    assert!((r.nu_minus - ms.nu_minus0).abs() < 1e-12 && (r.nu_plus - ms.nu_plus0).abs() < 1e-12);
    assert!((r.q1 - ms.pi_star).abs() < 1e-12);
}

#[test]
fn profile_shape_and_residual() {
    let eos = cubic();
    let t = tol();
    let r = row(&eos, 0.1);
    let p = heteroclinic_quadrature(&eos, &r, Direction::Forward, 4001, &t).unwrap();
    p.check_monotone().unwrap();
    assert!(p.samples.iter().all(|s| s.omega > 0.0));
    let b = heteroclinic_quadrature(&eos, &r, Direction::Backward, 4001, &t).unwrap();
    assert!(b.samples.iter().all(|s| s.omega < 0.0));
    for (f, g) in p.samples.iter().zip(b.samples.iter()) {
        assert_eq!(b.interpolate(-f.x1).map(|q| q.nu), Some(f.nu));
        assert!(g.x1.is_finite());
    }
    assert!(p.interpolate(0.0).map(|q| (q.nu - p.nu_center).abs() < 1e-12).unwrap());
    let res = profile_residual(&eos, &p, r.m, r.c).unwrap();
    assert!(res < 1e-5, "{res}");
    let coarse = heteroclinic_quadrature(&eos, &r, Direction::Forward, 1001, &t).unwrap();
    let order = (profile_residual(&eos, &coarse, r.m, r.c).unwrap() / res).log2() / 2.0;
    assert!(order > 1.8, "{order}");
}
