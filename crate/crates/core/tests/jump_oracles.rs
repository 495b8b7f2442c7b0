use gauss_quad::GaussLegendre;
use relkort_core::jump::{area_function, continue_family, end_states, family_row_at, maxwell, pressure_roots, rh_residual};
use relkort_core::{Eos, Error, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn cubic() -> Eos {
    Eos::cubic_vdw().with_spinodal(&tol()).unwrap()
}

#[test]
fn maxwell_closed_form() {
    let ms = maxwell(&cubic(), &tol()).unwrap();
    let s3 = 3f64.sqrt();
    assert!((ms.pi_star - 0.2375).abs() < 1e-12);
    assert!((ms.c - 1.25).abs() < 1e-12);
    assert!((ms.nu_minus0 - (3.0 - s3) / 2.0).abs() < 1e-11);
    assert!((ms.nu_plus0 - (3.0 + s3) / 2.0).abs() < 1e-11);
}

#[test]
fn area_function_monotone_and_signed() {
    let eos = cubic();
    let t = tol();
    let (a, b) = (eos.pressure(0.2) + 1e-6, 0.30 - 1e-6);
    let vals: Vec<f64> = (0..=200).map(|i| area_function(&eos, a + (b - a) * i as f64 / 200.0, &t).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
    assert!(vals[0] > 0.0 && vals[200] < 0.0);
}

#[test]
fn area_difference_matches_integral_of_r2() {
    let eos = cubic();
    let t = tol();
    let gl = GaussLegendre::new(16.try_into().unwrap());
    for pi in [0.1, 0.2, 0.2375, 0.28] {
        let (lo, hi) = pressure_roots(&eos, pi, &t).unwrap();
        let i = area_function(&eos, pi, &t).unwrap();
        let int_r2 = gl.integrate(lo, hi, |nu| eos.r2(nu));
        assert!((i - int_r2).abs() < 1e-12, "pi={pi}");
        // the integral of p̌/ν between the roots is a different quantity
        let int_p = gl.integrate(lo, hi, |nu| eos.pressure(nu) / nu);
        assert!((i - int_p).abs() > 1e-3, "pi={pi}");
    }
}

/// Brute-force minimisation of |X_m(ν⁻) − X_m(ν⁺)| on a 2000×2000 grid,
/// refined by coordinate search.
#[test]
fn end_states_match_brute_force_scan() {
    let eos = cubic();
    let m = 0.05;
    let x = |nu: f64| {
        let r1 = eos.r1(nu);
        (r1 * r1 * (1.0 + m * m / (nu * nu)), eos.pressure(nu) + r1 * m * m / nu)
    };
    let gap = |a: f64, b: f64| {
        let (p, q) = (x(a), x(b));
        (p.0 - q.0).abs().max((p.1 - q.1).abs())
    };
    let n = 2000;
    let lows: Vec<f64> = (0..n).map(|i| 0.2 + 0.8 * i as f64 / (n - 1) as f64).collect();
    let highs: Vec<f64> = (0..n).map(|i| 2.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
    let xl: Vec<(f64, f64)> = lows.iter().map(|&a| x(a)).collect();
    let xh: Vec<(f64, f64)> = highs.iter().map(|&b| x(b)).collect();
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (i, p) in xl.iter().enumerate() {
        for (j, q) in xh.iter().enumerate() {
            let g = (p.0 - q.0).abs().max((p.1 - q.1).abs());
            if g < best.0 {
                best = (g, lows[i], highs[j]);
            }
        }
    }
    let (_, mut a, mut b) = best;
    let mut h = 1e-3;
    while h > 1e-15 {
        let mut moved = false;
        for (da, db) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h), (h, h), (-h, -h), (h, -h), (-h, h)] {
            if gap(a + da, b + db) < gap(a, b) {
                a += da;
                b += db;
                moved = true;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    let e = end_states(&eos, m, (0.634, 2.366), &tol()).unwrap();
    assert!((e.nu_minus - a).abs() < 1e-7 && (e.nu_plus - b).abs() < 1e-7, "{e:?} vs ({a}, {b})");
    assert!((e.nu_minus - 0.6339745962155611).abs() > 1e-3);
    assert!(e.residual < 1e-11);
}

#[test]
fn family_invariants() {
    let eos = cubic();
    let t = tol();
    let fam = continue_family(&eos, 0.01, None, &t).unwrap();
    assert!(fam.rows.len() >= 2);
    let s = eos.cached_spinodal().unwrap();
    for r in &fam.rows {
        assert_eq!(r.q0, r.c * r.m);
        assert!(r.nu_minus < s.nu_a && s.nu_b < r.nu_plus);
        for nu in [r.nu_minus, r.nu_plus] {
            let (a, b) = rh_residual(&eos, nu, r.m, r.c, r.q1).unwrap();
            assert!(a.abs() < t.newton && b.abs() < t.newton);
        }
    }
    assert!(fam.rows.windows(2).all(|w| w[1].m > w[0].m));
    // continuity below the fold, where dν⁻/dm stays moderate
    for w in fam.rows.windows(2).filter(|w| w[1].m <= 0.2) {
        let dm = w[1].m - w[0].m;
        assert!((w[1].nu_minus - w[0].nu_minus).abs() <= 2.0 * dm);
        assert!((w[1].nu_plus - w[0].nu_plus).abs() <= 2.0 * dm);
    }
    assert!(fam.m_bar_numeric > 0.25 && fam.m_bar_numeric < 0.26);
    assert!(matches!(family_row_at(&eos, 0.3, 0.01, &t), Err(Error::BeyondFamily { .. })));
}

#[test]
fn row_at_honours_m_max_and_step() {
    let eos = cubic();
    let t = tol();
    let a = family_row_at(&eos, 0.1, 0.01, &t).unwrap();
    let b = family_row_at(&eos, 0.1, 0.025, &t).unwrap();
    assert_eq!(a.m, 0.1);
    assert!((a.nu_minus - b.nu_minus).abs() < 1e-12 && (a.q1 - b.q1).abs() < 1e-12);
}
