//! Scalar root finding on brackets.

/// Bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign (or vanish).
///
/// Stops when the bracket is narrower than `tol * max(1, |x|)` or an exact
/// zero is hit.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= tol * mid.abs().max(1.0) || mid == lo || mid == hi {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Safeguarded Newton iteration inside a sign-change bracket.
///
/// Newton steps that leave the current bracket fall back to bisection.
/// Terminates once a step stalls at machine precision or the bracket is
/// narrower than `tol * max(1, |x|)`.
pub fn newton_bracketed<F, D>(f: F, df: D, lo: f64, hi: f64, tol: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        if d != 0.0 && (newton - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) {
            return Some(x);
        }
        let inside = d != 0.0 && newton.is_finite() && newton > a.min(b) && newton < a.max(b);
        let next = if inside { newton } else { 0.5 * (a + b) };
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x.abs().max(1.0) || (b - a).abs() <= tol * x.abs().max(1.0) {
            return Some(x);
        }
    }
    Some(x)
}

/// Sign changes of `f` sampled on `n` uniform points of `[lo, hi]`.
///
/// Exact zeros are skipped so that a grid point landing on a root still
/// yields one bracket. Returns `(left, right, rising)` triples.
pub fn sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64, bool)> {
    let n = n.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if let Some((xp, vp)) = last {
            if vp.signum() != v.signum() {
                out.push((xp, x, v > 0.0));
            }
        }
        last = Some((x, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn newton_reaches_machine_precision() {
        let x = newton_bracketed(|x| x.powi(3) - x - 1.0, |x| 3.0 * x * x - 1.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((x.powi(3) - x - 1.0).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn sign_changes_counts_grid_roots_once() {
        // root at a grid point and one strictly between grid points
        let found = sign_changes(|x| (x - 0.5) * (x - 0.73), 0.0, 1.0, 11);
        assert_eq!(found.len(), 2);
        assert!(!found[0].2 && found[1].2);
    }
}
