//! C² cubic spline with not-a-knot end conditions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let n = x.len();
        if n != y.len() {
            return Err(Error::Config(format!("table lengths differ: {} abscissae, {} values", n, y.len())));
        }
        if n < 4 {
            return Err(Error::Config(format!("tabulated law needs at least 4 samples, got {n}")));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("tabulated abscissae must be strictly increasing".into()));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Config("tabulated values must be finite".into()));
        }
        let m = not_a_knot_moments(&x, &y);
        Ok(Self { x, y, m })
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    fn interval(&self, t: f64) -> usize {
        let n = self.x.len();
        let idx = self.x.partition_point(|&k| k <= t);
        idx.clamp(1, n - 1) - 1
    }

    /// Value and first three derivatives at `t` (extrapolates with the end cubics).
    pub fn eval(&self, t: f64) -> [f64; 4] {
        let i = self.interval(t);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let h = x1 - x0;
        let a = x1 - t;
        let b = t - x0;
        let value = m0 * a.powi(3) / (6.0 * h) + m1 * b.powi(3) / (6.0 * h) + (y0 / h - m0 * h / 6.0) * a + (y1 / h - m1 * h / 6.0) * b;
        let d1 = -m0 * a * a / (2.0 * h) + m1 * b * b / (2.0 * h) - (y0 / h - m0 * h / 6.0) + (y1 / h - m1 * h / 6.0);
        let d2 = (m0 * a + m1 * b) / h;
        let d3 = (m1 - m0) / h;
        [value, d1, d2, d3]
    }
}

fn not_a_knot_moments(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let slope: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

    // Unknowns M_1..M_{n-2}; M_0 and M_{n-1} are eliminated through the
    // not-a-knot conditions (continuous third derivative at x_1, x_{n-2}).
    let k = n - 2;
    let mut sub = vec![0.0; k];
    let mut diag = vec![0.0; k];
    let mut sup = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    for j in 0..k {
        let i = j + 1;
        sub[j] = h[i - 1];
        diag[j] = 2.0 * (h[i - 1] + h[i]);
        sup[j] = h[i];
        rhs[j] = 6.0 * (slope[i] - slope[i - 1]);
    }
    // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
    let (h0, h1) = (h[0], h[1]);
    diag[0] += h0 * (h0 + h1) / h1;
    sup[0] -= h0 * h0 / h1;
    // M_{n-1} = ((h_{n-2} + h_{n-3}) M_{n-2} - h_{n-2} M_{n-3}) / h_{n-3}
    let (hl, hp) = (h[n - 2], h[n - 3]);
    diag[k - 1] += hl * (hl + hp) / hp;
    sub[k - 1] -= hl * hl / hp;

    // Thomas algorithm
    for j in 1..k {
        let w = sub[j] / diag[j - 1];
        diag[j] -= w * sup[j - 1];
        rhs[j] -= w * rhs[j - 1];
    }
    let mut inner = vec![0.0; k];
    inner[k - 1] = rhs[k - 1] / diag[k - 1];
    for j in (0..k - 1).rev() {
        inner[j] = (rhs[j] - sup[j] * inner[j + 1]) / diag[j];
    }

    let mut m = Vec::with_capacity(n);
    m.push(((h0 + h1) * inner[0] - h0 * inner[1.min(k - 1)]) / h1);
    m.extend_from_slice(&inner);
    let last = ((hl + hp) * inner[k - 1] - hl * inner[k.saturating_sub(2)]) / hp;
    m.push(last);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_cubics_exactly() {
        let p = |t: f64| 0.3 - t + 2.0 * t * t - 0.5 * t.powi(3);
        let x: Vec<f64> = (0..9).map(|i| 0.1 + 0.37 * i as f64 + 0.01 * (i * i) as f64).collect();
        let y: Vec<f64> = x.iter().map(|&t| p(t)).collect();
        let s = CubicSpline::new(x, y).unwrap();
        for t in [0.15, 0.9, 1.7, 2.9] {
            let [v, d1, d2, d3] = s.eval(t);
            assert!((v - p(t)).abs() < 1e-12);
            assert!((d1 - (-1.0 + 4.0 * t - 1.5 * t * t)).abs() < 1e-11);
            assert!((d2 - (4.0 - 3.0 * t)).abs() < 1e-10);
            assert!((d3 + 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn smallest_table_works() {
        let x = vec![0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|t: &f64| t.powi(3)).collect();
        let s = CubicSpline::new(x, y).unwrap();
        assert!((s.eval(1.5)[0] - 3.375).abs() < 1e-12);
    }

    #[test]
    fn rejects_unsorted_or_short_tables() {
        assert!(CubicSpline::new(vec![0.0, 1.0, 1.0, 2.0], vec![0.0; 4]).is_err());
        assert!(CubicSpline::new(vec![0.0, 1.0, 2.0], vec![0.0; 3]).is_err());
    }
}
