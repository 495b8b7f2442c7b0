use serde::{Deserialize, Serialize};

/// Polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Polynomial { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_chain() {
        let p = Polynomial::new(vec![-0.05, 0.5, 1.0, -0.5, 1.0 / 12.0]);
        let p2 = p.derivative().derivative();
        assert_eq!(p2.coeffs(), &[2.0, -3.0, 1.0]);
        assert_eq!(p2.eval(1.5), -0.25);
        assert!(Polynomial::new(vec![]).eval(3.0) == 0.0);
        assert!(Polynomial::new(vec![4.0]).derivative().coeffs().is_empty());
    }
}
