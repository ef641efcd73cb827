use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::row::SymbolRow;
use crate::error::{Error, Result};
use crate::specfun::{cos_pi, sin_pi};

/// Particle displacements `u_p`, indexed cyclically (`u_{p+N} = u_p`).
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementField {
    values: Vec<Complex64>,
}

impl DisplacementField {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self {
            values: vec![Complex64::new(value, 0.0); n],
        }
    }

    /// Unit displacement of particle `p`.
    pub fn delta(n: usize, p: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); n];
        values[p % n] = Complex64::new(1.0, 0.0);
        Self { values }
    }

    /// Normalized Bloch mode `e^{iκ_l p}/√N`, `κ_l = 2πl/N`.
    pub fn bloch_mode(n: usize, l: usize) -> Self {
        let norm = 1.0 / libm::sqrt(n as f64);
        let values = (0..n)
            .map(|p| {
                let t = 2.0 * ((l * p) % n) as f64 / n as f64;
                Complex64::new(norm * cos_pi(t), norm * sin_pi(t))
            })
            .collect();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, p: i64) -> Complex64 {
        let n = self.values.len() as i64;
        self.values[p.rem_euclid(n) as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

fn convolve(row: &SymbolRow, u: &DisplacementField) -> Result<Vec<Complex64>> {
    let n = row.len();
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u.len(),
        });
    }
    let f = row.values();
    Ok((0..n)
        .map(|p| {
            (0..n).fold(Complex64::new(0.0, 0.0), |acc, q| {
                acc + u.values[q] * f[(p + n - q) % n]
            })
        })
        .collect())
}

/// `(Δu)_p = -μ Σ_q row[(p - q) mod N] u_q`.
pub fn apply(row: &SymbolRow, u: &DisplacementField, mu: f64) -> Result<DisplacementField> {
    let values = convolve(row, u)?.into_iter().map(|v| v * -mu).collect();
    Ok(DisplacementField { values })
}

/// Elastic energy `(μ/2) Σ_p u*_p (f u)_p`.
pub fn elastic_energy(row: &SymbolRow, u: &DisplacementField, mu: f64) -> Result<f64> {
    let fu = convolve(row, u)?;
    let s: f64 = u.values.iter().zip(&fu).map(|(a, b)| (a.conj() * b).re).sum();
    Ok(0.5 * mu * s)
}
