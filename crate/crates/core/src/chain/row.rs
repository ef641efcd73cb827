use alloc::vec::Vec;
use core::f64::consts::PI;

use super::element::{ImageSumConfig, ImageSummer, SpectralWeights};
use super::ChainSpec;
use crate::error::{Error, Result};
use crate::specfun::{cos_pi, sin_pi, FracOrder};

/// How the elements of a [`SymbolRow`] were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowMethod {
    /// Finite inverse transform of the dispersion relation.
    Spectral,
    /// Periodized infinite-chain elements.
    ImageSum,
}

/// First row `f_N(|p|)`, `p = 0..N-1`, of the circulant characteristic
/// matrix, in units of Ω².
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolRow {
    order: FracOrder,
    omega2: f64,
    values: Vec<f64>,
    method: RowMethod,
}

impl SymbolRow {
    pub fn order(&self) -> &FracOrder {
        &self.order
    }

    /// Ω² the row was scaled with.
    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn method(&self) -> RowMethod {
        self.method
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cyclic access, `row[p mod N]` for any integer `p`.
    pub fn get(&self, p: i64) -> f64 {
        let n = self.values.len() as i64;
        self.values[p.rem_euclid(n) as usize]
    }

    pub fn row_sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Eigenvalues `Σ_p row[p] cos(2πlp/N)` of the characteristic matrix,
    /// indexed by `l`.
    pub fn spectrum(&self) -> Vec<f64> {
        let n = self.values.len();
        (0..n)
            .map(|l| {
                self.values
                    .iter()
                    .enumerate()
                    .map(|(p, v)| v * cos_pi(2.0 * ((l * p) % n) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }
}

/// Builds the symbol row of a finite chain and checks its invariants:
/// reflection symmetry, vanishing row sum and a positive diagonal.
pub fn build_symbol_row(spec: &ChainSpec, method: RowMethod, tol: f64) -> Result<SymbolRow> {
    let n = spec.require_finite()?;
    let order = *spec.order();
    let raw: Vec<f64> = match method {
        RowMethod::Spectral => {
            let weights = SpectralWeights::new(&order, n)?;
            (0..n).map(|p| weights.element(p)).collect()
        }
        RowMethod::ImageSum => {
            let summer = ImageSummer::new(&order, n, &ImageSumConfig::new(tol))?;
            (0..n)
                .map(|p| summer.element(p).map(|v| v.value))
                .collect::<Result<_>>()?
        }
    };
    let omega2 = spec.omega2();
    let values: Vec<f64> = raw.iter().map(|v| omega2 * v).collect();

    let scale = omega2 * raw[0].abs().max(1.0);
    for p in 1..n {
        let asym = (values[p] - values[n - p]).abs();
        if asym > 1e-12 * scale {
            return Err(Error::Invariant {
                what: "symbol row is not reflection symmetric",
                residual: asym,
            });
        }
    }
    let sum: f64 = values.iter().sum();
    let sum_tol = scale * (1e-10 + n as f64 * tol);
    if sum.abs() > sum_tol {
        return Err(Error::Invariant {
            what: "symbol row does not sum to zero",
            residual: sum,
        });
    }
    if n >= 2 && !(values[0] > 0.0) {
        return Err(Error::Invariant {
            what: "diagonal element of the symbol row is not positive",
            residual: values[0],
        });
    }
    Ok(SymbolRow {
        order,
        omega2,
        values,
        method,
    })
}

/// Dense row-major `N × N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Fractional Laplacian matrix `Δ(p, q) = -μ row[(p - q) mod N]`.
pub fn laplacian_matrix(spec: &ChainSpec, row: &SymbolRow) -> Result<DenseMatrix> {
    let n = spec.require_finite()?;
    if row.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.len(),
        });
    }
    if row.order() != spec.order() || row.omega2() != spec.omega2() {
        return Err(Error::InvalidParameter("symbol row was built for a different chain"));
    }
    let mu = spec.mu();
    let mut data = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            data.push(-mu * row.values[(p + n - q) % n]);
        }
    }
    Ok(DenseMatrix { n, data })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionEntry {
    pub l: usize,
    pub kappa: f64,
    pub omega2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionTable {
    pub entries: Vec<DispersionEntry>,
}

/// `ω²(κ_l) = Ω² 2^α |sin(κ_l/2)|^α` for `κ_l = 2πl/N`, `l = 0..N-1`.
pub fn dispersion(spec: &ChainSpec) -> Result<DispersionTable> {
    let n = spec.require_finite()?;
    let alpha = spec.order().alpha();
    let entries = (0..n)
        .map(|l| {
            let s = sin_pi(l as f64 / n as f64).abs();
            let omega2 = if s == 0.0 {
                0.0
            } else {
                spec.omega2() * libm::pow(2.0 * s, alpha)
            };
            DispersionEntry {
                l,
                kappa: 2.0 * PI * l as f64 / n as f64,
                omega2,
            }
        })
        .collect();
    Ok(DispersionTable { entries })
}

/// Frequency normalized to the classical band edge `ω₀ = 2Ω`:
/// `0.5 · 2^{α/2} |sin(κ/2)|^{α/2}`.
pub fn normalized_frequency(order: &FracOrder, kappa: f64) -> f64 {
    let s = libm::fabs(sin_pi(kappa / (2.0 * PI)));
    if s == 0.0 {
        return 0.0;
    }
    0.5 * libm::pow(2.0 * s, order.half())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, a: f64) -> ChainSpec {
        ChainSpec::unit(n, FracOrder::new(a).unwrap()).unwrap()
    }

    #[test]
    fn classical_rows() {
        let row = build_symbol_row(&spec(4, 2.0), RowMethod::Spectral, 1e-12).unwrap();
        let expected = [2.0, -1.0, 0.0, -1.0];
        for (v, e) in row.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-14);
        }
        let row = build_symbol_row(&spec(4, 2.0), RowMethod::ImageSum, 1e-12).unwrap();
        assert_eq!(row.values(), &expected);
    }

    #[test]
    fn two_particles_alpha_three() {
        let s = ChainSpec::finite(2, FracOrder::new(3.0).unwrap(), 2.5, 1.0, 1.0).unwrap();
        let row = build_symbol_row(&s, RowMethod::Spectral, 1e-12).unwrap();
        assert!((row.values()[0] - 10.0).abs() < 1e-13);
        assert!((row.values()[1] + 10.0).abs() < 1e-13);
    }

    #[test]
    fn single_particle_row_is_zero() {
        let row = build_symbol_row(&spec(1, 1.3), RowMethod::Spectral, 1e-12).unwrap();
        assert_eq!(row.values(), &[0.0]);
        let m = laplacian_matrix(&spec(1, 1.3), &row).unwrap();
        assert_eq!(m.as_slice(), &[0.0]);
    }

    #[test]
    fn methods_agree_for_small_alpha() {
        let s = spec(32, 0.5);
        let a = build_symbol_row(&s, RowMethod::Spectral, 1e-12).unwrap();
        let b = build_symbol_row(&s, RowMethod::ImageSum, 1e-12).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-8 * x.abs().max(1e-2));
        }
    }

    #[test]
    fn spectrum_is_the_dispersion() {
        let s = spec(9, 1.7);
        let row = build_symbol_row(&s, RowMethod::Spectral, 1e-12).unwrap();
        let table = dispersion(&s).unwrap();
        for (ev, e) in row.spectrum().iter().zip(&table.entries) {
            assert!((ev - e.omega2).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_locality() {
        let row = build_symbol_row(&spec(12, 4.0), RowMethod::Spectral, 1e-12).unwrap();
        let nonzero = row.values().iter().filter(|v| v.abs() > 1e-12).count();
        assert_eq!(nonzero, 5);
        assert!((row.get(-2) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn matrix_layout() {
        let s = ChainSpec::finite(4, FracOrder::new(2.0).unwrap(), 1.0, 3.0, 1.0).unwrap();
        let row = build_symbol_row(&s, RowMethod::ImageSum, 1e-12).unwrap();
        let m = laplacian_matrix(&s, &row).unwrap();
        assert_eq!(m.row(0), &[-6.0, 3.0, 0.0, 3.0]);
        assert_eq!(m.row(1), &[3.0, -6.0, 3.0, 0.0]);
        assert!(laplacian_matrix(&spec(5, 2.0), &row).is_err());
    }

    #[test]
    fn dispersion_values() {
        let t = dispersion(&spec(4, 1.0)).unwrap();
        assert_eq!(t.entries[0].omega2, 0.0);
        assert!((t.entries[1].omega2 - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((t.entries[2].omega2 - 2.0).abs() < 1e-15);
        assert_eq!(t.entries[1].omega2, t.entries[3].omega2);
    }

    #[test]
    fn normalized_frequency_peak() {
        let three = FracOrder::new(3.0).unwrap();
        assert!((normalized_frequency(&three, PI) - 0.5 * libm::pow(2.0, 1.5)).abs() < 1e-15);
        let two = FracOrder::new(2.0).unwrap();
        assert!((normalized_frequency(&two, 1.0) - libm::sin(0.5)).abs() < 1e-15);
        assert_eq!(normalized_frequency(&two, 0.0), 0.0);
    }
}
