//! The fractional Laplacian of the infinite chain and of the N-periodic ring.
//!
//! All element functions are dimensionless (Ω² = 1). [`ChainSpec`] carries
//! the physical constants; Ω² is applied when a [`SymbolRow`] is built and μ
//! when the Laplacian acts on a field.

mod element;
mod field;
mod row;

pub use element::{
    asymptotic_element, element_infinite, element_infinite_quadrature, element_periodic_imagesum,
    element_periodic_imagesum_with, element_periodic_spectral, ImageSumConfig, ImageSumValue, ImageTail,
};
pub use field::{apply, elastic_energy, DisplacementField};
pub use row::{
    build_symbol_row, dispersion, laplacian_matrix, normalized_frequency, DenseMatrix, DispersionEntry,
    DispersionTable, RowMethod, SymbolRow,
};

use crate::error::{Error, Result};
use crate::specfun::FracOrder;

/// Number of particles on the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSize {
    Finite(usize),
    Infinite,
}

/// Physical parameters of a chain of identical particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    size: ChainSize,
    order: FracOrder,
    omega2: f64,
    mu: f64,
    h: f64,
}

impl ChainSpec {
    /// A ring of `n ≥ 1` particles with frequency constant `omega2 = Ω²_α`,
    /// particle mass `mu` and lattice constant `h`.
    pub fn finite(n: usize, order: FracOrder, omega2: f64, mu: f64, h: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("chain needs at least one particle"));
        }
        Self::validate(omega2, mu, h)?;
        Ok(Self {
            size: ChainSize::Finite(n),
            order,
            omega2,
            mu,
            h,
        })
    }

    pub fn infinite(order: FracOrder, omega2: f64, mu: f64, h: f64) -> Result<Self> {
        Self::validate(omega2, mu, h)?;
        Ok(Self {
            size: ChainSize::Infinite,
            order,
            omega2,
            mu,
            h,
        })
    }

    /// Ring with Ω² = μ = h = 1.
    pub fn unit(n: usize, order: FracOrder) -> Result<Self> {
        Self::finite(n, order, 1.0, 1.0, 1.0)
    }

    fn validate(omega2: f64, mu: f64, h: f64) -> Result<()> {
        if !(omega2 > 0.0 && omega2.is_finite()) {
            return Err(Error::InvalidParameter("omega2 must be positive and finite"));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter("particle mass must be positive and finite"));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter("lattice constant must be positive and finite"));
        }
        Ok(())
    }

    pub fn size(&self) -> ChainSize {
        self.size
    }

    /// Particle count, `None` for the infinite chain.
    pub fn n(&self) -> Option<usize> {
        match self.size {
            ChainSize::Finite(n) => Some(n),
            ChainSize::Infinite => None,
        }
    }

    pub(crate) fn require_finite(&self) -> Result<usize> {
        self.n()
            .ok_or(Error::InvalidParameter("operation requires a finite chain"))
    }

    pub fn order(&self) -> &FracOrder {
        &self.order
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Ring length `L = N h`.
    pub fn length(&self) -> Option<f64> {
        self.n().map(|n| n as f64 * self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        let o = FracOrder::new(1.5).unwrap();
        assert!(ChainSpec::finite(0, o, 1.0, 1.0, 1.0).is_err());
        assert!(ChainSpec::finite(4, o, 0.0, 1.0, 1.0).is_err());
        assert!(ChainSpec::finite(4, o, 1.0, -1.0, 1.0).is_err());
        assert!(ChainSpec::finite(4, o, 1.0, 1.0, f64::NAN).is_err());
        let s = ChainSpec::finite(8, o, 2.0, 0.5, 0.25).unwrap();
        assert_eq!(s.length(), Some(2.0));
        let inf = ChainSpec::infinite(o, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(inf.n(), None);
        assert!(inf.require_finite().is_err());
    }
}
