//! Continuum limit of the chain: Riesz kernels on the infinite line and on
//! the L-periodic string.
//!
//! Kernels are returned without the physical prefactor `ρ₀ A_α`; multiply by
//! [`KernelSpec::physical_prefactor`] to obtain the elastic kernel of a
//! string with density `ρ₀`.

mod kernel;
mod periodic;
mod study;

pub use kernel::{
    integer_order_check, lorentzian_derivative, riesz_kernel_infinite, riesz_kernel_regularized,
    zero_string_limit_check, IntegerOrderReport, IntegerOrderSample, ZeroStringLimit,
};
pub use periodic::{
    extrapolate_to_zero, extrapolated_eigenvalue, fourier_coefficient, periodic_eigenvalue, periodic_kernel_imagesum,
    periodic_kernel_regularized, periodic_kernel_zeta, verify_eigen_by_convolution, EigenExtrapolation,
    DEFAULT_EPS_LADDER, DEFAULT_IMAGES,
};
pub use study::{convergence_row, convergence_study, ConvergenceReport, ConvergenceRow};

use crate::error::{Error, Result};
use crate::specfun::FracOrder;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    InfiniteLine,
    PeriodicString { length: f64 },
}

/// Parameters of a continuum kernel. `eps = 0` selects the pointwise
/// hypersingular kernel, `eps > 0` the regularized one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    order: FracOrder,
    domain: Domain,
    rho0: f64,
    a_alpha: f64,
    eps: f64,
}

impl KernelSpec {
    pub fn new(order: FracOrder, domain: Domain, rho0: f64, a_alpha: f64, eps: f64) -> Result<Self> {
        if let Domain::PeriodicString { length } = domain {
            if !(length > 0.0 && length.is_finite()) {
                return Err(Error::InvalidParameter("string length must be positive and finite"));
            }
        }
        if !(rho0 > 0.0 && rho0.is_finite()) {
            return Err(Error::InvalidParameter("mass density must be positive and finite"));
        }
        if !(a_alpha > 0.0 && a_alpha.is_finite()) {
            return Err(Error::InvalidParameter("scaling constant must be positive and finite"));
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter("regularization must be finite and >= 0"));
        }
        Ok(Self {
            order,
            domain,
            rho0,
            a_alpha,
            eps,
        })
    }

    /// Unit-density string of length `length` without regularization.
    pub fn periodic(order: FracOrder, length: f64) -> Result<Self> {
        Self::new(order, Domain::PeriodicString { length }, 1.0, 1.0, 0.0)
    }

    pub fn infinite(order: FracOrder) -> Result<Self> {
        Self::new(order, Domain::InfiniteLine, 1.0, 1.0, 0.0)
    }

    pub fn with_eps(self, eps: f64) -> Result<Self> {
        Self::new(self.order, self.domain, self.rho0, self.a_alpha, eps)
    }

    pub fn order(&self) -> &FracOrder {
        &self.order
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn length(&self) -> Option<f64> {
        match self.domain {
            Domain::PeriodicString { length } => Some(length),
            Domain::InfiniteLine => None,
        }
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn a_alpha(&self) -> f64 {
        self.a_alpha
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `ρ₀ A_α`.
    pub fn physical_prefactor(&self) -> f64 {
        self.rho0 * self.a_alpha
    }

    pub(crate) fn require_length(&self) -> Result<f64> {
        self.length()
            .ok_or(Error::InvalidParameter("operation requires a periodic string"))
    }

    pub(crate) fn require_eps(&self) -> Result<f64> {
        if self.eps > 0.0 {
            Ok(self.eps)
        } else {
            Err(Error::InvalidParameter("operation requires eps > 0"))
        }
    }
}

/// Lattice scaling `μ = ρ₀ h`, `Ω² = A_α h^{-α}` that keeps mass and elastic
/// energy finite as `h → 0`. Returns `(μ, Ω²)`.
pub fn scaling_constants(h: f64, order: &FracOrder, rho0: f64, a_alpha: f64) -> Result<(f64, f64)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter("lattice constant must be positive and finite"));
    }
    Ok((rho0 * h, a_alpha * libm::pow(h, -order.alpha())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling() {
        let two = FracOrder::new(2.0).unwrap();
        assert_eq!(scaling_constants(1.0, &two, 1.0, 1.0).unwrap(), (1.0, 1.0));
        assert_eq!(scaling_constants(0.5, &two, 1.0, 1.0).unwrap(), (0.5, 4.0));
        assert!(scaling_constants(0.0, &two, 1.0, 1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        let o = FracOrder::new(1.0).unwrap();
        assert!(KernelSpec::periodic(o, 0.0).is_err());
        assert!(KernelSpec::new(o, Domain::InfiniteLine, 0.0, 1.0, 0.0).is_err());
        assert!(KernelSpec::new(o, Domain::InfiniteLine, 1.0, 1.0, -1e-3).is_err());
        let s = KernelSpec::new(o, Domain::PeriodicString { length: 2.0 }, 3.0, 0.5, 0.0).unwrap();
        assert_eq!(s.physical_prefactor(), 1.5);
        assert!(s.require_eps().is_err());
        assert_eq!(s.with_eps(1e-3).unwrap().require_eps(), Ok(1e-3));
        assert!(KernelSpec::infinite(o).unwrap().require_length().is_err());
    }
}
