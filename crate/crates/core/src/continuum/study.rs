use alloc::vec::Vec;

use super::periodic::periodic_kernel_zeta;
use super::{scaling_constants, KernelSpec};
use crate::chain::element_periodic_spectral;
use crate::error::{Error, Result};
use crate::specfun::FracOrder;

const ALIGN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub n: usize,
    pub p: usize,
    pub x: f64,
    /// `-μ(h) h^{-2} Ω²(h) f_N(p)`
    pub discrete: f64,
    /// `ρ₀ A_α K_L(x)`
    pub continuum: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(error)` against `ln(h)`; `None` with fewer
    /// than two rows or when some error is exactly zero.
    pub fitted_order: Option<f64>,
}

impl ConvergenceReport {
    /// Assembles a report from rows ordered by strictly decreasing `h`.
    pub fn from_rows(rows: Vec<ConvergenceRow>) -> Result<Self> {
        if rows.windows(2).any(|w| !(w[1].h < w[0].h)) {
            return Err(Error::InvalidParameter("lattice constants must strictly decrease"));
        }
        let fitted_order = fit_order(&rows);
        Ok(Self { rows, fitted_order })
    }

    /// Errors decrease from each row to the next.
    pub fn is_monotone(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error)
    }
}

fn fit_order(rows: &[ConvergenceRow]) -> Option<f64> {
    if rows.len() < 2 || rows.iter().any(|r| !(r.abs_error > 0.0)) {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (libm::log(r.h), libm::log(r.abs_error))).collect();
    Some(slope(&pts))
}

/// Least-squares slope through `(x, y)` pairs.
pub(crate) fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn aligned(value: f64) -> Result<usize> {
    let r = libm::round(value);
    let offset = libm::fabs(value - r);
    if offset > ALIGN_TOL || r < 0.0 {
        return Err(Error::Alignment { value, offset });
    }
    Ok(r as usize)
}

/// One row of [`convergence_study`]: the chain with `N = L/h` particles,
/// scaled per `μ = ρ₀ h`, `Ω² = A_α h^{-α}`, against the string kernel at
/// `x = p h`.
pub fn convergence_row(
    order: &FracOrder,
    length: f64,
    rho0: f64,
    a_alpha: f64,
    x: f64,
    h: f64,
) -> Result<ConvergenceRow> {
    let (mu, omega2) = scaling_constants(h, order, rho0, a_alpha)?;
    let n = aligned(length / h)?;
    let p = aligned(x / h)?;
    if n == 0 {
        return Err(Error::InvalidParameter("lattice constant exceeds the string length"));
    }
    let spec = KernelSpec::new(*order, super::Domain::PeriodicString { length }, rho0, a_alpha, 0.0)?;
    let continuum = spec.physical_prefactor() * periodic_kernel_zeta(&spec, x)?;
    let discrete = -mu / (h * h) * omega2 * element_periodic_spectral(order, n, p % n)?;
    Ok(ConvergenceRow {
        h,
        n,
        p,
        x,
        discrete,
        continuum,
        abs_error: libm::fabs(discrete - continuum),
    })
}

/// Discrete-to-continuum limit of the periodic chain at fixed `x`, over a
/// strictly decreasing sequence of lattice constants.
pub fn convergence_study(
    order: &FracOrder,
    length: f64,
    rho0: f64,
    a_alpha: f64,
    x: f64,
    h_sequence: &[f64],
) -> Result<ConvergenceReport> {
    let rows = h_sequence
        .iter()
        .map(|&h| convergence_row(order, length, rho0, a_alpha, x, h))
        .collect::<Result<Vec<_>>>()?;
    ConvergenceReport::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn halvings(from: u32, to: u32) -> Vec<f64> {
        (from..=to).map(|k| libm::pow(2.0, -(k as f64))).collect()
    }

    #[test]
    fn alpha_one_reaches_pi() {
        let o = FracOrder::new(1.0).unwrap();
        let r = convergence_study(&o, 1.0, 1.0, 1.0, 0.5, &halvings(3, 8)).unwrap();
        assert!(r.is_monotone());
        let first = r.rows[0].abs_error;
        let last = r.rows.last().unwrap().abs_error;
        assert!(last <= first / 10.0);
        assert!((r.rows[0].continuum - PI).abs() < 1e-13);
        assert!(r.fitted_order.unwrap() > 1.0);
    }

    #[test]
    fn physical_prefactor_scales_both_sides() {
        let o = FracOrder::new(1.5).unwrap();
        let a = convergence_row(&o, 2.0, 1.0, 1.0, 0.5, 1.0 / 64.0).unwrap();
        let b = convergence_row(&o, 2.0, 3.0, 0.5, 0.5, 1.0 / 64.0).unwrap();
        assert!((b.discrete - 1.5 * a.discrete).abs() < 1e-12 * a.discrete.abs());
        assert!((b.continuum - 1.5 * a.continuum).abs() < 1e-12 * a.continuum.abs());
    }

    #[test]
    fn integer_order_interior_is_zero() {
        let o = FracOrder::new(2.0).unwrap();
        let r = convergence_study(&o, 1.0, 1.0, 1.0, 0.25, &halvings(3, 6)).unwrap();
        for row in &r.rows {
            assert!(row.discrete.abs() < 1e-9 && row.continuum == 0.0);
        }
    }

    #[test]
    fn misaligned_grid() {
        let o = FracOrder::new(1.0).unwrap();
        let err = convergence_row(&o, 1.0, 1.0, 1.0, 0.3, 0.125).unwrap_err();
        assert!(matches!(err, Error::Alignment { .. }));
        assert!(convergence_row(&o, 1.0, 1.0, 1.0, 0.5, 0.3).is_err());
        assert!(convergence_study(&o, 1.0, 1.0, 1.0, 0.5, &[0.125, 0.25]).is_err());
    }
}
