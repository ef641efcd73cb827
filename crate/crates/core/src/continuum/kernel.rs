use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::periodic::{periodic_regularized_raw, DEFAULT_IMAGES};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::specfun::{ln_gamma_pos, FracOrder};

/// Infinite-line kernel `(α!/π) sin(απ/2) |x|^{-α-1}`.
pub fn riesz_kernel_infinite(order: &FracOrder, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::Domain("the infinite-line kernel is hypersingular at x = 0"));
    }
    if !x.is_finite() {
        return Err(Error::Domain("kernel argument must be finite"));
    }
    Ok(order.tail_amplitude() * libm::pow(libm::fabs(x), -order.alpha() - 1.0))
}

/// Regularized kernel `-(α!/π) Re{ i^{α+1} / (x + iε)^{α+1} }`, finite for
/// every real `x`.
pub fn riesz_kernel_regularized(order: &FracOrder, x: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter("regularization eps must be positive"));
    }
    if !x.is_finite() {
        return Err(Error::Domain("kernel argument must be finite"));
    }
    Ok(Regularized::new(order.alpha()).eval(x, eps))
}

/// The regularized kernel for any `α ≥ 0`; `α = 0` is the negative
/// Lorentzian.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Regularized {
    pub(crate) alpha: f64,
    /// `α!/π`
    pub(crate) amp: f64,
}

impl Regularized {
    pub(crate) fn new(alpha: f64) -> Self {
        Self {
            alpha,
            amp: libm::exp(ln_gamma_pos(alpha + 1.0)) / PI,
        }
    }

    /// With `x + iε = r e^{iθ}` the real part is `r^{-β} cos(β(π/2 - θ))`,
    /// and `π/2 - θ = atan2(x, ε)`.
    pub(crate) fn eval(&self, x: f64, eps: f64) -> f64 {
        let beta = self.alpha + 1.0;
        let r = libm::hypot(x, eps);
        -self.amp * libm::pow(r, -beta) * libm::cos(beta * libm::atan2(x, eps))
    }
}

/// `dⁿ/dxⁿ` of the Lorentzian `ε / (π (x² + ε²))`, evaluated as
/// `(1/π) (-1)ⁿ n! Im{(x - iε)^{-n-1}}`.
pub fn lorentzian_derivative(n: u32, x: f64, eps: f64) -> f64 {
    let w = Complex64::new(x, -eps).inv().powi(n as i32 + 1);
    let fact: f64 = (1..=n).map(f64::from).product();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * fact * w.im / PI
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegerOrderSample {
    pub x: f64,
    pub kernel: f64,
    pub lorentzian: f64,
}

/// Comparison of the regularized kernel at `α = 2m` with
/// `(-1)^{m+1} d^{2m}/dx^{2m}` of the (periodized) Lorentzian.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerOrderReport {
    pub m: u32,
    pub eps: f64,
    pub length: Option<f64>,
    pub samples: Vec<IntegerOrderSample>,
    /// `max |kernel - lorentzian|` over the samples, divided by the largest
    /// `|lorentzian|`.
    pub max_rel_error: f64,
}

const LORENTZ_IMAGES: i64 = 2000;

/// Periodized Lorentzian derivative: direct images `|k| ≤ 2000` and a
/// midpoint-integral remainder from the antiderivative.
fn periodized_lorentzian(n: u32, y: f64, eps: f64, length: f64) -> f64 {
    let mut s = lorentzian_derivative(n, y, eps);
    for k in 1..=LORENTZ_IMAGES {
        let d = k as f64 * length;
        s += lorentzian_derivative(n, y + d, eps) + lorentzian_derivative(n, y - d, eps);
    }
    let edge = (LORENTZ_IMAGES as f64 + 0.5) * length;
    // ∫_a^∞ of the n-th derivative; even n makes both sides alike.
    let tail = |a: f64| {
        if n == 0 {
            (PI / 2.0 - libm::atan(a / eps)) / PI
        } else {
            -lorentzian_derivative(n - 1, a, eps)
        }
    };
    s + (tail(edge + y) + tail(edge - y)) / length
}

/// Checks the integer-order degeneration of the regularized kernel at
/// sample points, on the infinite line (`length = None`) or on the string.
pub fn integer_order_check(m: u32, length: Option<f64>, eps: f64) -> Result<IntegerOrderReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter("regularization eps must be positive"));
    }
    if m > 10 {
        return Err(Error::InvalidParameter("integer order check supports m <= 10"));
    }
    let alpha = 2.0 * m as f64;
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let kernel = Regularized::new(alpha);
    let scale = length.unwrap_or(1.0);
    let xs = [0.0, 0.5 * eps, eps, 3.0 * eps, 10.0 * eps, 0.3 * scale, 0.5 * scale];
    let mut samples = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (k, l) = match length {
            None => (kernel.eval(x, eps), lorentzian_derivative(2 * m, x, eps)),
            Some(len) => {
                if !(len > 0.0 && len.is_finite()) {
                    return Err(Error::InvalidParameter("string length must be positive and finite"));
                }
                let k = periodic_regularized_raw(&kernel, len, eps, x, DEFAULT_IMAGES)?;
                (k, periodized_lorentzian(2 * m, x, eps, len))
            }
        };
        samples.push(IntegerOrderSample {
            x,
            kernel: k,
            lorentzian: sign * l,
        });
    }
    let peak = samples.iter().map(|s| libm::fabs(s.lorentzian)).fold(0.0, f64::max);
    let worst = samples
        .iter()
        .map(|s| libm::fabs(s.kernel - s.lorentzian))
        .fold(0.0, f64::max);
    Ok(IntegerOrderReport {
        m,
        eps,
        length,
        samples,
        max_rel_error: worst / peak,
    })
}

/// Integral of the regularized kernel over `[-X, X]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroStringLimit {
    pub integral: f64,
    /// `|K(0)| ε = α!/(π ε^α)`, the mass of the central peak.
    pub peak_scale: f64,
    /// `integral / peak_scale`.
    pub normalized: f64,
    pub quad_error: f64,
}

pub fn zero_string_limit_check(order: &FracOrder, eps: f64, half_width: f64) -> Result<ZeroStringLimit> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter("regularization eps must be positive"));
    }
    if !(half_width > eps && half_width.is_finite()) {
        return Err(Error::InvalidParameter("integration range must exceed eps"));
    }
    let kernel = Regularized::new(order.alpha());
    let breaks = geometric_breaks(eps, half_width);
    let cfg = QuadConfig {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_intervals: 20_000,
    };
    let r = integrate(|x| kernel.eval(x, eps), 0.0, half_width, &breaks, &cfg)?;
    let peak_scale = kernel.amp * libm::pow(eps, -order.alpha());
    let integral = 2.0 * r.value;
    Ok(ZeroStringLimit {
        integral,
        peak_scale,
        normalized: integral / peak_scale,
        quad_error: 2.0 * r.error,
    })
}

/// `ε/4, ε, 4ε, 16ε, …` below `upper`.
pub(crate) fn geometric_breaks(eps: f64, upper: f64) -> Vec<f64> {
    let mut breaks = Vec::new();
    let mut b = 0.25 * eps;
    while b < upper {
        breaks.push(b);
        b *= 4.0;
    }
    breaks
}
