use alloc::vec::Vec;
use core::f64::consts::PI;

use super::kernel::{geometric_breaks, Regularized};
use super::KernelSpec;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::specfun::{cos_pi, FracOrder};
use crate::zeta::hurwitz_zeta;

/// Images summed directly by [`periodic_kernel_regularized`] when no count
/// is given.
pub const DEFAULT_IMAGES: usize = 32;

/// Geometric ε ladder (ratio ½) used for ε → 0 extrapolation.
pub const DEFAULT_EPS_LADDER: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Reduces `x` to the principal interval and returns `ξ = x/L` folded to
/// `(0, ½]`, rejecting lattice points.
fn folded_fraction(x: f64, length: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("kernel argument must be finite"));
    }
    let mut r = libm::fmod(x, length);
    if r < 0.0 {
        r += length;
    }
    let xi = r / length;
    let xi = if xi > 0.5 { 1.0 - xi } else { xi };
    if !(xi > 1e-12) {
        return Err(Error::Domain(
            "the periodic kernel is hypersingular at lattice points x = nL",
        ));
    }
    Ok(xi)
}

/// L-periodic hypersingular kernel
/// `(α! sin(απ/2) / (π L^{α+1})) [ζ(α+1, ξ) + ζ(α+1, 1-ξ)]`, `ξ = x/L mod 1`.
pub fn periodic_kernel_zeta(spec: &KernelSpec, x: f64) -> Result<f64> {
    let length = spec.require_length()?;
    let xi = folded_fraction(x, length)?;
    let order = spec.order();
    let amp = order.tail_amplitude();
    if amp == 0.0 {
        return Ok(0.0);
    }
    let beta = order.alpha() + 1.0;
    let z = hurwitz_zeta(beta, xi)? + hurwitz_zeta(beta, 1.0 - xi)?;
    Ok(amp * libm::pow(length, -beta) * z)
}

/// `Σ_n g_∞(|x - nL|)`: images within `M` periods are summed directly, the
/// rest by the midpoint Euler–Maclaurin formula. `M` doubles until the first
/// neglected correction is below `tol`.
pub fn periodic_kernel_imagesum(spec: &KernelSpec, x: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("image-sum tolerance must be positive"));
    }
    let length = spec.require_length()?;
    let xi = folded_fraction(x, length)?;
    let order = spec.order();
    let amp = order.tail_amplitude();
    if amp == 0.0 {
        return Ok(0.0);
    }
    let alpha = order.alpha();
    let beta = alpha + 1.0;
    let scale = libm::fabs(amp) * libm::pow(length, -beta);
    let poch = |n: usize| (0..n).map(|j| beta + j as f64).product::<f64>();
    let (p1, p3, p5, p7) = (poch(1), poch(3), poch(5), poch(7));

    let mut images = 8usize;
    loop {
        let w = [images as f64 - 0.5 + xi, images as f64 + 0.5 - xi];
        let bound: f64 = w
            .iter()
            .map(|w| 127.0 / 154_828_800.0 * p7 * libm::pow(*w, -beta - 7.0))
            .sum();
        if scale * bound <= tol {
            let mut direct = 0.0;
            for k in (0..images).rev() {
                let k = k as f64;
                direct += libm::pow(k + xi, -beta) + libm::pow(k + 1.0 - xi, -beta);
            }
            let tail: f64 = w
                .iter()
                .map(|&w| {
                    libm::pow(w, -alpha) / alpha - p1 * libm::pow(w, -beta - 1.0) / 24.0
                        + 7.0 * p3 * libm::pow(w, -beta - 3.0) / 5760.0
                        - 31.0 * p5 * libm::pow(w, -beta - 5.0) / 967_680.0
                })
                .sum();
            return Ok(amp * libm::pow(length, -beta) * (direct + tail));
        }
        if images >= 1 << 22 {
            return Err(Error::Convergence {
                context: "periodic image sum exceeds image budget",
                estimate: scale * bound,
                tolerance: tol,
            });
        }
        images *= 2;
    }
}

/// The regularized kernel periodized over a string of length `length`.
pub(crate) struct PeriodicRegularized {
    kernel: Regularized,
    length: f64,
    eps: f64,
    images: usize,
}

impl PeriodicRegularized {
    pub(crate) fn new(kernel: Regularized, length: f64, eps: f64, images: usize) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter("regularization eps must be positive"));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidParameter("string length must be positive and finite"));
        }
        if (images as f64 + 0.5) * length <= 4.0 * eps {
            return Err(Error::InvalidParameter("eps too large for the number of direct images"));
        }
        Ok(Self {
            kernel,
            length,
            eps,
            images,
        })
    }

    /// Direct images `|n| ≤ images` plus the remaining ones from the
    /// large-distance expansion
    /// `Re{i^β (d + iε)^{-β}} = Σ_j C(-β, j) cos((β+j)π/2) ε^j d^{-β-j}`,
    /// whose image sums are Hurwitz zetas.
    pub(crate) fn eval(&self, x: f64) -> f64 {
        let len = self.length;
        let eps = self.eps;
        let y = x - len * libm::round(x / len);
        let mut direct = 0.0;
        for k in (1..=self.images).rev() {
            let d = k as f64 * len;
            direct += self.kernel.eval(y - d, eps) + self.kernel.eval(y + d, eps);
        }
        direct += self.kernel.eval(y, eps);

        let beta = self.kernel.alpha + 1.0;
        let shift = y / len;
        let start = self.images as f64 + 1.0;
        let ratio = eps / ((start - 0.5) * len);
        let mut binom = 1.0;
        let mut eps_pow = 1.0;
        let mut tail = 0.0;
        for j in 0..60 {
            let s = beta + j as f64;
            let c = cos_pi(0.5 * s);
            if libm::fabs(c) > 1e-15 {
                let z = hurwitz_zeta(s, start + shift).unwrap_or(0.0) + hurwitz_zeta(s, start - shift).unwrap_or(0.0);
                tail += binom * c * eps_pow * libm::pow(len, -s) * z;
            }
            if j > 0 && libm::fabs(binom) * libm::pow(ratio, j as f64) < 1e-18 {
                break;
            }
            binom *= (-beta - j as f64) / (j as f64 + 1.0);
            eps_pow *= eps;
        }
        direct - self.kernel.amp * tail
    }
}

pub(crate) fn periodic_regularized_raw(
    kernel: &Regularized,
    length: f64,
    eps: f64,
    x: f64,
    images: usize,
) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain("kernel argument must be finite"));
    }
    Ok(PeriodicRegularized::new(*kernel, length, eps, images)?.eval(x))
}

/// Regularized L-periodic kernel `-(α!/π) Re Σ_n i^{α+1} / (x - nL + iε)^{α+1}`
/// with `images` directly summed images on each side. Needs `eps > 0`.
pub fn periodic_kernel_regularized(spec: &KernelSpec, x: f64, images: usize) -> Result<f64> {
    let length = spec.require_length()?;
    let eps = spec.require_eps()?;
    periodic_regularized_raw(&Regularized::new(spec.order().alpha()), length, eps, x, images)
}

/// Eigenvalue `-|2πl/L|^α` of the L-periodic fractional Laplacian.
pub fn periodic_eigenvalue(order: &FracOrder, length: f64, l: i64) -> Result<f64> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidParameter("string length must be positive and finite"));
    }
    if l == 0 {
        return Ok(0.0);
    }
    let k = 2.0 * PI * l.unsigned_abs() as f64 / length;
    Ok(-libm::pow(k, order.alpha()))
}

fn eigen_quad_config(quad_tol: f64) -> Result<QuadConfig> {
    if !(quad_tol > 0.0) {
        return Err(Error::InvalidParameter("quadrature tolerance must be positive"));
    }
    Ok(QuadConfig {
        abs_tol: quad_tol,
        rel_tol: 0.0,
        max_intervals: 50_000,
    })
}

/// Convolves the regularized periodic kernel with the Bloch mode
/// `e^{ik_l x}` over one period and returns the ratio to the mode at the
/// origin, `∫ K(y) e^{-ik_l y} dy` (the kernel is even, so only
/// `[0, L/2]` is integrated).
pub fn verify_eigen_by_convolution(spec: &KernelSpec, l: i64, quad_tol: f64) -> Result<f64> {
    let length = spec.require_length()?;
    let eps = spec.require_eps()?;
    let cfg = eigen_quad_config(quad_tol)?;
    let kernel = PeriodicRegularized::new(Regularized::new(spec.order().alpha()), length, eps, DEFAULT_IMAGES)?;
    let k = 2.0 * PI * l as f64 / length;
    let half = 0.5 * length;
    let breaks = geometric_breaks(eps, half);
    let cfg = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..cfg
    };
    let r = integrate(|y| kernel.eval(y) * libm::cos(k * y), 0.0, half, &breaks, &cfg)?;
    Ok(2.0 * r.value)
}

/// Fourier coefficient `∫_0^L K_L(x) e^{-ik_l x} dx` of the regularized
/// kernel, integrated over the whole period (singular panels at both
/// ends). Returns real and imaginary parts.
pub fn fourier_coefficient(spec: &KernelSpec, l: i64, quad_tol: f64) -> Result<(f64, f64)> {
    let length = spec.require_length()?;
    let eps = spec.require_eps()?;
    let cfg = eigen_quad_config(quad_tol)?;
    let kernel = PeriodicRegularized::new(Regularized::new(spec.order().alpha()), length, eps, DEFAULT_IMAGES)?;
    let k = 2.0 * PI * l as f64 / length;
    let mut breaks = geometric_breaks(eps, 0.5 * length);
    let mirrored: Vec<f64> = breaks.iter().map(|b| length - b).collect();
    breaks.extend(mirrored);
    breaks.push(0.5 * length);
    let cfg = QuadConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..cfg
    };
    let re = integrate(|x| kernel.eval(x) * libm::cos(k * x), 0.0, length, &breaks, &cfg)?;
    let im = integrate(|x| -kernel.eval(x) * libm::sin(k * x), 0.0, length, &breaks, &cfg)?;
    Ok((re.value, im.value))
}

/// Polynomial (Neville) extrapolation of `(ε, value)` pairs to `ε = 0`.
pub fn extrapolate_to_zero(points: &[(f64, f64)]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidParameter("extrapolation needs at least one point"));
    }
    let mut table: Vec<f64> = points.iter().map(|p| p.1).collect();
    let n = points.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (points[i].0, points[i + level].0);
            if xi == xj {
                return Err(Error::InvalidParameter("extrapolation nodes must be distinct"));
            }
            table[i] = (xi * table[i + 1] - xj * table[i]) / (xi - xj);
        }
    }
    Ok(table[0])
}

/// Measured eigenvalues along an ε ladder and their ε → 0 extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenExtrapolation {
    pub l: i64,
    pub rungs: Vec<(f64, f64)>,
    pub extrapolated: f64,
    pub exact: f64,
}

impl EigenExtrapolation {
    /// Relative deviation from `-|k_l|^α`; absolute when the exact value is 0.
    pub fn deviation(&self) -> f64 {
        let d = libm::fabs(self.extrapolated - self.exact);
        if self.exact == 0.0 {
            d
        } else {
            d / libm::fabs(self.exact)
        }
    }
}

/// Runs [`verify_eigen_by_convolution`] on every ε of `ladder` (the `eps` of
/// `spec` is ignored) and extrapolates assuming an error series in powers
/// of ε.
pub fn extrapolated_eigenvalue(spec: &KernelSpec, l: i64, ladder: &[f64], quad_tol: f64) -> Result<EigenExtrapolation> {
    let length = spec.require_length()?;
    let rungs = ladder
        .iter()
        .map(|&eps| Ok((eps, verify_eigen_by_convolution(&spec.with_eps(eps)?, l, quad_tol)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenExtrapolation {
        l,
        extrapolated: extrapolate_to_zero(&rungs)?,
        exact: periodic_eigenvalue(spec.order(), length, l)?,
        rungs,
    })
}
