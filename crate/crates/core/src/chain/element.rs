use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::specfun::{cos_pi, generalized_binomial, sin_pi, FracOrder, GammaRatioSeries};
use crate::zeta::hurwitz_zeta;

/// Infinite-chain element `f_∞(|p|) = (-1)^p (α choose α/2 + p)`.
pub fn element_infinite(order: &FracOrder, p: i64) -> f64 {
    let c = generalized_binomial(order, p).value();
    if p.unsigned_abs() % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Brillouin-zone integral `(2^{α+1}/π) ∫_0^{π/2} sin^α φ cos(2pφ) dφ`,
/// evaluated by adaptive quadrature to absolute accuracy `tol`.
///
/// The substitution `φ = s²` smooths the `φ^α` endpoint behaviour at zero.
pub fn element_infinite_quadrature(order: &FracOrder, p: i64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("quadrature tolerance must be positive"));
    }
    let alpha = order.alpha();
    let scale = libm::pow(2.0, alpha + 1.0) / PI;
    let freq = 2.0 * p.unsigned_abs() as f64;
    let integrand = |s: f64| {
        let phi = s * s;
        2.0 * s * libm::pow(libm::sin(phi), alpha) * libm::cos(freq * phi)
    };
    let upper = libm::sqrt(PI / 2.0);
    let cfg = QuadConfig {
        abs_tol: 0.5 * tol / scale,
        rel_tol: 0.0,
        max_intervals: 50_000,
    };
    let r = integrate(integrand, 0.0, upper, &[], &cfg)?;
    Ok(scale * r.value)
}

/// Power-law asymptote `-(α!/π) sin(απ/2) p^{-α-1}`; identically zero for
/// integer α/2.
pub fn asymptotic_element(order: &FracOrder, p: i64) -> Result<f64> {
    if p < 1 {
        return Err(Error::Domain("asymptotic element needs p >= 1"));
    }
    Ok(-order.tail_amplitude() * libm::pow(p as f64, -order.alpha() - 1.0))
}

/// Cyclic sum `(1/N) Σ_l cos(κ_l p) (2|sin(κ_l/2)|)^α` with `κ_l = 2πl/N`.
///
/// `p` is reduced modulo `n`.
pub fn element_periodic_spectral(order: &FracOrder, n: usize, p: usize) -> Result<f64> {
    let spectrum = SpectralWeights::new(order, n)?;
    Ok(spectrum.element(p))
}

pub(crate) struct SpectralWeights {
    n: usize,
    weights: Vec<f64>,
    cos: Vec<f64>,
    sin: Vec<f64>,
    norm: f64,
}

impl SpectralWeights {
    pub(crate) fn new(order: &FracOrder, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("chain needs at least one particle"));
        }
        let alpha = order.alpha();
        let nf = n as f64;
        let weights: Vec<f64> = (0..n)
            .map(|l| {
                let s = libm::fabs(sin_pi(l as f64 / nf));
                if s == 0.0 {
                    0.0
                } else {
                    libm::pow(2.0 * s, alpha)
                }
            })
            .collect();
        let cos = (0..n).map(|j| cos_pi(2.0 * j as f64 / nf)).collect();
        let sin = (0..n).map(|j| sin_pi(2.0 * j as f64 / nf)).collect();
        let norm = weights.iter().sum::<f64>() / nf;
        Ok(Self {
            n,
            weights,
            cos,
            sin,
            norm,
        })
    }

    pub(crate) fn element(&self, p: usize) -> f64 {
        let n = self.n;
        let p = p % n;
        let mut re = 0.0;
        let mut im = 0.0;
        for (l, w) in self.weights.iter().enumerate() {
            let j = (l * p) % n;
            re += w * self.cos[j];
            im += w * self.sin[j];
        }
        let nf = n as f64;
        assert!(
            libm::fabs(im / nf) <= 1e-12 * self.norm.max(f64::MIN_POSITIVE) + 1e-300,
            "spectral sum acquired an imaginary part {im:e}"
        );
        re / nf
    }
}

/// How the image series is closed beyond the directly summed images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageTail {
    /// Plain truncation; the image count is chosen from the integral bound
    /// `2 (α!/π)|sin(απ/2)| N^{-α-1} (M-1)^{-α} / α ≤ tol`.
    Truncate,
    /// Images beyond `M` are summed in closed form: the large-`q` expansion
    /// of `Γ(q-α/2)/Γ(q+α/2+1)` turns every power into a Hurwitz zeta.
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageSumConfig {
    pub tol: f64,
    pub tail: ImageTail,
    /// Largest number of infinite-chain elements that may be tabulated.
    pub max_terms: usize,
}

impl ImageSumConfig {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            tail: ImageTail::Asymptotic,
            max_terms: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageSumValue {
    pub value: f64,
    /// Images summed directly on each side (`|n| ≤ images`).
    pub images: usize,
    /// Bound on the neglected part of the series.
    pub tail_error: f64,
}

/// `f_N(p) = Σ_{n∈ℤ} f_∞(|p - nN|)` with the default configuration
/// (asymptotic tail, tolerance `tol`).
pub fn element_periodic_imagesum(order: &FracOrder, n: usize, p: usize, tol: f64) -> Result<f64> {
    element_periodic_imagesum_with(order, n, p, &ImageSumConfig::new(tol)).map(|v| v.value)
}

pub fn element_periodic_imagesum_with(
    order: &FracOrder,
    n: usize,
    p: usize,
    cfg: &ImageSumConfig,
) -> Result<ImageSumValue> {
    let summer = ImageSummer::new(order, n, cfg)?;
    summer.element(p)
}

const TAIL_TERMS: usize = 16;

/// Tabulated infinite-chain elements plus the tail model for one `(α, N)`.
pub(crate) struct ImageSummer {
    order: FracOrder,
    n: usize,
    images: usize,
    table: Vec<f64>,
    series: Option<GammaRatioSeries>,
    tail_bound: f64,
}

impl ImageSummer {
    pub(crate) fn new(order: &FracOrder, n: usize, cfg: &ImageSumConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("chain needs at least one particle"));
        }
        if !(cfg.tol > 0.0) {
            return Err(Error::InvalidParameter("image-sum tolerance must be positive"));
        }
        let alpha = order.alpha();
        let beta = alpha + 1.0;
        let amp = libm::fabs(order.tail_amplitude());
        let nf = n as f64;

        let (images, series, tail_bound) = if amp == 0.0 {
            // integer α/2: f_∞ vanishes beyond α/2
            (order.p0() as usize / n + 1, None, 0.0)
        } else {
            match cfg.tail {
                ImageTail::Truncate => {
                    let scale = 2.0 * amp * libm::pow(nf, -beta) / alpha;
                    let m = 2.0 + libm::ceil(libm::pow(scale / cfg.tol, 1.0 / alpha));
                    let bound_at = |m: f64| scale * libm::pow(m - 1.0, -alpha);
                    if !m.is_finite() || (m + 1.0) * nf > cfg.max_terms as f64 {
                        let m_max = (cfg.max_terms / n).saturating_sub(1).max(2) as f64;
                        return Err(Error::Convergence {
                            context: "truncated image series exceeds term budget",
                            estimate: bound_at(m_max),
                            tolerance: cfg.tol,
                        });
                    }
                    (m as usize, None, bound_at(m))
                }
                ImageTail::Asymptotic => {
                    let z_min = 30.0 + 3.0 * (order.half() + 1.0);
                    let m = libm::ceil(z_min / nf) as usize + 1;
                    let series = GammaRatioSeries::new(-order.half(), order.half() + 1.0, TAIL_TERMS);
                    (m, Some(series), 0.0)
                }
            }
        };

        let len = (images + 1) * n;
        if len > cfg.max_terms {
            return Err(Error::Convergence {
                context: "image table exceeds term budget",
                estimate: f64::INFINITY,
                tolerance: cfg.tol,
            });
        }
        let table = infinite_table(order, len);
        let summer = Self {
            order: *order,
            n,
            images,
            table,
            series,
            tail_bound,
        };
        if summer.series.is_some() {
            let worst = (0..n.min(2)).map(|p| summer.asymptotic_tail(p).1).fold(0.0, f64::max);
            if worst > cfg.tol {
                return Err(Error::Convergence {
                    context: "asymptotic image tail not accurate enough",
                    estimate: worst,
                    tolerance: cfg.tol,
                });
            }
        }
        Ok(summer)
    }

    pub(crate) fn element(&self, p: usize) -> Result<ImageSumValue> {
        let n = self.n;
        let p = p % n;
        // images ordered from the farthest inwards so small terms go first
        let mut direct = 0.0;
        for k in (1..=self.images).rev() {
            direct += self.table[k * n + p] + self.table[k * n - p];
        }
        direct += self.table[p];
        let (tail, tail_error) = match self.series {
            Some(_) => self.asymptotic_tail(p),
            None => (0.0, self.tail_bound),
        };
        Ok(ImageSumValue {
            value: direct + tail,
            images: self.images,
            tail_error,
        })
    }

    /// `Σ_{n>M} [f_∞(nN + p) + f_∞(nN - p)]` and an estimate of its error.
    fn asymptotic_tail(&self, p: usize) -> (f64, f64) {
        let series = self.series.as_ref().expect("asymptotic tail needs a series");
        let beta = self.order.alpha() + 1.0;
        let nf = self.n as f64;
        let shift = p as f64 / nf;
        let start = (self.images + 1) as f64;
        let amp = self.order.tail_amplitude();
        let mut total = 0.0;
        let mut last = 0.0;
        for (k, c) in series.coefficients().iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let s = beta + k as f64;
            let z = hurwitz_zeta(s, start + shift).unwrap_or(0.0) + hurwitz_zeta(s, start - shift).unwrap_or(0.0);
            let term = -amp * c * libm::pow(nf, -s) * z;
            total += term;
            if libm::fabs(*c) > 1e-300 {
                last = term;
            }
        }
        (total, libm::fabs(last))
    }
}

/// `f_∞(0..len)` from the diagonal element and the ratio
/// `f_∞(q+1) = f_∞(q) (q - α/2) / (q + α/2 + 1)`.
fn infinite_table(order: &FracOrder, len: usize) -> Vec<f64> {
    let h = order.half();
    let mut table = Vec::with_capacity(len);
    let mut v = element_infinite(order, 0);
    for q in 0..len {
        table.push(v);
        let qf = q as f64;
        v *= (qf - h) / (qf + h + 1.0);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FracOrder {
        FracOrder::new(a).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        libm::fabs(a - b) <= tol
    }

    #[test]
    fn integer_orders_reproduce_binomial_rows() {
        let two = order(2.0);
        assert_eq!(element_infinite(&two, 0), 2.0);
        assert_eq!(element_infinite(&two, 1), -1.0);
        assert_eq!(element_infinite(&two, -1), -1.0);
        assert_eq!(element_infinite(&two, 2), 0.0);
        let four = order(4.0);
        let row: Vec<f64> = (0..4).map(|p| element_infinite(&four, p)).collect();
        assert_eq!(row, [6.0, -4.0, 1.0, 0.0]);
    }

    #[test]
    fn quadrature_oracle_values() {
        // frozen from the Brillouin-zone integral: 2 (α=2, p=0), 4/π (α=1, p=0)
        let q = element_infinite_quadrature(&order(2.0), 0, 1e-12).unwrap();
        assert!(close(q, 2.0, 1e-11));
        let q = element_infinite_quadrature(&order(1.0), 0, 1e-12).unwrap();
        assert!(close(q, 4.0 / PI, 1e-11));
        let q = element_infinite_quadrature(&order(1.0), 1, 1e-12).unwrap();
        assert!(close(q, -4.0 / (3.0 * PI), 1e-11));
        let q = element_infinite_quadrature(&order(1.0), 2, 1e-12).unwrap();
        assert!(close(q, -4.0 / (15.0 * PI), 1e-11));
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for &a in &[0.5, 1.0, 1.5, 2.5, 3.7] {
            let o = order(a);
            for p in [0, 1, 2, 5, 11] {
                let q = element_infinite_quadrature(&o, p, 1e-12).unwrap();
                assert!(close(element_infinite(&o, p), q, 1e-10), "alpha {a}, p {p}");
            }
        }
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        assert!(element_infinite_quadrature(&order(1.0), 0, 0.0).is_err());
    }

    #[test]
    fn asymptotics() {
        let one = order(1.0);
        assert!(close(asymptotic_element(&one, 3).unwrap(), -1.0 / (9.0 * PI), 1e-16));
        assert_eq!(asymptotic_element(&order(2.0), 10).unwrap(), 0.0);
        assert!(asymptotic_element(&one, 0).is_err());
        let o = order(1.3);
        let ratio = element_infinite(&o, 1000) / asymptotic_element(&o, 1000).unwrap();
        assert!(libm::fabs(ratio - 1.0) < 0.01);
    }

    #[test]
    fn two_particle_ring() {
        for &a in &[0.5, 1.0, 2.0, 3.0] {
            let o = order(a);
            let expected = libm::pow(2.0, a - 1.0);
            assert!(close(element_periodic_spectral(&o, 2, 0).unwrap(), expected, 1e-14));
            assert!(close(element_periodic_spectral(&o, 2, 1).unwrap(), -expected, 1e-14));
            let img0 = element_periodic_imagesum(&o, 2, 0, 1e-12).unwrap();
            assert!(close(img0, expected, 1e-10 * expected), "alpha {a}");
        }
        assert_eq!(element_periodic_imagesum(&order(2.0), 2, 1, 1e-12).unwrap(), -2.0);
    }

    #[test]
    fn three_particle_classical_ring() {
        assert!(close(
            element_periodic_spectral(&order(2.0), 3, 1).unwrap(),
            -1.0,
            1e-14
        ));
    }

    #[test]
    fn integer_locality_on_large_ring() {
        let two = order(2.0);
        for p in 0..8 {
            let expected = match p {
                0 => 2.0,
                1 | 7 => -1.0,
                _ => 0.0,
            };
            assert!(close(element_periodic_spectral(&two, 8, p).unwrap(), expected, 1e-14));
        }
    }

    #[test]
    fn spectral_and_image_routes_agree() {
        for &(a, n, p) in &[(1.5, 16, 3), (0.5, 32, 7), (3.7, 5, 2), (0.5, 1, 0), (2.5, 64, 40)] {
            let o = order(a);
            let s = element_periodic_spectral(&o, n, p).unwrap();
            let i = element_periodic_imagesum(&o, n, p, 1e-12).unwrap();
            assert!(
                close(s, i, (1e-8 * s.abs()).max(1e-10)),
                "alpha {a} N {n} p {p}: {s} vs {i}"
            );
        }
    }

    #[test]
    fn truncated_images_converge_for_large_alpha_and_report_budget_for_small() {
        let o = order(3.7);
        let cfg = ImageSumConfig {
            tail: ImageTail::Truncate,
            ..ImageSumConfig::new(1e-10)
        };
        let v = element_periodic_imagesum_with(&o, 8, 3, &cfg).unwrap();
        let s = element_periodic_spectral(&o, 8, 3).unwrap();
        assert!(close(v.value, s, 1e-10));
        assert!(v.tail_error <= 1e-10);

        let cfg = ImageSumConfig {
            tail: ImageTail::Truncate,
            ..ImageSumConfig::new(1e-12)
        };
        let err = element_periodic_imagesum_with(&order(0.5), 8, 3, &cfg).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn recursion_table_matches_closed_form() {
        let o = order(2.9);
        let t = infinite_table(&o, 200);
        for (q, v) in t.iter().enumerate() {
            let c = element_infinite(&o, q as i64);
            assert!(
                close(*v, c, 1e-13 * c.abs().max(1e-300)),
                "q {q}: {v} vs {c} rel {:e}",
                (v - c).abs() / c.abs()
            );
        }
    }
}
