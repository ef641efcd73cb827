//! Hurwitz zeta functions for real arguments.

use crate::error::{Error, Result};
use crate::specfun::BERNOULLI;

/// Hurwitz zeta `ζ(β, x) = Σ_{n≥0} (x+n)^{-β}` for `β > 1`, `x > 0`.
///
/// Terms are summed directly until the shifted argument `w` exceeds
/// `12 + β`; the remainder `ζ(β, w)` comes from the Euler–Maclaurin formula
/// (integral, half end term and Bernoulli corrections), truncated once the
/// corrections drop below 1e-17 of the running total.
pub fn hurwitz_zeta(beta: f64, x: f64) -> Result<f64> {
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::Domain("hurwitz_zeta requires beta > 1"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("hurwitz_zeta requires x > 0"));
    }
    let w_min = 12.0 + beta;
    let mut direct = 0.0;
    let mut w = x;
    while w < w_min {
        direct += libm::pow(w, -beta);
        w += 1.0;
    }
    let w_pow = libm::pow(w, -beta);
    let mut tail = w * w_pow / (beta - 1.0) + 0.5 * w_pow;
    // B_{2k}/(2k)! (β)_{2k-1} w^{1-β-2k}
    let mut factor = beta / 2.0;
    let mut power = w_pow / w;
    let inv_w2 = 1.0 / (w * w);
    for k in 1..=15 {
        let term = BERNOULLI[2 * k] * factor * power;
        tail += term;
        if libm::fabs(term) < 1e-17 * libm::fabs(direct + tail) {
            break;
        }
        let kf = k as f64;
        factor *= (beta + 2.0 * kf - 1.0) * (beta + 2.0 * kf) / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
        power *= inv_w2;
    }
    Ok(direct + tail)
}

/// Modified Hurwitz zeta `ζ̃(β, x) = Σ_{n≥0} |x+n|^{-β}` for `β > 1` and
/// `x ∈ (-1, 1]`, `x ≠ 0`.
pub fn hurwitz_zeta_abs(beta: f64, x: f64) -> Result<f64> {
    if !(x > -1.0 && x <= 1.0) || x == 0.0 {
        return Err(Error::Domain("hurwitz_zeta_abs requires x in (-1, 1] without 0"));
    }
    if x > 0.0 {
        hurwitz_zeta(beta, x)
    } else {
        Ok(libm::pow(-x, -beta) + hurwitz_zeta(beta, 1.0 + x)?)
    }
}
