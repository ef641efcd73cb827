//! Identity and oracle suite behind `fraclap verify`.
//!
//! Each check reduces to one residual compared against a fixed tolerance.
//! Grids are deterministic so reports are byte-stable.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use fraclap_core::chain::{
    asymptotic_element, build_symbol_row, element_infinite, element_infinite_quadrature, element_periodic_spectral,
    laplacian_matrix, normalized_frequency, ChainSpec, RowMethod,
};
use fraclap_core::continuum::{
    convergence_study, extrapolated_eigenvalue, integer_order_check, periodic_kernel_imagesum, periodic_kernel_zeta,
    riesz_kernel_infinite, KernelSpec, DEFAULT_EPS_LADDER,
};
use fraclap_core::specfun::{centered_binomial, gamma_value, generalized_binomial, ln_gamma_pos};
use fraclap_core::{FracOrder, Result};

use crate::output::Table;

const ALPHAS: [f64; 7] = [0.5, 1.0, 1.5, 2.0, 2.5, PI, 3.7];

/// Evaluation context. `perturb` scales every computed quantity by
/// `1 + perturb`, for exercising the failure path.
#[derive(Debug, Clone, Copy, Default)]
pub struct Context {
    pub perturb: f64,
}

impl Context {
    fn p(&self, v: f64) -> f64 {
        v * (1.0 + self.perturb)
    }

    /// Residuals that are not themselves computed values are shifted by
    /// `|perturb|` instead.
    fn shift(&self, residual: f64) -> f64 {
        residual + self.perturb.abs()
    }

    fn rel(&self, computed: f64, exact: f64) -> f64 {
        let c = self.p(computed);
        if exact == 0.0 {
            c.abs()
        } else {
            (c - exact).abs() / exact.abs()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

type CheckFn = fn(&Context) -> Result<(f64, String)>;

pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub description: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, ctx: &Context) -> CheckResult {
        let (residual, detail) = match (self.run)(ctx) {
            Ok(v) => v,
            Err(e) => (f64::INFINITY, format!("error: {e}")),
        };
        CheckResult {
            name: self.name,
            residual,
            tolerance: self.tolerance,
            pass: residual <= self.tolerance,
            detail,
        }
    }
}

fn order(a: f64) -> FracOrder {
    FracOrder::new(a).expect("fixed grid orders are valid")
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "euler-reflection",
            tolerance: 1e-12,
            description: "Gamma(mu) Gamma(1 - mu) = pi / sin(pi mu)",
            run: euler_reflection,
        },
        Check {
            name: "duplication",
            tolerance: 1e-12,
            description: "alpha! / (alpha/2)! = 2^alpha ((alpha - 1)/2)! / sqrt(pi)",
            run: duplication,
        },
        Check {
            name: "gamma-recursion",
            tolerance: 1e-11,
            description: "x Gamma(x) = Gamma(x + 1) for negative non-integer x",
            run: gamma_recursion,
        },
        Check {
            name: "binomial-recursion",
            tolerance: 1e-12,
            description: "ratio of consecutive centered binomials",
            run: binomial_recursion,
        },
        Check {
            name: "binomial-addition",
            tolerance: 1e-12,
            description: "C(alpha, p) + C(alpha, p + 1) = centered binomial of order alpha + 1",
            run: binomial_addition,
        },
        Check {
            name: "classical-limit",
            tolerance: 1e-12,
            description: "alpha = 2 reproduces the nearest-neighbour chain",
            run: classical_limit,
        },
        Check {
            name: "quadrature-oracle",
            tolerance: 1e-10,
            description: "closed-form infinite-chain elements against Brillouin-zone quadrature",
            run: quadrature_oracle,
        },
        Check {
            name: "method-agreement",
            tolerance: 1.0,
            description: "spectral sum against image sum, in units of max(1e-8 |v|, 1e-10)",
            run: method_agreement,
        },
        Check {
            name: "zero-mode",
            tolerance: 1e-10,
            description: "rows sum to zero, one zero eigenvalue, the rest negative",
            run: zero_mode,
        },
        Check {
            name: "two-site-ring",
            tolerance: 1e-14,
            description: "N = 2 row is (2^(alpha-1), -2^(alpha-1))",
            run: two_site_ring,
        },
        Check {
            name: "power-law-tail",
            tolerance: 1e-2,
            description: "f(p) approaches -(alpha!/pi) sin(alpha pi/2) p^(-alpha-1) at p = 1000",
            run: power_law_tail,
        },
        Check {
            name: "kernel-closed-value",
            tolerance: 1e-8,
            description: "periodic kernel at alpha = 1, L = 1, x = 1/2 equals pi",
            run: kernel_closed_value,
        },
        Check {
            name: "kernel-routes",
            tolerance: 1e-8,
            description: "Hurwitz zeta form of the periodic kernel against its image sum",
            run: kernel_routes,
        },
        Check {
            name: "integer-order",
            tolerance: 1e-8,
            description: "even-integer regularized kernels are Lorentzian derivatives",
            run: integer_order,
        },
        Check {
            name: "spectral-law",
            tolerance: 1e-2,
            description: "eps-extrapolated convolution eigenvalues match -|k_l|^alpha",
            run: spectral_law,
        },
        Check {
            name: "infinite-space-slope",
            tolerance: 0.2,
            description: "K_L - K_inf decays like L^(-alpha-1)",
            run: infinite_space_slope,
        },
        Check {
            name: "continuum-limit",
            tolerance: 0.1,
            description: "chain converges to the string kernel with monotone error, final/first error",
            run: continuum_limit,
        },
        Check {
            name: "dispersion-peak",
            tolerance: 1e-14,
            description: "normalized frequency at kappa = pi equals 0.5 * 2^(alpha/2)",
            run: dispersion_peak,
        },
        Check {
            name: "kernel-sign",
            tolerance: 0.0,
            description: "periodic kernel positive for alpha < 2, zero at 2, negative above",
            run: kernel_sign,
        },
    ]
}

pub fn check_names() -> Vec<&'static str> {
    checks().iter().map(|c| c.name).collect()
}

/// Runs the selected checks (all when `only` is empty) in registry order.
pub fn run(only: &[String], ctx: &Context) -> std::result::Result<Vec<CheckResult>, String> {
    let all = checks();
    for name in only {
        if !all.iter().any(|c| c.name == name) {
            return Err(format!("unknown check '{name}'; known: {}", check_names().join(", ")));
        }
    }
    let selected: Vec<&Check> = all
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|n| n == c.name))
        .collect();
    Ok(selected.par_iter().map(|c| c.run(ctx)).collect())
}

pub fn report(results: &[CheckResult], ctx: &Context) -> Table {
    let failed = results.iter().filter(|r| !r.pass).count();
    let mut t = Table::new(["check", "residual", "tolerance", "pass", "detail"]);
    t.meta("command", "verify")
        .meta("checks", results.len())
        .meta("failed", failed)
        .meta("perturb", ctx.perturb);
    for r in results {
        t.push(vec![
            r.name.into(),
            r.residual.into(),
            r.tolerance.into(),
            r.pass.into(),
            r.detail.clone().into(),
        ]);
    }
    t
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
}

fn euler_reflection(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for mu in grid(1e-6, 1.0 - 1e-6, 997) {
        let lhs = gamma_value(mu)? * gamma_value(1.0 - mu)?;
        // 1 - μ is exact for μ ≥ ½, so sin(π min(μ, 1-μ)) keeps full precision
        worst = worst.max(ctx.rel(lhs, PI / (PI * mu.min(1.0 - mu)).sin()));
    }
    Ok((worst, "997 points in (0, 1)".into()))
}

fn duplication(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in grid(1e-6, 30.0, 997) {
        let lhs = ln_gamma_pos(a + 1.0) - ln_gamma_pos(a / 2.0 + 1.0);
        let rhs = a * 2f64.ln() + ln_gamma_pos((a + 1.0) / 2.0) - 0.5 * PI.ln();
        worst = worst.max(ctx.rel((lhs - rhs).exp(), 1.0));
    }
    Ok((worst, "997 orders in (0, 30)".into()))
}

fn gamma_recursion(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for x in grid(-20.0, 0.0, 1000) {
        if (x - x.round()).abs() < 1e-3 {
            continue;
        }
        worst = worst.max(ctx.rel(gamma_value(x)? * x, gamma_value(x + 1.0)?));
    }
    Ok((worst, "x in (-20, 0)".into()))
}

fn binomial_grid() -> impl Iterator<Item = f64> {
    grid(0.05, 8.0, 40)
}

fn binomial_recursion(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in binomial_grid() {
        let o = order(a);
        let h = a / 2.0;
        for p in -50i64..=50 {
            let c = generalized_binomial(&o, p).value();
            let next = generalized_binomial(&o, p + 1).value();
            let pf = p as f64;
            worst = worst.max(ctx.rel(c * (h - pf) / (h + pf + 1.0), next));
        }
    }
    Ok((worst, "40 orders, |p| <= 50".into()))
}

fn binomial_addition(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in binomial_grid() {
        let o = order(a);
        let up = order(a + 1.0);
        for p in -50i64..=50 {
            let sum = generalized_binomial(&o, p).value() + generalized_binomial(&o, p + 1).value();
            worst = worst.max(ctx.rel(sum, centered_binomial(&up, 2 * p + 1).value()));
        }
    }
    Ok((worst, "40 orders, |p| <= 50".into()))
}

fn classical_limit(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for n in [3usize, 4, 8, 17, 64] {
        let spec = ChainSpec::unit(n, order(2.0))?;
        for method in [RowMethod::Spectral, RowMethod::ImageSum] {
            let row = build_symbol_row(&spec, method, 1e-12)?;
            for (p, v) in row.values().iter().enumerate() {
                let e = match p {
                    0 => 2.0,
                    1 => -1.0,
                    _ if p == n - 1 => -1.0,
                    _ => 0.0,
                };
                worst = worst.max((ctx.p(*v) - e).abs());
            }
        }
    }
    Ok((worst, "N in {3, 4, 8, 17, 64}, both methods".into()))
}

fn quadrature_oracle(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in ALPHAS {
        let o = order(a);
        for p in 0..=20 {
            let q = element_infinite_quadrature(&o, p, 1e-12)?;
            worst = worst.max((ctx.p(element_infinite(&o, p)) - q).abs());
        }
    }
    Ok((worst, "absolute, p <= 20".into()))
}

fn method_agreement(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in ALPHAS {
        for n in [1usize, 2, 3, 8, 17, 64] {
            let spec = ChainSpec::unit(n, order(a))?;
            let s = build_symbol_row(&spec, RowMethod::Spectral, 1e-12)?;
            let i = build_symbol_row(&spec, RowMethod::ImageSum, 1e-12)?;
            for (x, y) in s.values().iter().zip(i.values()) {
                worst = worst.max((ctx.p(*x) - y).abs() / (1e-8 * x.abs()).max(1e-10));
            }
        }
    }
    Ok((worst, "N in {1, 2, 3, 8, 17, 64}".into()))
}

fn zero_mode(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for a in ALPHAS {
        for n in [1usize, 2, 3, 8, 17, 64] {
            let spec = ChainSpec::unit(n, order(a))?;
            let row = build_symbol_row(&spec, RowMethod::Spectral, 1e-12)?;
            let sum: f64 = row.values().iter().map(|v| ctx.p(*v)).sum::<f64>();
            worst = worst.max(sum.abs());
            let m = laplacian_matrix(&spec, &row)?;
            let eig = SymmetricEigen::new(DMatrix::from_row_slice(n, n, m.as_slice())).eigenvalues;
            let zeros = eig.iter().filter(|v| v.abs() <= 1e-10).count();
            let negative = eig.iter().filter(|v| **v < -1e-10).count();
            if zeros != 1 || negative != n - 1 {
                bad.push(format!("alpha {a} N {n}"));
            }
        }
    }
    if !bad.is_empty() {
        return Ok((
            f64::INFINITY,
            format!("spectrum has wrong signature: {}", bad.join("; ")),
        ));
    }
    Ok((worst, "max |row sum|; spectra checked with nalgebra".into()))
}

fn two_site_ring(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in ALPHAS {
        let o = order(a);
        let e = 2f64.powf(a - 1.0);
        worst = worst.max(ctx.rel(element_periodic_spectral(&o, 2, 0)?, e));
        worst = worst.max(ctx.rel(element_periodic_spectral(&o, 2, 1)?, -e));
    }
    Ok((worst, "relative".into()))
}

fn power_law_tail(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 1.5, 2.5, PI, 3.7] {
        let o = order(a);
        worst = worst.max(ctx.rel(element_infinite(&o, 1000), asymptotic_element(&o, 1000)?));
    }
    Ok((worst, "relative, p = 1000".into()))
}

fn kernel_closed_value(ctx: &Context) -> Result<(f64, String)> {
    let spec = KernelSpec::periodic(order(1.0), 1.0)?;
    let z = ctx.rel(periodic_kernel_zeta(&spec, 0.5)?, PI);
    let m = ctx.rel(periodic_kernel_imagesum(&spec, 0.5, 1e-10)?, PI);
    Ok((z.max(m), format!("zeta {z:.2e}, image sum {m:.2e}")))
}

fn kernel_routes(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for a in [0.3, 0.5, 1.0, 1.5, 2.5, PI, 3.7] {
        for len in [0.5, 1.0, 3.0] {
            let spec = KernelSpec::periodic(order(a), len)?;
            for xi in grid(0.02, 0.98, 12) {
                let z = periodic_kernel_zeta(&spec, xi * len)?;
                let m = periodic_kernel_imagesum(&spec, xi * len, 1e-13)?;
                worst = worst.max((ctx.p(z) - m).abs() / z.abs().max(1e-4));
            }
        }
    }
    Ok((worst, "relative to max(|K|, 1e-4)".into()))
}

fn integer_order(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for m in 0..4 {
        for length in [None, Some(1.0)] {
            let r = integer_order_check(m, length, 1e-2)?;
            worst = worst.max(ctx.shift(r.max_rel_error));
        }
    }
    Ok((worst, "alpha = 0, 2, 4, 6; infinite line and L = 1; eps = 1e-2".into()))
}

fn spectral_law(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    let mut zero: f64 = 0.0;
    for a in [1.0, 1.5, 2.0] {
        let spec = KernelSpec::periodic(order(a), 1.0)?;
        for l in 0..=3 {
            let ext = extrapolated_eigenvalue(&spec, l, &DEFAULT_EPS_LADDER, 1e-8)?;
            if l == 0 {
                zero = zero.max(ext.rungs.iter().map(|r| r.1.abs()).fold(0.0, f64::max));
            } else {
                worst = worst.max(ctx.rel(ext.extrapolated, ext.exact));
            }
        }
    }
    // the l = 0 mode is held to the quadrature tolerance, in tolerance units
    let scaled_zero = zero / 1e-8 * 1e-2;
    Ok((
        worst.max(scaled_zero),
        format!("max rel deviation {worst:.2e}, |l = 0| {zero:.2e}"),
    ))
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn infinite_space_slope(ctx: &Context) -> Result<(f64, String)> {
    let x = 0.5;
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for a in [0.5, 1.0, 1.5] {
        let o = order(a);
        let mut pts = Vec::new();
        for len in [2.0, 4.0, 8.0, 16.0, 32.0] {
            let d = periodic_kernel_zeta(&KernelSpec::periodic(o, len)?, x)? - riesz_kernel_infinite(&o, x)?;
            pts.push((f64::ln(len), ctx.p(d.abs()).ln()));
        }
        let s = ctx.p(slope(&pts));
        worst = worst.max((s + a + 1.0).abs());
        parts.push(format!("alpha {a}: {s:.4}"));
    }
    Ok((worst, format!("|slope + alpha + 1|; {}", parts.join(", "))))
}

fn continuum_limit(ctx: &Context) -> Result<(f64, String)> {
    let h: Vec<f64> = (3..=8).map(|k| 2f64.powi(-k)).collect();
    let r = convergence_study(&order(1.0), 1.0, 1.0, 1.0, 0.5, &h)?;
    let first = r.rows[0].abs_error;
    let last = ctx.p(r.rows[h.len() - 1].abs_error);
    if !r.is_monotone() {
        return Ok((f64::INFINITY, "errors not monotone".into()));
    }
    Ok((
        last / first,
        format!("alpha = 1, h = 2^-3..2^-8, first {first:.3e}, last {last:.3e}"),
    ))
}

fn dispersion_peak(ctx: &Context) -> Result<(f64, String)> {
    let mut worst: f64 = 0.0;
    for i in 1..=80 {
        let a = 0.05 * i as f64;
        worst = worst.max(ctx.rel(normalized_frequency(&order(a), PI), 0.5 * 2f64.powf(a / 2.0)));
    }
    Ok((worst, "alpha = 0.05..4".into()))
}

fn kernel_sign(ctx: &Context) -> Result<(f64, String)> {
    let mut bad = 0usize;
    for i in 1..40 {
        let a = 0.1 * i as f64;
        let spec = KernelSpec::periodic(order(a), 1.0)?;
        for j in 1..20 {
            let v = ctx.p(periodic_kernel_zeta(&spec, 0.05 * j as f64)?);
            let ok = if (a - 2.0).abs() < 1e-9 {
                v == 0.0
            } else if a < 2.0 {
                v > 0.0
            } else {
                v < 0.0
            };
            bad += usize::from(!ok);
        }
    }
    Ok((bad as f64, "count of sign violations".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names = check_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), checks().len());
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert!(run(&["nope".into()], &Context::default()).is_err());
    }

    #[test]
    fn perturbation_breaks_identities() {
        let only = vec!["euler-reflection".to_owned(), "duplication".to_owned()];
        let clean = run(&only, &Context::default()).unwrap();
        assert!(clean.iter().all(|r| r.pass), "{clean:?}");
        let dirty = run(&only, &Context { perturb: 1e-6 }).unwrap();
        assert!(dirty.iter().all(|r| !r.pass));
    }
}
