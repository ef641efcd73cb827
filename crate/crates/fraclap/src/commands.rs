use rayon::prelude::*;

use fraclap_core::chain::{build_symbol_row, laplacian_matrix, normalized_frequency, ChainSpec, RowMethod};
use fraclap_core::continuum::{
    convergence_study, periodic_kernel_regularized, periodic_kernel_zeta, riesz_kernel_infinite,
    riesz_kernel_regularized, KernelSpec,
};
use fraclap_core::FracOrder;

use crate::cli::{ConvergeArgs, DispersionArgs, KernelArgs, MatrixArgs, MethodArg};
use crate::error::{CliError, CliResult};
use crate::grid::parse_grid;
use crate::output::{Cell, Table};

/// Distance from a lattice point, in units of the period, below which a
/// grid point is treated as sitting on it.
const LATTICE_TOL: f64 = 1e-12;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn grid(name: &str, spec: &str) -> CliResult<Vec<f64>> {
    parse_grid(spec).map_err(|e| usage(format!("--{name}: {e}")))
}

fn orders(spec: &str) -> CliResult<Vec<FracOrder>> {
    grid("alpha", spec)?
        .into_iter()
        .map(|a| FracOrder::new(a).map_err(CliError::from))
        .collect()
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

pub fn matrix(args: &MatrixArgs) -> CliResult<Table> {
    let order = FracOrder::new(args.alpha)?;
    positive("tol", args.tol)?;
    let spec = ChainSpec::finite(args.n, order, args.omega2, 1.0, 1.0)?;
    let methods: &[RowMethod] = match args.method {
        MethodArg::Spectral => &[RowMethod::Spectral],
        MethodArg::Imagesum => &[RowMethod::ImageSum],
        MethodArg::Both => &[RowMethod::Spectral, RowMethod::ImageSum],
    };
    let rows = methods
        .par_iter()
        .map(|&m| build_symbol_row(&spec, m, args.tol))
        .collect::<Result<Vec<_>, _>>()?;

    let method_name = match args.method {
        MethodArg::Spectral => "spectral",
        MethodArg::Imagesum => "imagesum",
        MethodArg::Both => "both",
    };
    let n = args.n;
    let mut table = if args.full {
        let m = laplacian_matrix(&spec, &rows[0])?;
        let mut t = Table::new(std::iter::once("row".to_owned()).chain((0..n).map(|q| format!("col{q}"))));
        for p in 0..n {
            let mut cells: Vec<Cell> = vec![p.into()];
            cells.extend(m.row(p).iter().map(|&v| Cell::from(v)));
            t.push(cells);
        }
        t
    } else if rows.len() == 2 {
        let mut t = Table::new(["p", "spectral", "imagesum", "abs_diff"]);
        for p in 0..n {
            let (s, i) = (rows[0].values()[p], rows[1].values()[p]);
            t.push(vec![p.into(), s.into(), i.into(), (s - i).abs().into()]);
        }
        t
    } else {
        let mut t = Table::new(["p", "value"]);
        for (p, v) in rows[0].values().iter().enumerate() {
            t.push(vec![p.into(), (*v).into()]);
        }
        t
    };
    table
        .meta("command", "matrix")
        .meta("alpha", args.alpha)
        .meta("n", n)
        .meta("method", method_name)
        .meta("tol", args.tol)
        .meta("omega2", args.omega2);
    if args.full {
        table.meta("entries", "-omega2 * f_N((row - col) mod N)");
    }
    for r in &rows {
        let key = match r.method() {
            RowMethod::Spectral => "row_sum_spectral",
            RowMethod::ImageSum => "row_sum_imagesum",
        };
        table.meta(key, r.row_sum());
    }
    if rows.len() == 2 {
        let diff = rows[0]
            .values()
            .iter()
            .zip(rows[1].values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        table.meta("max_abs_diff", diff);
    }
    Ok(table)
}

pub fn dispersion(args: &DispersionArgs) -> CliResult<Table> {
    let orders = orders(&args.alpha)?;
    let kappas = grid("kappa-grid", &args.kappa_grid)?;
    let cells: Vec<Vec<Cell>> = orders
        .par_iter()
        .flat_map_iter(|o| {
            kappas.iter().map(move |&k| {
                let w = normalized_frequency(o, k);
                // ω²/Ω² = (2 |sin κ/2|)^α = (2 ω/ω₀)²
                vec![o.alpha().into(), k.into(), (4.0 * w * w).into(), w.into()]
            })
        })
        .collect();
    let mut t = Table::new(["alpha", "kappa", "omega2_over_Omega2", "omega_over_omega0"]);
    t.meta("command", "dispersion")
        .meta("alpha_grid", args.alpha.as_str())
        .meta("kappa_grid", args.kappa_grid.as_str())
        .meta("normalization", "omega0 = 2 Omega");
    for c in cells {
        t.push(c);
    }
    Ok(t)
}

fn on_lattice(x: f64, period: Option<f64>) -> bool {
    match period {
        Some(len) => {
            let xi = x / len;
            (xi - xi.round()).abs() <= LATTICE_TOL
        }
        None => x == 0.0,
    }
}

pub fn kernel(args: &KernelArgs) -> CliResult<Table> {
    let orders = orders(&args.alpha)?;
    let xs = grid("x-grid", &args.x_grid)?;
    let period = if args.infinite {
        None
    } else {
        positive("length", args.length)?;
        Some(args.length)
    };
    if let Some(eps) = args.eps {
        positive("eps", eps)?;
    } else if let Some(&x) = xs.iter().find(|&&x| on_lattice(x, period)) {
        return Err(usage(format!(
            "x = {x} is a lattice point where the kernel is hypersingular; pass --eps to use the regularized kernel"
        )));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(usage("--x-grid values must be finite"));
    }

    let values = orders
        .par_iter()
        .flat_map_iter(|o| xs.iter().map(move |&x| (o, x)))
        .map(|(o, x)| -> CliResult<Vec<Cell>> {
            let k = match (period, args.eps) {
                (Some(len), None) => periodic_kernel_zeta(&KernelSpec::periodic(*o, len)?, x)?,
                (Some(len), Some(eps)) => {
                    let spec = KernelSpec::periodic(*o, len)?.with_eps(eps)?;
                    periodic_kernel_regularized(&spec, x, args.images)?
                }
                (None, None) => riesz_kernel_infinite(o, x)?,
                (None, Some(eps)) => riesz_kernel_regularized(o, x, eps)?,
            };
            Ok(vec![o.alpha().into(), x.into(), k.into()])
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut t = Table::new(["alpha", "x", "kernel"]);
    t.meta("command", "kernel");
    match period {
        Some(len) => t.meta("domain", "periodic").meta("length", len),
        None => t.meta("domain", "infinite"),
    };
    t.meta("alpha_grid", args.alpha.as_str())
        .meta("x_grid", args.x_grid.as_str());
    match args.eps {
        Some(eps) => {
            t.meta("representation", "regularized").meta("eps", eps);
            if period.is_some() {
                t.meta("images", args.images);
            }
        }
        None => {
            t.meta("representation", "pointwise");
        }
    }
    t.meta("prefactor", "kernel excludes rho0 * A_alpha");
    for v in values {
        t.push(v);
    }
    Ok(t)
}

pub fn converge(args: &ConvergeArgs) -> CliResult<Table> {
    let order = FracOrder::new(args.alpha)?;
    let hs = grid("h-grid", &args.h_grid)?;
    let report = convergence_study(&order, args.length, args.rho0, args.a_alpha, args.x, &hs)?;
    let mut t = Table::new(["h", "n", "p", "x", "discrete", "continuum", "abs_error"]);
    t.meta("command", "converge")
        .meta("alpha", args.alpha)
        .meta("length", args.length)
        .meta("x", args.x)
        .meta("rho0", args.rho0)
        .meta("a_alpha", args.a_alpha)
        .meta("h_grid", args.h_grid.as_str())
        .meta("monotone", report.is_monotone());
    match report.fitted_order {
        Some(s) => t.meta("fitted_order", s),
        None => t.meta("fitted_order", "none"),
    };
    for r in &report.rows {
        t.push(vec![
            r.h.into(),
            r.n.into(),
            r.p.into(),
            r.x.into(),
            r.discrete.into(),
            r.continuum.into(),
            r.abs_error.into(),
        ]);
    }
    Ok(t)
}
