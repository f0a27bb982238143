use std::fmt::Write;

use prabhakar::analysis::{
    classify as classify_params, series_derivative_limit, series_kernel_limit, sonine_check_laplace,
    sonine_check_time,
};
use prabhakar::operators::{
    kochubei_D, prabhakar_derivative_caputo, prabhakar_derivative_rl, prabhakar_integral, DerivativeSource,
    KernelSpec,
};
use prabhakar::relaxation::{
    solve_laplace, solve_series, validate_relaxation, RelaxationProblem, RelaxationSolution, SERIES_TERMS,
};
use prabhakar::special::{prabhakar_e_with, PrabhakarKernel, SeriesConfig};
use prabhakar::transforms::{kernel_hat_derivative, kernel_hat_integral, InversionConfig};
use prabhakar::{Error, GridFunction, MaskedGrid, PrabhakarParams};

use crate::config::RunConfig;
use crate::table::{format_value, read_grid, Table};
use crate::{CliError, EvalKind, InputArgs, KernelChoice, LimitKind, OperatorKind, RelaxMethod, TestFunction};

fn series_config(cfg: &RunConfig) -> SeriesConfig {
    SeriesConfig {
        tol: cfg.tol,
        ..SeriesConfig::default()
    }
}

fn nodes(cfg: &RunConfig) -> impl Iterator<Item = f64> + '_ {
    (0..=cfg.n).map(move |j| cfg.t_max * j as f64 / cfg.n as f64)
}

fn check_grid(cfg: &RunConfig) -> Result<(), CliError> {
    if !(cfg.t_max > 0.0 && cfg.t_max.is_finite()) || cfg.n < 2 {
        return Err(CliError::Usage(format!(
            "need tmax > 0 and n >= 2, got tmax={} n={}",
            cfg.t_max, cfg.n
        )));
    }
    Ok(())
}

fn kernel(p: &PrabhakarParams, of: KernelChoice) -> Result<PrabhakarKernel, CliError> {
    Ok(match of {
        KernelChoice::Integral => PrabhakarKernel::integral(p),
        KernelChoice::Derivative => PrabhakarKernel::derivative(p)?,
    })
}

pub fn eval(cfg: &RunConfig, kind: EvalKind, z: Option<f64>, of: KernelChoice) -> Result<Table, CliError> {
    let p = cfg.params()?;
    match kind {
        EvalKind::Function => {
            let mut table = Table::new(&["z", "value"]);
            let args: Vec<f64> = match z {
                Some(z) => vec![z],
                None => {
                    check_grid(cfg)?;
                    nodes(cfg).collect()
                }
            };
            for z in args {
                let (v, _) = prabhakar_e_with(&series_config(cfg), p.alpha, p.beta, p.gamma, z)?;
                table.push(vec![z, v]);
            }
            Ok(table)
        }
        EvalKind::Kernel => {
            check_grid(cfg)?;
            let k = kernel(&p, of)?.with_series(series_config(cfg));
            let mut table = Table::new(&["t", "value"]);
            for t in nodes(cfg).skip(1) {
                table.push(vec![t, k.value(t)?]);
            }
            Ok(table)
        }
        EvalKind::KernelHat => {
            check_grid(cfg)?;
            let mut table = Table::new(&["s", "value"]);
            for s in nodes(cfg).skip(1) {
                let v = match of {
                    KernelChoice::Integral => kernel_hat_integral(&p, s)?,
                    KernelChoice::Derivative => kernel_hat_derivative(&p, s)?,
                };
                table.push(vec![s, v]);
            }
            Ok(table)
        }
    }
}

impl TestFunction {
    fn value(self, t: f64) -> f64 {
        match self {
            TestFunction::Const => 1.0,
            TestFunction::Ramp => t,
            TestFunction::Square => t * t,
            TestFunction::Sin => t.sin(),
        }
    }

    /// `d^m/dt^m` of the function.
    fn derivative(self, m: u32, t: f64) -> f64 {
        match (self, m) {
            (_, 0) => self.value(t),
            (TestFunction::Const, _) => 0.0,
            (TestFunction::Ramp, 1) => 1.0,
            (TestFunction::Square, 1) => 2.0 * t,
            (TestFunction::Square, 2) => 2.0,
            (TestFunction::Ramp | TestFunction::Square, _) => 0.0,
            (TestFunction::Sin, m) => match m % 4 {
                1 => t.cos(),
                2 => -t.sin(),
                3 => -t.cos(),
                _ => t.sin(),
            },
        }
    }
}

fn sampled(cfg: &RunConfig, input: &InputArgs) -> Result<GridFunction, CliError> {
    match &input.input {
        Some(path) => read_grid(path),
        None => {
            check_grid(cfg)?;
            Ok(GridFunction::from_fn(cfg.t_max, cfg.n, |t| input.f.value(t))?)
        }
    }
}

fn masked_table(grid: &MaskedGrid) -> Table {
    let mut table = Table::new(&["t", "value", "valid"]);
    for ((t, v), ok) in grid.values.nodes().zip(grid.values.values()).zip(&grid.valid) {
        table.push(vec![t, *v, if *ok { 1.0 } else { 0.0 }]);
    }
    table
}

pub fn operator(cfg: &RunConfig, kind: OperatorKind, input: &InputArgs) -> Result<Table, CliError> {
    let p = cfg.params()?;
    let f = sampled(cfg, input)?;
    let out = match kind {
        OperatorKind::Integral => MaskedGrid::all_valid(prabhakar_integral(&p, &f)?),
        OperatorKind::DerivativeRl => prabhakar_derivative_rl(&p, &f)?,
        OperatorKind::DerivativeCaputo => {
            let tag = input.f;
            let m = p.m();
            let exact = move |t: f64| tag.derivative(m, t);
            let source = match input.input {
                Some(_) => DerivativeSource::Numerical,
                None => DerivativeSource::Pointwise(&exact),
            };
            prabhakar_derivative_caputo(&p, &f, source)?
        }
        OperatorKind::KochubeiD => {
            if !p.in_sonine_window() {
                return Err(Error::InvalidParameter {
                    name: "beta",
                    value: p.beta,
                    condition: "0<β<1",
                }
                .into());
            }
            kochubei_D(&KernelSpec::derivative_of(&p)?, &f)?
        }
    };
    Ok(masked_table(&out))
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn classify(cfg: &RunConfig) -> Result<String, CliError> {
    let p = cfg.params()?;
    let r = classify_params(&p);
    let w = &r.witnesses;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "parameters: alpha={} beta={} gamma={} lambda={}",
        p.alpha, p.beta, p.gamma, p.lambda
    );
    let _ = writeln!(s, "witnesses: beta-1-alpha*gamma={:e} beta-alpha*gamma={:e} -alpha*gamma={:e} 1-beta={:e}",
        w.beta_minus_one_minus_alpha_gamma, w.beta_minus_alpha_gamma, w.minus_alpha_gamma, w.one_minus_beta);
    let _ = writeln!(s, "sonine window        {:<5}  0<β<1", yes(r.sonine_window));
    match &r.limit_flags {
        Some(f) => {
            let names = [
                "k~(s) -> inf as s -> 0",
                "s k~(s) -> 0 as s -> 0",
                "k~(s) -> 0 as s -> inf",
                "s k~(s) -> inf as s -> inf",
            ];
            for (i, (flag, name)) in f.flags.iter().zip(names).enumerate() {
                let label = format!("limit ({})", ["i", "ii", "iii", "iv"][i]);
                let _ = writeln!(s, "{label:<20} {:<5}  {name}", yes(*flag));
            }
        }
        None => {
            let _ = writeln!(s, "limit flags          n/a    λ>0 puts a branch point on the positive axis");
        }
    }
    let _ = writeln!(s, "ineq1 (strict)       {:<5}  0<β<1, -αγ < 1-β < 1-αγ", yes(r.ineq1_strict));
    let _ = writeln!(s, "ineq1 (weak)         {:<5}  0<β<1, -αγ <= 1-β <= 1-αγ", yes(r.ineq1_weak));
    let _ = writeln!(s, "ineq2 (CM kernel)    {:<5}  λ<0, 0<α<=1, 0 < -αγ <= 1-β <= 1", yes(r.ineq2_cm_sufficient));
    let _ = writeln!(s, "gfc compatible       {:<5}  λ<0, 0<α<=1, γ<0, 0<β<1, -αγ <= 1-β <= 1", yes(r.gfc_compatible));
    if r.on_boundary {
        let _ = writeln!(s, "note: on the boundary of the first region; the strict and weak readings differ");
    }
    if r.degenerate {
        let _ = writeln!(s, "note: gamma=0 or lambda=0, the kernels reduce to power laws");
    }
    s.push('\n');
    let flags = r.limit_flags.map(|f| f.flags);
    let pairs: Vec<(&str, String)> = vec![
        ("sonine_window", yes(r.sonine_window).into()),
        ("limit_i", flags.map_or("na".into(), |f| yes(f[0]).into())),
        ("limit_ii", flags.map_or("na".into(), |f| yes(f[1]).into())),
        ("limit_iii", flags.map_or("na".into(), |f| yes(f[2]).into())),
        ("limit_iv", flags.map_or("na".into(), |f| yes(f[3]).into())),
        ("ineq1_strict", yes(r.ineq1_strict).into()),
        ("ineq1_weak", yes(r.ineq1_weak).into()),
        ("ineq2_cm_sufficient", yes(r.ineq2_cm_sufficient).into()),
        ("gfc_compatible", yes(r.gfc_compatible).into()),
        ("on_boundary", yes(r.on_boundary).into()),
        ("degenerate", yes(r.degenerate).into()),
        ("beta_minus_one_minus_alpha_gamma", format_value(w.beta_minus_one_minus_alpha_gamma)),
        ("beta_minus_alpha_gamma", format_value(w.beta_minus_alpha_gamma)),
        ("minus_alpha_gamma", format_value(w.minus_alpha_gamma)),
        ("one_minus_beta", format_value(w.one_minus_beta)),
    ];
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}={v}");
    }
    Ok(s)
}

fn cm_note(table: &mut Table, sol: &RelaxationSolution, required: bool) {
    let verdict = if sol.cm.passed { "passed" } else { "failed" };
    let role = if required { "required" } else { "informational" };
    table.note(format!(
        "cm={verdict} orders=0..{} violations={} ({role})",
        sol.cm.max_order_checked,
        sol.cm.violations.len()
    ));
}

pub fn relax(cfg: &RunConfig, xi: f64, y0: f64, method: RelaxMethod) -> Result<Table, CliError> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "xi",
            value: xi,
            condition: "ξ>0",
        }
        .into());
    }
    let p = cfg.params()?;
    let prob = RelaxationProblem::new(p, xi, y0, cfg.t_max, cfg.n)?;
    let required = classify_params(&p).gfc_compatible;
    let table = match method {
        RelaxMethod::Series => {
            let sol = solve_series(&prob, SERIES_TERMS)?;
            let mut table = Table::new(&["t", "y_series"]);
            for (t, y) in sol.y.nodes().zip(sol.y.values()) {
                table.push(vec![t, *y]);
            }
            horizon_note(&mut table, &sol);
            cm_note(&mut table, &sol, required);
            table
        }
        RelaxMethod::Laplace => {
            let sol = solve_laplace(&prob, &InversionConfig::default())?;
            let mut table = Table::new(&["t", "y_laplace"]);
            for (t, y) in sol.y.nodes().zip(sol.y.values()) {
                table.push(vec![t, *y]);
            }
            cm_note(&mut table, &sol, required);
            table
        }
        RelaxMethod::Both => {
            let series = validate_relaxation(&prob)?;
            let laplace = solve_laplace(&prob, &InversionConfig::default())?;
            let mut table = Table::new(&["t", "y_series", "y_laplace", "abs_diff"]);
            for ((t, a), b) in series.y.nodes().zip(series.y.values()).zip(laplace.y.values()) {
                table.push(vec![t, *a, *b, (a - b).abs()]);
            }
            table.note(format!(
                "cross_residual={}",
                format_value(series.cross_residual.unwrap_or(f64::NAN))
            ));
            horizon_note(&mut table, &series);
            cm_note(&mut table, &series, required);
            table
        }
    };
    Ok(table)
}

fn horizon_note(table: &mut Table, sol: &RelaxationSolution) {
    match sol.series_horizon {
        Some(t) => table.note(format!("series_horizon={} (inversion beyond)", format_value(t))),
        None => table.note("series_horizon=none"),
    }
}

pub fn sonine(cfg: &RunConfig, points: usize) -> Result<String, CliError> {
    check_grid(cfg)?;
    let p = cfg.params()?;
    let time = sonine_check_time(&p, cfg.t_max, cfg.n)?;
    let laplace = sonine_check_laplace(&p, 1e-3, 1e3, points)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Sonine check, alpha={} beta={} gamma={} lambda={}",
        p.alpha, p.beta, p.gamma, p.lambda
    );
    let _ = writeln!(
        s,
        "time domain:    max |(k * kappa)(t) - 1| on (0, {}], n={}: {:.3e}",
        cfg.t_max, cfg.n, time
    );
    let _ = writeln!(
        s,
        "Laplace domain: max |s k~(s) kappa~(s) - 1| on [1e-3, 1e3], {points} points: {:.3e}",
        laplace
    );
    s.push('\n');
    let _ = writeln!(s, "time_residual={}", format_value(time));
    let _ = writeln!(s, "laplace_residual={}", format_value(laplace));
    Ok(s)
}

pub fn series_limit(cfg: &RunConfig, kind: LimitKind, terms: usize, input: &InputArgs) -> Result<Table, CliError> {
    let p = cfg.params()?;
    match kind {
        LimitKind::Derivative => {
            let f = sampled(cfg, input)?;
            let d = series_derivative_limit(&p, &f, terms)?;
            let mut table = Table::new(&["t", "value"]);
            for (t, v) in d.nodes().zip(d.values()) {
                table.push(vec![t, *v]);
            }
            Ok(table)
        }
        LimitKind::Kernel => {
            check_grid(cfg)?;
            let mut table = Table::new(&["t", "value", "tail"]);
            for t in nodes(cfg).skip(1) {
                let (v, tail) = series_kernel_limit(&p, terms, t)?;
                table.push(vec![t, v, tail]);
            }
            Ok(table)
        }
    }
}
