//! The six sub-commands.

use super::config::{parse_regime, CommandKind, RunConfig, TauSpec};
use super::output::{complex_cells, complex_columns, Artifact, Cell, Header, Table};
use super::CliError;
use crate::asymptotics::{
    eval_phi, evaluate, sample_regime_point, MonodromyInput, Quantity, RayExpansion, RegimeLabel,
    TransSeriesEval,
};
use crate::coefficients::{
    d_and_htilde_coeffs, eta_coeffs, hatted_family, phi_coeffs, phi_coeffs_hat, r_coeffs,
    u_coeffs, w_coeffs, CoefficientTable, Family,
};
use crate::monodromy::{
    apply_symmetry, check_manifold, classify, composition_table, enumerate_labels, sample_point,
    verify_composition, Case, MonodromyPoint, SymmetryLabel,
};
use crate::params::{BranchIndex, Parameters, C64, I};
use crate::verify::{
    asymptotic_vs_ode, exact_solution_deviation, exponential_term_fit, identity_residuals,
    instanton_exponent_check, phase_consistency_check, residual_order_check,
    trajectory_sigma_form,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Executes a merged configuration; the flag is false when a check failed.
pub fn run(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let command = cfg.command.ok_or_else(|| {
        CliError::Usage("no sub-command given on the command line or in the config".into())
    })?;
    match command {
        CommandKind::Coeffs => coeffs(cfg),
        CommandKind::Eval => eval(cfg),
        CommandKind::Classify => classify_point(cfg),
        CommandKind::Symmetry => symmetry(cfg),
        CommandKind::Verify => verify(cfg),
        CommandKind::Sweep => sweep(cfg),
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::Io(format!("serialization failed: {e}")))
}

fn header(command: &str, cfg: &RunConfig, params: Option<Parameters>) -> Header {
    Header {
        params,
        seed: cfg.seed,
        ..Header::new(command)
    }
}

fn seed(cfg: &RunConfig) -> u64 {
    cfg.seed.unwrap_or(0)
}

fn coeffs(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let params = cfg.parameters()?;
    let k = cfg.branch()?;
    let n = cfg.order(12)?;
    let name = cfg.family.as_deref().unwrap_or("u");
    let family = Family::from_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown family {name:?}")))?;
    let table = coefficient_table(&params, k, family, cfg.eps1, n)?;
    if table.warn {
        eprintln!("warning: i*a is an integer; the expansion needs separate analysis there");
    }
    let mut t = Table::new(&["index", "value_re", "value_im"]);
    for (m, z) in table.values.iter().enumerate() {
        let [re, im] = complex_cells(*z);
        t.push(vec![Cell::Int(m as i64), re, im]);
    }
    let h = Header {
        n: Some(n),
        ..header("coeffs", cfg, Some(params))
    };
    Ok((
        Artifact {
            header: h,
            body: to_value(&table)?,
            table: t,
        },
        true,
    ))
}

/// The table of `family` through index `n`.
fn coefficient_table(
    params: &Parameters,
    k: BranchIndex,
    family: Family,
    eps1: Option<i8>,
    n: usize,
) -> Result<CoefficientTable, CliError> {
    let e2 = params.eps2;
    let e2h = params.eps2_hat;
    let truncate = |mut t: CoefficientTable| {
        t.values.truncate(n + 1);
        t
    };
    let t = match family {
        Family::U => u_coeffs(params, k, eps1.unwrap_or(0), e2, n)?,
        Family::W => w_coeffs(&u_coeffs(params, k, 0, e2, n)?),
        Family::Eta => truncate(eta_coeffs(&u_coeffs(params, k, 0, e2, n + 2)?)),
        Family::R => r_coeffs(params, k, e2, n)?,
        Family::D | Family::Htilde => {
            let u = u_coeffs(params, k, 0, e2, n + 2)?;
            let r = r_coeffs(params, k, e2, n + 2)?;
            let (d, h) = d_and_htilde_coeffs(&u, &r, params, k, e2)?;
            truncate(if family == Family::D { d } else { h })
        }
        Family::NuTilde | Family::MuStar | Family::PStar => {
            let p = phi_coeffs(params, k, e2, n)?;
            match family {
                Family::NuTilde => p.nu,
                Family::MuStar => p.mu,
                _ => p.p,
            }
        }
        Family::NuHat | Family::MuHat | Family::PHat => {
            let p = phi_coeffs_hat(params, k, e2h, n)?;
            match family {
                Family::NuHat => p.nu,
                Family::MuHat => p.mu,
                _ => p.p,
            }
        }
        _ => {
            let h = hatted_family(params, k, eps1.unwrap_or(1), e2h, n)?;
            match family {
                Family::UHat => h.u,
                Family::WHat => h.w,
                Family::EtaHat => h.eta,
                Family::RHat => h.r,
                Family::DHat => h.d,
                _ => h.hstar,
            }
        }
    };
    Ok(t)
}

fn quantity(cfg: &RunConfig) -> Result<Quantity, CliError> {
    let name = cfg.quantity.as_deref().unwrap_or("u");
    Quantity::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown quantity {name:?}")))
}

/// One evaluated point, as serialized by `eval` and `sweep`.
#[derive(Debug, Clone, Serialize)]
struct EvalRow {
    regime: String,
    k: i8,
    index: usize,
    #[serde(flatten)]
    eval: TransSeriesEval,
    principal_value: Option<C64>,
}

const EVAL_COLUMNS: [&str; 15] = [
    "regime",
    "k",
    "index",
    "tau_re",
    "tau_im",
    "power_re",
    "power_im",
    "exp_re",
    "exp_im",
    "total_re",
    "total_im",
    "next_term_proxy",
    "exp_magnitude",
    "principal_re",
    "principal_im",
];

fn eval_row_cells(r: &EvalRow) -> Vec<Cell> {
    let e = &r.eval;
    let mut row = vec![
        Cell::Text(r.regime.clone()),
        Cell::Int(i64::from(r.k)),
        Cell::Int(r.index as i64),
    ];
    for z in [e.tau, e.power_part, e.exp_part, e.total] {
        row.extend(complex_cells(z));
    }
    row.push(Cell::Float(e.next_term_proxy));
    row.push(Cell::Float(e.exp_magnitude));
    let p = r.principal_value.unwrap_or(C64::new(f64::NAN, f64::NAN));
    row.extend(complex_cells(p));
    row
}

/// Monodromy data for evaluations along `regime`: the configured point, else
/// the configured `s⁰₀`, else a point sampled from the seed.
fn monodromy_for(
    cfg: &RunConfig,
    params: &Parameters,
    regime: &RegimeLabel,
    q: Quantity,
) -> Result<(MonodromyInput, Option<MonodromyPoint>), CliError> {
    if let Some(p) = cfg.point {
        return Ok((MonodromyInput::Point(p), Some(p)));
    }
    if q != Quantity::Phi {
        if let Some(s) = cfg.s00 {
            return Ok((MonodromyInput::S00(s), None));
        }
    }
    let p = sample_regime_point(params, regime, seed(cfg))?;
    Ok((MonodromyInput::S00(p.s00), Some(p)))
}

#[allow(clippy::too_many_arguments)]
fn eval_one(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    point: Option<&MonodromyPoint>,
    q: Quantity,
    tau: C64,
    index: usize,
    n: usize,
) -> Result<EvalRow, CliError> {
    let (eval, principal_value) = if q == Quantity::Phi {
        let p = point.ok_or_else(|| CliError::Usage("the phase needs a monodromy point".into()))?;
        let e = eval_phi(params, regime, p, tau, n)?;
        (e.eval, Some(e.principal_value))
    } else {
        (evaluate(params, regime, mono, q, tau, n)?, None)
    };
    Ok(EvalRow {
        regime: regime.symmetry_label().to_string(),
        k: regime.k.value(),
        index,
        eval,
        principal_value,
    })
}

fn eval(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let params = cfg.parameters()?;
    let k = cfg.branch()?;
    let n = cfg.order(12)?;
    let regime = cfg.regime_label(&params, k)?;
    let q = quantity(cfg)?;
    let taus = cfg
        .tau
        .ok_or_else(|| CliError::Usage("eval needs --tau or --tau-start/--tau-stop".into()))?
        .points(&regime)?;
    let (mono, point) = monodromy_for(cfg, &params, &regime, q)?;
    let rows: Vec<EvalRow> = taus
        .iter()
        .enumerate()
        .map(|(i, &t)| eval_one(&params, &regime, &mono, point.as_ref(), q, t, i, n))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&EVAL_COLUMNS);
    for r in &rows {
        table.push(eval_row_cells(r));
    }
    let body = json!({
        "quantity": q.name(),
        "monodromy": to_value(&mono)?,
        "point": to_value(&point)?,
        "rows": to_value(&rows)?,
    });
    let h = Header {
        regime: Some(regime.to_string()),
        n: Some(n),
        ..header("eval", cfg, Some(params))
    };
    Ok((Artifact { header: h, body, table }, true))
}

fn configured_point(cfg: &RunConfig) -> Result<MonodromyPoint, CliError> {
    match cfg.point {
        Some(p) => Ok(p),
        None => Ok(sample_point(cfg.sample_case()?.unwrap_or(Case::CaseIiKplus), seed(cfg))),
    }
}

fn point_cells(p: &MonodromyPoint) -> Vec<Cell> {
    p.coords().iter().flat_map(|z| complex_cells(*z)).collect()
}

fn point_columns() -> Vec<String> {
    ["a", "s00", "s0inf", "s1inf", "g11", "g12", "g21", "g22"]
        .iter()
        .flat_map(|n| complex_columns(n))
        .collect()
}

fn classify_point(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let p = configured_point(cfg)?;
    let tol = cfg.tolerance("manifold", 1e-10);
    let report = check_manifold(&p, tol);
    let tag = classify(&p)?;
    let mut cols = vec!["case".to_string(), "k".into(), "max_residual".into(), "pass".into()];
    cols.extend(point_columns());
    let mut table = Table::new(&cols);
    let mut row = vec![
        Cell::Text(to_value(&tag.case)?.as_str().unwrap_or_default().to_string()),
        Cell::Int(tag.k.map_or(0, |k| i64::from(k.value()))),
        Cell::Float(report.max_residual),
        Cell::Bool(report.pass),
    ];
    row.extend(point_cells(&p));
    table.push(row);
    let body = json!({
        "point": to_value(&p)?,
        "case": to_value(&tag)?,
        "manifold": to_value(&report)?,
    });
    Ok((
        Artifact {
            header: header("classify", cfg, None),
            body,
            table,
        },
        report.pass,
    ))
}

fn symmetry(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    if cfg.enumerate == Some(true) {
        let labels = enumerate_labels();
        let mut table = Table::new(&["label", "hatted", "eps1", "eps2", "m", "ell"]);
        for l in &labels {
            table.push(vec![
                Cell::Text(l.to_string()),
                Cell::Bool(l.hatted),
                Cell::Int(l.eps1.into()),
                Cell::Int(l.eps2.into()),
                Cell::Int(l.m.into()),
                Cell::Int(l.ell.into()),
            ]);
        }
        let unhatted = labels.iter().filter(|l| !l.hatted).count();
        let body = json!({
            "labels": labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "unhatted": unhatted,
            "hatted": labels.len() - unhatted,
        });
        return Ok((
            Artifact {
                header: header("symmetry", cfg, None),
                body,
                table,
            },
            true,
        ));
    }
    let label: SymmetryLabel = cfg
        .label
        .as_deref()
        .ok_or_else(|| CliError::Usage("symmetry needs --enumerate or --label".into()))?
        .parse()?;
    let p = configured_point(cfg)?;
    let image = apply_symmetry(label, &p)?;
    let tol = cfg.tolerance("manifold", 1e-10);
    let report = check_manifold(&image, tol);
    let det_error = image.det_gap(&p);
    let s00_preserved = image.s00 == p.s00;
    let parity = (image.a - label.image_a(p.a)).norm() == 0.0;
    let pass = report.pass && s00_preserved && parity && det_error <= cfg.tolerance("det", 1e-12);
    let mut cols = vec!["label".to_string(), "max_residual".into(), "det_error".into(), "pass".into()];
    cols.extend(point_columns());
    let mut table = Table::new(&cols);
    let mut row = vec![
        Cell::Text(label.to_string()),
        Cell::Float(report.max_residual),
        Cell::Float(det_error),
        Cell::Bool(pass),
    ];
    row.extend(point_cells(&image));
    table.push(row);
    let body = json!({
        "label": label.to_string(),
        "input": to_value(&p)?,
        "image": to_value(&image)?,
        "manifold": to_value(&report)?,
        "det_error": det_error,
        "s00_preserved": s00_preserved,
        "a_parity": parity,
        "pass": pass,
    });
    Ok((
        Artifact {
            header: header("symmetry", cfg, None),
            body,
            table,
        },
        pass,
    ))
}

/// One line of the verification summary.
struct CheckLine {
    name: String,
    k: Option<BranchIndex>,
    metric: f64,
    bound: f64,
    pass: bool,
    report: Value,
}

fn branches(cfg: &RunConfig) -> Result<Vec<BranchIndex>, CliError> {
    Ok(match cfg.k {
        Some(_) => vec![cfg.branch()?],
        None => vec![BranchIndex::PLUS, BranchIndex::MINUS],
    })
}

fn ladder(cfg: &RunConfig, start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    cfg.tau
        .unwrap_or(TauSpec::Ladder { start, stop, count })
        .moduli()
}

fn tronquee_s00(params: &Parameters, regime: &RegimeLabel) -> Result<C64, CliError> {
    let ray = RayExpansion::new(params, *regime, 0)?;
    Ok(I * (-ray.s * std::f64::consts::PI * ray.a_eff).exp())
}

fn run_check(cfg: &RunConfig, name: &str) -> Result<Vec<CheckLine>, CliError> {
    let params = cfg.parameters()?;
    let mut out = Vec::new();
    match name {
        "instanton-exponent" => {
            let tol = cfg.tolerance("instanton", 1e-12);
            for k in branches(cfg)? {
                let s00 = match cfg.s00 {
                    Some(s) => s,
                    None => sample_regime_point(&params, &RegimeLabel::base(k), seed(cfg))?.s00,
                };
                let r = instanton_exponent_check(&params, k, s00, tol)?;
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: r.max_residual,
                    bound: tol,
                    pass: r.pass,
                    report: to_value(&r)?,
                });
            }
        }
        "residual-order" => {
            let tol = cfg.tolerance("residual_order", 0.2);
            let n = cfg.order(12)?;
            let taus = ladder(cfg, 40.0, 160.0, 3)?;
            for k in branches(cfg)? {
                let regime = cfg.regime_label(&params, k)?;
                let r = residual_order_check(&params, &regime, n, &taus, tol)?;
                let fit = r.fitted_decay_exponent.unwrap_or(f64::NAN);
                let exp = r.expected_exponent.unwrap_or(f64::NAN);
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: (fit - exp).abs() / exp,
                    bound: tol,
                    pass: r.pass,
                    report: to_value(&r)?,
                });
            }
        }
        "asymptotic-vs-ode" => {
            let n = cfg.order(12)?;
            let taus = ladder(cfg, 100.0, 40.0, 61)?;
            let rel_tol = cfg.tolerance("rel_tol", 1e-13);
            let (hi, lo) = extremes(&taus);
            for k in branches(cfg)? {
                let regime = cfg.regime_label(&params, k)?;
                let s00 = match cfg.s00 {
                    Some(s) => s,
                    None => tronquee_s00(&params, &regime)?,
                };
                let r = asymptotic_vs_ode(&params, &regime, s00, n, hi, lo, taus.len(), rel_tol)?;
                let worst = r
                    .report
                    .residuals
                    .iter()
                    .zip(&r.report.bounds)
                    .map(|(d, b)| d / b)
                    .fold(0.0, f64::max);
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: worst,
                    bound: 1.0,
                    pass: r.report.pass,
                    report: json!({
                        "report": to_value(&r.report)?,
                        "crossover_tau": r.crossover_tau,
                        "integrator_stats": to_value(&r.trajectory.integrator_stats)?,
                        "diagnostic": r.trajectory.diagnostic,
                    }),
                });
            }
        }
        "exponential-fit" => {
            let n = cfg.order(12)?;
            let taus = ladder(cfg, 30.0, 60.0, 2)?;
            let (hi, lo) = extremes(&taus);
            let tau_hi = cfg.tolerance("tau_hi", 100.0);
            let factor = cfg.tolerance("exp_factor", 3.0);
            let rel_tol = cfg.tolerance("rel_tol", 1e-13);
            let points = ((tau_hi - lo).round() as usize).max(2) + 1;
            for k in branches(cfg)? {
                let regime = cfg.regime_label(&params, k)?;
                let s00 = cfg.s00.unwrap_or_default();
                let r = exponential_term_fit(
                    &params,
                    &regime,
                    s00,
                    n,
                    tau_hi,
                    (lo, hi),
                    points,
                    rel_tol,
                    factor,
                )?;
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: r.ratio,
                    bound: factor,
                    pass: r.pass,
                    report: to_value(&r)?,
                });
            }
        }
        "identities" => {
            let taus = ladder(cfg, 10.0, 1.0, 21)?;
            let (hi, lo) = extremes(&taus);
            let id_tol = cfg.tolerance("identity", 1e-9);
            let sf_tol = cfg.tolerance("sigma_form", 1e-6);
            let rel_tol = cfg.tolerance("rel_tol", 1e-13);
            for k in branches(cfg)? {
                let regime = cfg.regime_label(&params, k)?;
                let s00 = cfg.s00.unwrap_or_default();
                let run = asymptotic_vs_ode(&params, &regime, s00, 12, hi, lo, taus.len(), rel_tol)?;
                let traj = &run.trajectory;
                let ids = identity_residuals(&params, traj);
                let idx: Vec<usize> = (0..traj.len()).collect();
                let sf = trajectory_sigma_form(&params, traj, &idx, rel_tol)?;
                let sf_max = sf.iter().map(|s| s.relative()).fold(0.0, f64::max);
                out.push(CheckLine {
                    name: "identities".into(),
                    k: Some(k),
                    metric: ids.max(),
                    bound: id_tol,
                    pass: traj.completed() && ids.max() < id_tol,
                    report: to_value(&ids)?,
                });
                out.push(CheckLine {
                    name: "sigma-form".into(),
                    k: Some(k),
                    metric: sf_max,
                    bound: sf_tol,
                    pass: traj.completed() && sf_max < sf_tol,
                    report: to_value(&sf)?,
                });
            }
        }
        "phase" => {
            let tol = cfg.tolerance("phase", 0.2);
            let n = cfg.order(4)?;
            let taus = ladder(cfg, 40.0, 160.0, 3)?;
            for k in branches(cfg)? {
                let regime = cfg.regime_label(&params, k)?;
                let point = match cfg.point {
                    Some(p) => p,
                    None => sample_regime_point(&params, &regime, seed(cfg))?,
                };
                let r = phase_consistency_check(&params, &regime, &point, n, &taus, tol)?;
                let fit = r.fitted_decay_exponent.unwrap_or(f64::NAN);
                let exp = r.expected_exponent.unwrap_or(f64::NAN);
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: (fit - exp).abs() / exp,
                    bound: tol,
                    pass: r.pass,
                    report: to_value(&r)?,
                });
            }
        }
        "exact-solution" => {
            let taus = ladder(cfg, 100.0, 10.0, 101)?;
            let (hi, lo) = extremes(&taus);
            let rel_tol = cfg.tolerance("rel_tol", 1e-11);
            let bound = cfg.tolerance("exact", 1e-9);
            for k in branches(cfg)? {
                let (r, traj) =
                    exact_solution_deviation(&params, k, hi, lo, taus.len(), rel_tol, bound)?;
                out.push(CheckLine {
                    name: name.into(),
                    k: Some(k),
                    metric: r.residuals.iter().cloned().fold(0.0, f64::max),
                    bound,
                    pass: r.pass,
                    report: json!({
                        "report": to_value(&r)?,
                        "integrator_stats": to_value(&traj.integrator_stats)?,
                    }),
                });
            }
        }
        "manifold" => {
            let p = configured_point(cfg)?;
            let tol = cfg.tolerance("manifold", 1e-10);
            let r = check_manifold(&p, tol);
            out.push(CheckLine {
                name: name.into(),
                k: None,
                metric: r.max_residual,
                bound: tol,
                pass: r.pass,
                report: to_value(&r)?,
            });
        }
        "symmetry" => {
            let p = configured_point(cfg)?;
            let tol = cfg.tolerance("manifold", 1e-10);
            let mut worst: f64 = 0.0;
            let mut pass = check_manifold(&p, tol).pass;
            for label in enumerate_labels() {
                let q = apply_symmetry(label, &p)?;
                let r = check_manifold(&q, tol);
                worst = worst.max(r.max_residual);
                pass &= r.pass
                    && q.s00 == p.s00
                    && q.a == label.image_a(p.a)
                    && q.det_gap(&p) <= cfg.tolerance("det", 1e-12);
            }
            let mut comp: f64 = 0.0;
            for (lhs, chain) in composition_table() {
                let r = verify_composition(lhs, &chain, &p, 1e-10)?;
                comp = comp.max(r.scalar_error.max(r.matrix_error));
                pass &= r.pass;
            }
            out.push(CheckLine {
                name: name.into(),
                k: None,
                metric: worst.max(comp),
                bound: tol,
                pass,
                report: json!({"manifold_worst": worst, "composition_worst": comp}),
            });
        }
        _ => return Err(CliError::Usage(format!("unknown check {name:?}"))),
    }
    Ok(out)
}

fn extremes(taus: &[f64]) -> (f64, f64) {
    let hi = taus.iter().cloned().fold(f64::MIN, f64::max);
    let lo = taus.iter().cloned().fold(f64::MAX, f64::min);
    (hi, lo)
}

fn verify(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let params = cfg.parameters()?;
    let names = cfg
        .check
        .as_deref()
        .ok_or_else(|| CliError::Usage("verify needs --check".into()))?;
    let mut lines = Vec::new();
    for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        lines.extend(run_check(cfg, name)?);
    }
    let mut table = Table::new(&["check", "k", "metric", "bound", "pass"]);
    let mut reports = Vec::new();
    for l in &lines {
        table.push(vec![
            Cell::Text(l.name.clone()),
            Cell::Int(l.k.map_or(0, |k| i64::from(k.value()))),
            Cell::Float(l.metric),
            Cell::Float(l.bound),
            Cell::Bool(l.pass),
        ]);
        reports.push(json!({
            "check": l.name,
            "k": l.k.map(|k| k.value()),
            "metric": l.metric,
            "bound": l.bound,
            "pass": l.pass,
            "report": l.report,
        }));
    }
    let pass = lines.iter().all(|l| l.pass);
    let h = Header {
        regime: cfg.regime.clone(),
        n: cfg.n,
        ..header("verify", cfg, Some(params))
    };
    Ok((
        Artifact {
            header: h,
            body: json!({"checks": reports, "pass": pass }),
            table,
        },
        pass,
    ))
}

fn sweep(cfg: &RunConfig) -> Result<(Artifact, bool), CliError> {
    let params = cfg.parameters()?;
    let n = cfg.order(12)?;
    let q = quantity(cfg)?;
    let spec = cfg.tau.unwrap_or(TauSpec::Ladder {
        start: 20.0,
        stop: 200.0,
        count: 5,
    });
    if matches!(spec, TauSpec::Single(_)) {
        return Err(CliError::Usage("sweep needs a tau ladder".into()));
    }
    let mut regimes = Vec::new();
    for k in branches(cfg)? {
        match &cfg.regimes {
            Some(list) => {
                for s in list {
                    regimes.push(parse_regime(s, &params, k)?);
                }
            }
            None => regimes.extend(RegimeLabel::all_for(&params, k)),
        }
    }
    let mut inputs = Vec::with_capacity(regimes.len());
    for r in &regimes {
        let (mono, point) = monodromy_for(cfg, &params, r, q)?;
        inputs.push((*r, mono, point, spec.points(r)?));
    }
    let cells: Vec<(usize, usize)> = inputs
        .iter()
        .enumerate()
        .flat_map(|(i, inp)| (0..inp.3.len()).map(move |j| (i, j)))
        .collect();
    let mut rows: Vec<(RegimeLabel, EvalRow)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let (r, mono, point, taus) = &inputs[i];
            eval_one(&params, r, mono, point.as_ref(), q, taus[j], j, n).map(|row| (*r, row))
        })
        .collect::<Result<_, _>>()?;
    rows.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.index.cmp(&y.1.index)));
    let mut table = Table::new(&EVAL_COLUMNS);
    for (_, r) in &rows {
        table.push(eval_row_cells(r));
    }
    let body = json!({
        "quantity": q.name(),
        "rows": to_value(&rows.iter().map(|(_, r)| r).collect::<Vec<_>>())?,
    });
    let h = Header {
        n: Some(n),
        ..header("sweep", cfg, Some(params))
    };
    Ok((Artifact { header: h, body, table }, true))
}
