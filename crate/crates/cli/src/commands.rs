//! Command implementations: analyze, simulate, sweep and r0.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use sivp_core::equilibria::{self, Equilibrium, Existence};
use sivp_core::integrate::{integrate, integrate_reduced, IntegratorConfig};
use sivp_core::model::{boundedness_constants, FullState, ModelParams, ReducedState};
use sivp_core::stability::{classify, r0};

use crate::config::{from_core, set_param, CliError, ScenarioConfig, PARAM_KEYS};
use crate::report::{
    report_skeleton, AnalysisReport, BoundednessReport, EquilibriumReport, R0Report, StabilityJson,
};

fn integrator_config(cfg: &ScenarioConfig) -> IntegratorConfig {
    IntegratorConfig {
        rtol: cfg.rtol,
        atol: cfg.atol,
        output_stride: cfg.output_stride,
        ..IntegratorConfig::new(cfg.t_end)
    }
}

fn equilibrium_chi(eq: &Equilibrium) -> f64 {
    use sivp_core::equilibria::EqPoint;
    match eq.point {
        Some(EqPoint::Full(x)) => x.s + x.i + x.v + x.p,
        Some(EqPoint::Reduced(x)) => x.s + x.v + x.p,
        None => f64::NEG_INFINITY,
    }
}

/// Runs the equilibrium census, classifies every existing point, computes
/// the reproduction number and the boundedness summary.
pub fn cmd_analyze(
    cfg: &ScenarioConfig,
    timestamp: Option<String>,
) -> Result<AnalysisReport, CliError> {
    let mut report = report_skeleton(cfg, timestamp);

    let equilibria = if cfg.disease_free {
        equilibria::eq_all_reduced(&cfg.params)
    } else {
        equilibria::eq_all_full(&cfg.params)
    }
    .map_err(from_core)?;

    for eq in &equilibria {
        let stability = if eq.exists == Existence::Exists {
            Some(StabilityJson::from_core(
                &classify(&cfg.params, eq).map_err(from_core)?,
            ))
        } else {
            None
        };
        report
            .equilibria
            .push(EquilibriumReport::from_core(eq, stability));
    }

    match r0(&cfg.params) {
        Ok(r) => report.r0 = Some(R0Report::from_core(&r)),
        Err(e) => report.r0_note = Some(e.to_string()),
    }

    if let Ok((mu, eta, bound)) = boundedness_constants(&cfg.params) {
        let max_equilibrium_chi = equilibria
            .iter()
            .filter(|e| e.exists == Existence::Exists)
            .map(equilibrium_chi)
            .fold(f64::NEG_INFINITY, f64::max);
        report.boundedness = Some(BoundednessReport {
            mu,
            eta,
            bound,
            max_equilibrium_chi,
            satisfied: max_equilibrium_chi <= bound + 1e-6,
        });
    }

    Ok(report)
}

pub fn render_analysis(report: &AnalysisReport) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Io(format!("serializing report: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn write_analyze(
    cfg: &ScenarioConfig,
    out: &Path,
    timestamp: Option<String>,
) -> Result<(), CliError> {
    let report = cmd_analyze(cfg, timestamp)?;
    let text = render_analysis(&report)?;
    write_output(out, &text)
}

fn format_value(x: f64) -> String {
    format!("{x:.10e}")
}

/// Integrates the scenario and renders the `t,S,I,V,P` (or `t,S,V,P`) CSV
/// with 11 significant digits per value.
pub fn cmd_simulate(cfg: &ScenarioConfig) -> Result<String, CliError> {
    let icfg = integrator_config(cfg);
    let mut out = String::new();
    if cfg.disease_free {
        out.push_str("t,S,V,P\n");
        let initial = ReducedState::new(cfg.s0, cfg.v0, cfg.p0);
        let traj = integrate_reduced(&cfg.params, &initial, &icfg).map_err(from_core)?;
        for (t, x) in traj.times.iter().zip(&traj.states) {
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_value(*t),
                format_value(x.s),
                format_value(x.v),
                format_value(x.p)
            ));
        }
    } else {
        out.push_str("t,S,I,V,P\n");
        let initial = FullState::new(cfg.s0, cfg.i0, cfg.v0, cfg.p0);
        let traj = integrate(&cfg.params, &initial, &icfg).map_err(from_core)?;
        for (t, x) in traj.times.iter().zip(&traj.states) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                format_value(*t),
                format_value(x.s),
                format_value(x.i),
                format_value(x.v),
                format_value(x.p)
            ));
        }
    }
    Ok(out)
}

pub fn write_simulate(cfg: &ScenarioConfig, out: &Path) -> Result<(), CliError> {
    let csv = cmd_simulate(cfg)?;
    write_output(out, &csv)
}

fn family_columns(
    families: &[Result<Vec<Equilibrium>, CliError>],
    params: &ModelParams,
) -> Vec<String> {
    let mut cols = Vec::new();
    for family in families {
        match family {
            Err(_) => {
                cols.push("error".to_string());
                cols.push(String::new());
            }
            Ok(list) => {
                let existing = list.iter().find(|e| e.exists == Existence::Exists);
                match existing {
                    Some(eq) => {
                        cols.push("exists".to_string());
                        match classify(params, eq) {
                            Ok(report) => cols.push(report.verdict.to_string()),
                            Err(_) => cols.push("error".to_string()),
                        }
                    }
                    None => {
                        cols.push(
                            list.first()
                                .map(|e| e.exists.to_string())
                                .unwrap_or_else(|| "absent".to_string()),
                        );
                        cols.push(String::new());
                    }
                }
            }
        }
    }
    cols
}

fn sweep_row(cfg: &ScenarioConfig, param: &str, value: f64) -> String {
    let mut params = cfg.params;
    set_param(&mut params, param, value);

    let mut cols: Vec<String> = vec![format_value(value)];
    if params.validate(false).is_err() {
        let families = if cfg.disease_free { 3 } else { 6 };
        cols.push(String::new());
        for _ in 0..families {
            cols.push("error".to_string());
            cols.push(String::new());
        }
        cols.push(String::new());
        return cols.join(",");
    }

    cols.push(
        r0(&params)
            .map(|r| format_value(r.value))
            .unwrap_or_default(),
    );

    let families: Vec<Result<Vec<Equilibrium>, CliError>> = if cfg.disease_free {
        vec![
            Ok(vec![equilibria::eq_trivial_reduced()]),
            equilibria::eq_disease_free_reduced(&params)
                .map(|e| vec![e])
                .map_err(from_core),
            equilibria::eq_e2_reduced(&params).map_err(from_core),
        ]
    } else {
        vec![
            Ok(vec![equilibria::eq_trivial()]),
            equilibria::eq_disease_free(&params)
                .map(|e| vec![e])
                .map_err(from_core),
            equilibria::eq_e2(&params).map_err(from_core),
            equilibria::eq_e3(&params)
                .map(|e| vec![e])
                .map_err(from_core),
            equilibria::eq_e4(&params).map_err(from_core),
            equilibria::eq_e5(&params).map_err(from_core),
        ]
    };
    cols.extend(family_columns(&families, &params));

    let icfg = integrator_config(cfg);
    let v_limit = if cfg.disease_free {
        integrate_reduced(&params, &ReducedState::new(cfg.s0, cfg.v0, cfg.p0), &icfg)
            .ok()
            .and_then(|t| t.converged_to)
            .map(|x| x.v)
    } else {
        integrate(
            &params,
            &FullState::new(cfg.s0, cfg.i0, cfg.v0, cfg.p0),
            &icfg,
        )
        .ok()
        .and_then(|t| t.converged_to)
        .map(|x| x.v)
    };
    cols.push(v_limit.map(format_value).unwrap_or_default());
    cols.join(",")
}

/// Recomputes the reproduction number, equilibrium existence, stability
/// verdicts and the converged vaccinated density over a parameter grid.
/// Grid points run in parallel; output order follows the grid.
pub fn cmd_sweep(
    cfg: &ScenarioConfig,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<String, CliError> {
    if !PARAM_KEYS.contains(&param) {
        return Err(CliError::Config(format!(
            "unknown sweep parameter {param:?}; expected one of {}",
            PARAM_KEYS.join(", ")
        )));
    }
    if steps < 2 {
        return Err(CliError::Config(format!(
            "steps = {steps} must be at least 2"
        )));
    }
    if !(from.is_finite() && to.is_finite()) || from < 0.0 || to < 0.0 {
        return Err(CliError::Config(format!(
            "sweep range [{from}, {to}] must be finite and nonnegative"
        )));
    }

    let grid: Vec<f64> = (0..steps)
        .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
        .collect();

    let family_names: &[&str] = if cfg.disease_free {
        &["e0", "e1", "e2"]
    } else {
        &["e0", "e1", "e2", "e3", "e4", "e5"]
    };
    let mut header = vec![param.to_string(), "r0".to_string()];
    for name in family_names {
        header.push(format!("{name}_exists"));
        header.push(format!("{name}_verdict"));
    }
    header.push("v_limit".to_string());

    let rows: Vec<String> = grid
        .par_iter()
        .map(|value| sweep_row(cfg, param, *value))
        .collect();

    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

pub fn write_sweep(
    cfg: &ScenarioConfig,
    param: &str,
    from: f64,
    to: f64,
    steps: usize,
    out: &Path,
) -> Result<(), CliError> {
    let csv = cmd_sweep(cfg, param, from, to, steps)?;
    write_output(out, &csv)
}

/// Reproduction number for the scenario.
pub fn cmd_r0(cfg: &ScenarioConfig) -> Result<R0Report, CliError> {
    r0(&cfg.params)
        .map(|r| R0Report::from_core(&r))
        .map_err(from_core)
}

fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    if let Err(e) = fs::write(path, text) {
        // Leave no partial file behind.
        let _ = fs::remove_file(path);
        return Err(CliError::Io(format!("writing {}: {e}", path.display())));
    }
    Ok(())
}
