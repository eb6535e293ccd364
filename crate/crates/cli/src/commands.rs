//! The five subcommands, each building a serializable report from the core
//! library. Cell-level failures are recorded in the reports; the exit code
//! policy lives in main.

use bouncer_core::continuum::{self, Energy};
use bouncer_core::lattice::DimensionlessParams;
use bouncer_core::radiative;
use bouncer_core::spectrum;
use bouncer_core::transitions::{self, VibrationSpectrumModel};
use bouncer_core::experiment;

use crate::config::RunConfig;
use crate::report::*;

pub enum Outcome {
    Full,
    Partial,
    AllFailed,
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<(SpectrumReport, Outcome), String> {
    let table =
        spectrum::spectrum_table(&cfg.s_values, cfg.n_max).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(table.cells.len());
    let mut solver_errors = 0usize;
    let mut cells_with_value = 0usize;
    for cell in &table.cells {
        let mut flags = Vec::new();
        if cell.suspect_reference {
            flags.push("suspect_reference");
        }
        if cell.extrapolated {
            flags.push("extrapolated");
        }
        let mut values = Vec::new();
        let mut cell_has_value = false;
        for (method, v) in [("lattice", &cell.lattice), ("bessel", &cell.bessel)] {
            match v {
                Ok(value) => {
                    cell_has_value = true;
                    values.push(MethodValue {
                        method,
                        value: Some(*value),
                        error: None,
                    });
                }
                Err(e) => {
                    solver_errors += 1;
                    values.push(MethodValue {
                        method,
                        value: None,
                        error: Some(e.clone()),
                    });
                }
            }
        }
        values.push(MethodValue {
            method: "perturbative",
            value: Some(cell.perturbative),
            error: None,
        });
        if cell_has_value {
            cells_with_value += 1;
        }
        rows.push(SpectrumRow {
            s: cell.s,
            n: cell.n,
            values,
            route_agreement: cell.route_agreement,
            flags,
        });
    }
    // A cell counts as resolved when at least one solver route produced a
    // value; recorded per-method errors alone only demote the run to
    // partial.
    let outcome = if solver_errors == 0 {
        Outcome::Full
    } else if cells_with_value == 0 {
        Outcome::AllFailed
    } else {
        Outcome::Partial
    };
    Ok((SpectrumReport { rows }, outcome))
}

pub fn cmd_profile(cfg: &RunConfig, s: f64, n: u32) -> Result<ProfileReport, String> {
    let ctx = cfg.context()?;
    let params = DimensionlessParams::new(s).map_err(|e| e.to_string())?;
    // The lattice route covers every s; the Bessel route is equivalent
    // where available.
    let state = spectrum::lattice_state(params, n).map_err(|e| e.to_string())?;
    let profile = spectrum::density_profile(&state, &ctx, 2).map_err(|e| e.to_string())?;
    let lambda = ctx.l0() / s;
    // Continuum density evaluated at the lattice points for a direct
    // two-column overlay.
    let cstate = continuum::ContinuumState::new(n, &ctx).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(profile.lattice_points.len());
    for &(z, d_lat) in &profile.lattice_points {
        let psi = cstate.wavefunction(z).map_err(|e| e.to_string())?;
        rows.push(ProfileRow {
            z_m: z,
            density_lattice_per_m: d_lat,
            density_continuum_per_m: psi * psi,
        });
    }
    Ok(ProfileReport { s, n, lambda_m: lambda, rows })
}

pub fn cmd_bound(cfg: &RunConfig) -> Result<BoundReport, String> {
    let ctx = cfg.context()?;
    let heights = experiment::compare_heights(&ctx)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|c| HeightRow {
            level: c.level,
            theory_m: c.theory,
            measured_m: c.measured.value,
            bar_published_m: c.measured.sys + c.measured.stat,
            inside_published: c.inside_linear,
            bar_quadrature_m: (c.measured.sys * c.measured.sys
                + c.measured.stat * c.measured.stat)
                .sqrt(),
            inside_quadrature: c.inside_quadrature,
        })
        .collect();

    let mut bounds = Vec::new();
    let precisions = [
        (1u32, cfg.delta_e_exp_pev),
        (2u32, experiment::DELTA_E_EXP_PEV[1]),
    ];
    for (level, pev) in precisions {
        let b = experiment::granit_bound_lambda(level, Energy::from_pev(pev), &ctx, 1.0)
            .map_err(|e| e.to_string())?;
        bounds.push(BoundRow {
            level,
            delta_e_exp_pev: pev,
            g_factor: 1.0,
            effective_l0_m: b.effective_l0,
            lambda_max_m: b.lambda_max,
        });
    }
    if cfg.g_factor > 1.0 {
        let b = experiment::granit_bound_lambda(
            1,
            Energy::from_pev(cfg.delta_e_exp_pev),
            &ctx,
            cfg.g_factor,
        )
        .map_err(|e| e.to_string())?;
        bounds.push(BoundRow {
            level: 1,
            delta_e_exp_pev: cfg.delta_e_exp_pev,
            g_factor: cfg.g_factor,
            effective_l0_m: b.effective_l0,
            lambda_max_m: b.lambda_max,
        });
    }
    Ok(BoundReport { heights, bounds })
}

pub fn cmd_lifetime(cfg: &RunConfig) -> Result<LifetimeReport, String> {
    let ctx = cfg.context()?;
    let model = VibrationSpectrumModel::ConstantAverage(cfg.s_a_m2_hz3)
        .validated()
        .map_err(|e| e.to_string())?;
    let sum_levels = 20;
    let omega = transitions::omega_n_factor(1, &model, &ctx, sum_levels)
        .map_err(|e| e.to_string())?;
    let lambda_max =
        transitions::vibration_bound_lambda(cfg.delta_t_exp_s, cfg.t_n_s, omega.value, &ctx)
            .map_err(|e| e.to_string())?;
    Ok(LifetimeReport {
        t_n_s: cfg.t_n_s,
        s_a_m2_hz3: cfg.s_a_m2_hz3,
        omega_1_hz: omega.value,
        omega_truncation_estimate_hz: omega.truncation_estimate,
        sum_levels,
        delta_t_exp_s: cfg.delta_t_exp_s,
        lambda_max_m: lambda_max,
    })
}

pub fn cmd_rate(cfg: &RunConfig, sweep: &[f64]) -> Result<RateReport, String> {
    let ctx = cfg.context()?;
    let report = radiative::quadrupole_report(2, 1, sweep, cfg.truncation_l, &ctx)
        .map_err(|e| e.to_string())?;
    Ok(RateReport {
        from: report.from,
        to: report.to,
        rate_qm_per_s: report.rate_qm,
        truncation_l: report.l_max,
        ratios: report
            .ratios
            .iter()
            .map(|&(s, ratio)| RateRatioRow { s, ratio })
            .collect(),
        fitted_coefficient: report.coefficient,
    })
}
