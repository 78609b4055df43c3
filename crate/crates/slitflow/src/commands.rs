//! The five batch commands. Each writes its CSV files into the output
//! directory and returns a process exit code.

use std::fs;
use std::path::Path;

use slitflow_core::conformal::dist_to_slit;
use slitflow_core::cutoff::phi_eps;
use slitflow_core::transport::{
    conservation_report, run_observed, with_tracers, Serial, VelocityModel,
};
use slitflow_core::{
    CPoint, ExteriorMap, ExteriorModel, LimitModel, ThickenedMap, TransportState, VortexParticleSet,
};

use crate::analysis::{convergence_sweep, describe, run_checks, CheckContext, Status};
use crate::config::{Mode, ModelKind, RunConfig};
use crate::output::{ensure_dir, num, Table};
use crate::AppError;

/// Writes the effective configuration and runs the command named by `cfg.mode`.
pub fn execute(cfg: &RunConfig, check: Option<&str>) -> Result<i32, AppError> {
    if check.is_some() && cfg.mode != Mode::Check {
        return Err(AppError::Usage(
            "--check is only valid in check mode".into(),
        ));
    }
    let dir = cfg.output_dir.as_path();
    ensure_dir(dir).map_err(|e| AppError::io(dir, e))?;
    let echo = dir.join("effective_config.txt");
    fs::write(&echo, cfg.to_string()).map_err(|e| AppError::io(&echo, e))?;
    match cfg.mode {
        Mode::ProbeMap => probe_map(cfg),
        Mode::Field => field(cfg),
        Mode::Advect => advect(cfg),
        Mode::SweepEps => sweep_eps(cfg),
        Mode::Check => check_suite(cfg, check),
    }
}

fn write(table: &Table, dir: &Path, name: &str) -> Result<(), AppError> {
    let path = dir.join(name);
    table.write_to(&path).map_err(|e| AppError::io(&path, e))
}

fn grid_nodes(cfg: &RunConfig) -> impl Iterator<Item = CPoint> + '_ {
    let g = &cfg.grid;
    (0..g.ny).flat_map(move |j| {
        (0..g.nx).map(move |i| g.origin + CPoint::new(i as f64 * g.h, j as f64 * g.h))
    })
}

/// Vortical particles from the preset, without tracers.
fn initial_particles(cfg: &RunConfig) -> Result<VortexParticleSet, AppError> {
    let eps = cfg.epsilon;
    let p = match cfg.model {
        ModelKind::Exterior => cfg
            .vorticity_preset
            .sample(cfg.particle_h, |x| dist_to_slit(eps, x) > 0.0)?,
        ModelKind::Limit => cfg.vorticity_preset.sample(cfg.particle_h, |_| true)?,
    };
    Ok(p)
}

fn velocity_model(cfg: &RunConfig, p: &VortexParticleSet) -> Result<VelocityModel, AppError> {
    let m = match (cfg.model, cfg.blob_delta) {
        (ModelKind::Exterior, Some(d)) => ExteriorModel::new(cfg.epsilon, cfg.gamma, d)?.into(),
        (ModelKind::Exterior, None) => {
            ExteriorModel::with_default_blob(cfg.epsilon, cfg.gamma, p)?.into()
        }
        (ModelKind::Limit, Some(d)) => LimitModel::new(cfg.gamma, d)?.into(),
        (ModelKind::Limit, None) => LimitModel::with_default_blob(cfg.gamma, p)?.into(),
    };
    Ok(m)
}

fn probe_map(cfg: &RunConfig) -> Result<i32, AppError> {
    let map = ThickenedMap::new(cfg.epsilon, cfg.eta)?;
    let mut t = Table::new(&[
        "x",
        "y",
        "admissible",
        "t_re",
        "t_im",
        "d1_re",
        "d1_im",
        "d2_re",
        "d2_im",
        "dist_to_slit",
    ]);
    for x in grid_nodes(cfg) {
        let mut row = vec![num(x.re), num(x.im)];
        if map.is_admissible(x) {
            let j = map.jet(x)?;
            row.push("1".into());
            for v in [j.value, j.d1, j.d2] {
                row.push(num(v.re));
                row.push(num(v.im));
            }
        } else {
            row.push("0".into());
            row.extend(std::iter::repeat(String::new()).take(6));
        }
        row.push(num(dist_to_slit(cfg.epsilon, x)));
        t.push(row);
    }
    write(&t, &cfg.output_dir, "probe_map.csv")?;
    Ok(0)
}

fn field(cfg: &RunConfig) -> Result<i32, AppError> {
    let p = initial_particles(cfg)?;
    let model = velocity_model(cfg, &p)?;
    let f = model.assemble(&p)?;
    let mut t = Table::new(&["x", "y", "ux", "uy", "phi_eps", "admissible"]);
    for x in grid_nodes(cfg) {
        let mut row = vec![num(x.re), num(x.im)];
        if model.is_admissible(x) {
            let u = f.velocity(x)?;
            row.push(num(u.re));
            row.push(num(u.im));
        } else {
            row.push(String::new());
            row.push(String::new());
        }
        let phi = if dist_to_slit(cfg.epsilon, x) > 0.0 {
            num(phi_eps(cfg.epsilon, x)?)
        } else {
            num(0.0)
        };
        row.push(phi);
        row.push(if model.is_admissible(x) { "1" } else { "0" }.into());
        t.push(row);
    }
    write(&t, &cfg.output_dir, "field.csv")?;
    Ok(0)
}

fn snapshot(state: &TransportState, dir: &Path, step: usize) -> Result<(), AppError> {
    let mut t = Table::new(&["id", "x", "y", "omega"]);
    let p = &state.particles;
    for (i, (x, w)) in p.positions().iter().zip(p.values()).enumerate() {
        t.push(vec![i.to_string(), num(x.re), num(x.im), num(*w)]);
    }
    write(&t, dir, &format!("snap_{step}.csv"))
}

fn advect(cfg: &RunConfig) -> Result<i32, AppError> {
    let dir = cfg.output_dir.as_path();
    let vortical = initial_particles(cfg)?;
    let model = velocity_model(cfg, &vortical)?;
    let particles = with_tracers(&vortical, &cfg.tracers)?;
    let state0 = TransportState::new(particles, model)?;
    let (steps, _) = slitflow_core::transport::step_plan(cfg.dt, cfg.t_final)?;

    let header = [
        "t",
        "m",
        "l1",
        "l2",
        "l4",
        "linf",
        "support_radius",
        "max_step",
    ];
    let mut cons = Table::new(&header);
    let push_report = |t: &mut Table, r: &slitflow_core::ConservationReport| {
        t.push_nums(&[
            r.t,
            r.mass,
            r.l1,
            r.l2,
            r.l4,
            r.linf,
            r.support_radius,
            r.max_step,
        ]);
    };
    push_report(&mut cons, &conservation_report(&state0));
    snapshot(&state0, dir, 0)?;

    let mut step = 0usize;
    let mut last = state0.clone();
    let mut io: Result<(), AppError> = Ok(());
    let aborted = run_observed(&Serial, &state0, cfg.dt, cfg.t_final, |s, r| {
        step += 1;
        push_report(&mut cons, r);
        let due = step == steps || (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0);
        if due && io.is_ok() {
            io = snapshot(s, dir, step);
        }
        last = s.clone();
    })?;
    io?;
    write(&cons, dir, "conservation.csv")?;
    let status = dir.join("status.txt");
    match aborted {
        None => {
            fs::write(&status, "ok\n").map_err(|e| AppError::io(&status, e))?;
            Ok(0)
        }
        Some(e) => {
            // keep the last good state on disk next to the abort notice
            snapshot(&last, dir, step)?;
            fs::write(&status, format!("aborted after step {step}: {e}\n"))
                .map_err(|e| AppError::io(&status, e))?;
            eprintln!("advect aborted: {e}");
            Ok(1)
        }
    }
}

fn sweep_eps(cfg: &RunConfig) -> Result<i32, AppError> {
    let eps: Vec<f64> = [4.0, 2.0, 1.0, 0.5]
        .iter()
        .map(|k| k * cfg.epsilon)
        .collect();
    let widest = eps[0];
    let p = cfg
        .vorticity_preset
        .sample(cfg.particle_h, |x| dist_to_slit(widest, x) > 0.0)?;
    let rows = convergence_sweep(&p, cfg.gamma, &eps)?;
    let mut t = Table::new(&["epsilon", "velocity_gap_l1", "v_l3"]);
    for r in rows {
        t.push_nums(&[r.eps, r.velocity_gap_l1, r.v_l3]);
    }
    write(&t, &cfg.output_dir, "sweep_eps.csv")?;
    Ok(0)
}

fn check_suite(cfg: &RunConfig, filter: Option<&str>) -> Result<i32, AppError> {
    let ctx = CheckContext::new(cfg.seed);
    let results = run_checks(filter, &ctx, &cfg.output_dir, |r| {
        println!("{}", describe(r))
    })?;
    let all_pass = results.iter().all(|r| r.status == Status::Pass);
    Ok(if all_pass { 0 } else { 1 })
}
