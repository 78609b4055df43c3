//! Checks that advance particles in time.

use std::f64::consts::PI;

use slitflow_core::complexplane::{contour_circulation, Contour};
use slitflow_core::transport::{run, run_observed, with_tracers, Serial};
use slitflow_core::{
    CPoint, ConservationReport, Error, ExteriorModel, LimitModel, Result, TransportState,
    VortexParticleSet, VorticityPreset,
};

use super::norms::{limit_discrepancy_l1, velocity_lp_norm};
use super::{
    fit, strictly_decreasing, worst_step_ratio, CheckContext, CheckOutput, Item, EPS_SWEEP,
};
use crate::output::Table;

const GAUSS_H: f64 = 0.125;
const GAUSS_EPS: f64 = 0.1;
const GAUSS_GAMMA: f64 = 0.5;
const GAUSS_DT: f64 = 4e-3;
const GAUSS_T: f64 = 1.0;
const CIRCULATION_EVERY: usize = 25;

/// The shared Gaussian run and its half-step twin.
#[derive(Debug, Clone)]
pub(super) struct GaussianRun {
    reports: Vec<ConservationReport>,
    /// `(t, outer circulation)` samples.
    circulation: Vec<(f64, f64)>,
    final_positions: Vec<CPoint>,
    half_step_positions: Vec<CPoint>,
}

fn outer_circulation(state: &TransportState, contour: &Contour) -> Result<f64> {
    let field = state.model.assemble(&state.particles)?;
    contour_circulation(|x| field.velocity(x), contour)
}

fn gaussian_run() -> Result<GaussianRun> {
    let p = VorticityPreset::Gaussian.sample(GAUSS_H, |_| true)?;
    let model = ExteriorModel::with_default_blob(GAUSS_EPS, GAUSS_GAMMA, &p)?;
    let s0 = TransportState::new(p, model)?;
    let contour = Contour::circle(CPoint::ZERO, 6.0, 2048)?;

    let mut reports = vec![slitflow_core::transport::conservation_report(&s0)];
    let mut circulation = vec![(0.0, outer_circulation(&s0, &contour)?)];
    let mut last = s0.clone();
    let mut inner: Result<()> = Ok(());
    let mut step = 0usize;
    let aborted = run_observed(&Serial, &s0, GAUSS_DT, GAUSS_T, |s, r| {
        step += 1;
        reports.push(*r);
        if step % CIRCULATION_EVERY == 0 && inner.is_ok() {
            match outer_circulation(s, &contour) {
                Ok(c) => circulation.push((s.t, c)),
                Err(e) => inner = Err(e),
            }
        }
        last = s.clone();
    })?;
    inner?;
    if let Some(e) = aborted {
        return Err(e);
    }
    let half = run(&s0, GAUSS_DT / 2.0, GAUSS_T)?;
    if let Some(e) = half.aborted {
        return Err(e);
    }
    Ok(GaussianRun {
        reports,
        circulation,
        final_positions: last.particles.positions().to_vec(),
        half_step_positions: half.states.last().unwrap().particles.positions().to_vec(),
    })
}

fn shared_gaussian(ctx: &CheckContext) -> Result<&GaussianRun> {
    ctx.gaussian_run
        .get_or_init(|| gaussian_run().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|_| Error::Domain {
            op: "gaussian_run",
            reason: "the shared Gaussian transport run failed",
        })
}

fn relative_drift(reports: &[ConservationReport], f: impl Fn(&ConservationReport) -> f64) -> f64 {
    let f0 = f(&reports[0]);
    reports
        .iter()
        .map(|r| (f(r) - f0).abs() / f0.abs())
        .fold(0.0, f64::max)
}

pub(super) fn transport_conservation(ctx: &CheckContext) -> Result<CheckOutput> {
    let g = shared_gaussian(ctx)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&[
        "t",
        "mass",
        "l1",
        "l2",
        "l4",
        "linf",
        "support_radius",
        "max_step",
    ]);
    for r in &g.reports {
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
    }
    out.table("reports", t);

    let lp = [
        relative_drift(&g.reports, |r| r.mass),
        relative_drift(&g.reports, |r| r.l1),
        relative_drift(&g.reports, |r| r.l2),
        relative_drift(&g.reports, |r| r.l4),
        relative_drift(&g.reports, |r| r.linf),
    ];
    out.items.push(Item::at_most(
        "max relative drift of mass and L^p norms",
        lp.iter().cloned().fold(0.0, f64::max),
        1e-3,
    ));

    let c0 = g.circulation[0].1;
    let circ = g
        .circulation
        .iter()
        .map(|(_, c)| (c - c0).abs() / c0.abs())
        .fold(0.0, f64::max);
    out.items.push(Item::at_most(
        "max relative drift of outer circulation",
        circ,
        1e-3,
    ));
    let mut ct = Table::new(&["t", "circulation"]);
    for (tt, c) in &g.circulation {
        ct.push_nums(&[*tt, *c]);
    }
    out.table("circulation", ct);

    let gap = g
        .final_positions
        .iter()
        .zip(&g.half_step_positions)
        .map(|(a, b)| (*a - *b).norm())
        .fold(0.0, f64::max);
    out.items
        .push(Item::at_most("max position gap dt vs dt/2", gap, 1e-3));

    let tracer = VortexParticleSet::new(vec![CPoint::ONE], vec![0.0], 1.0)?;
    let s = TransportState::new(tracer, LimitModel::new(1.0, 0.0)?)?;
    let orbit = run(&s, 1e-3, 4.0 * PI * PI)?;
    if let Some(e) = orbit.aborted {
        return Err(e);
    }
    let end = orbit.states.last().unwrap().particles.positions()[0];
    out.items.push(Item::at_most(
        "tracer return error after one period",
        (end - CPoint::ONE).norm(),
        1e-4,
    ));
    Ok(out)
}

pub(super) fn support_growth(ctx: &CheckContext) -> Result<CheckOutput> {
    let g = shared_gaussian(ctx)?;
    let r0 = g.reports[0].support_radius;
    let speed = g.reports.iter().map(|r| r.max_speed).fold(0.0, f64::max);
    let mut c: f64 = 0.0;
    let mut worst: f64 = 0.0;
    let mut t = Table::new(&["t", "support_radius", "growth_over_t"]);
    for r in &g.reports[1..] {
        let grow = r.support_radius - r0;
        c = c.max(grow / r.t);
        worst = worst.max(grow / (speed * r.t));
        t.push_nums(&[r.t, r.support_radius, grow / r.t]);
    }
    let mut out = CheckOutput::default();
    out.items
        .push(Item::at_most("max (R(t) - R0) / (t sup|u|)", worst, 1.0));
    out.items.push(Item::recorded("C_sup", c));
    out.items.push(Item::recorded("R0", r0));
    out.table("radius", t);
    Ok(out)
}

/// Static comparison of one particle set against the limit flow, per ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub eps: f64,
    /// `‖u^ε - u‖_{L¹}` on the annulus `1/2 ≤ |x| ≤ 4`.
    pub velocity_gap_l1: f64,
    /// `‖v^ε‖_{L³(B(0,2))}`.
    pub v_l3: f64,
}

/// Evaluates [`ConvergenceRow`] for each ε, with default blobs in both models.
pub fn convergence_sweep(
    particles: &VortexParticleSet,
    gamma: f64,
    eps: &[f64],
) -> Result<Vec<ConvergenceRow>> {
    let limit = if particles.is_empty() {
        LimitModel::new(gamma, 0.0)?
    } else {
        LimitModel::with_default_blob(gamma, particles)?
    }
    .assemble(particles)?;
    eps.iter()
        .map(|&e| {
            let model = if particles.is_empty() {
                ExteriorModel::new(e, gamma, 0.0)?
            } else {
                ExteriorModel::with_default_blob(e, gamma, particles)?
            };
            let field = model.assemble(particles)?;
            Ok(ConvergenceRow {
                eps: e,
                velocity_gap_l1: limit_discrepancy_l1(&field, &limit)?,
                v_l3: velocity_lp_norm(&field, 2.0, 3.0)?,
            })
        })
        .collect()
}

const DIPOLE_H: f64 = 0.1;
const DIPOLE_DT: f64 = 1e-2;
const DIPOLE_EPS: [f64; 3] = [0.2, 0.1, 0.05];
const SNAP_STEPS: [usize; 3] = [0, 50, 100];

pub(super) fn convergence_to_limit(_: &CheckContext) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();

    let empty = VortexParticleSet::empty(1.0)?;
    let rows = convergence_sweep(&empty, 1.0, &EPS_SWEEP)?;
    let gaps: Vec<f64> = rows.iter().map(|r| r.velocity_gap_l1).collect();
    let mut st = Table::new(&["epsilon", "h_gap_l1"]);
    for r in &rows {
        st.push_nums(&[r.eps, r.velocity_gap_l1]);
    }
    out.table("static", st);
    out.items.push(Item::holds(
        "worst step ratio of ||H_eps - H||_L1(K)",
        worst_step_ratio(&gaps),
        "strictly decreasing",
        strictly_decreasing(&gaps),
    ));
    out.items.push(Item::at_least(
        "||H_eps - H||_L1(K) slope",
        fit(&EPS_SWEEP, &gaps)?.slope,
        0.9,
    ));

    let p = VorticityPreset::Dipole.sample(DIPOLE_H, |_| true)?;
    let t_final = DIPOLE_DT * SNAP_STEPS[2] as f64;
    let limit_model = LimitModel::with_default_blob(0.0, &p)?;
    let limit_run = run(
        &TransportState::new(p.clone(), limit_model)?,
        DIPOLE_DT,
        t_final,
    )?;
    if let Some(e) = limit_run.aborted {
        return Err(e);
    }
    let mut dt_table = Table::new(&["epsilon", "t", "velocity_gap_l1", "position_rms"]);
    let mut gap_by_t = vec![Vec::new(); SNAP_STEPS.len()];
    let mut rms_final = Vec::new();
    for eps in DIPOLE_EPS {
        let model = ExteriorModel::with_default_blob(eps, 0.0, &p)?;
        let ext = run(&TransportState::new(p.clone(), model)?, DIPOLE_DT, t_final)?;
        if let Some(e) = ext.aborted {
            return Err(e);
        }
        for (k, step) in SNAP_STEPS.iter().enumerate() {
            let a = &ext.states[*step];
            let b = &limit_run.states[*step];
            let fa = model.assemble(&a.particles)?;
            let fb = limit_model.assemble(&b.particles)?;
            let gap = limit_discrepancy_l1(&fa, &fb)?;
            let rms = (a
                .particles
                .positions()
                .iter()
                .zip(b.particles.positions())
                .map(|(x, y)| (*x - *y).norm_sqr())
                .sum::<f64>()
                / a.particles.len() as f64)
                .sqrt();
            gap_by_t[k].push(gap);
            if k + 1 == SNAP_STEPS.len() {
                rms_final.push(rms);
            }
            dt_table.push_nums(&[eps, a.t, gap, rms]);
        }
    }
    for (k, step) in SNAP_STEPS.iter().enumerate() {
        let t = DIPOLE_DT * *step as f64;
        out.items.push(Item::holds(
            format!("worst step ratio of ||u_eps - u||_L1(K) at t={t}"),
            worst_step_ratio(&gap_by_t[k]),
            "strictly decreasing",
            strictly_decreasing(&gap_by_t[k]),
        ));
    }
    out.items.push(Item::holds(
        format!("worst step ratio of particle RMS gap at t={t_final}"),
        worst_step_ratio(&rms_final),
        "strictly decreasing",
        strictly_decreasing(&rms_final),
    ));
    out.table("dipole", dt_table);
    Ok(out)
}

pub(super) fn integrator_order(_: &CheckContext) -> Result<CheckOutput> {
    let p = VorticityPreset::Dipole.sample(0.125, |_| true)?;
    let p = with_tracers(&p, &[CPoint::new(1.0, 0.5)])?;
    let s = TransportState::new(p, ExteriorModel::new(0.2, 1.0, 0.1)?)?;
    let t_final = 1.0;
    let positions = |dt: f64| -> Result<Vec<CPoint>> {
        let o = run(&s, dt, t_final)?;
        match o.aborted {
            Some(e) => Err(e),
            None => Ok(o.states.last().unwrap().particles.positions().to_vec()),
        }
    };
    let reference = positions(0.025)?;
    let err = |x: &[CPoint]| {
        x.iter()
            .zip(&reference)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let e1 = err(&positions(0.2)?);
    let e2 = err(&positions(0.1)?);
    let mut out = CheckOutput::default();
    out.items.push(Item::in_range(
        "error ratio dt=0.2 vs dt=0.1",
        e1 / e2,
        12.0,
        20.0,
    ));
    let mut t = Table::new(&["dt", "error"]);
    t.push_nums(&[0.2, e1]);
    t.push_nums(&[0.1, e2]);
    out.table("errors", t);
    Ok(out)
}
