//! Lagrangian transport of the vorticity: particles move with the assembled
//! velocity and carry their values unchanged.

use alloc::vec::Vec;

use crate::biotsavart::{ExteriorField, ExteriorModel, LimitField, LimitModel, VortexParticleSet};
use crate::complexplane::{discrete_lp_norm, CPoint};
use crate::conformal::{ExteriorMap, ADMISSIBILITY_MARGIN};
use crate::error::{Error, Result};

/// Either velocity model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VelocityModel {
    Exterior(ExteriorModel),
    Limit(LimitModel),
}

impl VelocityModel {
    pub fn assemble(&self, particles: &VortexParticleSet) -> Result<AssembledField> {
        Ok(match self {
            VelocityModel::Exterior(m) => AssembledField::Exterior(m.assemble(particles)?),
            VelocityModel::Limit(m) => AssembledField::Limit(m.assemble(particles)?),
        })
    }

    pub fn gamma(&self) -> f64 {
        match self {
            VelocityModel::Exterior(m) => m.gamma(),
            VelocityModel::Limit(m) => m.gamma(),
        }
    }

    /// Whether `x` may carry a particle under this model.
    pub fn is_admissible(&self, x: CPoint) -> bool {
        match self {
            VelocityModel::Exterior(m) => m.map().is_admissible(x),
            VelocityModel::Limit(_) => x.is_finite(),
        }
    }

    /// Whether the straight segment `from -> to` touches the obstacle.
    fn segment_hits_obstacle(&self, from: CPoint, to: CPoint) -> bool {
        match self {
            VelocityModel::Exterior(m) => {
                let eps = m.epsilon();
                if !m.map().is_admissible(to) {
                    return true;
                }
                // crossing of the real axis inside [-ε, ε]
                if (from.im > 0.0) != (to.im > 0.0) && from.im != to.im {
                    let t = from.im / (from.im - to.im);
                    let x = from.re + t * (to.re - from.re);
                    return libm::fabs(x) <= eps * (1.0 + ADMISSIBILITY_MARGIN);
                }
                false
            }
            VelocityModel::Limit(_) => !to.is_finite(),
        }
    }
}

impl From<ExteriorModel> for VelocityModel {
    fn from(m: ExteriorModel) -> Self {
        VelocityModel::Exterior(m)
    }
}

impl From<LimitModel> for VelocityModel {
    fn from(m: LimitModel) -> Self {
        VelocityModel::Limit(m)
    }
}

/// A model assembled against one particle configuration.
#[derive(Debug, Clone)]
pub enum AssembledField {
    Exterior(ExteriorField),
    Limit(LimitField),
}

impl AssembledField {
    pub fn velocity(&self, x: CPoint) -> Result<CPoint> {
        match self {
            AssembledField::Exterior(f) => f.velocity(x),
            AssembledField::Limit(f) => f.velocity(x),
        }
    }

    /// Velocity of particle `i` located at `x`, without its own direct term.
    pub fn particle_velocity(&self, x: CPoint, i: usize) -> Result<CPoint> {
        match self {
            AssembledField::Exterior(f) => f.velocity_excluding(x, i),
            AssembledField::Limit(f) => f.velocity_excluding(x, i),
        }
    }
}

/// Evaluates particle velocities for one Runge-Kutta stage.
///
/// Implementations must write `out[i]` for particle `i` using a fixed
/// summation order so that results do not depend on scheduling.
pub trait StageEvaluator {
    fn particle_velocities(
        &self,
        field: &AssembledField,
        positions: &[CPoint],
        out: &mut [CPoint],
    ) -> Result<()>;
}

/// Single-threaded evaluator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl StageEvaluator for Serial {
    fn particle_velocities(
        &self,
        field: &AssembledField,
        positions: &[CPoint],
        out: &mut [CPoint],
    ) -> Result<()> {
        for (i, (x, slot)) in positions.iter().zip(out.iter_mut()).enumerate() {
            *slot = field.particle_velocity(*x, i)?;
        }
        Ok(())
    }
}

/// Time, particles and model of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportState {
    pub t: f64,
    pub particles: VortexParticleSet,
    pub model: VelocityModel,
    /// `+1` for the physical flow, `-1` to advect with the negated velocity.
    pub direction: f64,
}

impl TransportState {
    pub fn new(particles: VortexParticleSet, model: impl Into<VelocityModel>) -> Result<Self> {
        let model = model.into();
        for p in particles.positions() {
            if !model.is_admissible(*p) {
                return Err(Error::Inadmissible {
                    point: *p,
                    distance: 0.0,
                });
            }
        }
        Ok(TransportState {
            t: 0.0,
            particles,
            model,
            direction: 1.0,
        })
    }

    /// The same state advected by `-u`.
    pub fn reversed(&self) -> Self {
        TransportState {
            direction: -self.direction,
            ..self.clone()
        }
    }
}

/// Diagnostics of a state; `max_step` and `max_speed` refer to the step that
/// produced it (zero for an initial state).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationReport {
    pub t: f64,
    pub mass: f64,
    pub l1: f64,
    pub l2: f64,
    pub l4: f64,
    pub linf: f64,
    pub support_radius: f64,
    pub max_step: f64,
    pub max_speed: f64,
}

pub fn conservation_report(state: &TransportState) -> ConservationReport {
    let p = &state.particles;
    let weights: Vec<f64> = alloc::vec![p.area(); p.len()];
    // lengths agree and weights are positive by construction
    let norm = |q: f64| discrete_lp_norm(p.values(), &weights, q).unwrap_or(f64::NAN);
    ConservationReport {
        t: state.t,
        mass: p.mass(),
        l1: norm(1.0),
        l2: norm(2.0),
        l4: norm(4.0),
        linf: norm(f64::INFINITY),
        support_radius: p.positions().iter().fold(0.0, |m, x| m.max(x.norm())),
        max_step: 0.0,
        max_speed: 0.0,
    }
}

/// Result of one accepted step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub state: TransportState,
    /// Largest particle displacement over the step.
    pub max_step: f64,
    /// Largest speed seen at any stage of the step.
    pub max_speed: f64,
}

pub fn rk4_step(state: &TransportState, dt: f64) -> Result<StepOutcome> {
    rk4_step_with(&Serial, state, dt)
}

/// Classical four-stage Runge-Kutta step of every particle position.
pub fn rk4_step_with<E: StageEvaluator>(
    evaluator: &E,
    state: &TransportState,
    dt: f64,
) -> Result<StepOutcome> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain {
            op: "rk4_step",
            reason: "dt must be positive and finite",
        });
    }
    let n = state.particles.len();
    let x0 = state.particles.positions();
    let h = dt * state.direction;
    let mut max_speed: f64 = 0.0;
    let mut stage = |positions: &[CPoint], out: &mut Vec<CPoint>| -> Result<()> {
        for (i, (a, b)) in x0.iter().zip(positions).enumerate() {
            if state.model.segment_hits_obstacle(*a, *b) {
                return Err(Error::StepRejected {
                    t: state.t,
                    index: i,
                });
            }
        }
        let particles = state.particles.with_positions(positions.to_vec())?;
        let field = state.model.assemble(&particles)?;
        out.resize(n, CPoint::ZERO);
        evaluator.particle_velocities(&field, positions, out)?;
        for v in out.iter() {
            max_speed = max_speed.max(v.norm());
        }
        Ok(())
    };
    let offset = |k: &[CPoint], c: f64| -> Vec<CPoint> {
        x0.iter().zip(k).map(|(x, v)| *x + *v * (c * h)).collect()
    };
    let mut k1 = Vec::new();
    let mut k2 = Vec::new();
    let mut k3 = Vec::new();
    let mut k4 = Vec::new();
    stage(x0, &mut k1)?;
    stage(&offset(&k1, 0.5), &mut k2)?;
    stage(&offset(&k2, 0.5), &mut k3)?;
    stage(&offset(&k3, 1.0), &mut k4)?;
    let mut next = Vec::with_capacity(n);
    let mut max_step: f64 = 0.0;
    for i in 0..n {
        let incr = (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        max_step = max_step.max(incr.norm());
        next.push(x0[i] + incr);
    }
    for (i, (a, b)) in x0.iter().zip(&next).enumerate() {
        if state.model.segment_hits_obstacle(*a, *b) {
            return Err(Error::StepRejected {
                t: state.t,
                index: i,
            });
        }
    }
    Ok(StepOutcome {
        state: TransportState {
            t: state.t + dt,
            particles: state.particles.with_positions(next)?,
            model: state.model,
            direction: state.direction,
        },
        max_step,
        max_speed,
    })
}

/// Number of steps and the step size actually used to reach `t_final`.
///
/// The step count is `round(t_final / dt)` (at least one) and the step is
/// stretched so the run ends exactly at `t_final`.
pub fn step_plan(dt: f64, t_final: f64) -> Result<(usize, f64)> {
    if !(dt > 0.0) || !(t_final > 0.0) || !dt.is_finite() || !t_final.is_finite() {
        return Err(Error::Domain {
            op: "run",
            reason: "dt and t_final must be positive and finite",
        });
    }
    let n = (libm::round(t_final / dt) as usize).max(1);
    Ok((n, t_final / n as f64))
}

/// Output of [`run`]; `aborted` carries the step rejection that cut the run
/// short, with all output up to that point retained.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub states: Vec<TransportState>,
    pub reports: Vec<ConservationReport>,
    pub aborted: Option<Error>,
}

/// Repeated [`rk4_step`] from `state0` to `t_final`, keeping every state.
pub fn run(state0: &TransportState, dt: f64, t_final: f64) -> Result<RunOutput> {
    let mut states = alloc::vec![state0.clone()];
    let mut reports = alloc::vec![conservation_report(state0)];
    let aborted = run_observed(&Serial, state0, dt, t_final, |s, r| {
        states.push(s.clone());
        reports.push(*r);
    })?;
    Ok(RunOutput {
        states,
        reports,
        aborted,
    })
}

/// Steps from `state0` to `t_final`, handing each new state and its report to
/// `observe`. Returns the rejection that aborted the run, if any; invalid
/// arguments are reported as `Err`.
pub fn run_observed<E, F>(
    evaluator: &E,
    state0: &TransportState,
    dt: f64,
    t_final: f64,
    mut observe: F,
) -> Result<Option<Error>>
where
    E: StageEvaluator,
    F: FnMut(&TransportState, &ConservationReport),
{
    let (steps, h) = step_plan(dt, t_final)?;
    let mut state = state0.clone();
    for k in 0..steps {
        match rk4_step_with(evaluator, &state, h) {
            Ok(out) => {
                state = out.state;
                // keep the clock exact at the end of the run
                if k + 1 == steps {
                    state.t = state0.t + t_final;
                }
                let mut report = conservation_report(&state);
                report.max_step = out.max_step;
                report.max_speed = out.max_speed;
                observe(&state, &report);
            }
            Err(e @ Error::StepRejected { .. }) => return Ok(Some(e)),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Built-in initial vorticities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VorticityPreset {
    /// `exp(-|x - (0, 2)|² / 0.25)` truncated to the disk of radius `3.5σ`.
    Gaussian,
    /// Opposite Gaussians of width 0.25 at `(∓0.5, 1.5)`, odd under
    /// `x₁ ↦ -x₁`; the pair drifts upward.
    Dipole,
    Zero,
}

/// Truncation radius of each Gaussian, in units of its width.
pub const GAUSSIAN_TRUNCATION: f64 = 3.5;
/// Values below this fraction of the maximum are dropped when sampling.
pub const DROP_FRACTION: f64 = 1e-12;

struct Bump {
    center: CPoint,
    sigma: f64,
    sign: f64,
}

impl VorticityPreset {
    fn bumps(&self) -> &'static [Bump] {
        const GAUSSIAN: [Bump; 1] = [Bump {
            center: CPoint::new(0.0, 2.0),
            sigma: 0.5,
            sign: 1.0,
        }];
        const DIPOLE: [Bump; 2] = [
            Bump {
                center: CPoint::new(-0.5, 1.5),
                sigma: 0.25,
                sign: 1.0,
            },
            Bump {
                center: CPoint::new(0.5, 1.5),
                sigma: 0.25,
                sign: -1.0,
            },
        ];
        match self {
            VorticityPreset::Gaussian => &GAUSSIAN,
            VorticityPreset::Dipole => &DIPOLE,
            VorticityPreset::Zero => &[],
        }
    }

    pub fn omega(&self, x: CPoint) -> f64 {
        let mut acc = 0.0;
        for b in self.bumps() {
            let r2 = (x - b.center).norm_sqr() / (b.sigma * b.sigma);
            if r2 <= GAUSSIAN_TRUNCATION * GAUSSIAN_TRUNCATION {
                acc += b.sign * libm::exp(-r2);
            }
        }
        acc
    }

    /// Largest `|x|` over the support.
    pub fn support_radius(&self) -> f64 {
        self.bumps().iter().fold(0.0, |m: f64, b| {
            m.max(b.center.norm() + GAUSSIAN_TRUNCATION * b.sigma)
        })
    }

    /// Samples the preset at the midpoints `((i + ½)h, (j + ½)h)` of a lattice
    /// anchored at the origin, keeping points accepted by `admissible`.
    ///
    /// The lattice does not depend on the support, so different obstacles
    /// receive the same particles.
    pub fn sample<F>(&self, h: f64, mut admissible: F) -> Result<VortexParticleSet>
    where
        F: FnMut(CPoint) -> bool,
    {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain {
                op: "VorticityPreset::sample",
                reason: "lattice spacing must be positive and finite",
            });
        }
        let area = h * h;
        let bumps = self.bumps();
        if bumps.is_empty() {
            return VortexParticleSet::empty(area);
        }
        let mut lo = CPoint::new(f64::INFINITY, f64::INFINITY);
        let mut hi = CPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for b in bumps {
            let r = GAUSSIAN_TRUNCATION * b.sigma;
            lo = CPoint::new(lo.re.min(b.center.re - r), lo.im.min(b.center.im - r));
            hi = CPoint::new(hi.re.max(b.center.re + r), hi.im.max(b.center.im + r));
        }
        let i0 = libm::floor(lo.re / h) as i64;
        let i1 = libm::ceil(hi.re / h) as i64;
        let j0 = libm::floor(lo.im / h) as i64;
        let j1 = libm::ceil(hi.im / h) as i64;
        let mut samples = Vec::new();
        let mut peak: f64 = 0.0;
        for j in j0..j1 {
            for i in i0..i1 {
                let x = CPoint::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                let w = self.omega(x);
                if w != 0.0 {
                    peak = peak.max(libm::fabs(w));
                    samples.push((x, w));
                }
            }
        }
        let mut positions = Vec::new();
        let mut values = Vec::new();
        for (x, w) in samples {
            if libm::fabs(w) >= DROP_FRACTION * peak && admissible(x) {
                positions.push(x);
                values.push(w);
            }
        }
        VortexParticleSet::new(positions, values, area)
    }
}

/// Passive tracers (zero vorticity) at the given points, added to `particles`.
pub fn with_tracers(
    particles: &VortexParticleSet,
    tracers: &[CPoint],
) -> Result<VortexParticleSet> {
    let extra = VortexParticleSet::new(
        tracers.to_vec(),
        alloc::vec![0.0; tracers.len()],
        particles.area(),
    )?;
    particles.merged(&extra)
}
