use std::f64::consts::PI;

use slitflow_core::transport::{conservation_report, rk4_step, run, with_tracers};
use slitflow_core::{
    CPoint, ExteriorModel, LimitModel, TransportState, VortexParticleSet, VorticityPreset,
};

fn final_positions(state: &TransportState, dt: f64, t: f64) -> Vec<CPoint> {
    let out = run(state, dt, t).unwrap();
    assert!(out.aborted.is_none());
    out.states.last().unwrap().particles.positions().to_vec()
}

#[test]
fn tracer_returns_after_one_period() {
    let tracer = VortexParticleSet::new(vec![CPoint::ONE], vec![0.0], 1.0).unwrap();
    let s = TransportState::new(tracer, LimitModel::new(1.0, 0.0).unwrap()).unwrap();
    let end = final_positions(&s, 1e-3, 4.0 * PI * PI)[0];
    assert!((end - CPoint::ONE).norm() <= 1e-4, "{end:?}");
}

#[test]
fn two_blob_centroid_is_invariant() {
    let p = VortexParticleSet::new(
        vec![CPoint::new(-0.5, 0.1), CPoint::new(0.5, -0.1)],
        vec![10.0, 10.0],
        0.1,
    )
    .unwrap();
    let s = TransportState::new(p.clone(), LimitModel::new(0.0, 0.1).unwrap()).unwrap();
    let out = run(&s, 1e-2, 2.0).unwrap();
    let c0 = p.centroid().unwrap();
    for st in &out.states {
        assert!((st.particles.centroid().unwrap() - c0).norm() <= 1e-5);
        assert_eq!(st.particles.values(), p.values());
        assert_eq!(st.particles.area(), p.area());
    }
    // the pair actually rotated
    let last = out.states.last().unwrap().particles.positions()[0];
    assert!((last - p.positions()[0]).norm() > 0.05);
}

#[test]
fn time_reversal() {
    let p = VorticityPreset::Dipole.sample(0.125, |_| true).unwrap();
    let model = ExteriorModel::new(0.2, 0.5, 0.1).unwrap();
    let s = TransportState::new(p.clone(), model).unwrap();
    let fwd = run(&s, 1e-3, 0.5).unwrap();
    let back = run(&fwd.states.last().unwrap().reversed(), 1e-3, 0.5).unwrap();
    let end = back.states.last().unwrap();
    for (a, b) in end.particles.positions().iter().zip(p.positions()) {
        assert!((*a - *b).norm() <= 1e-6);
    }
}

#[test]
fn fourth_order_convergence() {
    let p = VorticityPreset::Dipole.sample(0.125, |_| true).unwrap();
    let p = with_tracers(&p, &[CPoint::new(1.0, 0.5)]).unwrap();
    let model = ExteriorModel::new(0.2, 1.0, 0.1).unwrap();
    let s = TransportState::new(p, model).unwrap();
    let t = 1.0;
    let reference = final_positions(&s, 0.025, t);
    let err = |dt: f64| -> f64 {
        let x = final_positions(&s, dt, t);
        x.iter()
            .zip(&reference)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let ratio = err(0.2) / err(0.1);
    assert!((12.0..=20.0).contains(&ratio), "{ratio}");
}

#[test]
fn report_symmetries() {
    let p = VorticityPreset::Gaussian.sample(0.1, |_| true).unwrap();
    let model = LimitModel::new(0.0, 0.1).unwrap();
    let r = conservation_report(&TransportState::new(p.clone(), model).unwrap());
    let doubled =
        conservation_report(&TransportState::new(p.scaled_values(2.0).unwrap(), model).unwrap());
    assert!((doubled.mass - 2.0 * r.mass).abs() < 1e-12 * r.mass);
    for (a, b) in [(r.l1, doubled.l1), (r.l2, doubled.l2), (r.l4, doubled.l4)] {
        assert!((b - 2.0 * a).abs() < 1e-12 * a);
    }
    let mirrored = p
        .with_positions(
            p.positions()
                .iter()
                .map(|x| CPoint::new(-x.re, x.im))
                .collect(),
        )
        .unwrap();
    let m = conservation_report(&TransportState::new(mirrored, model).unwrap());
    assert_eq!(m, r);
}

#[test]
fn stepping_keeps_values_bitwise() {
    let p = VorticityPreset::Gaussian.sample(0.2, |_| true).unwrap();
    let s = TransportState::new(p.clone(), ExteriorModel::new(0.1, 0.0, 0.2).unwrap()).unwrap();
    let next = rk4_step(&s, 0.01).unwrap().state;
    assert_eq!(next.particles.values(), p.values());
    assert_eq!(next.particles.len(), p.len());
}
