use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slitflow_core::biotsavart::{jump_function_g, ExteriorField};
use slitflow_core::complexplane::{contour_circulation, Contour};
use slitflow_core::{CPoint, ExteriorMap, ExteriorModel, ScaledSlitMap, VortexParticleSet};

fn random_cloud(rng: &mut ChaCha8Rng, eps: f64, n: usize) -> VortexParticleSet {
    let map = ScaledSlitMap::new(eps).unwrap();
    let positions = (0..n)
        .map(|_| {
            let w = CPoint::from_polar(rng.gen_range(1.3..3.0), rng.gen_range(0.0..2.0 * PI));
            map.inverse(w).unwrap()
        })
        .collect();
    let values = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    VortexParticleSet::new(positions, values, 0.05).unwrap()
}

fn div_curl(field: &ExteriorField, x: CPoint, h: f64) -> (f64, f64) {
    let ex = CPoint::new(h, 0.0);
    let ey = CPoint::new(0.0, h);
    let ux = (field.velocity(x + ex).unwrap() - field.velocity(x - ex).unwrap()) / (2.0 * h);
    let uy = (field.velocity(x + ey).unwrap() - field.velocity(x - ey).unwrap()) / (2.0 * h);
    (ux.re + uy.im, ux.im - uy.re)
}

#[test]
fn divergence_and_curl_vanish_away_from_vorticity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let eps = 0.5;
    let p = random_cloud(&mut rng, eps, 12);
    let field = ExteriorModel::new(eps, 0.7, 0.0)
        .unwrap()
        .assemble(&p)
        .unwrap();
    for x in [
        CPoint::new(3.0, 0.4),
        CPoint::new(-2.5, -1.8),
        CPoint::new(0.1, 2.9),
        CPoint::new(0.3, 0.2),
    ] {
        let scale = field.velocity(x).unwrap().norm() / x.norm();
        let (div, curl) = div_curl(&field, x, 1e-5);
        // limited by the difference quotient near the slit
        assert!(div.abs() < 1e-5 * scale.max(1e-3), "div {div} at {x:?}");
        assert!(curl.abs() < 1e-5 * scale.max(1e-3), "curl {curl} at {x:?}");
    }
}

#[test]
fn curl_recovers_a_plateau() {
    // flat top of radius 0.25 around (0, 1.5), smooth shoulder out to 0.45
    let center = CPoint::new(0.0, 1.5);
    let h = 0.01;
    let mut positions = Vec::new();
    let mut values = Vec::new();
    for j in -50..50 {
        for i in -50..50 {
            let x = center + CPoint::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            let r = (x - center).norm();
            let w = if r <= 0.25 {
                1.0
            } else if r < 0.45 {
                let t = (r - 0.25) / 0.2;
                1.0 - t * t * (3.0 - 2.0 * t)
            } else {
                0.0
            };
            if w > 0.0 {
                positions.push(x);
                values.push(w);
            }
        }
    }
    let p = VortexParticleSet::new(positions, values, h * h).unwrap();
    // blob radius is measured in the mapped plane
    let field = ExteriorModel::with_default_blob(0.2, 0.0, &p)
        .unwrap()
        .assemble(&p)
        .unwrap();
    let (div, curl) = div_curl(&field, center + CPoint::new(0.003, -0.002), 1e-5);
    assert!(div.abs() < 1e-5, "{div}");
    assert!((curl - 1.0).abs() < 0.02, "{curl}");
}

#[test]
fn outer_circulation_is_gamma_plus_mass() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let contour = Contour::circle(CPoint::ZERO, 5.0, 512).unwrap();
    for _ in 0..5 {
        let eps = rng.gen_range(0.1..1.0);
        let gamma = rng.gen_range(-2.0..2.0);
        let p = random_cloud(&mut rng, eps, 20);
        let field = ExteriorModel::new(eps, gamma, 0.02)
            .unwrap()
            .assemble(&p)
            .unwrap();
        let c = contour_circulation(|x| field.velocity(x), &contour).unwrap();
        let expected = gamma + p.mass();
        assert!(
            (c - expected).abs() <= 1e-3 * (1.0 + gamma.abs() + p.mass().abs()),
            "{c} vs {expected}"
        );
    }
}

#[test]
fn generic_cloud_is_tangent_to_the_slit() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eps = 0.3;
    let p = random_cloud(&mut rng, eps, 30);
    let field = ExteriorModel::new(eps, 1.3, 0.05)
        .unwrap()
        .assemble(&p)
        .unwrap();
    let mut max_u: f64 = 0.0;
    let mut max_normal: f64 = 0.0;
    for k in 1..40 {
        let s = -1.0 + k as f64 / 20.0;
        for side in [1.0, -1.0] {
            let u = field
                .velocity(CPoint::new(eps * s, side * 1e-12 * eps))
                .unwrap();
            max_u = max_u.max(u.norm());
            max_normal = max_normal.max(u.im.abs());
        }
    }
    assert!(max_normal <= 1e-5 * max_u, "{max_normal} vs {max_u}");
}

/// `ε ∫ g ds` by Gauss-Chebyshev quadrature.
fn jump_total(model: &ExteriorModel, p: &VortexParticleSet, n: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..n {
        let theta = (k as f64 + 0.5) * PI / n as f64;
        let s = theta.cos();
        acc += jump_function_g(model, p, s).unwrap() * theta.sin();
    }
    model.epsilon() * acc * PI / n as f64
}

#[test]
fn jump_integrates_to_gamma() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let eps = 0.4;
    let p = random_cloud(&mut rng, eps, 10);
    for gamma in [1.0, -0.5] {
        let model = ExteriorModel::new(eps, gamma, 0.0).unwrap();
        let total = jump_total(&model, &p, 64);
        assert!((total - gamma).abs() < 1e-4, "{total} vs {gamma}");
    }
}

#[test]
fn jump_vanishes_for_reflection_odd_vorticity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let half = random_cloud(&mut rng, 0.5, 8);
    let mirror = VortexParticleSet::new(
        half.positions().iter().map(|x| x.conj()).collect(),
        half.values().iter().map(|w| -w).collect(),
        half.area(),
    )
    .unwrap();
    let p = half.merged(&mirror).unwrap();
    let model = ExteriorModel::new(0.5, 0.0, 0.0).unwrap();
    let scale = jump_function_g(&model, &half, 0.0).unwrap().abs();
    for s in [-0.9, -0.4, 0.0, 0.3, 0.8] {
        let g = jump_function_g(&model, &p, s).unwrap();
        assert!(g.abs() < 1e-6 * scale.max(1.0), "{s}: {g}");
    }
}
