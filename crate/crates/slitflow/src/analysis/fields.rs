//! Checks on the assembled velocity fields at fixed time.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slitflow_core::biotsavart::{harmonic_h, jump_function_g, kernel_k};
use slitflow_core::complexplane::{contour_circulation, Contour};
use slitflow_core::conformal::dist_to_slit;
use slitflow_core::{
    CPoint, ExteriorMap, ExteriorModel, Result, ScaledSlitMap, VortexParticleSet, VorticityPreset,
};

use super::{fit, CheckContext, CheckOutput, Item, EPS_SWEEP};
use crate::output::{num, Table};

/// `n` particles whose images lie in `1.3 < |w| < 3`.
fn random_cloud(rng: &mut ChaCha8Rng, eps: f64, n: usize) -> Result<VortexParticleSet> {
    let map = ScaledSlitMap::new(eps)?;
    let mut positions = Vec::with_capacity(n);
    for _ in 0..n {
        let w = CPoint::from_polar(rng.gen_range(1.3..3.0), rng.gen_range(0.0..2.0 * PI));
        positions.push(map.inverse(w)?);
    }
    let values = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    VortexParticleSet::new(positions, values, 0.05)
}

pub(super) fn harmonic_normalization(_: &CheckContext) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();
    let contour = Contour::circle(CPoint::ZERO, 5.0, 512)?;
    let mut t = Table::new(&["epsilon", "circulation"]);
    for eps in [1.0, 0.1, 0.01] {
        let map = ScaledSlitMap::new(eps)?;
        let c = contour_circulation(|x| harmonic_h(&map, x), &contour)?;
        t.push_nums(&[eps, c]);
        out.items.push(Item::within(
            format!("circulation of H at eps={eps}"),
            c,
            1.0,
            1e-6,
        ));
    }
    out.table("circulation", t);
    let near = harmonic_h(&ScaledSlitMap::new(0.01)?, CPoint::ONE)?;
    out.items.push(Item::at_most(
        "|H_eps(1,0) - (0,1/2pi)| at eps=0.01",
        (near - CPoint::new(0.0, 0.5 / PI)).norm(),
        0.01,
    ));
    let h = harmonic_h(&ScaledSlitMap::new(1.0)?, CPoint::new(0.0, 1e-8))?;
    out.items.push(Item::at_most(
        "normal/|H| just above the slit",
        h.im.abs() / h.norm(),
        1e-6,
    ));
    Ok(out)
}

pub(super) fn tangency(ctx: &CheckContext) -> Result<CheckOutput> {
    let eps = 0.5;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x74616e);
    let cloud = random_cloud(&mut rng, eps, 30)?;
    let configs = [
        (
            "gamma only",
            ExteriorModel::new(eps, 1.0, 0.0)?,
            VortexParticleSet::empty(0.05)?,
        ),
        ("particle cloud", ExteriorModel::new(eps, 0.7, 0.05)?, cloud),
    ];
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["config", "s", "side", "u_tangential", "u_normal"]);
    for (name, model, particles) in configs {
        let field = model.assemble(&particles)?;
        let mut max_u: f64 = 0.0;
        let mut max_normal: f64 = 0.0;
        for k in 0..10 {
            let s = -0.9 + 0.2 * k as f64;
            for side in [1.0, -1.0] {
                let u = field.velocity(CPoint::new(eps * s, side * 1e-7))?;
                max_u = max_u.max(u.norm());
                max_normal = max_normal.max(u.im.abs());
                t.push(vec![
                    name.to_string(),
                    num(s),
                    num(side),
                    num(u.re),
                    num(u.im),
                ]);
            }
        }
        out.items.push(Item::at_most(
            format!("max normal/max |u| ({name})"),
            max_normal / max_u,
            1e-5,
        ));
    }
    out.table("probes", t);
    Ok(out)
}

pub(super) fn circulation_structure(ctx: &CheckContext) -> Result<CheckOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x636972);
    let contour = Contour::circle(CPoint::ZERO, 5.0, 512)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "gamma", "mass", "circulation"]);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let eps = rng.gen_range(0.05..1.0);
        let gamma = rng.gen_range(-2.0..2.0);
        let p = random_cloud(&mut rng, eps, 20)?;
        let field = ExteriorModel::new(eps, gamma, 0.02)?.assemble(&p)?;
        let c = contour_circulation(|x| field.velocity(x), &contour)?;
        let m = p.mass();
        worst = worst.max((c - gamma - m).abs() / (1.0 + gamma.abs() + m.abs()));
        t.push_nums(&[eps, gamma, m, c]);
    }
    out.items.push(Item::at_most(
        "max |circ - (gamma+m)|/(1+|gamma|+|m|)",
        worst,
        1e-3,
    ));

    // one unit point vortex at (0, 3) beside a slit of half-length 0.1
    let y0 = CPoint::new(0.0, 3.0);
    let p = VortexParticleSet::new(vec![y0], vec![1.0], 1.0)?;
    let field = ExteriorModel::new(0.1, 0.0, 0.0)?.assemble(&p)?;
    let local = contour_circulation(|x| field.velocity(x), &Contour::circle(y0, 0.5, 512)?)?;
    let outer = contour_circulation(
        |x| field.velocity(x),
        &Contour::circle(CPoint::ZERO, 6.0, 512)?,
    )?;
    out.items.push(Item::within(
        "circulation around the vortex",
        local,
        1.0,
        1e-3,
    ));
    out.items
        .push(Item::within("circulation at radius 6", outer, 1.0, 1e-3));
    t.push_nums(&[0.1, 0.0, 1.0, outer]);
    out.table("configs", t);
    Ok(out)
}

/// Probes for the `I₁`, `Ĩ₂` sups: a fixed physical grid plus points at
/// a fixed fraction of ε from the slit, all outside the guard band.
fn i_est_probes(eps: f64) -> Vec<CPoint> {
    let guard = (1e-3f64).max(0.02 * eps);
    let mut probes = Vec::new();
    for j in -10..=10 {
        for i in -10..=10 {
            probes.push(CPoint::new(0.3 * i as f64, 0.3 * j as f64));
        }
    }
    for k in 0..21 {
        let s = -1.2 + 0.12 * k as f64;
        for h in [0.05, 0.2, 0.5] {
            probes.push(CPoint::new(eps * s, eps * h));
            probes.push(CPoint::new(eps * s, -eps * h));
        }
    }
    probes.retain(|x| dist_to_slit(eps, *x) >= guard);
    probes
}

pub(super) fn i_est_scaling(_: &CheckContext) -> Result<CheckOutput> {
    let particles = VorticityPreset::Gaussian.sample(0.1, |_| true)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "sup_i1", "sup_i2_tilde"]);
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    for eps in EPS_SWEEP {
        let field = ExteriorModel::new(eps, 0.0, 0.0)?.assemble(&particles)?;
        let (mut a, mut b): (f64, f64) = (0.0, 0.0);
        for x in i_est_probes(eps) {
            let d = field.decomposed(x)?;
            a = a.max(d.i1.norm());
            b = b.max(d.i2_tilde.norm());
        }
        s1.push(a);
        s2.push(b);
        t.push_nums(&[eps, a, b]);
    }
    let e = EPS_SWEEP.to_vec();
    out.items.push(Item::within(
        "sup |I1| slope",
        fit(&e, &s1)?.slope,
        1.0,
        0.1,
    ));
    out.items.push(Item::within(
        "sup |I2~| slope",
        fit(&e, &s2)?.slope,
        1.0,
        0.1,
    ));
    out.items.push(Item::recorded(
        "C for I1 (sup/eps at smallest eps)",
        s1[3] / EPS_SWEEP[3],
    ));
    out.items.push(Item::recorded(
        "C for I2~ (sup/eps at smallest eps)",
        s2[3] / EPS_SWEEP[3],
    ));
    out.table("sweep", t);
    Ok(out)
}

pub(super) fn kernel_far_field(ctx: &CheckContext) -> Result<CheckOutput> {
    let eps = 0.1;
    let map = ScaledSlitMap::new(eps)?;
    let bump = VorticityPreset::Gaussian.sample(0.1, |_| true)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["radius", "abs_k"]);
    let radii = [10.0, 20.0, 40.0, 80.0];
    let mut mags = Vec::new();
    for r in radii {
        let x = CPoint::new(r, 0.0);
        let mut k = CPoint::ZERO;
        for (i, y) in bump.positions().iter().enumerate() {
            k += kernel_k(&map, x, *y, 0.0)? * bump.strength(i);
        }
        mags.push(k.norm());
        t.push_nums(&[r, k.norm()]);
    }
    out.items.push(Item::within(
        "|K[f]| decay slope",
        fit(&radii, &mags)?.slope,
        -2.0,
        0.05,
    ));
    out.table("decay", t);

    let unit = ScaledSlitMap::new(1.0)?;
    let mut worst: f64 = 0.0;
    for (a, b) in [(0.5, 2.0), (1.0, 3.0), (2.5, 0.2), (4.0, 1.5)] {
        let k = kernel_k(&unit, CPoint::new(0.0, a), CPoint::new(0.0, b), 0.0)?;
        worst = worst.max(k.im.abs() / k.norm());
    }
    out.items.push(Item::at_most(
        "vertical/|K| on the imaginary axis",
        worst,
        1e-10,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x6b6572);
    let mut bound_ratio: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let x = CPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let y = CPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        if !unit.is_admissible(x) || !unit.is_admissible(y) || (x - y).norm() < 1e-6 {
            continue;
        }
        let jx = unit.jet(x)?;
        let ty = unit.jet(y)?.value;
        let ty_star = ty / ty.norm_sqr();
        let bound = (ty - ty_star).norm() / ((jx.value - ty).norm() * (jx.value - ty_star).norm())
            * jx.d1.norm()
            / (2.0 * PI);
        bound_ratio = bound_ratio.max(kernel_k(&unit, x, y, 0.0)?.norm() / bound);
        n += 1;
    }
    out.items.push(Item::at_most(
        "max |K| / image bound",
        bound_ratio,
        1.0 + 1e-12,
    ));
    Ok(out)
}

pub(super) fn jump_function(_: &CheckContext) -> Result<CheckOutput> {
    let eps = 0.5;
    let empty = VortexParticleSet::empty(1.0)?;
    let model = ExteriorModel::new(eps, 1.0, 0.0)?;
    let field = model.assemble(&empty)?;
    let mut out = CheckOutput::default();

    // midpoint rule on 200 stations clipped to |s| <= 0.999
    let n = 200;
    let mut total = 0.0;
    let mut t = Table::new(&["s", "g"]);
    for k in 0..n {
        let s = (-1.0 + (k as f64 + 0.5) * 2.0 / n as f64).clamp(-0.999, 0.999);
        let g = field.jump_density(s)?;
        total += g * eps * 2.0 / n as f64;
        t.push_nums(&[s, g]);
    }
    out.items.push(Item::within(
        "eps * integral of g (gamma = 1)",
        total,
        1.0,
        0.05,
    ));
    out.table("stations", t);

    let gaps = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
    let gs: Vec<f64> = gaps
        .iter()
        .map(|d| field.jump_density(1.0 - d).map(f64::abs))
        .collect::<Result<_>>()?;
    out.items.push(Item::within(
        "|g| endpoint slope",
        fit(&gaps, &gs)?.slope,
        -0.5,
        0.05,
    ));

    let ds: Vec<f64> = (2..=8).map(|k| 10f64.powi(-k)).collect();
    let speeds: Vec<f64> = ds
        .iter()
        .map(|d| {
            field
                .velocity(CPoint::new(eps * (1.0 + d), 0.0))
                .map(|u| u.norm())
        })
        .collect::<Result<_>>()?;
    out.items.push(Item::within(
        "|u| endpoint slope",
        fit(&ds, &speeds)?.slope,
        -0.5,
        0.05,
    ));

    // odd under conjugation: the flow is mirror-symmetric across the slit line
    let half = VorticityPreset::Gaussian.sample(0.2, |_| true)?;
    let mirror = VortexParticleSet::new(
        half.positions().iter().map(|x| x.conj()).collect(),
        half.values().iter().map(|w| -w).collect(),
        half.area(),
    )?;
    let both = half.merged(&mirror)?;
    let quiet = ExteriorModel::new(eps, 0.0, 0.0)?;
    let mut worst: f64 = 0.0;
    for k in 0..9 {
        let s = -0.8 + 0.2 * k as f64;
        worst = worst.max(jump_function_g(&quiet, &both, s)?.abs());
    }
    out.items.push(Item::at_most(
        "max |g| for reflection-odd vorticity",
        worst,
        1e-6,
    ));
    Ok(out)
}
