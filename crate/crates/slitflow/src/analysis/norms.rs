//! Integral norms: the cutoff family, the harmonic field and the reduced
//! velocity `v^ε = u^ε - γ H_ε`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slitflow_core::biotsavart::{free_vortex, harmonic_h, ExteriorField, LimitField};
use slitflow_core::complexplane::{RefinedCells, Refinement};
use slitflow_core::cutoff::{grad_phi_eps, transition_cells, CutoffProfile};
use slitflow_core::{
    CPoint, ExteriorMap, ExteriorModel, Result, ScaledSlitMap, VortexParticleSet, VorticityPreset,
};

use super::{
    fit, spread, strictly_decreasing, worst_step_ratio, CheckContext, CheckOutput, Item, EPS_SWEEP,
};
use crate::output::Table;

/// Particle spacing of the Gaussian patch used by the velocity norms.
const PATCH_H: f64 = 0.1;

fn gaussian_patch() -> Result<VortexParticleSet> {
    VorticityPreset::Gaussian.sample(PATCH_H, |_| true)
}

pub(super) fn cutoff_lemma(ctx: &CheckContext) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();

    let eps = 0.1;
    let map = ScaledSlitMap::new(eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x706869);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let w = CPoint::from_polar(rng.gen_range(2.0..3.0), rng.gen_range(0.0..2.0 * PI));
        let x = map.inverse(w)?;
        let g = grad_phi_eps(eps, x)?;
        let h = harmonic_h(&map, x)?;
        if g.norm() > 0.0 {
            worst = worst.max(h.dot(g).abs() / (h.norm() * g.norm()));
        }
    }
    out.items.push(Item::at_most(
        "max |H.grad Phi| / (|H||grad Phi|)",
        worst,
        1e-10,
    ));

    let ps = [1.0, 2.0, 3.0];
    let mut t = Table::new(&["epsilon", "support_area", "grad_l1", "grad_l2", "grad_l3"]);
    let mut norms = vec![Vec::new(); ps.len()];
    let mut worst_area: f64 = 0.0;
    for eps in EPS_SWEEP {
        let cells = transition_cells(eps)?;
        let area = cells.total_area();
        let exact = 20.0 * PI / 9.0 * eps * eps;
        worst_area = worst_area.max((area / exact - 1.0).abs());
        let mut row = vec![eps, area];
        for (k, p) in ps.iter().enumerate() {
            let n = cells.lp_norm(*p, |x| Ok(grad_phi_eps(eps, x)?.norm()))?;
            norms[k].push(n);
            row.push(n);
        }
        t.push_nums(&row);
    }
    out.items.push(Item::at_most(
        "max relative error of support area vs 20pi/9 eps^2",
        worst_area,
        0.02,
    ));
    for (k, p) in ps.iter().enumerate() {
        let slope = fit(&EPS_SWEEP, &norms[k])?.slope;
        out.items.push(Item::within(
            format!("||grad Phi||_L{p} slope"),
            slope,
            2.0 / p - 1.0,
            0.05,
        ));
    }
    out.table("sweep", t);
    Ok(out)
}

/// Cells over `B(0, r)`, graded toward the origin and toward the slit.
fn plane_cells(
    eps: f64,
    r: f64,
    base: f64,
    keep: impl FnMut(CPoint) -> bool,
) -> Result<RefinedCells> {
    let foci = [
        CPoint::ZERO,
        CPoint::new(-eps, 0.0),
        CPoint::new(eps, 0.0),
        CPoint::new(-0.5 * eps, 0.0),
        CPoint::new(0.5 * eps, 0.0),
    ];
    let mut keep = keep;
    RefinedCells::build(
        Refinement {
            half_width: r,
            half_height: r,
            base,
            foci: &foci,
            reach: 4.0,
            min_size: eps / 256.0,
        },
        |x| x.norm() <= r && keep(x),
    )
}

pub(super) fn h_limit(_: &CheckContext) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "l1", "l3_2", "pointwise_at_2"]);
    let (mut l1, mut l15, mut point) = (Vec::new(), Vec::new(), Vec::new());
    for eps in EPS_SWEEP {
        let map = ScaledSlitMap::new(eps)?;
        let cells = plane_cells(eps, 2.0, 0.04, |x| map.is_admissible(x))?;
        let gap = |x: CPoint| Ok((harmonic_h(&map, x)? - free_vortex(x)?).norm());
        let a = cells.lp_norm(1.0, gap)?;
        let b = cells.lp_norm(1.5, gap)?;
        let c = gap(CPoint::new(2.0, 0.0))?;
        l1.push(a);
        l15.push(b);
        point.push(c);
        t.push_nums(&[eps, a, b, c]);
    }
    out.items.push(Item::at_least(
        "||H_eps - H||_L3/2 slope",
        fit(&EPS_SWEEP, &l15)?.slope,
        1.0 / 3.0 - 0.1,
    ));
    out.items.push(Item::holds(
        "worst step ratio of ||H_eps - H||_L1",
        worst_step_ratio(&l1),
        "strictly decreasing",
        strictly_decreasing(&l1),
    ));
    let (ef, el) = (EPS_SWEEP[0], EPS_SWEEP[3]);
    let envelope = (el * (2.0 / el).ln()) / (ef * (2.0 / ef).ln()) * 1.5;
    out.items
        .push(Item::at_most("L1 final/first", l1[3] / l1[0], envelope));
    out.items.push(Item::at_least(
        "|H_eps - H|(2,0) slope",
        fit(&EPS_SWEEP, &point)?.slope,
        1.0,
    ));
    out.table("sweep", t);
    Ok(out)
}

/// `‖v^ε‖_{L^p(B(0,r))}` for an assembled exterior field.
pub fn velocity_lp_norm(field: &ExteriorField, r: f64, p: f64) -> Result<f64> {
    let map = *field.model().map();
    let eps = map.epsilon();
    let cells = plane_cells(eps, r, r / 50.0, |x| map.is_admissible(x))?;
    cells.lp_norm(p, |x| Ok(field.reduced_velocity(x)?.norm()))
}

pub(super) fn velocity_lp(_: &CheckContext) -> Result<CheckOutput> {
    let patch = gaussian_patch()?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "radius", "v_l3", "v_l3_over_envelope"]);
    let mut by_eps = Vec::new();
    for eps in EPS_SWEEP {
        let field = ExteriorModel::with_default_blob(eps, 0.0, &patch)?.assemble(&patch)?;
        let n = velocity_lp_norm(&field, 2.0, 3.0)?;
        by_eps.push(n);
        t.push_nums(&[eps, 2.0, n, n / (1.0 + 2f64.powf(2.0 / 3.0))]);
    }
    out.items.push(Item::at_most(
        "max/min ||v||_L3(B(0,2)) over eps",
        spread(&by_eps),
        1.5,
    ));

    let eps = 0.1;
    let field = ExteriorModel::with_default_blob(eps, 0.0, &patch)?.assemble(&patch)?;
    let mut env = Vec::new();
    for r in [1.0, 2.0, 4.0, 8.0] {
        let n = velocity_lp_norm(&field, r, 3.0)?;
        let e = n / (1.0 + r.powf(2.0 / 3.0));
        env.push(e);
        t.push_nums(&[eps, r, n, e]);
    }
    out.items.push(Item::at_most(
        "max/min ||v||_L3 / (1+R^2/3) over R",
        spread(&env),
        2.0,
    ));

    // v excludes gamma H by definition: recompute through u - gamma H with gamma = 5
    let model5 = ExteriorModel::with_default_blob(eps, 5.0, &patch)?;
    let field5 = model5.assemble(&patch)?;
    let map = *model5.map();
    let cells = plane_cells(eps, 2.0, 0.04, |x| map.is_admissible(x))?;
    let n5 = cells.lp_norm(3.0, |x| {
        Ok((field5.velocity(x)? - harmonic_h(&map, x)? * 5.0).norm())
    })?;
    let n0 = velocity_lp_norm(&field, 2.0, 3.0)?;
    out.items.push(Item::at_most(
        "relative gap gamma=5 vs gamma=0",
        (n5 - n0).abs() / n0,
        1e-10,
    ));
    out.table("sweep", t);
    Ok(out)
}

/// Norms of `v^ε` over `{|T_ε| ≤ 3}` for one ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(super) struct CutoffRegionNorms {
    pub eps: f64,
    pub v_l2: f64,
    pub v_l3: f64,
    /// `‖v^ε · ∇^⊥Φ^ε‖_{L^{3/2}}`.
    pub v_phi: f64,
}

fn cutoff_region_norms(patch: &VortexParticleSet, eps: f64) -> Result<CutoffRegionNorms> {
    let model = ExteriorModel::with_default_blob(eps, 0.0, patch)?;
    let field = model.assemble(patch)?;
    let map = *model.map();
    let foci = [CPoint::new(-eps, 0.0), CPoint::new(eps, 0.0)];
    let base = eps / 100.0;
    let cells = RefinedCells::build(
        Refinement {
            half_width: 5.0 * eps / 3.0,
            half_height: 4.0 * eps / 3.0,
            base,
            foci: &foci,
            reach: 4.0,
            min_size: base / 16.0,
        },
        |x| matches!(map.jet(x), Ok(j) if j.value.norm() <= CutoffProfile::OUTER),
    )?;
    let (mut s2, mut s3, mut sphi) = (0.0, 0.0, 0.0);
    for c in cells.cells() {
        let v = field.reduced_velocity(c.center)?;
        let a = c.area();
        let n = v.norm();
        s2 += a * n * n;
        s3 += a * n * n * n;
        let g = grad_phi_eps(eps, c.center)?;
        if g != CPoint::ZERO {
            sphi += a * v.dot(g.perp()).abs().powf(1.5);
        }
    }
    Ok(CutoffRegionNorms {
        eps,
        v_l2: s2.sqrt(),
        v_l3: s3.cbrt(),
        v_phi: sphi.powf(2.0 / 3.0),
    })
}

fn cutoff_sweep(ctx: &CheckContext) -> Result<&Vec<CutoffRegionNorms>> {
    let cached = ctx.cutoff_region.get_or_init(|| {
        let patch = gaussian_patch().map_err(|e| e.to_string())?;
        EPS_SWEEP
            .iter()
            .map(|eps| cutoff_region_norms(&patch, *eps).map_err(|e| e.to_string()))
            .collect()
    });
    cached.as_ref().map_err(|_| slitflow_core::Error::Domain {
        op: "cutoff_sweep",
        reason: "velocity norms near the slit could not be evaluated",
    })
}

pub(super) fn v_phi_estimate(ctx: &CheckContext) -> Result<CheckOutput> {
    let rows = cutoff_sweep(ctx)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "v_dot_perp_grad_phi_l3_2"]);
    for r in rows {
        t.push_nums(&[r.eps, r.v_phi]);
    }
    let ys: Vec<f64> = rows.iter().map(|r| r.v_phi).collect();
    out.items.push(Item::at_least(
        "||v.perp grad Phi||_L3/2 slope",
        fit(&EPS_SWEEP, &ys)?.slope,
        1.0 / 3.0 - 0.05,
    ));
    out.table("sweep", t);
    Ok(out)
}

pub(super) fn remark_phi(ctx: &CheckContext) -> Result<CheckOutput> {
    let rows = cutoff_sweep(ctx)?;
    let mut out = CheckOutput::default();
    let mut t = Table::new(&["epsilon", "v_l2", "v_l3"]);
    for r in rows {
        t.push_nums(&[r.eps, r.v_l2, r.v_l3]);
    }
    let l2: Vec<f64> = rows.iter().map(|r| r.v_l2).collect();
    let l3: Vec<f64> = rows.iter().map(|r| r.v_l3).collect();
    out.items.push(Item::within(
        "||v||_L2(|T|<=3) slope",
        fit(&EPS_SWEEP, &l2)?.slope,
        1.0,
        0.1,
    ));
    out.items.push(Item::within(
        "||v||_L3(|T|<=3) slope",
        fit(&EPS_SWEEP, &l3)?.slope,
        2.0 / 3.0,
        0.1,
    ));
    out.table("sweep", t);
    Ok(out)
}

/// `‖u^ε - u‖_{L¹(K)}` on the annulus `K = B(0,4) \ B(0,0.5)`.
pub fn limit_discrepancy_l1(exterior: &ExteriorField, limit: &LimitField) -> Result<f64> {
    let cells = RefinedCells::build(
        Refinement {
            half_width: 4.0,
            half_height: 4.0,
            base: 0.05,
            foci: &[],
            reach: 0.0,
            min_size: 0.05,
        },
        |x| (0.5..=4.0).contains(&x.norm()),
    )?;
    cells.lp_norm(1.0, |x| {
        Ok((exterior.velocity(x)? - limit.velocity(x)?).norm())
    })
}
