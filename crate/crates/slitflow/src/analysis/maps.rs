//! Checks on the conformal maps alone.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slitflow_core::complexplane::{frac_identity_check, RefinedCells, Refinement};
use slitflow_core::conformal::{joukowski, slit_map_jet};
use slitflow_core::{CPoint, ExteriorMap, Result, ScaledSlitMap, SlitMap, ThickenedMap};

use super::{
    fit, spread, strictly_decreasing, worst_step_ratio, CheckContext, CheckOutput, Item, EPS_SWEEP,
};
use crate::output::{num, Table};

pub(super) fn endpoint_rates(_: &CheckContext) -> Result<CheckOutput> {
    let ds: Vec<f64> = (2..=8).map(|k| 10f64.powi(-k)).collect();
    let mut out = CheckOutput::default();
    let mut table = Table::new(&["direction", "d", "abs_t_minus_1", "abs_d1", "abs_d2"]);
    for (name, dir) in [("real", CPoint::ONE), ("imag", CPoint::I)] {
        let mut v = Vec::new();
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for d in &ds {
            let jet = slit_map_jet(CPoint::ONE + dir * *d)?;
            v.push((jet.value - CPoint::ONE).norm());
            d1.push(jet.d1.norm());
            d2.push(jet.d2.norm());
            table.push(vec![
                name.to_string(),
                num(*d),
                num(*v.last().unwrap()),
                num(*d1.last().unwrap()),
                num(*d2.last().unwrap()),
            ]);
        }
        out.items.push(Item::within(
            format!("|T'| slope ({name})"),
            fit(&ds, &d1)?.slope,
            -0.5,
            0.01,
        ));
        out.items.push(Item::within(
            format!("|T''| slope ({name})"),
            fit(&ds, &d2)?.slope,
            -1.5,
            0.02,
        ));
        out.items.push(Item::within(
            format!("|T - 1| slope ({name})"),
            fit(&ds, &v)?.slope,
            0.5,
            0.02,
        ));
    }
    out.table("sweep", table);
    Ok(out)
}

pub(super) fn joukowski_roundtrip(ctx: &CheckContext) -> Result<CheckOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x6a6f75);
    let map = SlitMap;
    let mut worst: f64 = 0.0;
    let mut min_modulus = f64::INFINITY;
    let mut count = 0usize;
    while count < 10_000 {
        let z = if count % 4 == 3 {
            // close approach to either face of the slit
            let s = rng.gen_range(0.05..0.95) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let h =
                10f64.powf(-rng.gen_range(2.0..8.0)) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            CPoint::new(s, h)
        } else {
            CPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
        };
        if !map.is_admissible(z) {
            continue;
        }
        let w = map.jet(z)?.value;
        min_modulus = min_modulus.min(w.norm());
        let back = joukowski(w)?;
        worst = worst.max((back - z).norm() / z.norm());
        count += 1;
    }
    let mut out = CheckOutput::default();
    out.items
        .push(Item::at_most("max relative round-trip error", worst, 1e-10));
    out.items.push(Item::holds(
        "min |T(z)|",
        min_modulus,
        "> 1",
        min_modulus > 1.0,
    ));
    let mut t = Table::new(&["samples", "max_relative_error", "min_abs_t"]);
    t.push_nums(&[count as f64, worst, min_modulus]);
    out.table("stats", t);
    Ok(out)
}

pub(super) fn frac_identity(ctx: &CheckContext) -> Result<CheckOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x667261);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let mut draw = || {
            CPoint::from_polar(
                10f64.powf(rng.gen_range(-3.0..3.0)),
                rng.gen_range(0.0..2.0 * PI),
            )
        };
        let (a, b) = (draw(), draw());
        let (lhs, rhs) = frac_identity_check(a, b)?;
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    let mut out = CheckOutput::default();
    out.items
        .push(Item::at_most("max relative mismatch", worst, 1e-12));
    let mut t = Table::new(&["pairs", "max_relative_error"]);
    t.push_nums(&[10_000.0, worst]);
    out.table("stats", t);
    Ok(out)
}

/// Graded cells over `B(0, r)` refined toward the slit endpoints.
fn ball_cells(eps: f64, r: f64, keep: impl FnMut(CPoint) -> bool) -> Result<RefinedCells> {
    let foci = [CPoint::new(-eps, 0.0), CPoint::new(eps, 0.0)];
    let mut keep = keep;
    RefinedCells::build(
        Refinement {
            half_width: r,
            half_height: r,
            base: r / 100.0,
            foci: &foci,
            reach: 4.0,
            min_size: eps / 256.0,
        },
        |x| x.norm() <= r && keep(x),
    )
}

/// `|det D(T^{-1})(w)| = 1 / |T'(T^{-1}(w))|²`, evaluated through the forward jet.
fn inverse_det(map: &dyn ExteriorMap, w: CPoint) -> Result<f64> {
    let x = map.inverse(w)?;
    Ok(1.0 / map.jet(x)?.d1.norm_sqr())
}

fn annulus_samples(r_max: f64) -> Vec<CPoint> {
    let mut out = Vec::new();
    for i in 0..40 {
        let r = 1.001 * (r_max / 1.001f64).powf(i as f64 / 39.0);
        for k in 0..128 {
            out.push(CPoint::from_polar(r, (k as f64 + 0.5) * 2.0 * PI / 128.0));
        }
    }
    out
}

pub(super) fn biholo_scalings(_: &CheckContext) -> Result<CheckOutput> {
    let mut out = CheckOutput::default();
    let samples = annulus_samples(50.0);
    let mut det_t = Table::new(&["epsilon", "max_scaled_det"]);
    let mut dets = Vec::new();
    for eps in EPS_SWEEP {
        let map = ScaledSlitMap::new(eps)?;
        let mut m: f64 = 0.0;
        for w in &samples {
            m = m.max(inverse_det(&map, *w)? / (eps * eps));
        }
        dets.push(m);
        det_t.push_nums(&[eps, m]);
    }
    out.items.push(Item::at_most(
        "max/min of eps^-2 det D(T^-1)",
        spread(&dets),
        1.05,
    ));
    out.table("det", det_t);

    let mut lp_t = Table::new(&["epsilon", "p", "radius", "scaled_norm"]);
    for r in [1.0, 2.0] {
        for p in [1.0, 2.0, 3.0] {
            let mut vals = Vec::new();
            for eps in EPS_SWEEP {
                let map = ScaledSlitMap::new(eps)?;
                let cells = ball_cells(eps, r, |x| map.is_admissible(x))?;
                let n = cells.lp_norm(p, |x| Ok(map.jet(x)?.d1.norm()))?;
                vals.push(eps * n);
                lp_t.push_nums(&[eps, p, r, eps * n]);
            }
            out.items.push(Item::at_most(
                format!("max/min of eps*||DT||_L{p}(B(0,{r}))"),
                spread(&vals),
                1.25,
            ));
        }
    }
    out.table("lp", lp_t);

    let far = ScaledSlitMap::new(0.05)?
        .jet(CPoint::new(5.0, 0.0))?
        .d1
        .norm()
        * 0.05;
    out.items
        .push(Item::within("eps |DT(5,0)| at eps=0.05", far, 2.0, 0.02));
    for r in [1.0, 2.0] {
        let mut c: f64 = 0.0;
        for eps in EPS_SWEEP {
            let map = ScaledSlitMap::new(eps)?;
            for k in 0..6 {
                for j in 0..64 {
                    let x = CPoint::from_polar(r * 2f64.powi(k), j as f64 * PI / 32.0 + 0.01);
                    c = c.max(eps * map.jet(x)?.d1.norm());
                }
            }
        }
        out.items
            .push(Item::recorded(format!("C_R for |x| >= {r}"), c));
    }
    Ok(out)
}

pub(super) fn assumption31_family(_: &CheckContext) -> Result<CheckOutput> {
    let eps = 1.0;
    let etas = [0.2, 0.1, 0.05, 0.025];
    let base = ScaledSlitMap::new(eps)?;
    let mut out = CheckOutput::default();
    let mut table = Table::new(&[
        "eta",
        "sup_relative_gap",
        "det_ratio",
        "dt_gap_l3",
        "c_far_d1",
        "c_far_d2",
    ]);
    let probes: Vec<CPoint> = (0..60)
        .flat_map(|j| {
            (0..60).map(move |i| CPoint::new(-2.95 + 0.1 * i as f64, -2.95 + 0.1 * j as f64))
        })
        .collect();
    let w_samples = annulus_samples(5.0);
    let mut det0: f64 = 0.0;
    for w in &w_samples {
        det0 = det0.max(inverse_det(&base, *w)?);
    }
    let mut gaps = Vec::new();
    let mut c1s = Vec::new();
    let mut c2s = Vec::new();
    let mut worst_gap: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    for eta in etas {
        let map = ThickenedMap::new(eps, eta)?;
        let exact = eta / (1.0 + eta);
        let mut sup: f64 = 0.0;
        for x in &probes {
            if map.is_admissible(*x) {
                let t = base.jet(*x)?.value;
                sup = sup.max((map.jet(*x)?.value - t).norm() / t.norm());
            }
        }
        worst_gap = worst_gap.max((sup - exact).abs());

        let mut det: f64 = 0.0;
        for w in &w_samples {
            det = det.max(inverse_det(&map, *w)?);
        }
        let det_ratio = det / ((1.0 + eta).powi(2) * det0);
        worst_det = worst_det.max(det_ratio);

        let cells = ball_cells(eps, 2.0, |x| map.is_admissible(x))?;
        let gap = cells.lp_norm(3.0, |x| Ok((map.jet(x)?.d1 - base.jet(x)?.d1).norm()))?;
        gaps.push(gap);

        let (mut c1, mut c2): (f64, f64) = (0.0, 0.0);
        for k in 0..6 {
            for j in 0..64 {
                let x = CPoint::from_polar(2.0 * 2f64.powi(k), j as f64 * PI / 32.0 + 0.01);
                let jet = map.jet(x)?;
                c1 = c1.max(jet.d1.norm());
                c2 = c2.max(x.norm() * jet.d2.norm());
            }
        }
        c1s.push(c1);
        c2s.push(c2);
        table.push_nums(&[eta, sup, det_ratio, gap, c1, c2]);
        if eta == 0.1 {
            out.items.push(Item::within(
                "sup |T_eta - T|/|T| at eta=0.1",
                sup,
                1.0 / 11.0,
                1e-10,
            ));
        }
    }
    out.items.push(Item::at_most(
        "max |sup gap - eta/(1+eta)|",
        worst_gap,
        1e-10,
    ));
    out.items.push(Item::holds(
        "worst step ratio of ||DT_eta - DT||_L3",
        worst_step_ratio(&gaps),
        "strictly decreasing",
        strictly_decreasing(&gaps),
    ));
    out.items.push(Item::at_most(
        "max det ratio to (1+eta)^2 bound",
        worst_det,
        1.02,
    ));
    out.items.push(Item::at_most(
        "max/min far-field C_R for |DT|",
        spread(&c1s),
        1.25,
    ));
    out.items.push(Item::at_most(
        "max/min far-field C_R for |x||D2T|",
        spread(&c2s),
        1.25,
    ));
    out.table("sweep", table);
    Ok(out)
}
