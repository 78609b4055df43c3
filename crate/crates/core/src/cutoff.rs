//! Smooth cutoff `Φ^ε(x) = Φ(|T_ε(x)|)` vanishing near the slit.

use crate::complexplane::{CPoint, RefinedCells, Refinement};
use crate::conformal::{scaled_jet, ScaledSlitMap};
use crate::error::{Error, Result};

/// Quintic smoothstep from 0 at `s = 2` to 1 at `s = 3`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CutoffProfile;

impl CutoffProfile {
    pub const INNER: f64 = 2.0;
    pub const OUTER: f64 = 3.0;

    pub fn value(&self, s: f64) -> f64 {
        let t = s - Self::INNER;
        if t <= 0.0 {
            0.0
        } else if t >= 1.0 {
            1.0
        } else {
            t * t * t * (t * (6.0 * t - 15.0) + 10.0)
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        let t = s - Self::INNER;
        if t <= 0.0 || t >= 1.0 {
            0.0
        } else {
            30.0 * t * t * (t - 1.0) * (t - 1.0)
        }
    }
}

pub fn phi_eps(epsilon: f64, x: CPoint) -> Result<f64> {
    let map = ScaledSlitMap::new(epsilon)?;
    let jet = scaled_jet(&map, x)?;
    Ok(CutoffProfile.value(jet.value.norm()))
}

/// `Φ'(|T_ε|) ∇|T_ε|` with `∇|T_ε| = conj(T_ε') T_ε / |T_ε|`.
pub fn grad_phi_eps(epsilon: f64, x: CPoint) -> Result<CPoint> {
    let map = ScaledSlitMap::new(epsilon)?;
    let jet = scaled_jet(&map, x)?;
    let r = jet.value.norm();
    let d = CutoffProfile.derivative(r);
    if d == 0.0 {
        return Ok(CPoint::ZERO);
    }
    Ok(jet.jacobian_transpose(jet.value) * (d / r))
}

/// Cells covering `{|T_ε| ≤ 3}` at spacing `ε/200`, with two extra levels
/// within `0.05ε` of the slit endpoints.
pub fn transition_cells(epsilon: f64) -> Result<RefinedCells> {
    let map = ScaledSlitMap::new(epsilon)?;
    let foci = [CPoint::new(-epsilon, 0.0), CPoint::new(epsilon, 0.0)];
    let base = epsilon / 200.0;
    RefinedCells::build(
        Refinement {
            // semi-axes of the image of |w| = 3
            half_width: 5.0 * epsilon / 3.0,
            half_height: 4.0 * epsilon / 3.0,
            base,
            foci: &foci,
            reach: 10.0,
            min_size: base / 4.0,
        },
        |x| matches!(scaled_jet(&map, x), Ok(j) if j.value.norm() <= CutoffProfile::OUTER),
    )
}

/// Area of `{|T_ε| ≤ 3}` and `‖∇Φ^ε‖_{L^p}` for `p ∈ [1, 4)`.
pub fn cutoff_norms(epsilon: f64, p: f64) -> Result<(f64, f64)> {
    if !(p >= 1.0 && p < 4.0) {
        return Err(Error::Domain {
            op: "cutoff_norms",
            reason: "p must lie in [1, 4)",
        });
    }
    let cells = transition_cells(epsilon)?;
    let area = cells.total_area();
    let norm = cells.lp_norm(p, |x| Ok(grad_phi_eps(epsilon, x)?.norm()))?;
    Ok((area, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biotsavart::harmonic_h;
    use core::f64::consts::PI;

    #[test]
    fn profile_shape() {
        let f = CutoffProfile;
        assert_eq!(f.value(1.0), 0.0);
        assert_eq!(f.value(2.0), 0.0);
        assert_eq!(f.value(3.0), 1.0);
        assert_eq!(f.value(7.0), 1.0);
        assert!((f.value(2.5) - 0.5).abs() < 1e-15);
        assert_eq!(f.derivative(2.0), 0.0);
        assert_eq!(f.derivative(3.0), 0.0);
        let mut prev = 0.0;
        for k in 0..=1000 {
            let v = f.value(2.0 + k as f64 / 1000.0);
            assert!(v >= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
        let s = 2.37;
        let fd = (f.value(s + 1e-6) - f.value(s - 1e-6)) / 2e-6;
        assert!((fd - f.derivative(s)).abs() < 1e-8);
    }

    #[test]
    fn plateaus() {
        assert_eq!(phi_eps(1.0, CPoint::new(10.0, 0.0)).unwrap(), 1.0);
        assert_eq!(phi_eps(1.0, CPoint::new(0.0, 1e-3)).unwrap(), 0.0);
        assert_eq!(
            grad_phi_eps(1.0, CPoint::new(10.0, 0.0)).unwrap(),
            CPoint::ZERO
        );
        assert_eq!(
            grad_phi_eps(1.0, CPoint::new(0.0, 1e-3)).unwrap(),
            CPoint::ZERO
        );
        assert!(phi_eps(1.0, CPoint::new(0.5, 0.0)).is_err());
        assert!(grad_phi_eps(1.0, CPoint::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn gradient_matches_differences() {
        let eps = 0.3;
        // the image of |w| = 2.5 crossed at a few angles
        for k in 0..8 {
            let w = CPoint::from_polar(2.5, 0.3 + k as f64 * 0.7);
            let x = (w + w.recip()) * (0.5 * eps);
            let g = grad_phi_eps(eps, x).unwrap();
            let h = 1e-6;
            let dx = (phi_eps(eps, x + CPoint::new(h, 0.0)).unwrap()
                - phi_eps(eps, x - CPoint::new(h, 0.0)).unwrap())
                / (2.0 * h);
            let dy = (phi_eps(eps, x + CPoint::new(0.0, h)).unwrap()
                - phi_eps(eps, x - CPoint::new(0.0, h)).unwrap())
                / (2.0 * h);
            let fd = CPoint::new(dx, dy);
            assert!((fd - g).norm() <= 1e-6 * g.norm(), "{x:?}: {fd:?} vs {g:?}");
        }
    }

    #[test]
    fn harmonic_field_is_tangent_to_level_sets() {
        let eps = 0.1;
        let map = ScaledSlitMap::new(eps).unwrap();
        for k in 0..16 {
            let w = CPoint::from_polar(2.2 + 0.05 * k as f64, 0.4 * k as f64);
            let x = (w + w.recip()) * (0.5 * eps);
            let g = grad_phi_eps(eps, x).unwrap();
            let h = harmonic_h(&map, x).unwrap();
            assert!(h.dot(g).abs() <= 1e-10 * h.norm() * g.norm());
        }
    }

    #[test]
    fn support_area() {
        let eps = 0.2;
        let (area, _) = cutoff_norms(eps, 2.0).unwrap();
        let exact = 20.0 * PI / 9.0 * eps * eps;
        assert!((area / exact - 1.0).abs() < 0.02, "{area} vs {exact}");
        assert!(cutoff_norms(eps, 4.0).is_err());
        assert!(cutoff_norms(eps, 0.5).is_err());
    }
}
