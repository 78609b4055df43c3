//! Exterior conformal maps of the slit `[-ε, ε]` onto the exterior of the unit
//! disk, with first and second complex derivatives.
//!
//! The unit map is the inverse of the Joukowski function `G(w) = (w + 1/w)/2`:
//! `T(z) = z + sqrt(z - 1) sqrt(z + 1)`, with the root of larger modulus kept.
//! Its derivative blows up like `dist^{-1/2}` at the endpoints `±1` and the
//! second derivative like `dist^{-3/2}`.

use crate::complexplane::{check_finite, CPoint};
use crate::error::{Error, Result};

/// Points closer than this (relative to the slit half-length) are rejected.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-14;

/// Value and first two complex derivatives of a conformal map at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub value: CPoint,
    pub d1: CPoint,
    pub d2: CPoint,
}

impl MapJet {
    fn scaled(self, s: f64) -> MapJet {
        MapJet {
            value: self.value * s,
            d1: self.d1 * s,
            d2: self.d2 * s,
        }
    }

    /// Applies the transpose of the real Jacobian to `v`: `conj(T') v`.
    #[inline]
    pub fn jacobian_transpose(&self, v: CPoint) -> CPoint {
        self.d1.conj() * v
    }

    /// `|det DT| = |T'|^2`.
    #[inline]
    pub fn jacobian_det(&self) -> f64 {
        self.d1.norm_sqr()
    }
}

/// A biholomorphism from the exterior of an obstacle onto the exterior of the
/// closed unit disk, fixing infinity.
pub trait ExteriorMap {
    fn jet(&self, x: CPoint) -> Result<MapJet>;

    /// Whether `x` lies strictly outside the obstacle (with margin).
    fn is_admissible(&self, x: CPoint) -> bool;

    /// Preimage of a point `|w| > 1`.
    fn inverse(&self, w: CPoint) -> Result<CPoint>;
}

/// `G(w) = (w + 1/w) / 2`.
pub fn joukowski(w: CPoint) -> Result<CPoint> {
    check_finite(w, "joukowski")?;
    if w.norm_sqr() == 0.0 {
        return Err(Error::Domain {
            op: "joukowski",
            reason: "w = 0 is a pole",
        });
    }
    Ok((w + w.recip()) * 0.5)
}

/// `G'(w) = (1 - 1/w^2) / 2`.
pub fn joukowski_derivative(w: CPoint) -> Result<CPoint> {
    check_finite(w, "joukowski_derivative")?;
    if w.norm_sqr() == 0.0 {
        return Err(Error::Domain {
            op: "joukowski_derivative",
            reason: "w = 0 is a pole",
        });
    }
    let r = w.recip();
    Ok((CPoint::ONE - r * r) * 0.5)
}

/// Euclidean distance from `x` to the segment `[-ε, ε]` of the real axis.
pub fn dist_to_slit(epsilon: f64, x: CPoint) -> f64 {
    let dx = (libm::fabs(x.re) - epsilon).max(0.0);
    libm::hypot(dx, x.im)
}

/// The map for the unit slit `[-1, 1]`; `T'(∞) = 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SlitMap;

impl SlitMap {
    pub const BETA: f64 = 2.0;

    pub fn jet(&self, z: CPoint) -> Result<MapJet> {
        slit_map_jet(z)
    }
}

impl ExteriorMap for SlitMap {
    fn jet(&self, x: CPoint) -> Result<MapJet> {
        slit_map_jet(x)
    }

    fn is_admissible(&self, x: CPoint) -> bool {
        x.is_finite() && dist_to_slit(1.0, x) >= ADMISSIBILITY_MARGIN
    }

    fn inverse(&self, w: CPoint) -> Result<CPoint> {
        check_outside_disk(w, 1.0, "SlitMap::inverse")?;
        joukowski(w)
    }
}

/// `T(z)`, `T'(z)`, `T''(z)` for the unit slit.
pub fn slit_map_jet(z: CPoint) -> Result<MapJet> {
    check_finite(z, "slit_map_jet")?;
    let distance = dist_to_slit(1.0, z);
    if distance < ADMISSIBILITY_MARGIN {
        return Err(Error::Inadmissible { point: z, distance });
    }
    // sqrt(z-1) sqrt(z+1) keeps the branch cut exactly on [-1, 1]
    let s = (z - CPoint::ONE).sqrt() * (z + CPoint::ONE).sqrt();
    let plus = z + s;
    let minus = z - s;
    let sign = if plus.norm_sqr() >= minus.norm_sqr() {
        1.0
    } else {
        -1.0
    };
    let value = if sign > 0.0 { plus } else { minus };
    let d1 = CPoint::ONE + (z / s) * sign;
    let s3 = s * s * s;
    let d2 = s3.recip() * (-sign);
    Ok(MapJet { value, d1, d2 })
}

/// `T_ε(x) = T(x/ε)`, mapping the exterior of `[-ε, ε]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSlitMap {
    epsilon: f64,
}

impl ScaledSlitMap {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::Domain {
                op: "ScaledSlitMap::new",
                reason: "epsilon must be positive and finite",
            });
        }
        Ok(ScaledSlitMap { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn jet(&self, x: CPoint) -> Result<MapJet> {
        scaled_jet(self, x)
    }

    /// `T_ε(x)` only.
    pub fn value(&self, x: CPoint) -> Result<CPoint> {
        Ok(scaled_jet(self, x)?.value)
    }
}

impl ExteriorMap for ScaledSlitMap {
    fn jet(&self, x: CPoint) -> Result<MapJet> {
        scaled_jet(self, x)
    }

    fn is_admissible(&self, x: CPoint) -> bool {
        x.is_finite() && dist_to_slit(self.epsilon, x) >= ADMISSIBILITY_MARGIN * self.epsilon
    }

    fn inverse(&self, w: CPoint) -> Result<CPoint> {
        check_outside_disk(w, 1.0, "ScaledSlitMap::inverse")?;
        Ok(joukowski(w)? * self.epsilon)
    }
}

pub fn scaled_jet(map: &ScaledSlitMap, x: CPoint) -> Result<MapJet> {
    check_finite(x, "scaled_jet")?;
    let eps = map.epsilon;
    let jet = slit_map_jet(x / eps).map_err(|e| match e {
        Error::Inadmissible { distance, .. } => Error::Inadmissible {
            point: x,
            distance: distance * eps,
        },
        other => other,
    })?;
    Ok(MapJet {
        value: jet.value,
        d1: jet.d1 / eps,
        d2: jet.d2 / (eps * eps),
    })
}

/// `T_{ε,η}(x) = T_ε(x) / (1 + η)`: maps the exterior of a confocal ellipse
/// around the slit onto the exterior of the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThickenedMap {
    base: ScaledSlitMap,
    eta: f64,
}

impl ThickenedMap {
    pub fn new(epsilon: f64, eta: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::Domain {
                op: "ThickenedMap::new",
                reason: "eta must be non-negative and finite",
            });
        }
        Ok(ThickenedMap {
            base: ScaledSlitMap::new(epsilon)?,
            eta,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.base.epsilon
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn base(&self) -> &ScaledSlitMap {
        &self.base
    }

    /// Semi-axes `(a, b)` of the boundary ellipse.
    pub fn semi_axes(&self) -> (f64, f64) {
        let r = 1.0 + self.eta;
        let half = 0.5 * self.base.epsilon;
        (half * (r + 1.0 / r), half * (r - 1.0 / r))
    }

    /// Boundary point `ε G((1+η) e^{iθ})`.
    pub fn boundary_point(&self, theta: f64) -> CPoint {
        let (a, b) = self.semi_axes();
        CPoint::new(a * libm::cos(theta), b * libm::sin(theta))
    }

    pub fn jet(&self, x: CPoint) -> Result<MapJet> {
        thickened_jet(self, x)
    }
}

impl ExteriorMap for ThickenedMap {
    fn jet(&self, x: CPoint) -> Result<MapJet> {
        thickened_jet(self, x)
    }

    fn is_admissible(&self, x: CPoint) -> bool {
        match scaled_jet(&self.base, x) {
            Ok(j) => self.eta == 0.0 || j.value.norm() > 1.0 + self.eta,
            Err(_) => false,
        }
    }

    fn inverse(&self, w: CPoint) -> Result<CPoint> {
        check_outside_disk(w, 1.0, "ThickenedMap::inverse")?;
        Ok(joukowski(w * (1.0 + self.eta))? * self.base.epsilon)
    }
}

pub fn thickened_jet(map: &ThickenedMap, x: CPoint) -> Result<MapJet> {
    let jet = scaled_jet(&map.base, x)?;
    let r = 1.0 + map.eta;
    if map.eta > 0.0 {
        let modulus = jet.value.norm();
        if modulus <= r {
            return Err(Error::Inadmissible {
                point: x,
                distance: 0.0,
            });
        }
    }
    Ok(jet.scaled(1.0 / r))
}

fn check_outside_disk(w: CPoint, radius: f64, op: &'static str) -> Result<()> {
    check_finite(w, op)?;
    if w.norm() <= radius {
        return Err(Error::Domain {
            op,
            reason: "point must lie outside the closed unit disk",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joukowski_examples() {
        assert_eq!(joukowski(CPoint::ONE).unwrap(), CPoint::ONE);
        assert_eq!(joukowski(CPoint::I).unwrap(), CPoint::ZERO);
        assert_eq!(
            joukowski(CPoint::new(2.0, 0.0)).unwrap(),
            CPoint::new(1.25, 0.0)
        );
        assert!(joukowski(CPoint::ZERO).is_err());
    }

    #[test]
    fn slit_map_at_five_quarters() {
        // G(2) = 1.25 and 2 is the root of modulus > 1
        let j = slit_map_jet(CPoint::new(1.25, 0.0)).unwrap();
        assert!((j.value - CPoint::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn slit_map_near_midpoint_from_above() {
        let d = 1e-8;
        let j = slit_map_jet(CPoint::new(0.0, d)).unwrap();
        assert!((j.value - CPoint::I).norm() <= 2e-8);
        let below = slit_map_jet(CPoint::new(0.0, -d)).unwrap();
        assert!((below.value + CPoint::I).norm() <= 2e-8);
    }

    #[test]
    fn derivative_right_of_endpoint() {
        let d = 1e-6;
        let j = slit_map_jet(CPoint::new(1.0 + d, 0.0)).unwrap();
        let expected = 1.0 / (2.0 * d).sqrt();
        assert!(
            (j.d1.norm() / expected - 1.0).abs() < 0.01,
            "{}",
            j.d1.norm()
        );
        assert!((j.d1.norm() - 707.1).abs() / 707.1 < 0.01);
    }

    #[test]
    fn slit_points_rejected_with_distance() {
        for z in [
            CPoint::new(0.3, 0.0),
            CPoint::new(1.0, 0.0),
            CPoint::new(-1.0, 0.0),
        ] {
            match slit_map_jet(z) {
                Err(Error::Inadmissible { distance, .. }) => assert!(distance < 1e-14),
                other => panic!("expected inadmissible, got {other:?}"),
            }
        }
        assert!(slit_map_jet(CPoint::new(f64::INFINITY, 0.0)).is_err());
    }

    #[test]
    fn scaled_examples() {
        let m = ScaledSlitMap::new(0.5).unwrap();
        let j = m.jet(CPoint::new(0.625, 0.0)).unwrap();
        assert!((j.value - CPoint::new(2.0, 0.0)).norm() < 1e-15);

        let unit = ScaledSlitMap::new(1.0).unwrap();
        let x = CPoint::new(0.4, -0.9);
        assert_eq!(unit.jet(x).unwrap(), slit_map_jet(x).unwrap());

        let m = ScaledSlitMap::new(0.1).unwrap();
        let v = m.jet(CPoint::new(10.0, 0.0)).unwrap().value;
        assert!((v.norm() - 200.0).abs() / 200.0 < 0.01);
        assert!(ScaledSlitMap::new(0.0).is_err());
        assert!(ScaledSlitMap::new(-1.0).is_err());
    }

    #[test]
    fn scaled_derivatives_follow_chain_rule() {
        let eps = 0.05;
        let m = ScaledSlitMap::new(eps).unwrap();
        let x = CPoint::new(0.03, 0.02);
        let j = m.jet(x).unwrap();
        let u = slit_map_jet(x / eps).unwrap();
        assert_eq!(j.d1, u.d1 / eps);
        assert_eq!(j.d2, u.d2 / (eps * eps));
        match m.jet(CPoint::new(0.01, 0.0)) {
            Err(Error::Inadmissible { point, .. }) => assert_eq!(point, CPoint::new(0.01, 0.0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn thickened_examples() {
        let x = CPoint::new(0.7, 1.1);
        let scaled = ScaledSlitMap::new(1.0).unwrap().jet(x).unwrap();
        assert_eq!(ThickenedMap::new(1.0, 0.0).unwrap().jet(x).unwrap(), scaled);

        let m = ThickenedMap::new(1.0, 1.0).unwrap();
        assert_eq!(m.boundary_point(0.0), CPoint::new(1.25, 0.0));
        // the boundary itself is excluded; step just outside
        let j = m.jet(CPoint::new(1.25 + 1e-12, 0.0)).unwrap();
        assert!((j.value.norm() - 1.0).abs() < 1e-10);
        assert!(m.jet(CPoint::new(1.2, 0.0)).is_err());
        assert!(m.jet(CPoint::new(0.0, 0.5)).is_err());

        let m = ThickenedMap::new(1.0, 0.5).unwrap();
        let far = CPoint::new(10.0, 0.0);
        let t = slit_map_jet(far).unwrap().value.norm();
        assert!((m.jet(far).unwrap().value.norm() - t / 1.5).abs() < 1e-10);
    }

    #[test]
    fn ellipse_axes_and_inverse() {
        let m = ThickenedMap::new(1.0, 2.0).unwrap();
        let (a, b) = m.semi_axes();
        assert!((a - 5.0 / 3.0).abs() < 1e-15 && (b - 4.0 / 3.0).abs() < 1e-15);
        let w = CPoint::new(1.5, 2.0);
        let x = m.inverse(w).unwrap();
        assert!((m.jet(x).unwrap().value - w).norm() < 1e-12);
        assert!(m.inverse(CPoint::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn dist_to_slit_examples() {
        assert_eq!(dist_to_slit(1.0, CPoint::new(0.0, 0.3)), 0.3);
        assert_eq!(dist_to_slit(1.0, CPoint::new(2.0, 0.0)), 1.0);
        assert_eq!(dist_to_slit(0.5, CPoint::new(0.5, 0.5)), 0.5);
    }

    #[test]
    fn second_derivative_branch_matches_first() {
        let z = CPoint::new(-0.4, 0.7);
        let h = 1e-5;
        let jp = slit_map_jet(z + CPoint::new(h, 0.0)).unwrap();
        let jm = slit_map_jet(z - CPoint::new(h, 0.0)).unwrap();
        let fd = (jp.d1 - jm.d1) / (2.0 * h);
        let j = slit_map_jet(z).unwrap();
        assert!((fd - j.d2).norm() / j.d2.norm() < 1e-6);
    }
}
