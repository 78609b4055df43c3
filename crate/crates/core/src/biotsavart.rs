//! Velocity from vorticity.
//!
//! Outside the slit the velocity is
//! `u(x) = (1/2π) DT_ε^t(x) (I₁ - I₂)(x) + (γ + m) H_ε(x)` where `I₁` sums the
//! mapped-plane vortices, `I₂` their images inside the unit disk, and `H_ε` is
//! the harmonic field with unit circulation around the slit. In the full plane
//! the limit model replaces all of this by the free-space kernel plus a point
//! vortex `γ δ₀` at the origin.
//!
//! Blobs are regularized in the mapped plane. A source at `w'` uses
//! `|a|² + δ²`; its image at `w'* = w'/|w'|²` uses `|b|² + δ²/|w'|²`. On the
//! unit circle `|b| = |a| / |w'|`, so both denominators agree up to the factor
//! `|w'|²` and the normal component cancels exactly, as it does for `δ = 0`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::complexplane::{check_finite, invert_star, CPoint};
use crate::conformal::{dist_to_slit, ExteriorMap, MapJet, ScaledSlitMap};
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Lagrangian discretization of the vorticity on a uniform cell area.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexParticleSet {
    positions: Vec<CPoint>,
    values: Vec<f64>,
    area: f64,
}

impl VortexParticleSet {
    pub fn new(positions: Vec<CPoint>, values: Vec<f64>, area: f64) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::Length {
                op: "VortexParticleSet::new",
                left: positions.len(),
                right: values.len(),
            });
        }
        if !(area > 0.0) || !area.is_finite() {
            return Err(Error::Domain {
                op: "VortexParticleSet::new",
                reason: "cell area must be positive and finite",
            });
        }
        for p in &positions {
            check_finite(*p, "VortexParticleSet::new")?;
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                op: "VortexParticleSet::new",
            });
        }
        Ok(VortexParticleSet {
            positions,
            values,
            area,
        })
    }

    pub fn empty(area: f64) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), area)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[CPoint] {
        &self.positions
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cell area `h²` carried by every particle.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Circulation `ωᵢ h²` carried by particle `i`.
    pub fn strength(&self, i: usize) -> f64 {
        self.values[i] * self.area
    }

    /// Total vorticity `m = Σ ωᵢ h²`, summed in index order.
    pub fn mass(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc + v * self.area)
    }

    /// Vorticity-weighted centroid; `None` when the mass vanishes.
    pub fn centroid(&self) -> Option<CPoint> {
        let m = self.mass();
        if m == 0.0 {
            return None;
        }
        let mut acc = CPoint::ZERO;
        for (p, v) in self.positions.iter().zip(&self.values) {
            acc += *p * (v * self.area);
        }
        Some(acc / m)
    }

    /// Same values and area at new positions.
    pub fn with_positions(&self, positions: Vec<CPoint>) -> Result<Self> {
        if positions.len() != self.len() {
            return Err(Error::Length {
                op: "VortexParticleSet::with_positions",
                left: positions.len(),
                right: self.len(),
            });
        }
        for p in &positions {
            check_finite(*p, "VortexParticleSet::with_positions")?;
        }
        Ok(VortexParticleSet {
            positions,
            values: self.values.clone(),
            area: self.area,
        })
    }

    /// Values multiplied by `s`.
    pub fn scaled_values(&self, s: f64) -> Result<Self> {
        Self::new(
            self.positions.clone(),
            self.values.iter().map(|v| v * s).collect(),
            self.area,
        )
    }

    /// Appends the particles of `other`; both sets must share the cell area.
    pub fn merged(&self, other: &VortexParticleSet) -> Result<Self> {
        if self.area != other.area {
            return Err(Error::Domain {
                op: "VortexParticleSet::merged",
                reason: "cell areas differ",
            });
        }
        let mut positions = self.positions.clone();
        positions.extend_from_slice(&other.positions);
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Self::new(positions, values, self.area)
    }

    pub fn check_admissible(&self, map: &dyn ExteriorMap) -> Result<()> {
        for p in &self.positions {
            if !map.is_admissible(*p) {
                return Err(Error::Inadmissible {
                    point: *p,
                    distance: 0.0,
                });
            }
        }
        Ok(())
    }
}

/// Median over points of the distance to the nearest other point; zero for
/// fewer than two points.
pub fn median_nearest_neighbor(points: &[CPoint]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let mut nn: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(f64::INFINITY, |m, (_, q)| m.min((*p - *q).norm_sqr()))
        })
        .collect();
    nn.sort_by(f64::total_cmp);
    let n = nn.len();
    let median_sq = if n % 2 == 1 {
        nn[n / 2]
    } else {
        0.5 * (nn[n / 2 - 1] + nn[n / 2])
    };
    libm::sqrt(median_sq)
}

/// Exterior-slit velocity model: map, circulation around the slit, and the
/// mapped-plane blob radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExteriorModel {
    map: ScaledSlitMap,
    gamma: f64,
    blob_delta: f64,
}

impl ExteriorModel {
    pub fn new(epsilon: f64, gamma: f64, blob_delta: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite {
                op: "ExteriorModel::new",
            });
        }
        if !(blob_delta >= 0.0) || !blob_delta.is_finite() {
            return Err(Error::Domain {
                op: "ExteriorModel::new",
                reason: "blob_delta must be finite and non-negative",
            });
        }
        Ok(ExteriorModel {
            map: ScaledSlitMap::new(epsilon)?,
            gamma,
            blob_delta,
        })
    }

    /// Model whose blob radius is twice the median mapped-plane
    /// nearest-neighbour spacing of `particles`.
    pub fn with_default_blob(
        epsilon: f64,
        gamma: f64,
        particles: &VortexParticleSet,
    ) -> Result<Self> {
        let map = ScaledSlitMap::new(epsilon)?;
        let mapped: Vec<CPoint> = particles
            .positions()
            .iter()
            .map(|p| map.value(*p))
            .collect::<Result<_>>()?;
        Self::new(epsilon, gamma, 2.0 * median_nearest_neighbor(&mapped))
    }

    pub fn map(&self) -> &ScaledSlitMap {
        &self.map
    }

    pub fn epsilon(&self) -> f64 {
        self.map.epsilon()
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn blob_delta(&self) -> f64 {
        self.blob_delta
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.epsilon(), gamma, self.blob_delta)
    }

    pub fn assemble(&self, particles: &VortexParticleSet) -> Result<ExteriorField> {
        ExteriorField::new(*self, particles)
    }
}

/// Full-plane limit model: free-space kernel plus `γ δ₀` at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitModel {
    gamma: f64,
    blob_delta: f64,
}

impl LimitModel {
    pub fn new(gamma: f64, blob_delta: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite {
                op: "LimitModel::new",
            });
        }
        if !(blob_delta >= 0.0) || !blob_delta.is_finite() {
            return Err(Error::Domain {
                op: "LimitModel::new",
                reason: "blob_delta must be finite and non-negative",
            });
        }
        Ok(LimitModel { gamma, blob_delta })
    }

    /// Blob radius twice the median nearest-neighbour spacing.
    pub fn with_default_blob(gamma: f64, particles: &VortexParticleSet) -> Result<Self> {
        Self::new(gamma, 2.0 * median_nearest_neighbor(particles.positions()))
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn blob_delta(&self) -> f64 {
        self.blob_delta
    }

    pub fn assemble(&self, particles: &VortexParticleSet) -> Result<LimitField> {
        LimitField::new(*self, particles)
    }
}

/// Green's function value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenEval {
    pub value: f64,
}

/// `G(x, y) = (1/2π) ln(|T(x) - T(y)| / (|T(x) - T(y)*| |T(y)|))`.
pub fn green_function(map: &ScaledSlitMap, x: CPoint, y: CPoint) -> Result<GreenEval> {
    let wx = map.value(x)?;
    let wy = map.value(y)?;
    let num = (wx - wy).norm();
    if num == 0.0 {
        return Err(Error::Coincident {
            op: "green_function",
        });
    }
    let image = invert_star(wy)?;
    let den = (wx - image).norm() * wy.norm();
    Ok(GreenEval {
        value: libm::log(num / den) / TWO_PI,
    })
}

/// The mapped-plane bracket `a^⊥/(|a|²+δ²) - b^⊥/(|b|²+δ²/|w'|²)` for one
/// source, returned as `(vortex part, image part)`.
#[inline]
fn bracket(w: CPoint, source: &MappedSource) -> Result<(CPoint, CPoint)> {
    let a = w - source.w;
    let da = a.norm_sqr() + source.delta_sq;
    if da == 0.0 {
        return Err(Error::Coincident { op: "kernel" });
    }
    let b = w - source.w_star;
    let db = b.norm_sqr() + source.image_delta_sq;
    Ok((a.perp() / da, b.perp() / db))
}

/// Exterior kernel `K_ε(x, y)` with mapped-plane blob radius `blob_delta`.
pub fn kernel_k(map: &ScaledSlitMap, x: CPoint, y: CPoint, blob_delta: f64) -> Result<CPoint> {
    let jet = map.jet(x)?;
    let source = MappedSource::new(map, y, 1.0, blob_delta)?;
    let (direct, image) = bracket(jet.value, &source)?;
    Ok(jet.jacobian_transpose(direct - image) / TWO_PI)
}

/// Harmonic field `H_ε(x) = (1/2π) DT_ε^t(x) T_ε(x)^⊥ / |T_ε(x)|²`.
pub fn harmonic_h(map: &ScaledSlitMap, x: CPoint) -> Result<CPoint> {
    Ok(harmonic_from_jet(&map.jet(x)?))
}

#[inline]
fn harmonic_from_jet(jet: &MapJet) -> CPoint {
    jet.jacobian_transpose(jet.value.perp() / jet.value.norm_sqr()) / TWO_PI
}

/// Free-space point-vortex field `x^⊥ / (2π|x|²)`.
pub fn free_vortex(x: CPoint) -> Result<CPoint> {
    let n = x.norm_sqr();
    if n == 0.0 {
        return Err(Error::Domain {
            op: "free_vortex",
            reason: "the point vortex field is singular at the origin",
        });
    }
    Ok(x.perp() / (TWO_PI * n))
}

#[derive(Debug, Clone, Copy)]
struct MappedSource {
    w: CPoint,
    w_star: CPoint,
    q: f64,
    delta_sq: f64,
    image_delta_sq: f64,
}

impl MappedSource {
    fn new(map: &ScaledSlitMap, y: CPoint, q: f64, delta: f64) -> Result<Self> {
        let w = map.value(y)?;
        let n = w.norm_sqr();
        Ok(MappedSource {
            w,
            w_star: w / n,
            q,
            delta_sq: delta * delta,
            image_delta_sq: delta * delta / n,
        })
    }
}

/// Mapped-plane sums at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecomposedIntegrals {
    pub i1: CPoint,
    pub i2: CPoint,
    pub i2_tilde: CPoint,
}

/// An exterior model assembled against a particle set; cheap to evaluate at
/// many points.
#[derive(Debug, Clone)]
pub struct ExteriorField {
    model: ExteriorModel,
    sources: Vec<MappedSource>,
    mass: f64,
}

impl ExteriorField {
    pub fn new(model: ExteriorModel, particles: &VortexParticleSet) -> Result<Self> {
        let sources = particles
            .positions()
            .iter()
            .enumerate()
            .map(|(i, y)| {
                MappedSource::new(&model.map, *y, particles.strength(i), model.blob_delta)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExteriorField {
            model,
            sources,
            mass: particles.mass(),
        })
    }

    pub fn model(&self) -> &ExteriorModel {
        &self.model
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    fn sums(&self, w: CPoint, skip: Option<usize>) -> Result<(CPoint, CPoint)> {
        let mut i1 = CPoint::ZERO;
        let mut i2 = CPoint::ZERO;
        for (j, s) in self.sources.iter().enumerate() {
            let (direct, image) = if skip == Some(j) {
                // the self term of I₁ vanishes (δ > 0) or is excluded (δ = 0)
                let b = w - s.w_star;
                (CPoint::ZERO, b.perp() / (b.norm_sqr() + s.image_delta_sq))
            } else {
                bracket(w, s)?
            };
            i1 += direct * s.q;
            i2 += image * s.q;
        }
        Ok((i1, i2))
    }

    /// `I₁`, `I₂` and `Ĩ₂ = -I₂ + m T^⊥/|T|²` at `x`.
    pub fn decomposed(&self, x: CPoint) -> Result<DecomposedIntegrals> {
        let jet = self.model.map.jet(x)?;
        let (i1, i2) = self.sums(jet.value, None)?;
        let i2_tilde = -i2 + jet.value.perp() / jet.value.norm_sqr() * self.mass;
        Ok(DecomposedIntegrals { i1, i2, i2_tilde })
    }

    fn assemble_at(&self, jet: &MapJet, i1: CPoint, i2: CPoint, gamma: f64) -> CPoint {
        jet.jacobian_transpose(i1 - i2) / TWO_PI + harmonic_from_jet(jet) * (gamma + self.mass)
    }

    /// `u^ε(x)`.
    pub fn velocity(&self, x: CPoint) -> Result<CPoint> {
        let jet = self.model.map.jet(x)?;
        let (i1, i2) = self.sums(jet.value, None)?;
        Ok(self.assemble_at(&jet, i1, i2, self.model.gamma))
    }

    /// `v^ε = u^ε - γ H_ε`.
    pub fn reduced_velocity(&self, x: CPoint) -> Result<CPoint> {
        let jet = self.model.map.jet(x)?;
        let (i1, i2) = self.sums(jet.value, None)?;
        Ok(self.assemble_at(&jet, i1, i2, 0.0))
    }

    /// Velocity at `x` omitting the direct (non-image) term of source `skip`.
    pub fn velocity_excluding(&self, x: CPoint, skip: usize) -> Result<CPoint> {
        let jet = self.model.map.jet(x)?;
        let (i1, i2) = self.sums(jet.value, Some(skip))?;
        Ok(self.assemble_at(&jet, i1, i2, self.model.gamma))
    }
}

/// A limit model assembled against a particle set.
#[derive(Debug, Clone)]
pub struct LimitField {
    model: LimitModel,
    positions: Vec<CPoint>,
    strengths: Vec<f64>,
}

impl LimitField {
    pub fn new(model: LimitModel, particles: &VortexParticleSet) -> Result<Self> {
        Ok(LimitField {
            model,
            positions: particles.positions().to_vec(),
            strengths: (0..particles.len())
                .map(|i| particles.strength(i))
                .collect(),
        })
    }

    fn eval(&self, x: CPoint, skip: Option<usize>) -> Result<CPoint> {
        check_finite(x, "velocity_limit")?;
        let d2 = self.model.blob_delta * self.model.blob_delta;
        let mut acc = CPoint::ZERO;
        for (j, (y, q)) in self.positions.iter().zip(&self.strengths).enumerate() {
            if skip == Some(j) {
                continue;
            }
            let a = x - *y;
            let den = a.norm_sqr() + d2;
            if den == 0.0 {
                return Err(Error::Coincident {
                    op: "velocity_limit",
                });
            }
            acc += a.perp() * (q / den);
        }
        acc = acc / TWO_PI;
        if self.model.gamma != 0.0 {
            acc += free_vortex(x)? * self.model.gamma;
        }
        Ok(acc)
    }

    pub fn velocity(&self, x: CPoint) -> Result<CPoint> {
        self.eval(x, None)
    }

    pub fn velocity_excluding(&self, x: CPoint, skip: usize) -> Result<CPoint> {
        self.eval(x, Some(skip))
    }
}

/// `u^ε(x)` for a model and particle set.
pub fn velocity_exterior(
    model: &ExteriorModel,
    particles: &VortexParticleSet,
    x: CPoint,
) -> Result<CPoint> {
    model.assemble(particles)?.velocity(x)
}

/// `u^ε(x)` assembled as `Σ K_ε(x, yᵢ) ωᵢ h² + (γ + m) H_ε(x)`.
pub fn velocity_exterior_by_kernel(
    model: &ExteriorModel,
    particles: &VortexParticleSet,
    x: CPoint,
) -> Result<CPoint> {
    let mut acc = CPoint::ZERO;
    for (i, y) in particles.positions().iter().enumerate() {
        acc += kernel_k(&model.map, x, *y, model.blob_delta)? * particles.strength(i);
    }
    Ok(acc + harmonic_h(&model.map, x)? * (model.gamma + particles.mass()))
}

/// Full-plane velocity `Σ K_{R²}(x - yᵢ) ωᵢ h² + γ x^⊥/(2π|x|²)`.
pub fn velocity_limit(
    model: &LimitModel,
    particles: &VortexParticleSet,
    x: CPoint,
) -> Result<CPoint> {
    model.assemble(particles)?.velocity(x)
}

pub fn decomposed_integrals(
    model: &ExteriorModel,
    particles: &VortexParticleSet,
    x: CPoint,
) -> Result<DecomposedIntegrals> {
    model.assemble(particles)?.decomposed(x)
}

/// Probe offsets (relative to ε) used to read one-sided limits at the slit.
pub const JUMP_PROBE_OFFSETS: [f64; 2] = [1e-5, 5e-6];

/// Singular curl density on the slit at station `s ∈ (-1, 1)`:
/// `g(s) = u₁(εs - i0) - u₁(εs + i0)`, so that `curl u = ω + g δ_Γ` and
/// `∫ g = γ`. One-sided limits are Richardson-extrapolated from probes at
/// `±i ε δ` for the two offsets in [`JUMP_PROBE_OFFSETS`].
pub fn jump_function_g(
    model: &ExteriorModel,
    particles: &VortexParticleSet,
    s: f64,
) -> Result<f64> {
    model.assemble(particles)?.jump_density(s)
}

impl ExteriorField {
    /// See [`jump_function_g`].
    pub fn jump_density(&self, s: f64) -> Result<f64> {
        let field = self;
        if !(libm::fabs(s) < 1.0) {
            return Err(Error::Domain {
                op: "jump_function_g",
                reason: "station must lie strictly inside (-1, 1)",
            });
        }
        let eps = field.model.epsilon();
        let jump = |offset: f64| -> Result<f64> {
            let x = CPoint::new(eps * s, 0.0);
            let d = CPoint::new(0.0, eps * offset);
            Ok(field.velocity(x - d)?.re - field.velocity(x + d)?.re)
        };
        let coarse = jump(JUMP_PROBE_OFFSETS[0])?;
        let fine = jump(JUMP_PROBE_OFFSETS[1])?;
        let ratio = JUMP_PROBE_OFFSETS[0] / JUMP_PROBE_OFFSETS[1];
        Ok((ratio * fine - coarse) / (ratio - 1.0))
    }
}

/// Distance from `x` to the slit of `model`.
pub fn slit_distance(model: &ExteriorModel, x: CPoint) -> f64 {
    dist_to_slit(model.epsilon(), x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(y: CPoint, strength: f64) -> VortexParticleSet {
        VortexParticleSet::new(vec![y], vec![strength], 1.0).unwrap()
    }

    #[test]
    fn green_symmetry_and_singularity() {
        let map = ScaledSlitMap::new(1.0).unwrap();
        let x = CPoint::new(0.0, 2.0);
        let y = CPoint::new(0.0, 3.0);
        let gxy = green_function(&map, x, y).unwrap().value;
        let gyx = green_function(&map, y, x).unwrap().value;
        assert!((gxy - gyx).abs() < 1e-12);
        let near = green_function(&map, x, CPoint::new(0.0, 2.0 + 1e-8))
            .unwrap()
            .value;
        assert!(near < -2.0, "{near}");
        assert!(matches!(
            green_function(&map, x, x),
            Err(Error::Coincident { .. })
        ));
    }

    #[test]
    fn green_vanishes_towards_the_slit() {
        let map = ScaledSlitMap::new(1.0).unwrap();
        let x = CPoint::new(0.0, 2.0);
        let values: Vec<f64> = [1e-2, 1e-4, 1e-6]
            .iter()
            .map(|d| {
                green_function(&map, x, CPoint::new(0.0, *d))
                    .unwrap()
                    .value
                    .abs()
            })
            .collect();
        assert!(values[0] > values[1] && values[1] > values[2]);
        assert!(values[2] < 1e-5);
    }

    #[test]
    fn kernel_matches_frac_bound() {
        // |K| = (1/2π) |T'(x)| |T(y) - T(y)*| / (|T(x)-T(y)| |T(x)-T(y)*|)
        let map = ScaledSlitMap::new(0.7).unwrap();
        let x = CPoint::new(0.3, 0.9);
        let y = CPoint::new(-1.1, -0.4);
        let k = kernel_k(&map, x, y, 0.0).unwrap();
        let jx = map.jet(x).unwrap();
        let wy = map.value(y).unwrap();
        let wys = invert_star(wy).unwrap();
        let bound = jx.d1.norm() * (wy - wys).norm()
            / ((jx.value - wy).norm() * (jx.value - wys).norm())
            / (2.0 * PI);
        assert!(k.norm() <= bound * (1.0 + 1e-12));
        assert!((k.norm() - bound).abs() < 1e-12 * bound);
    }

    #[test]
    fn kernel_on_the_imaginary_axis_is_horizontal() {
        let map = ScaledSlitMap::new(1.0).unwrap();
        let k = kernel_k(&map, CPoint::new(0.0, 0.5), CPoint::new(0.0, 2.0), 0.0).unwrap();
        assert!(k.im.abs() <= 1e-10);
        assert!(k.re.abs() > 1e-3);
        assert!(kernel_k(&map, CPoint::I, CPoint::I, 0.0).is_err());
        assert_eq!(
            kernel_k(&map, CPoint::I, CPoint::I, 0.1).unwrap().norm() > 0.0,
            true
        );
    }

    #[test]
    fn harmonic_field_limits() {
        let map = ScaledSlitMap::new(0.01).unwrap();
        let h = harmonic_h(&map, CPoint::new(1.0, 0.0)).unwrap();
        assert!((h - CPoint::new(0.0, 1.0 / (2.0 * PI))).norm() <= 0.01);

        let unit = ScaledSlitMap::new(1.0).unwrap();
        let h = harmonic_h(&unit, CPoint::new(0.0, 1e-8)).unwrap();
        assert!(h.im.abs() <= 1e-6 * h.norm());
        assert!(harmonic_h(&unit, CPoint::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn empty_exterior_field_is_zero() {
        let model = ExteriorModel::new(0.3, 0.0, 0.0).unwrap();
        let p = VortexParticleSet::empty(0.01).unwrap();
        let u = velocity_exterior(&model, &p, CPoint::new(0.2, 0.7)).unwrap();
        assert_eq!(u, CPoint::ZERO);
        let d = decomposed_integrals(&model, &p, CPoint::new(0.2, 0.7)).unwrap();
        assert_eq!(
            (d.i1, d.i2, d.i2_tilde),
            (CPoint::ZERO, CPoint::ZERO, CPoint::ZERO)
        );
    }

    #[test]
    fn limit_model_examples() {
        let empty = VortexParticleSet::empty(1.0).unwrap();
        let m = LimitModel::new(1.0, 0.0).unwrap();
        let u = velocity_limit(&m, &empty, CPoint::ONE).unwrap();
        assert!((u - CPoint::new(0.0, 1.0 / (2.0 * PI))).norm() < 1e-16);
        assert!(velocity_limit(&m, &empty, CPoint::ZERO).is_err());

        let p = VortexParticleSet::new(
            vec![CPoint::new(0.5, 0.2), CPoint::new(-0.3, 1.0)],
            vec![2.0, -0.5],
            0.1,
        )
        .unwrap();
        let x = CPoint::new(0.9, -0.7);
        let both = velocity_limit(&LimitModel::new(1.5, 0.05).unwrap(), &p, x).unwrap();
        let vort = velocity_limit(&LimitModel::new(0.0, 0.05).unwrap(), &p, x).unwrap();
        let gam = velocity_limit(&LimitModel::new(1.5, 0.05).unwrap(), &empty, x).unwrap();
        assert_eq!(both, vort + gam);
        assert!(velocity_limit(&LimitModel::new(0.0, 0.0).unwrap(), &p, p.positions()[0]).is_err());
    }

    #[test]
    fn image_regularization_keeps_tangency() {
        let model = ExteriorModel::new(1.0, 0.0, 0.3).unwrap();
        let p = single(CPoint::new(0.4, 1.2), 1.0);
        let field = model.assemble(&p).unwrap();
        for s in [-0.8, -0.2, 0.1, 0.6] {
            let u = field.velocity(CPoint::new(s, 1e-12)).unwrap();
            assert!(u.im.abs() < 1e-7 * u.norm(), "{s}: {u:?}");
        }
    }

    #[test]
    fn jump_rejects_endpoints() {
        let model = ExteriorModel::new(1.0, 1.0, 0.0).unwrap();
        let p = VortexParticleSet::empty(1.0).unwrap();
        assert!(jump_function_g(&model, &p, 1.0).is_err());
        assert!(jump_function_g(&model, &p, -1.2).is_err());
        let g = jump_function_g(&model, &p, 0.0).unwrap();
        // flat-plate circulation density 1/(π sqrt(1 - s²)) at s = 0
        assert!((g - 1.0 / PI).abs() < 1e-6, "{g}");
    }

    #[test]
    fn median_spacing() {
        let pts = [CPoint::ZERO, CPoint::new(1.0, 0.0), CPoint::new(3.0, 0.0)];
        assert_eq!(median_nearest_neighbor(&pts), 1.0);
        assert_eq!(median_nearest_neighbor(&pts[..1]), 0.0);
    }

    #[test]
    fn particle_set_validation() {
        assert!(VortexParticleSet::new(vec![CPoint::ZERO], vec![], 1.0).is_err());
        assert!(VortexParticleSet::new(vec![CPoint::ZERO], vec![1.0], 0.0).is_err());
        assert!(VortexParticleSet::new(vec![CPoint::new(f64::NAN, 0.0)], vec![1.0], 1.0).is_err());
        let p = VortexParticleSet::new(vec![CPoint::ONE, CPoint::I], vec![1.0, 3.0], 0.5).unwrap();
        assert_eq!(p.mass(), 2.0);
        assert_eq!(p.centroid().unwrap(), CPoint::new(0.25, 0.75));
    }
}
