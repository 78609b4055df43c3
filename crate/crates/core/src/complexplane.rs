//! Complex-plane primitives: points, inversion, perpendicular, contours,
//! grids, region quadrature cells and discrete norms.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// A point (or vector) of the plane, identified with a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CPoint {
    pub re: f64,
    pub im: f64,
}

impl CPoint {
    pub const ZERO: CPoint = CPoint { re: 0.0, im: 0.0 };
    pub const ONE: CPoint = CPoint { re: 1.0, im: 0.0 };
    pub const I: CPoint = CPoint { re: 0.0, im: 1.0 };

    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        CPoint { re, im }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(re: f64, im: f64) -> Result<Self> {
        let p = CPoint { re, im };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::NonFinite {
                op: "CPoint::try_new",
            })
        }
    }

    #[inline]
    pub fn from_polar(r: f64, theta: f64) -> Self {
        CPoint::new(r * libm::cos(theta), r * libm::sin(theta))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    #[inline]
    pub fn arg(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    #[inline]
    pub fn conj(self) -> Self {
        CPoint::new(self.re, -self.im)
    }

    /// Rotation by a quarter turn: `(x1, x2) -> (-x2, x1)`.
    #[inline]
    pub fn perp(self) -> Self {
        CPoint::new(-self.im, self.re)
    }

    #[inline]
    pub fn dot(self, other: CPoint) -> f64 {
        self.re * other.re + self.im * other.im
    }

    /// Scalar cross product `self.re * other.im - self.im * other.re`.
    #[inline]
    pub fn cross(self, other: CPoint) -> f64 {
        self.re * other.im - self.im * other.re
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        CPoint::new(self.re * s, self.im * s)
    }

    /// Complex reciprocal `1/z`.
    #[inline]
    pub fn recip(self) -> Self {
        let n = self.norm_sqr();
        CPoint::new(self.re / n, -self.im / n)
    }

    /// Principal square root, branch cut on the negative real axis.
    pub fn sqrt(self) -> Self {
        if self.re == 0.0 && self.im == 0.0 {
            return CPoint::new(0.0, self.im);
        }
        let r = self.norm();
        if self.re >= 0.0 {
            let t = libm::sqrt(0.5 * (r + self.re));
            CPoint::new(t, self.im / (2.0 * t))
        } else {
            let t = libm::sqrt(0.5 * (r - self.re));
            CPoint::new(libm::fabs(self.im) / (2.0 * t), libm::copysign(t, self.im))
        }
    }

    pub fn distance(self, other: CPoint) -> f64 {
        (self - other).norm()
    }
}

impl Add for CPoint {
    type Output = CPoint;
    #[inline]
    fn add(self, o: CPoint) -> CPoint {
        CPoint::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for CPoint {
    #[inline]
    fn add_assign(&mut self, o: CPoint) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for CPoint {
    type Output = CPoint;
    #[inline]
    fn sub(self, o: CPoint) -> CPoint {
        CPoint::new(self.re - o.re, self.im - o.im)
    }
}

impl SubAssign for CPoint {
    #[inline]
    fn sub_assign(&mut self, o: CPoint) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl Neg for CPoint {
    type Output = CPoint;
    #[inline]
    fn neg(self) -> CPoint {
        CPoint::new(-self.re, -self.im)
    }
}

impl Mul for CPoint {
    type Output = CPoint;
    #[inline]
    fn mul(self, o: CPoint) -> CPoint {
        CPoint::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Mul<f64> for CPoint {
    type Output = CPoint;
    #[inline]
    fn mul(self, s: f64) -> CPoint {
        self.scale(s)
    }
}

impl Mul<CPoint> for f64 {
    type Output = CPoint;
    #[inline]
    fn mul(self, p: CPoint) -> CPoint {
        p.scale(self)
    }
}

impl Div for CPoint {
    type Output = CPoint;
    #[inline]
    fn div(self, o: CPoint) -> CPoint {
        let n = o.norm_sqr();
        CPoint::new(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )
    }
}

impl Div<f64> for CPoint {
    type Output = CPoint;
    #[inline]
    fn div(self, s: f64) -> CPoint {
        CPoint::new(self.re / s, self.im / s)
    }
}

/// `(x1, x2)^perp = (-x2, x1)`.
pub fn perp(v: CPoint) -> CPoint {
    v.perp()
}

/// Inversion in the unit circle, `v* = v / |v|^2`.
pub fn invert_star(v: CPoint) -> Result<CPoint> {
    check_finite(v, "invert_star")?;
    let n = v.norm_sqr();
    if n == 0.0 {
        return Err(Error::Domain {
            op: "invert_star",
            reason: "zero has no inverse point",
        });
    }
    Ok(v / n)
}

/// Both sides of `|a* - b*| = |a - b| / (|a| |b|)`.
pub fn frac_identity_check(a: CPoint, b: CPoint) -> Result<(f64, f64)> {
    let a_star = invert_star(a)?;
    let b_star = invert_star(b)?;
    let lhs = (a_star - b_star).norm();
    let rhs = (a - b).norm() / (a.norm() * b.norm());
    Ok((lhs, rhs))
}

pub(crate) fn check_finite(v: CPoint, op: &'static str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { op })
    }
}

/// Closed counter-clockwise polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    vertices: Vec<CPoint>,
}

impl Contour {
    pub fn new(vertices: Vec<CPoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Domain {
                op: "Contour::new",
                reason: "a contour needs at least 3 vertices",
            });
        }
        for v in &vertices {
            check_finite(*v, "Contour::new")?;
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(Error::Domain {
                op: "Contour::new",
                reason: "vertices must be ordered counter-clockwise",
            });
        }
        Ok(Contour { vertices })
    }

    /// Regular `n`-gon inscribed in the circle of the given center and radius.
    pub fn circle(center: CPoint, radius: f64, n: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain {
                op: "Contour::circle",
                reason: "radius must be positive",
            });
        }
        let step = 2.0 * core::f64::consts::PI / n as f64;
        let vertices = (0..n)
            .map(|k| center + CPoint::from_polar(radius, step * k as f64))
            .collect();
        Contour::new(vertices)
    }

    pub fn vertices(&self) -> &[CPoint] {
        &self.vertices
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }
}

fn signed_area(vs: &[CPoint]) -> f64 {
    let n = vs.len();
    let mut acc = 0.0;
    for k in 0..n {
        acc += vs[k].cross(vs[(k + 1) % n]);
    }
    0.5 * acc
}

/// `∮ F·ds` over a counter-clockwise contour.
///
/// Each edge is integrated with Simpson's rule (vertices plus the edge
/// midpoint). Edge contributions are summed in a canonical order that does not
/// depend on the traversal direction, so reversing the polygon negates the
/// result bit for bit.
pub fn contour_circulation<F>(field: F, contour: &Contour) -> Result<f64>
where
    F: FnMut(CPoint) -> Result<CPoint>,
{
    polygon_circulation(field, &contour.vertices)
}

/// Same quadrature as [`contour_circulation`] on a closed polygon of either
/// orientation.
pub fn polygon_circulation<F>(mut field: F, vertices: &[CPoint]) -> Result<f64>
where
    F: FnMut(CPoint) -> Result<CPoint>,
{
    let n = vertices.len();
    if n < 2 {
        return Err(Error::Domain {
            op: "polygon_circulation",
            reason: "need at least two vertices",
        });
    }
    let mut sample = |p: CPoint| -> Result<CPoint> {
        let v = field(p)?;
        check_finite(v, "polygon_circulation")?;
        Ok(v)
    };
    let at_vertex: Vec<CPoint> = vertices.iter().map(|&v| sample(v)).collect::<Result<_>>()?;
    let mut edges: Vec<(CPoint, CPoint, f64)> = Vec::with_capacity(n);
    for k in 0..n {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        let mid = (a + b) * 0.5;
        let fm = sample(mid)?;
        let weighted = (at_vertex[k] + at_vertex[(k + 1) % n]) + fm * 4.0;
        let contribution = weighted.dot(b - a) / 6.0;
        let (lo, hi) = if lex_cmp(a, b) == Ordering::Greater {
            (b, a)
        } else {
            (a, b)
        };
        edges.push((lo, hi, contribution));
    }
    edges.sort_by(|x, y| lex_cmp(x.0, y.0).then(lex_cmp(x.1, y.1)));
    Ok(edges.iter().fold(0.0, |acc, e| acc + e.2))
}

fn lex_cmp(a: CPoint, b: CPoint) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Weighted discrete `L^p` norm; `p = f64::INFINITY` gives the max norm.
pub fn discrete_lp_norm(values: &[f64], weights: &[f64], p: f64) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(Error::Length {
            op: "discrete_lp_norm",
            left: values.len(),
            right: weights.len(),
        });
    }
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain {
            op: "discrete_lp_norm",
            reason: "p must lie in [1, inf]",
        });
    }
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::Domain {
            op: "discrete_lp_norm",
            reason: "weights must be finite and non-negative",
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            op: "discrete_lp_norm",
        });
    }
    if p == f64::INFINITY {
        return Ok(values.iter().fold(0.0, |m, v| m.max(libm::fabs(*v))));
    }
    let sum = values
        .iter()
        .zip(weights)
        .fold(0.0, |acc, (v, w)| acc + w * pow_abs(*v, p));
    Ok(libm::pow(sum, 1.0 / p))
}

#[inline]
pub(crate) fn pow_abs(v: f64, p: f64) -> f64 {
    let a = libm::fabs(v);
    if p == 1.0 {
        a
    } else if p == 2.0 {
        a * a
    } else {
        libm::pow(a, p)
    }
}

/// Uniform node lattice `origin + (i h, j h)`, `0 <= i < nx`, `0 <= j < ny`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    origin: CPoint,
    h: f64,
    nx: usize,
    ny: usize,
}

impl Grid {
    pub fn new(origin: CPoint, h: f64, nx: usize, ny: usize) -> Result<Self> {
        check_finite(origin, "Grid::new")?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain {
                op: "Grid::new",
                reason: "spacing must be positive",
            });
        }
        if nx == 0 || ny == 0 {
            return Err(Error::Domain {
                op: "Grid::new",
                reason: "node counts must be positive",
            });
        }
        Ok(Grid { origin, h, nx, ny })
    }

    pub fn origin(&self) -> CPoint {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_area(&self) -> f64 {
        self.h * self.h
    }

    pub fn node(&self, i: usize, j: usize) -> CPoint {
        self.origin + CPoint::new(i as f64 * self.h, j as f64 * self.h)
    }

    /// Nodes in row-major order (`j` outer, `i` inner).
    pub fn nodes(&self) -> impl Iterator<Item = CPoint> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.node(i, j)))
    }

    /// Centers of the `(nx-1) x (ny-1)` cells spanned by the nodes, row-major.
    pub fn cell_midpoints(&self) -> impl Iterator<Item = CPoint> + '_ {
        let half = CPoint::new(0.5 * self.h, 0.5 * self.h);
        (0..self.ny.saturating_sub(1))
            .flat_map(move |j| (0..self.nx.saturating_sub(1)).map(move |i| self.node(i, j) + half))
    }
}

/// A square quadrature cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub center: CPoint,
    pub size: f64,
}

impl Cell {
    #[inline]
    pub fn area(&self) -> f64 {
        self.size * self.size
    }
}

/// Midpoint-rule cells on a box symmetric about the origin, refined near a
/// set of focus points.
///
/// Cell edges always include the coordinate axes, so no cell center ever lies
/// on the real axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedCells {
    cells: Vec<Cell>,
}

/// Parameters for [`RefinedCells::build`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement<'a> {
    /// Half extents of the covered box, `[-hx, hx] x [-hy, hy]`.
    pub half_width: f64,
    pub half_height: f64,
    /// Coarse cell size.
    pub base: f64,
    /// Cells closer than `reach * size` to a focus are split.
    pub foci: &'a [CPoint],
    pub reach: f64,
    /// Cells are never split below this size.
    pub min_size: f64,
}

impl RefinedCells {
    pub fn build<P>(spec: Refinement<'_>, mut keep: P) -> Result<Self>
    where
        P: FnMut(CPoint) -> bool,
    {
        if !(spec.base > 0.0 && spec.half_width > 0.0 && spec.half_height > 0.0) {
            return Err(Error::Domain {
                op: "RefinedCells::build",
                reason: "extents and base size must be positive",
            });
        }
        if !(spec.min_size > 0.0) {
            return Err(Error::Domain {
                op: "RefinedCells::build",
                reason: "minimum cell size must be positive",
            });
        }
        let kx = libm::ceil(spec.half_width / spec.base) as i64;
        let ky = libm::ceil(spec.half_height / spec.base) as i64;
        let mut cells = Vec::new();
        let mut stack: Vec<Cell> = Vec::new();
        for j in -ky..ky {
            for i in -kx..kx {
                let center =
                    CPoint::new((i as f64 + 0.5) * spec.base, (j as f64 + 0.5) * spec.base);
                stack.push(Cell {
                    center,
                    size: spec.base,
                });
                while let Some(cell) = stack.pop() {
                    let near = spec
                        .foci
                        .iter()
                        .any(|f| chebyshev(cell.center, *f) < spec.reach * cell.size);
                    if near && cell.size * 0.5 >= spec.min_size {
                        let q = 0.25 * cell.size;
                        let s = 0.5 * cell.size;
                        // pushed in reverse so children pop in row-major order
                        for (dx, dy) in [(q, q), (-q, q), (q, -q), (-q, -q)] {
                            stack.push(Cell {
                                center: cell.center + CPoint::new(dx, dy),
                                size: s,
                            });
                        }
                    } else if keep(cell.center) {
                        cells.push(cell);
                    }
                }
            }
        }
        Ok(RefinedCells { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().fold(0.0, |acc, c| acc + c.area())
    }

    /// `(Σ area |f|^p)^{1/p}` over the kept cells.
    pub fn lp_norm<F>(&self, p: f64, mut f: F) -> Result<f64>
    where
        F: FnMut(CPoint) -> Result<f64>,
    {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain {
                op: "RefinedCells::lp_norm",
                reason: "p must lie in [1, inf]",
            });
        }
        let mut acc: f64 = 0.0;
        for c in &self.cells {
            let v = f(c.center)?;
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    op: "RefinedCells::lp_norm",
                });
            }
            if p == f64::INFINITY {
                acc = acc.max(libm::fabs(v));
            } else {
                acc += c.area() * pow_abs(v, p);
            }
        }
        Ok(if p == f64::INFINITY {
            acc
        } else {
            libm::pow(acc, 1.0 / p)
        })
    }
}

fn chebyshev(a: CPoint, b: CPoint) -> f64 {
    libm::fabs(a.re - b.re).max(libm::fabs(a.im - b.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn vortex(x: CPoint) -> Result<CPoint> {
        Ok(x.perp() / (2.0 * PI * x.norm_sqr()))
    }

    #[test]
    fn perp_examples() {
        assert_eq!(perp(CPoint::new(1.0, 0.0)), CPoint::new(0.0, 1.0));
        assert_eq!(perp(CPoint::new(0.0, 1.0)), CPoint::new(-1.0, 0.0));
        assert_eq!(perp(CPoint::new(3.0, -2.0)), CPoint::new(2.0, 3.0));
    }

    #[test]
    fn invert_star_examples() {
        assert_eq!(
            invert_star(CPoint::new(2.0, 0.0)).unwrap(),
            CPoint::new(0.5, 0.0)
        );
        assert_eq!(
            invert_star(CPoint::new(0.0, 1.0)).unwrap(),
            CPoint::new(0.0, 1.0)
        );
        assert_eq!(
            invert_star(CPoint::new(1.0, 1.0)).unwrap(),
            CPoint::new(0.5, 0.5)
        );
        assert!(matches!(
            invert_star(CPoint::ZERO),
            Err(Error::Domain { .. })
        ));
        assert!(invert_star(CPoint::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn frac_identity_examples() {
        let (l, r) = frac_identity_check(CPoint::new(1.0, 0.0), CPoint::new(0.0, 1.0)).unwrap();
        assert!((l - 2f64.sqrt()).abs() < 1e-15 && (r - 2f64.sqrt()).abs() < 1e-15);
        let (l, r) = frac_identity_check(CPoint::new(2.0, 0.0), CPoint::new(1.0, 0.0)).unwrap();
        assert_eq!((l, r), (0.5, 0.5));
        assert!(frac_identity_check(CPoint::ZERO, CPoint::ONE).is_err());
    }

    #[test]
    fn principal_sqrt() {
        let r = CPoint::new(-4.0, 0.0).sqrt();
        assert_eq!(r, CPoint::new(0.0, 2.0));
        let r = CPoint::new(-4.0, -0.0).sqrt();
        assert_eq!(r, CPoint::new(0.0, -2.0));
        let z = CPoint::new(0.3, -1.7);
        let s = z.sqrt();
        assert!((s * s - z).norm() < 1e-15);
        assert!(s.re >= 0.0);
    }

    #[test]
    fn vortex_circulation_unit_circle() {
        let c = Contour::circle(CPoint::ZERO, 1.0, 256).unwrap();
        let g = contour_circulation(vortex, &c).unwrap();
        assert!((g - 1.0).abs() < 1e-6, "{g}");
    }

    #[test]
    fn constant_and_gradient_fields_have_no_circulation() {
        let c = Contour::circle(CPoint::new(0.3, -0.2), 2.5, 37).unwrap();
        let g = contour_circulation(|_| Ok(CPoint::new(1.3, -0.7)), &c).unwrap();
        assert!(g.abs() < 1e-12);
        let square = Contour::new(vec![
            CPoint::new(-1.0, -1.0),
            CPoint::new(1.0, -1.0),
            CPoint::new(1.0, 1.0),
            CPoint::new(-1.0, 1.0),
        ])
        .unwrap();
        let g = contour_circulation(Ok, &square).unwrap();
        assert!(g.abs() < 1e-12);
    }

    #[test]
    fn reversed_polygon_negates_exactly() {
        let c = Contour::circle(CPoint::new(0.1, 0.2), 1.7, 129).unwrap();
        let field = |x: CPoint| Ok(CPoint::new(x.im * x.im - 0.3 * x.re, x.re * x.im + 1.0));
        let fwd = polygon_circulation(field, c.vertices()).unwrap();
        let mut rev = c.vertices().to_vec();
        rev.reverse();
        let bwd = polygon_circulation(field, &rev).unwrap();
        assert_eq!(fwd, -bwd);
    }

    #[test]
    fn contour_rejects_bad_input() {
        assert!(Contour::new(vec![CPoint::ZERO, CPoint::ONE]).is_err());
        let cw = vec![CPoint::ZERO, CPoint::new(0.0, 1.0), CPoint::new(1.0, 0.0)];
        assert!(Contour::new(cw).is_err());
        let c = Contour::circle(CPoint::ZERO, 1.0, 8).unwrap();
        let err = contour_circulation(|_| Ok(CPoint::new(f64::NAN, 0.0)), &c);
        assert!(matches!(err, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn lp_norm_examples() {
        assert_eq!(discrete_lp_norm(&[1.0; 4], &[0.25; 4], 1.0).unwrap(), 1.0);
        assert_eq!(
            discrete_lp_norm(&[2.0], &[1.0], f64::INFINITY).unwrap(),
            2.0
        );
        assert_eq!(
            discrete_lp_norm(&[3.0, 4.0], &[1.0, 1.0], 2.0).unwrap(),
            5.0
        );
        assert!(discrete_lp_norm(&[1.0], &[1.0], 0.5).is_err());
        assert!(discrete_lp_norm(&[1.0], &[1.0, 2.0], 2.0).is_err());
        assert!(discrete_lp_norm(&[1.0], &[-1.0], 2.0).is_err());
    }

    #[test]
    fn grid_enumeration_is_row_major() {
        let g = Grid::new(CPoint::new(-1.0, 2.0), 0.5, 3, 2).unwrap();
        let nodes: Vec<_> = g.nodes().collect();
        assert_eq!(nodes.len(), 6);
        assert_eq!(nodes[1], CPoint::new(-0.5, 2.0));
        assert_eq!(nodes[3], CPoint::new(-1.0, 2.5));
        assert_eq!(g.cell_area(), 0.25);
        assert_eq!(g.cell_midpoints().count(), 2);
        assert!(Grid::new(CPoint::ZERO, 0.0, 1, 1).is_err());
    }

    #[test]
    fn refined_cells_cover_box_and_avoid_axis() {
        let foci = [CPoint::new(0.5, 0.0)];
        let cells = RefinedCells::build(
            Refinement {
                half_width: 1.0,
                half_height: 0.5,
                base: 0.25,
                foci: &foci,
                reach: 1.0,
                min_size: 0.01,
            },
            |_| true,
        )
        .unwrap();
        assert!((cells.total_area() - 2.0).abs() < 1e-12);
        assert!(cells.cells().iter().all(|c| c.center.im != 0.0));
        let smallest = cells.cells().iter().fold(1.0f64, |m, c| m.min(c.size));
        assert!(smallest < 0.02);
        let disk = RefinedCells::build(
            Refinement {
                half_width: 1.0,
                half_height: 1.0,
                base: 0.01,
                foci: &[],
                reach: 1.0,
                min_size: 0.01,
            },
            |p| p.norm() <= 1.0,
        )
        .unwrap();
        assert!((disk.total_area() - PI).abs() < 5e-3);
    }
}
