//! Two-dimensional rate-region geometry.
//!
//! Everything a scheme achieves here is a convex polygon in the `(R1, R2)`
//! plane containing the origin. Single allocations produce pentagons
//! `{R1 <= a, R2 <= b, R1 + R2 <= c}`; resource-allocation sweeps and time
//! sharing produce convex unions of those. Regions are kept as exact vertex
//! lists rather than sampled boundaries, which keeps containment and support
//! queries crisp.

use crate::{Error, Result};

/// Cross products below this are treated as collinear when building hulls.
const COLLINEAR_EPS: f64 = 1e-12;
/// Vertices closer than this (per coordinate) are merged.
const DEDUP_EPS: f64 = 1e-12;

/// The polytope `{R1 <= a, R2 <= b, R1 + R2 <= c}` intersected with the
/// nonnegative quadrant.
///
/// `sum_max` larger than `r1_max + r2_max` is allowed; the region is then a
/// rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePentagon {
    pub r1_max: f64,
    pub r2_max: f64,
    pub sum_max: f64,
}

impl RatePentagon {
    pub fn new(r1_max: f64, r2_max: f64, sum_max: f64) -> Result<Self> {
        for (name, v) in [("r1_max", r1_max), ("r2_max", r2_max), ("sum_max", sum_max)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(Self { r1_max, r2_max, sum_max })
    }
}

/// A convex rate region: vertices sorted counterclockwise starting at the
/// origin, all coordinates nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    vertices: Vec<[f64; 2]>,
}

impl RateRegion {
    /// Region consisting of the origin alone (nothing achievable).
    pub fn origin() -> Self {
        Self { vertices: vec![[0.0, 0.0]] }
    }

    /// Convex hull of arbitrary nonnegative rate points plus the origin.
    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        for p in points {
            if !p[0].is_finite() || !p[1].is_finite() || p[0] < -DEDUP_EPS || p[1] < -DEDUP_EPS {
                return Err(Error::domain(format!("rate point ({}, {}) out of range", p[0], p[1])));
            }
        }
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(points.len() + 1);
        pts.push([0.0, 0.0]);
        pts.extend(points.iter().map(|p| [p[0].max(0.0), p[1].max(0.0)]));
        Ok(Self { vertices: hull(pts) })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    /// Region with the two rate axes exchanged.
    pub fn transpose(&self) -> Self {
        let flipped: Vec<[f64; 2]> = self.vertices.iter().map(|p| [p[1], p[0]]).collect();
        Self { vertices: hull(flipped) }
    }

    /// Largest `R2 + weight_r1 * R1` over the region.
    pub fn support_value(&self, weight_r1: f64) -> f64 {
        debug_assert!(weight_r1 >= 0.0);
        self.support_dir([weight_r1, 1.0])
    }

    /// Largest inner product with `dir` over the region.
    pub fn support_dir(&self, dir: [f64; 2]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0] * dir[0] + v[1] * dir[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Euclidean distance from `p` to the region (zero if inside).
    pub fn distance_outside(&self, p: [f64; 2]) -> f64 {
        let n = self.vertices.len();
        match n {
            0 => f64::INFINITY,
            1 => hypot2(p, self.vertices[0]),
            2 => segment_distance(p, self.vertices[0], self.vertices[1]),
            _ => {
                let inside = (0..n).all(|i| {
                    let a = self.vertices[i];
                    let b = self.vertices[(i + 1) % n];
                    cross(a, b, p) >= 0.0
                });
                if inside {
                    return 0.0;
                }
                (0..n)
                    .map(|i| segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Largest distance of any of `other`'s vertices outside `self`.
    ///
    /// When `other` contains `self` this is the Hausdorff distance between the
    /// two regions.
    pub fn max_outside_distance(&self, other: &RateRegion) -> f64 {
        other
            .vertices
            .iter()
            .map(|&v| self.distance_outside(v))
            .fold(0.0, f64::max)
    }

    /// True when every vertex of `inner` lies within `self` expanded by `tol`.
    pub fn contains(&self, inner: &RateRegion, tol: f64) -> bool {
        debug_assert!(tol >= 0.0);
        inner.vertices.iter().all(|&v| self.distance_outside(v) <= tol)
    }
}

impl std::fmt::Display for RateRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({:.6}, {:.6})", v[0], v[1])?;
        }
        write!(f, "]")
    }
}

/// Pareto-relevant vertex set of a pentagon as a region.
///
/// Feasible intersections of the constraint boundaries, hulled; degenerate
/// duplicates merge in the hull step.
pub fn pentagon_vertices(p: &RatePentagon) -> RateRegion {
    let (a, b, c) = (p.r1_max, p.r2_max, p.sum_max);
    let candidates = [
        [0.0, 0.0],
        [a, 0.0],
        [0.0, b],
        [a, b],
        [c.min(a), 0.0],
        [0.0, c.min(b)],
        [a, c - a],
        [c - b, b],
    ];
    let slack = 1e-12 * (1.0 + a.max(b).max(c));
    let feasible: Vec<[f64; 2]> = candidates
        .into_iter()
        .filter(|q| {
            q[0] >= -slack
                && q[1] >= -slack
                && q[0] <= a + slack
                && q[1] <= b + slack
                && q[0] + q[1] <= c + slack
        })
        .map(|q| [q[0].max(0.0).min(a), q[1].max(0.0).min(b)])
        .collect();
    RateRegion::from_points(&feasible).expect("pentagon vertices are finite and nonnegative")
}

/// Convex hull of the union of the given regions.
///
/// Idempotent and monotone; errors on an empty list.
pub fn convex_union(regions: &[RateRegion]) -> Result<RateRegion> {
    if regions.is_empty() {
        return Err(Error::domain("convex_union of an empty region list"));
    }
    let mut pts = Vec::new();
    for r in regions {
        pts.extend_from_slice(r.vertices());
    }
    RateRegion::from_points(&pts)
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hypot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return hypot2(p, a);
    }
    let t = (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0);
    hypot2(p, [a[0] + t * dx, a[1] + t * dy])
}

/// Monotone-chain hull, counterclockwise, starting at the lexicographically
/// smallest point. Collinear runs are merged.
fn hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() <= DEDUP_EPS && (a[1] - b[1]).abs() <= DEDUP_EPS);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<[f64; 2]> = Vec::with_capacity(n);
    for &p in &pts {
        while lower.len() >= 2
            && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= COLLINEAR_EPS
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::with_capacity(n);
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= COLLINEAR_EPS
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
