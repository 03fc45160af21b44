//! Metric-space backends for discretization: the Poincaré disk and metric
//! trees with unit edges.

use std::f64::consts::PI;
use std::fmt::Debug;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{RootedTree, VertexId};
use crate::rng;

/// Equality tolerance for distances.
pub const EPS_EQ: f64 = 1e-12;
/// Allowed error of sphere samples in distance to the basepoint.
pub const EPS_SPHERE: f64 = 1e-9;
/// Allowed triangle-inequality defect.
pub const EPS_TRI: f64 = 1e-9;

/// A metric space with a basepoint, exposing just what the discretizer needs.
pub trait MetricOracle: Sync {
    type Point: Clone + Debug + PartialEq + Send + Sync;

    fn basepoint(&self) -> Self::Point;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> f64;

    /// Up to `count` points at distance `n` from the basepoint.
    fn sample_sphere(&self, n: u32, count: usize, seed: u64) -> Result<Vec<Self::Point>>;

    /// Rough size of a maximal 1-separated subset of the sphere of radius `n`.
    fn sphere_size_estimate(&self, n: u32) -> usize;

    /// The point at arclength `t` from `p` on the geodesic towards `q`.
    fn geodesic_point(&self, p: &Self::Point, q: &Self::Point, t: f64) -> Result<Self::Point>;

    /// `count` points within distance `radius` of the basepoint.
    fn sample_ball(&self, radius: f64, count: usize, seed: u64) -> Result<Vec<Self::Point>>;

    /// Coordinates for export.
    fn coordinates(&self, p: &Self::Point) -> Vec<f64>;
}

fn check_t(t: f64, d: f64) -> Result<f64> {
    if !(t >= -EPS_SPHERE && t <= d + EPS_SPHERE) {
        return Err(Error::Domain(format!("geodesic parameter {t} outside [0, {d}]")));
    }
    Ok(t.clamp(0.0, d))
}

/// Points of the open unit disk farther than this from the origin are rejected.
pub const DISK_BOUNDARY_GUARD: f64 = 1.0 - 1e-6;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        DiskPoint::from_complex(Complex64::new(u, v))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.norm() <= DISK_BOUNDARY_GUARD) {
            return Err(Error::Domain(format!("point ({}, {}) is not inside the disk guard", z.re, z.im)));
        }
        Ok(DiskPoint(z))
    }

    pub fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn u(&self) -> f64 {
        self.0.re
    }

    pub fn v(&self) -> f64 {
        self.0.im
    }
}

/// The Poincaré disk model of the hyperbolic plane, curvature -1.
#[derive(Copy, Clone, Debug, Default)]
pub struct DiskOracle;

/// `arccosh(1 + 2|p-q|² / ((1-|p|²)(1-|q|²)))`, evaluated as
/// `2 asinh(|p-q| / sqrt((1-|p|²)(1-|q|²)))` to keep precision near 0.
pub fn disk_distance(p: &DiskPoint, q: &DiskPoint) -> f64 {
    let num = (p.0 - q.0).norm();
    let den = ((1.0 - p.0.norm_sqr()) * (1.0 - q.0.norm_sqr())).sqrt();
    2.0 * (num / den).asinh()
}

/// Möbius map sending `p` to the origin.
fn to_origin(p: Complex64, z: Complex64) -> Complex64 {
    (z - p) / (Complex64::new(1.0, 0.0) - p.conj() * z)
}

fn from_origin(p: Complex64, w: Complex64) -> Complex64 {
    (w + p) / (Complex64::new(1.0, 0.0) + p.conj() * w)
}

pub fn disk_geodesic_point(p: &DiskPoint, q: &DiskPoint, t: f64) -> Result<DiskPoint> {
    let d = disk_distance(p, q);
    let t = check_t(t, d)?;
    if t == 0.0 {
        return Ok(*p);
    }
    if t == d {
        return Ok(*q);
    }
    let w = to_origin(p.0, q.0);
    let dir = w / w.norm();
    let z = from_origin(p.0, dir * (t / 2.0).tanh());
    Ok(DiskPoint(z))
}

impl MetricOracle for DiskOracle {
    type Point = DiskPoint;

    fn basepoint(&self) -> DiskPoint {
        DiskPoint::origin()
    }

    fn distance(&self, p: &DiskPoint, q: &DiskPoint) -> f64 {
        disk_distance(p, q)
    }

    /// Angle-stratified: sample `i` lies in the `i`-th of `count` equal
    /// sectors at a uniformly jittered angle, all at Euclidean radius `tanh(n/2)`.
    fn sample_sphere(&self, n: u32, count: usize, seed: u64) -> Result<Vec<DiskPoint>> {
        if n == 0 {
            return Err(Error::Domain("sphere radius must be >= 1".into()));
        }
        let rho = (n as f64 / 2.0).tanh();
        if rho > DISK_BOUNDARY_GUARD {
            return Err(Error::Domain(format!("sphere of radius {n} lies beyond the disk guard")));
        }
        let mut rng = rng::stream(seed, &format!("disk-sphere-{n}"));
        Ok((0..count)
            .map(|i| {
                let angle = 2.0 * PI * (i as f64 + rng.random::<f64>()) / count as f64;
                DiskPoint(Complex64::from_polar(rho, angle))
            })
            .collect())
    }

    fn sphere_size_estimate(&self, n: u32) -> usize {
        (2.0 * PI * (n as f64).sinh()).ceil() as usize
    }

    fn geodesic_point(&self, p: &DiskPoint, q: &DiskPoint, t: f64) -> Result<DiskPoint> {
        disk_geodesic_point(p, q, t)
    }

    /// Uniform with respect to hyperbolic area.
    fn sample_ball(&self, radius: f64, count: usize, seed: u64) -> Result<Vec<DiskPoint>> {
        if !(radius >= 0.0) || (radius / 2.0).tanh() > DISK_BOUNDARY_GUARD {
            return Err(Error::Domain(format!("ball radius {radius} is out of range")));
        }
        let mut rng = rng::stream(seed, "disk-ball");
        let c = radius.cosh() - 1.0;
        Ok((0..count)
            .map(|_| {
                let s = (1.0 + rng.random::<f64>() * c).acosh();
                let angle = 2.0 * PI * rng.random::<f64>();
                DiskPoint(Complex64::from_polar((s / 2.0).tanh(), angle))
            })
            .collect())
    }

    fn coordinates(&self, p: &DiskPoint) -> Vec<f64> {
        vec![p.u(), p.v()]
    }
}

/// A point of a metric tree: the vertex `edge` moved `offset` of the way
/// towards its parent. The root is `(root, 0)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct TreePoint {
    pub edge: VertexId,
    pub offset: f64,
}

impl TreePoint {
    pub fn vertex(v: VertexId) -> Self {
        TreePoint { edge: v, offset: 0.0 }
    }
}

/// The metric tree of a rooted tree with unit edge lengths.
#[derive(Clone, Debug)]
pub struct MetricTreeOracle {
    tree: RootedTree,
}

impl MetricTreeOracle {
    pub fn new(tree: RootedTree) -> Self {
        MetricTreeOracle { tree }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn point(&self, edge: VertexId, offset: f64) -> Result<TreePoint> {
        if edge.index() >= self.tree.len() {
            return Err(Error::Domain(format!("edge {edge} out of range")));
        }
        let max = if edge == self.tree.root() { 0.0 } else { 1.0 };
        if !(offset >= 0.0 && (offset < max || offset == 0.0)) {
            return Err(Error::Domain(format!("offset {offset} invalid on edge {edge}")));
        }
        Ok(TreePoint { edge, offset })
    }

    /// Distance to the root.
    pub fn height(&self, p: &TreePoint) -> f64 {
        self.tree.level(p.edge) as f64 - p.offset
    }

    /// Height of the point where the geodesics from the root to `p` and `q` part.
    fn meeting_height(&self, p: &TreePoint, q: &TreePoint) -> f64 {
        if p.edge == q.edge {
            return self.height(p).min(self.height(q));
        }
        let c = self.tree.confluent(p.edge, q.edge);
        if c == p.edge {
            self.height(p)
        } else if c == q.edge {
            self.height(q)
        } else {
            self.tree.level(c) as f64
        }
    }

    /// The point at distance `s` above `p` on its root path.
    fn ascend(&self, p: &TreePoint, s: f64) -> TreePoint {
        let target = (self.height(p) - s).max(0.0);
        let level = target.ceil();
        let v = self.tree.ancestor(p.edge, self.tree.level(p.edge) - level as u32).expect("ancestor exists");
        let offset = level - target;
        if v == self.tree.root() || offset <= 0.0 {
            TreePoint::vertex(v)
        } else {
            TreePoint { edge: v, offset }
        }
    }
}

impl MetricOracle for MetricTreeOracle {
    type Point = TreePoint;

    fn basepoint(&self) -> TreePoint {
        TreePoint::vertex(self.tree.root())
    }

    fn distance(&self, p: &TreePoint, q: &TreePoint) -> f64 {
        let m = self.meeting_height(p, q);
        (self.height(p) - m) + (self.height(q) - m)
    }

    /// Every vertex of level `n`, in id order; `count = 0` yields nothing.
    fn sample_sphere(&self, n: u32, count: usize, _seed: u64) -> Result<Vec<TreePoint>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        Ok(self.tree.level_vertices(n).map(TreePoint::vertex).collect())
    }

    fn sphere_size_estimate(&self, n: u32) -> usize {
        self.tree.level_size(n)
    }

    fn geodesic_point(&self, p: &TreePoint, q: &TreePoint, t: f64) -> Result<TreePoint> {
        let d = self.distance(p, q);
        let t = check_t(t, d)?;
        let up = self.height(p) - self.meeting_height(p, q);
        Ok(if t <= up { self.ascend(p, t) } else { self.ascend(q, d - t) })
    }

    /// Uniform over the edges ending at levels `1..=floor(radius)`, uniform offset.
    fn sample_ball(&self, radius: f64, count: usize, seed: u64) -> Result<Vec<TreePoint>> {
        if !(radius >= 0.0) {
            return Err(Error::Domain(format!("ball radius {radius} is out of range")));
        }
        let top = (radius.floor() as u32).min(self.tree.depth());
        let end = self.tree.level_range(top).end as usize;
        if end <= 1 {
            return Ok(vec![self.basepoint(); count]);
        }
        let mut rng = rng::stream(seed, "tree-ball");
        Ok((0..count)
            .map(|_| TreePoint { edge: VertexId::from(rng.random_range(1..end)), offset: rng.random::<f64>() })
            .collect())
    }

    fn coordinates(&self, p: &TreePoint) -> Vec<f64> {
        vec![p.edge.0 as f64, p.offset]
    }
}
