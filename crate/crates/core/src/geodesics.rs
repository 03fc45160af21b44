//! Standard geodesics, Gromov products and four-point hyperbolicity.
//!
//! Distances on graphs are integers, so Gromov products and hyperbolicity
//! constants are half-integers; they are carried exactly as [`HalfInt`].

use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, validate_spiderweb, SpiderWeb, VertexId, UNREACHABLE};
use crate::rng;

/// An exact multiple of one half, stored doubled.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_doubled(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Parse `"3"`, `"3.5"` or `"3.0"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('.') {
            None => s.parse::<i64>().ok().map(HalfInt::from_int),
            Some((int, frac)) => {
                let base = if int.is_empty() || int == "-" { 0 } else { int.parse::<i64>().ok()? };
                let neg = int.starts_with('-');
                let half = match frac.trim_end_matches('0') {
                    "" => 0,
                    "5" => 1,
                    _ => return None,
                };
                Some(HalfInt(2 * base + if neg { -half } else { half }))
            }
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}

/// `(y, z)_w = (d(w, y) + d(w, z) - d(y, z)) / 2`.
pub fn gromov_product(g: &SpiderWeb, y: VertexId, z: VertexId, w: VertexId) -> HalfInt {
    let from_w = bfs_distances(g, w);
    let from_y = bfs_distances(g, y);
    let (wy, wz, yz) = (from_w.get(y) as i64, from_w.get(z) as i64, from_y.get(z) as i64);
    HalfInt::from_doubled(wy + wz - yz)
}

/// All-pairs distances, computed by one breadth-first search per vertex.
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

/// Largest graph for which a [`DistanceMatrix`] is built.
pub const MATRIX_LIMIT: usize = 8192;

impl DistanceMatrix {
    pub fn new(g: &SpiderWeb) -> Result<Self> {
        let n = g.len();
        if n > MATRIX_LIMIT {
            return Err(Error::Size(format!("{n} vertices exceed the distance-matrix limit {MATRIX_LIMIT}")));
        }
        let rows: Vec<Vec<u16>> = (0..n)
            .into_par_iter()
            .map(|s| {
                let f = bfs_distances(g, VertexId::from(s));
                f.dist
                    .iter()
                    .map(|&d| {
                        assert_ne!(d, UNREACHABLE, "graph is disconnected");
                        d as u16
                    })
                    .collect()
            })
            .collect();
        Ok(DistanceMatrix { n, d: rows.concat() })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.d[a * self.n + b] as i64
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEstimate {
    pub delta: HalfInt,
    /// `(x, y, z, w)` attaining the maximum.
    pub witness: [VertexId; 4],
    pub quadruples_checked: u64,
    pub mode: DeltaMode,
}

/// Largest graph accepted by exhaustive mode.
pub const EXHAUSTIVE_LIMIT: usize = 60;

/// Quadruples per sampling chunk. Chunk `i` draws from the stream
/// `delta-chunk-{i}` of the caller's seed; chunk maxima merge by value, ties
/// going to the lower chunk.
pub const DELTA_CHUNK: u64 = 1 << 16;

/// Doubled value of `min((x,y)_w, (y,z)_w) - (x,z)_w`.
#[inline]
fn defect(m: &DistanceMatrix, x: usize, y: usize, z: usize, w: usize) -> i64 {
    let (wx, wy, wz) = (m.get(w, x), m.get(w, y), m.get(w, z));
    let xy_w = wx + wy - m.get(x, y);
    let yz_w = wy + wz - m.get(y, z);
    let xz_w = wx + wz - m.get(x, z);
    xy_w.min(yz_w) - xz_w
}

#[derive(Copy, Clone)]
struct Best {
    value: i64,
    quad: [u32; 4],
}

impl Best {
    fn merge(self, other: Best) -> Best {
        if other.value > self.value {
            other
        } else {
            self
        }
    }
}

fn exhaustive_for_base(m: &DistanceMatrix, w: usize) -> Best {
    let n = m.len();
    let mut best = Best { value: i64::MIN, quad: [0; 4] };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = defect(m, x, y, z, w);
                if v > best.value {
                    best = Best { value: v, quad: [x as u32, y as u32, z as u32, w as u32] };
                }
            }
        }
    }
    best
}

fn estimate(best: Best, checked: u64, mode: DeltaMode) -> DeltaEstimate {
    DeltaEstimate {
        delta: HalfInt::from_doubled(best.value.max(0)),
        witness: best.quad.map(VertexId),
        quadruples_checked: checked,
        mode,
    }
}

/// Four-point hyperbolicity constant of the graph metric.
///
/// Exhaustive mode returns the exact constant of the finite metric space
/// (graphs of at most [`EXHAUSTIVE_LIMIT`] vertices). Sampled mode checks
/// `sample_size` uniformly drawn quadruples and returns a lower bound.
pub fn four_point_delta(g: &SpiderWeb, mode: DeltaMode, sample_size: u64, seed: u64) -> Result<DeltaEstimate> {
    let n = g.len();
    match mode {
        DeltaMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::Size(format!(
                    "exhaustive four-point check needs at most {EXHAUSTIVE_LIMIT} vertices, graph has {n}"
                )));
            }
            let m = DistanceMatrix::new(g)?;
            let best = (0..n)
                .into_par_iter()
                .map(|w| exhaustive_for_base(&m, w))
                .collect::<Vec<_>>()
                .into_iter()
                .reduce(Best::merge)
                .expect("nonempty graph");
            Ok(estimate(best, (n as u64).pow(4), mode))
        }
        DeltaMode::Sampled => {
            if sample_size == 0 {
                return Err(Error::Domain("sample size must be positive".into()));
            }
            let m = DistanceMatrix::new(g)?;
            let chunks = sample_size.div_ceil(DELTA_CHUNK);
            let best = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let len = DELTA_CHUNK.min(sample_size - c * DELTA_CHUNK);
                    let mut rng = rng::stream(seed, &format!("delta-chunk-{c}"));
                    let mut best = Best { value: i64::MIN, quad: [0; 4] };
                    for _ in 0..len {
                        let q: [usize; 4] = std::array::from_fn(|_| rng.random_range(0..n));
                        let v = defect(&m, q[0], q[1], q[2], q[3]);
                        if v > best.value {
                            best = Best { value: v, quad: q.map(|i| i as u32) };
                        }
                    }
                    best
                })
                .collect::<Vec<_>>()
                .into_iter()
                .reduce(Best::merge)
                .expect("at least one chunk");
            Ok(estimate(best, sample_size, mode))
        }
    }
}

/// Exhaustive four-point constant with the base point fixed to `w`.
pub fn four_point_delta_at_base(g: &SpiderWeb, w: VertexId) -> Result<DeltaEstimate> {
    let n = g.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Size(format!("graph has {n} vertices, limit is {EXHAUSTIVE_LIMIT}")));
    }
    let m = DistanceMatrix::new(g)?;
    Ok(estimate(exhaustive_for_base(&m, w.index()), (n as u64).pow(3), DeltaMode::Exhaustive))
}

/// A shortest path made of an ascending, a horizontal and a descending part.
/// Consecutive parts share their junction vertex; any part may be a single
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardGeodesic {
    /// `x, p(x), ..., π(x)`.
    pub ascending: Vec<VertexId>,
    /// `π(x), ..., π(y)` within one level.
    pub horizontal: Vec<VertexId>,
    /// `π(y), ..., y`.
    pub descending: Vec<VertexId>,
    pub total_length: u32,
}

impl StandardGeodesic {
    pub fn ascending_length(&self) -> u32 {
        self.ascending.len() as u32 - 1
    }

    pub fn horizontal_length(&self) -> u32 {
        self.horizontal.len() as u32 - 1
    }

    pub fn descending_length(&self) -> u32 {
        self.descending.len() as u32 - 1
    }

    /// The whole path from `x` to `y`.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = self.ascending.clone();
        out.extend_from_slice(&self.horizontal[1..]);
        out.extend_from_slice(&self.descending[1..]);
        out
    }

    /// Check the shape of every part and that the whole is a path in `g`.
    /// Says nothing about minimality; compare `total_length` with a distance.
    pub fn check(&self, g: &SpiderWeb) -> Result<()> {
        let fail = |msg: String| Err(Error::Consistency(msg));
        if self.ascending.is_empty() || self.horizontal.is_empty() || self.descending.is_empty() {
            return fail("empty geodesic part".into());
        }
        if self.ascending.last() != self.horizontal.first() || self.horizontal.last() != self.descending.first() {
            return fail("geodesic parts do not join".into());
        }
        if self.ascending_length() + self.horizontal_length() + self.descending_length() != self.total_length {
            return fail("part lengths do not sum to the total".into());
        }
        for w in self.ascending.windows(2) {
            if g.parent(w[0]) != Some(w[1]) {
                return fail(format!("ascending step {} -> {} is not a parent link", w[0], w[1]));
            }
        }
        let level = g.level(self.horizontal[0]);
        for w in self.horizontal.windows(2) {
            if g.level(w[1]) != level || !g.has_horizontal_edge(w[0], w[1]) {
                return fail(format!("horizontal step {} -> {} is not a same-level edge", w[0], w[1]));
            }
        }
        for w in self.descending.windows(2) {
            if g.parent(w[1]) != Some(w[0]) {
                return fail(format!("descending step {} -> {} is not a child link", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Breadth-first search from one vertex that also records, for every
/// target, the least level reachable by a shortest path and a predecessor
/// realising it. Standard geodesics to all targets derive from it.
pub struct GeodesicSource<'g> {
    g: &'g SpiderWeb,
    source: VertexId,
    dist: Vec<u32>,
    min_level: Vec<u32>,
    pred: Vec<VertexId>,
}

impl<'g> GeodesicSource<'g> {
    pub fn new(g: &'g SpiderWeb, source: VertexId) -> Self {
        let n = g.len();
        let mut dist = vec![UNREACHABLE; n];
        let mut min_level = vec![u32::MAX; n];
        let mut pred = vec![source; n];
        let mut queue = Vec::with_capacity(n);
        dist[source.index()] = 0;
        min_level[source.index()] = g.level(source);
        queue.push(source);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            let (du, mu) = (dist[u.index()], min_level[u.index()]);
            for &v in g.neighbors(u) {
                let vi = v.index();
                if dist[vi] == UNREACHABLE {
                    dist[vi] = du + 1;
                    min_level[vi] = mu.min(g.level(v));
                    pred[vi] = u;
                    queue.push(v);
                } else if dist[vi] == du + 1 {
                    let cand = mu.min(g.level(v));
                    if cand < min_level[vi] {
                        min_level[vi] = cand;
                        pred[vi] = u;
                    }
                }
            }
        }
        GeodesicSource { g, source, dist, min_level, pred }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn distance(&self, y: VertexId) -> u32 {
        self.dist[y.index()]
    }

    /// Least level met by a shortest path from the source to `y`.
    pub fn min_level(&self, y: VertexId) -> u32 {
        self.min_level[y.index()]
    }

    /// Standard geodesic from the source to `y`: project a shortest path of
    /// minimal lowest level onto that level, collapse repeats into the
    /// horizontal part, and attach the ascending and descending tree paths.
    pub fn geodesic_to(&self, y: VertexId) -> Result<StandardGeodesic> {
        let g = self.g;
        let tree = g.tree();
        let x = self.source;
        let d = self.dist[y.index()];
        if d == UNREACHABLE {
            return Err(Error::Consistency(format!("vertex {y} unreachable from {x}")));
        }
        let n = self.min_level[y.index()];

        // Shortest path from x to y, in order.
        let mut path = Vec::with_capacity(d as usize + 1);
        let mut cur = y;
        path.push(cur);
        while cur != x {
            cur = self.pred[cur.index()];
            path.push(cur);
        }
        path.reverse();

        let mut horizontal = Vec::new();
        let mut proj = tree.project(path[0], n);
        horizontal.push(proj);
        for w in path.windows(2) {
            // Tree steps keep the projection; only same-level steps can move it.
            if g.level(w[0]) == g.level(w[1]) {
                proj = tree.project(w[1], n);
                if proj != *horizontal.last().unwrap() {
                    let last = *horizontal.last().unwrap();
                    if !g.has_horizontal_edge(last, proj) {
                        return Err(Error::Consistency(format!(
                            "projections {last} and {proj} of a shortest path are not adjacent; is the graph a spider's web?"
                        )));
                    }
                    horizontal.push(proj);
                }
            }
        }

        let ascending: Vec<_> = (0..=g.level(x) - n).map(|k| tree.ancestor(x, k).unwrap()).collect();
        let descending: Vec<_> = (0..=g.level(y) - n).rev().map(|k| tree.ancestor(y, k).unwrap()).collect();
        let geo = StandardGeodesic {
            total_length: (ascending.len() + horizontal.len() + descending.len() - 3) as u32,
            ascending,
            horizontal,
            descending,
        };
        if geo.total_length != d {
            return Err(Error::Consistency(format!(
                "standard geodesic from {x} to {y} has length {} but the distance is {d}",
                geo.total_length
            )));
        }
        Ok(geo)
    }
}

/// Standard geodesic joining `x` and `y`.
pub fn standard_geodesic(g: &SpiderWeb, x: VertexId, y: VertexId) -> Result<StandardGeodesic> {
    GeodesicSource::new(g, x).geodesic_to(y)
}

/// `k` vertex pairs drawn uniformly with replacement.
pub fn sample_pairs(g: &SpiderWeb, k: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = rng::stream(seed, "pairs");
    let n = g.len();
    (0..k)
        .map(|_| (VertexId::from(rng.random_range(0..n)), VertexId::from(rng.random_range(0..n))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicRow {
    pub x: VertexId,
    pub y: VertexId,
    pub length: u32,
    pub ascending: u32,
    pub horizontal: u32,
    pub descending: u32,
    pub bound_ok: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    Pass,
    /// The bound was exceeded but δ is only a lower bound for the graph, so
    /// the excess does not refute anything.
    Inconclusive,
    /// The bound was exceeded with an exact δ.
    Fail,
}

#[derive(Clone, Debug)]
pub struct HorizontalBoundReport {
    pub delta: HalfInt,
    pub delta_exact: bool,
    /// `4δ + 1`.
    pub bound: HalfInt,
    pub max_horizontal: u32,
    pub rows: Vec<GeodesicRow>,
    pub verdict: BoundVerdict,
}

impl HorizontalBoundReport {
    pub fn violations(&self) -> impl Iterator<Item = &GeodesicRow> {
        self.rows.iter().filter(|r| !r.bound_ok)
    }
}

/// Build a standard geodesic for each pair and compare its horizontal
/// length against `4δ + 1`. `delta_exact` states whether `delta` is the
/// true constant of `g` (violations are then failures) or an estimate.
pub fn horizontal_bound_report(
    g: &SpiderWeb,
    delta: HalfInt,
    delta_exact: bool,
    pairs: &[(VertexId, VertexId)],
) -> Result<HorizontalBoundReport> {
    let violations = validate_spiderweb(g);
    if let Some(v) = violations.first() {
        return Err(Error::Precondition(format!(
            "graph is not a spider's web ({} violations, first: {v})",
            violations.len()
        )));
    }
    let bound = HalfInt::from_doubled(4 * delta.doubled() + 2);
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| pairs[i].0);
    let groups: Vec<&[usize]> = order.chunk_by(|&a, &b| pairs[a].0 == pairs[b].0).collect();
    let computed: Vec<Vec<(usize, GeodesicRow)>> = groups
        .par_iter()
        .map(|idx| {
            let src = GeodesicSource::new(g, pairs[idx[0]].0);
            idx.iter()
                .map(|&i| {
                    let (x, y) = pairs[i];
                    let geo = src.geodesic_to(y)?;
                    let h = geo.horizontal_length();
                    Ok((
                        i,
                        GeodesicRow {
                            x,
                            y,
                            length: geo.total_length,
                            ascending: geo.ascending_length(),
                            horizontal: h,
                            descending: geo.descending_length(),
                            bound_ok: 2 * h as i64 <= bound.doubled(),
                        },
                    ))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<Option<GeodesicRow>> = vec![None; pairs.len()];
    for (i, row) in computed.into_iter().flatten() {
        rows[i] = Some(row);
    }
    let rows: Vec<GeodesicRow> = rows.into_iter().map(|r| r.expect("every pair computed")).collect();
    let max_horizontal = rows.iter().map(|r| r.horizontal).max().unwrap_or(0);
    let any_violation = rows.iter().any(|r| !r.bound_ok);
    let verdict = match (any_violation, delta_exact) {
        (false, _) => BoundVerdict::Pass,
        (true, true) => BoundVerdict::Fail,
        (true, false) => BoundVerdict::Inconclusive,
    };
    Ok(HorizontalBoundReport { delta, delta_exact, bound, max_horizontal, rows, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_dyadic_web, gen_homogeneous_tree, gen_random_ab_tree};
    use crate::graph::{RootedTree, SpiderWeb};

    #[test]
    fn half_int_display_and_parse() {
        assert_eq!(HalfInt::from_doubled(7).to_string(), "3.5");
        assert_eq!(HalfInt::from_doubled(-3).to_string(), "-1.5");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        assert_eq!(HalfInt::parse("3.5"), Some(HalfInt::from_doubled(7)));
        assert_eq!(HalfInt::parse("2.0"), Some(HalfInt::from_int(2)));
        assert_eq!(HalfInt::parse("0.5"), Some(HalfInt::from_doubled(1)));
        assert_eq!(HalfInt::parse("1.25"), None);
    }

    #[test]
    fn product_with_itself_is_zero() {
        let g = gen_dyadic_web(4).unwrap();
        for y in [0u32, 5, 17] {
            assert_eq!(gromov_product(&g, VertexId(y), VertexId(9), VertexId(y)), HalfInt::ZERO);
        }
    }

    #[test]
    fn tree_product_is_confluent_level() {
        let g = gen_random_ab_tree(2, 3, 4, 5).unwrap();
        let t = g.tree();
        for (y, z) in [(7u32, 30u32), (12, 13), (40, 3), (0, 20)] {
            let (y, z) = (VertexId(y), VertexId(z));
            let expected = HalfInt::from_int(t.level(t.confluent(y, z)) as i64);
            assert_eq!(gromov_product(&g, y, z, VertexId::ROOT), expected);
        }
    }

    #[test]
    fn trees_and_single_edge_have_zero_delta() {
        let edge = SpiderWeb::from_tree(RootedTree::from_parents(&[None, Some(VertexId(0))]).unwrap());
        assert_eq!(four_point_delta(&edge, DeltaMode::Exhaustive, 0, 0).unwrap().delta, HalfInt::ZERO);
        let g = gen_homogeneous_tree(3, 3).unwrap();
        assert_eq!(g.len(), 40);
        let est = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0).unwrap();
        assert_eq!(est.delta, HalfInt::ZERO);
        assert_eq!(est.quadruples_checked, 40u64.pow(4));
    }

    #[test]
    fn exhaustive_refuses_large_graphs() {
        let g = gen_dyadic_web(6).unwrap();
        assert!(matches!(four_point_delta(&g, DeltaMode::Exhaustive, 0, 0), Err(Error::Size(_))));
    }

    #[test]
    fn sampled_delta_is_deterministic_lower_bound() {
        let g = gen_dyadic_web(4).unwrap();
        let exact = four_point_delta(&g, DeltaMode::Exhaustive, 0, 0).unwrap();
        let a = four_point_delta(&g, DeltaMode::Sampled, 200_000, 3).unwrap();
        let b = four_point_delta(&g, DeltaMode::Sampled, 200_000, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.delta <= exact.delta);
        let [x, y, z, w] = a.witness.map(|v| v.index());
        let m = DistanceMatrix::new(&g).unwrap();
        assert_eq!(defect(&m, x, y, z, w).max(0), a.delta.doubled());
    }

    #[test]
    fn trivial_geodesics() {
        let g = gen_dyadic_web(5).unwrap();
        let geo = standard_geodesic(&g, VertexId(9), VertexId(9)).unwrap();
        assert_eq!(geo.total_length, 0);
        assert_eq!(geo.ascending, vec![VertexId(9)]);
        assert_eq!(geo.horizontal, vec![VertexId(9)]);
        assert_eq!(geo.descending, vec![VertexId(9)]);

        let t = gen_random_ab_tree(2, 3, 5, 1).unwrap();
        let (x, y) = (VertexId(50), VertexId(17));
        let geo = standard_geodesic(&t, x, y).unwrap();
        assert_eq!(geo.horizontal_length(), 0);
        assert_eq!(geo.horizontal[0], t.tree().confluent(x, y));
        assert_eq!(geo.total_length, t.tree().tree_distance(x, y));
        geo.check(&t).unwrap();
    }

    #[test]
    fn bound_report_on_tree_and_invalid_graph() {
        let t = gen_homogeneous_tree(2, 4).unwrap();
        let pairs = sample_pairs(&t, 200, 0);
        let rep = horizontal_bound_report(&t, HalfInt::ZERO, true, &pairs).unwrap();
        assert_eq!(rep.max_horizontal, 0);
        assert_eq!(rep.verdict, BoundVerdict::Pass);
        assert_eq!(rep.rows.len(), 200);

        let bad = SpiderWeb::new(t.tree().clone(), vec![(VertexId(1), VertexId(5))]).unwrap();
        assert!(matches!(
            horizontal_bound_report(&bad, HalfInt::ZERO, true, &pairs),
            Err(Error::Precondition(_))
        ));
    }
}
